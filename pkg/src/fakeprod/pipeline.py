"""Field tables in, candidate algebras and verdicts out."""

from __future__ import annotations

import csv
import io
import itertools
import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, TextIO

from .errors import FakeprodError, ParseError, RegressionMismatch, ValidationError
from .polyfield import IntPolynomial, NumberField, field_new
from .primedec import prime_splitting
from .quatvol import (
    algebra_new,
    below_root_disc_ceiling,
    candidate_ideals,
    covolume_norm1,
    ramification_sets,
)
from .torsion import ELIMINATED, FAKE_CONFIRMED, fake_verdict
from .zetacalc import DEFAULT_CUTOFF, zeta_values

BUNDLED = {4: "quartic.txt", 5: "quintic.txt", 6: "sextic.txt"}
EXPECTED_CONFIRMED = (2000, 2304)


@dataclass(frozen=True)
class FieldTableRow:
    m: int
    d_k: int
    coeffs: tuple
    cyclotomic_tag: int | None = None
    overrides: tuple = ()
    line: int | None = None

    def field(self) -> NumberField:
        return field_new(IntPolynomial(self.coeffs), self.d_k, self.cyclotomic_tag, self.overrides)


_OVERRIDE = re.compile(r"^\s*(\d+)\s*:\s*(\(\s*\d+\s*,\s*\d+\s*\)(?:\s*\|\s*\(\s*\d+\s*,\s*\d+\s*\))*)\s*$")
_PAIR = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def _parse_line(text: str, lineno: int) -> FieldTableRow:
    parts = [s.strip() for s in text.split(";")]
    if len(parts) < 3:
        raise ParseError("expected at least m;d_k;coefficients", lineno)
    try:
        m = int(parts[0])
        d_k = int(parts[1])
        coeffs = tuple(int(c) for c in parts[2].split(","))
    except ValueError as exc:
        raise ParseError(f"bad integer: {exc}", lineno) from None
    if len(coeffs) != m + 1:
        raise ParseError(f"degree {m} needs {m + 1} coefficients, got {len(coeffs)}", lineno)
    if coeffs[-1] != 1:
        raise ParseError("polynomial must be monic", lineno)
    tag = None
    if len(parts) > 3 and parts[3]:
        try:
            tag = int(parts[3])
        except ValueError:
            raise ParseError(f"bad cyclotomic tag {parts[3]!r}", lineno) from None
    overrides = []
    for item in parts[4:]:
        if not item:
            continue
        mo = _OVERRIDE.match(item)
        if not mo:
            raise ParseError(f"bad splitting override {item!r}", lineno)
        pairs = tuple((int(e), int(f)) for e, f in _PAIR.findall(mo.group(2)))
        overrides.append((int(mo.group(1)), pairs))
    return FieldTableRow(m, d_k, coeffs, tag, tuple(overrides), lineno)


def load_field_table(stream: TextIO | Iterable[str], validate: bool = True) -> list:
    rows = []
    for lineno, raw in enumerate(stream, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        row = _parse_line(text, lineno)
        if validate:
            try:
                row.field()
            except ValidationError as exc:
                raise type(exc)(f"line {lineno}: {exc}") from None
        rows.append(row)
    return rows


def bundled_rows(degrees=(4, 5, 6)) -> list:
    rows = []
    for m in degrees:
        text = resources.files("fakeprod.data").joinpath(BUNDLED[m]).read_text(encoding="utf-8")
        rows.extend(load_field_table(io.StringIO(text)))
    return rows


def bundled_fields(degrees=(4, 5, 6)) -> list:
    return [row.field() for row in bundled_rows(degrees)]


def load_fields(path: str | None = None, degrees=(4, 5, 6)) -> list:
    if path is None:
        return bundled_fields(degrees)
    with open(path, encoding="utf-8") as fh:
        return [row.field() for row in load_field_table(fh) if row.m in degrees]


def field_by_disc(d_k: int, fields=None) -> NumberField:
    for K in fields if fields is not None else bundled_fields():
        if K.d_k == d_k:
            return K
    raise ValidationError(f"no field with d_k = {d_k}")


# ---------------------------------------------------------------------------

def _zeta_job(args):
    K, cutoff = args
    return zeta_values(K, cutoff).zeta_minus1


def zeta_table(fields, cutoff: int = DEFAULT_CUTOFF, jobs: int = 1) -> dict:
    """zeta_k(-1) for each field, keyed by the field."""
    fields = list(fields)
    if jobs > 1 and len(fields) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_zeta_job, [(K, cutoff) for K in fields]))
    else:
        values = [_zeta_job((K, cutoff)) for K in fields]
    return dict(zip(fields, values))


def volume_budget(zeta_m1: Fraction, m: int, n: int) -> Fraction:
    """2^n / (2^(n+1-m) |zeta_k(-1)|)."""
    return Fraction(2) ** n / (Fraction(2) ** (n + 1 - m) * abs(zeta_m1))


def integrality_filter(K: NumberField, n: int = 4, zeta_m1: Fraction | None = None,
                       cutoff: int = DEFAULT_CUTOFF) -> bool:
    if zeta_m1 is None:
        zeta_m1 = zeta_values(K, cutoff).zeta_minus1
    q = volume_budget(zeta_m1, K.m, n)
    return q.denominator == 1 and q > 0


@dataclass(frozen=True)
class CandidateRow:
    degree: int
    d_k: int
    zeta_m1: Fraction
    ram: tuple
    euler: Fraction
    required_index: Fraction
    n: int = 4
    verdict: str = ""
    reason: str = ""

    @property
    def d_A(self) -> list:
        return [i.tag for i in self.ram]

    def as_record(self) -> dict:
        return {
            "degree": self.degree,
            "d_k": self.d_k,
            "zeta_m1": _frac(self.zeta_m1),
            "d_A": self.d_A,
            "euler": _frac(self.euler),
            "index": _frac(self.required_index),
            "verdict": self.verdict,
        }


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def enumerate_candidates(fields, n: int = 4, cutoff: int = DEFAULT_CUTOFF, jobs: int = 1,
                         zetas: dict | None = None) -> list:
    """All (field, ramification set) with Euler number of the norm-1 group dividing 2^n."""
    fields = [K for K in fields if K.m >= n and K.m in (4, 5, 6)]
    fields = [K for K in fields if below_root_disc_ceiling(K)]
    if zetas is None:
        zetas = zeta_table(fields, cutoff, jobs)
    rows = []
    for K in fields:
        z = zetas[K]
        if not integrality_filter(K, n, z):
            continue
        budget = volume_budget(z, K.m, n)
        ideals = candidate_ideals(K, budget)
        for ram in ramification_sets(ideals, len(ideals)):
            r = len(ram)
            if (K.m - n + r) % 2 or K.m - n + r < 1:
                continue
            prod = 1
            for i in ram:
                prod *= i.norm - 1
            if (budget / prod).denominator != 1:
                continue
            A = algebra_new(K, n, ram)
            euler = covolume_norm1(A, z)
            rows.append(CandidateRow(K.m, K.d_k, z, A.ram, euler, Fraction(2) ** n / euler, n))
    rows.sort(key=lambda c: (c.degree, c.d_k, [i.tag for i in c.ram]))
    return rows


def enumerate_n6(fields, cutoff: int = DEFAULT_CUTOFF, jobs: int = 1, zetas=None) -> list:
    """Sextic algebras ramified at no real place with 2 zeta_k(-1) prod(Np - 1) <= 64.

    This is the volume inequality alone, weaker than the divisibility used for n = 4,
    so an empty result rules out every fake product of six lines over these fields.
    """
    fields = [K for K in fields if K.m == 6 and below_root_disc_ceiling(K)]
    if zetas is None:
        zetas = zeta_table(fields, cutoff, jobs)
    rows = []
    for K in fields:
        z = abs(zetas[K])
        budget = Fraction(64) / (2 * z)
        ideals = candidate_ideals(K, budget)
        for r in range(2, len(ideals) + 1, 2):
            found = False
            for ram in itertools.combinations(ideals, r):
                prod = 1
                for i in ram:
                    prod *= i.norm - 1
                if prod > budget:
                    continue
                found = True
                A = algebra_new(K, 6, ram)
                euler = covolume_norm1(A, zetas[K])
                rows.append(CandidateRow(6, K.d_k, zetas[K], A.ram, euler, Fraction(64) / euler, 6))
            if not found:
                # every r-subset already exceeds the budget, so larger ones do too
                break
    rows.sort(key=lambda c: (c.degree, c.d_k, c.d_A))
    return rows


def algebra_for(row: CandidateRow, fields=None):
    K = field_by_disc(row.d_k, fields)
    return algebra_new(K, row.n, row.ram)


def judge(rows, fields=None) -> list:
    out = []
    for row in rows:
        v = fake_verdict(algebra_for(row, fields), row.zeta_m1)
        out.append(CandidateRow(row.degree, row.d_k, row.zeta_m1, row.ram, row.euler,
                                row.required_index, row.n, v.status, v.reason))
    return out


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple

    @property
    def confirmed(self) -> list:
        return [r for r in self.rows if r.verdict == FAKE_CONFIRMED]

    def by_status(self) -> dict:
        out = {}
        for r in self.rows:
            out.setdefault(r.verdict, []).append(r.d_k)
        return out


def verify_examples(fields=None, cutoff: int = DEFAULT_CUTOFF, jobs: int = 1) -> VerifyReport:
    """Judge every n = 4 candidate: exactly the two known fakes must survive and
    everything else must be eliminated."""
    if fields is None:
        fields = bundled_fields()
    rows = judge(enumerate_candidates(fields, 4, cutoff, jobs), fields)
    report = VerifyReport(tuple(rows))
    bad = [r for r in rows if (r.verdict == FAKE_CONFIRMED) != (r.d_k in EXPECTED_CONFIRMED)
           or r.verdict not in (FAKE_CONFIRMED, ELIMINATED)]
    missing = sorted(set(EXPECTED_CONFIRMED) - {r.d_k for r in report.confirmed})
    if bad or missing:
        listing = "; ".join(f"{r.d_k} {r.d_A}: {r.verdict} ({r.reason})" for r in bad)
        if missing:
            listing = "; ".join(filter(None, [listing, f"known fakes not confirmed: {missing}"]))
        raise RegressionMismatch(f"unexpected verdicts: {listing}", bad, report)
    return report


# ---------------------------------------------------------------------------
# output

def field_table(fields, primes=(2, 3, 5, 7, 11, 13), cutoff: int = DEFAULT_CUTOFF,
                jobs: int = 1, zetas=None) -> tuple:
    """Header and rows: d_k, polynomial, zeta_k(-1), residue degrees above small primes."""
    fields = sorted(fields, key=lambda K: (K.m, K.d_k))
    if zetas is None:
        zetas = zeta_table(fields, cutoff, jobs)
    header = ["degree", "d_k", "polynomial", "zeta_m1"] + [f"f(p/{p})" for p in primes]
    rows = []
    for K in fields:
        cells = []
        for p in primes:
            try:
                cells.append(";".join(str(f) for f in prime_splitting(K, p).residue_degrees))
            except FakeprodError:
                cells.append("")
        rows.append([K.m, K.d_k, str(K.f), _frac(zetas[K])] + cells)
    return header, rows


def candidate_table(rows) -> tuple:
    header = ["degree", "d_k", "zeta_m1", "d_A", "euler", "index", "verdict"]
    body = []
    for r in sorted(rows, key=lambda c: (c.degree, c.d_k, c.d_A)):
        rec = r.as_record()
        rec["d_A"] = " ".join(rec["d_A"]) or "-"
        body.append([rec[h] for h in header])
    return header, body


def emit(header, rows, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    if fmt in ("md", "markdown"):
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    if fmt in ("jsonl", "json-lines"):
        return "".join(json.dumps(dict(zip(header, row)), sort_keys=False) + "\n" for row in rows)
    if fmt == "human":
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
        fmt_row = lambda row: "  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip()
        return "\n".join([fmt_row(header)] + [fmt_row(r) for r in rows]) + "\n"
    raise ValidationError(f"unknown format {fmt!r}")


def emit_candidates(rows, fmt: str = "csv") -> str:
    if fmt in ("jsonl", "json-lines"):
        ordered = sorted(rows, key=lambda c: (c.degree, c.d_k, c.d_A))
        return "".join(json.dumps(r.as_record()) + "\n" for r in ordered)
    return emit(*candidate_table(rows), fmt)


def emit_tables(fields, fmt: str = "csv", cutoff: int = DEFAULT_CUTOFF, jobs: int = 1) -> str:
    return emit(*field_table(fields, cutoff=cutoff, jobs=jobs), fmt)
