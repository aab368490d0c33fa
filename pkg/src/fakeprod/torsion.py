"""Torsion in norm-1 groups and the final fake/eliminated decision."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import OddDimension, UndeterminedTorsion
from .polyfield import NO, UNDETERMINED, YES, NumberField, contains_real_cyclotomic, euler_phi
from .primedec import SPLIT, splits_in_quadratic_ext
from .quatvol import QuaternionAlgebra, covolume_norm1

FAKE_CONFIRMED = "fake_confirmed"
CANDIDATE_UNVERIFIED = "candidate_unverified"
ELIMINATED = "eliminated"

# The root of unity is taken to lie in the maximal order whenever its field
# embeds in the algebra.
ORDER_EMBEDDING_NOTE = "field embeddings assumed to carry roots of unity into the maximal order"


def _cyclic_orders_for_degree(m):
    # q > 2, q not 2 mod 4, and [Q(zeta_q)^+ : Q] = phi(q)/2 dividing m
    return [q for q in range(3, 8 * m + 1) if q % 4 != 2 and m % (euler_phi(q) // 2) == 0]


def torsion_orders(K: NumberField) -> list:
    """Orders q of roots of unity zeta_q that could lie in a quaternion algebra over K."""
    return [q for q in _cyclic_orders_for_degree(K.m)
            if euler_phi(q) == 2 or contains_real_cyclotomic(K, q) != NO]


def embeds_root_of_unity(A: QuaternionAlgebra, q: int) -> str:
    """Hasse: k(zeta_q) embeds iff no prime ramified in A splits in it."""
    if euler_phi(q) // 2 > 1 and contains_real_cyclotomic(A.K, q) != YES:
        return UNDETERMINED if contains_real_cyclotomic(A.K, q) == UNDETERMINED else NO
    verdicts = [splits_in_quadratic_ext(A.K, ideal, q) for ideal in A.ram]
    if SPLIT in verdicts:
        return NO
    if UNDETERMINED in verdicts:
        return UNDETERMINED
    return YES


def psl_order(q: int) -> int:
    return q // 2 if q % 2 == 0 else q


@dataclass(frozen=True)
class TorsionReport:
    checked_orders: tuple
    verdicts: dict = field(hash=False)
    index_divisor: int
    note: str = ORDER_EMBEDDING_NOTE

    @property
    def complete(self) -> bool:
        return UNDETERMINED not in self.verdicts.values()

    @property
    def embeddable(self) -> list:
        return [q for q in self.checked_orders if self.verdicts[q] == YES]


def torsion_report(A: QuaternionAlgebra) -> TorsionReport:
    orders = tuple(torsion_orders(A.K))
    verdicts = {q: embeds_root_of_unity(A, q) for q in orders}
    divisor = 1
    for q in orders:
        if verdicts[q] == YES:
            divisor = math.lcm(divisor, psl_order(q))
    return TorsionReport(orders, verdicts, divisor)


def torsion_index_divisor(A: QuaternionAlgebra) -> int:
    """Every finite subgroup order divides the index of a torsion-free subgroup."""
    report = torsion_report(A)
    if not report.complete:
        pending = [q for q, v in report.verdicts.items() if v == UNDETERMINED]
        raise UndeterminedTorsion(f"embedding undecided for q in {pending}")
    return report.index_divisor


@dataclass(frozen=True)
class FakeVerdict:
    algebra: str
    euler: Fraction
    required_index: Fraction
    status: str
    reason: str
    torsion: TorsionReport | None = None


def fake_verdict(A: QuaternionAlgebra, zeta_m1: Fraction | None = None) -> FakeVerdict:
    if A.n % 2:
        raise OddDimension("odd-dimensional products are never fake")
    euler = covolume_norm1(A, zeta_m1)
    required = Fraction(2) ** A.n / euler
    if required.denominator != 1 or required <= 0:
        return FakeVerdict(A.label, euler, required, ELIMINATED,
                           f"required index {required} is not a positive integer")
    report = torsion_report(A)
    index = required.numerator
    if index % report.index_divisor:
        q = max((q for q in report.embeddable if index % psl_order(q)), key=psl_order)
        return FakeVerdict(A.label, euler, required, ELIMINATED,
                           f"torsion of order {psl_order(q)} from zeta_{q} does not divide "
                           f"required index {index}", report)
    if not report.complete:
        return FakeVerdict(A.label, euler, required, CANDIDATE_UNVERIFIED,
                           "torsion embedding undecided", report)
    if index == 1 and report.index_divisor == 1:
        return FakeVerdict(A.label, euler, required, FAKE_CONFIRMED,
                           "Euler number 2^n and no torsion", report)
    return FakeVerdict(A.label, euler, required, CANDIDATE_UNVERIFIED,
                       f"needs a torsion-free subgroup of index {index}; torsion divisor "
                       f"{report.index_divisor} is compatible", report)
