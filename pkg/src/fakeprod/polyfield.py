"""Integer polynomials, number fields and exact field arithmetic.

Polynomials are coefficient tuples with the constant term first.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

from .errors import (
    DiscMismatch,
    DivisionByZero,
    NotSquarefree,
    NotTotallyReal,
    Reducible,
    ValidationError,
    ZeroDivisor,
)

YES = "yes"
NO = "no"
UNDETERMINED = "undetermined"

WORK_BITS = 192


# ---------------------------------------------------------------------------
# dense polynomials over Q (lists of Fractions, constant first, no trailing 0)

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qsub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _qdivmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lc = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lc
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = _trim(a)
    return _trim(q), a


def _qmonic(a):
    return [x / a[-1] for x in a] if a else a


def _qgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return _qmonic(a)


def _deriv(a):
    return _trim([i * a[i] for i in range(1, len(a))])


def _resultant(a, b):
    """Res(a, b) for polynomials over Q via the Euclidean recursion."""
    a, b = _trim(a), _trim(b)
    if not a or not b:
        return Fraction(0)
    da, db = len(a) - 1, len(b) - 1
    if db == 0:
        return Fraction(b[0]) ** da
    if da == 0:
        return Fraction(a[0]) ** db
    r = _qdivmod(a, b)[1]
    if not r:
        return Fraction(0)
    sign = -1 if (da * db) % 2 else 1
    return sign * Fraction(b[-1]) ** (da - (len(r) - 1)) * _resultant(b, r)


def _sign_at_infinity(p, negative):
    if not p:
        return 0
    s = 1 if p[-1] > 0 else -1
    if negative and (len(p) - 1) % 2:
        s = -s
    return s


def _sign_changes(signs):
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


# ---------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, constant term first."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)
        if len(c) < 2:
            raise ValidationError("polynomial must have degree >= 1")
        if c[-1] != 1:
            raise ValidationError("polynomial must be monic")

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse strings such as ``x^4 - 5x^2 + 5``."""
        s = text.replace(" ", "").replace("**", "^").replace("−", "-")
        if not s:
            raise ValidationError("empty polynomial")
        terms = {}
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValidationError(f"cannot parse polynomial {text!r}")
            sign, num, var, exp = m.groups()
            if not num and not var:
                raise ValidationError(f"cannot parse polynomial {text!r}")
            c = int(num) if num else 1
            if sign == "-":
                c = -c
            e = 0 if not var else (int(exp) if exp else 1)
            terms[e] = terms.get(e, 0) + c
            pos = m.end()
        deg = max(terms)
        return cls(tuple(terms.get(i, 0) for i in range(deg + 1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> tuple:
        return tuple(_deriv(list(self.coeffs)))

    def rational_root(self):
        """Return an integer root if one exists (monic, so rational roots are integers)."""
        c0 = self.coeffs[0]
        if c0 == 0:
            return 0
        n = abs(c0)
        for d in range(1, math.isqrt(n) + 1):
            if n % d == 0:
                for cand in (d, -d, n // d, -(n // d)):
                    if self(cand) == 0:
                        return cand
        return None

    def __str__(self):
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                body = ("" if a == 1 else str(a)) + ("x" if e == 1 else f"x^{e}")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_disc(f: IntPolynomial) -> int:
    """Discriminant (-1)^(m(m-1)/2) Res(f, f')."""
    m = f.degree
    if m == 1:
        return 1
    res = _resultant([Fraction(c) for c in f.coeffs], [Fraction(c) for c in f.derivative()])
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    val = sign * res
    assert val.denominator == 1
    return int(val)


def sturm_sequence(f: IntPolynomial) -> list:
    p0 = [Fraction(c) for c in f.coeffs]
    p1 = [Fraction(c) for c in f.derivative()]
    seq = [p0, p1]
    while True:
        r = _qdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-x for x in r])
    return seq


def real_root_count(f: IntPolynomial) -> int:
    """Number of distinct real roots, by Sturm's theorem."""
    seq = sturm_sequence(f)
    if len(seq[-1]) > 1:
        raise NotSquarefree(f"{f} is not squarefree")
    lo = _sign_changes([_sign_at_infinity(p, True) for p in seq])
    hi = _sign_changes([_sign_at_infinity(p, False) for p in seq])
    return lo - hi


def is_totally_real(f: IntPolynomial) -> bool:
    return real_root_count(f) == f.degree


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumberField:
    """A number field given by a defining polynomial and its trusted discriminant.

    ``external`` holds splitting data for primes dividing the index, as
    ``((p, ((e, f), ...)), ...)``.
    """

    f: IntPolynomial
    d_k: int
    index: int
    cyclotomic_tag: int | None = None
    external: tuple = field(default=(), compare=False)

    @property
    def m(self) -> int:
        return self.f.degree

    @property
    def index2(self) -> int:
        return self.index ** 2

    @property
    def delta_k(self):
        return root_disc(self)

    @property
    def poly_disc(self) -> int:
        return self.index2 * self.d_k

    def external_splitting(self, p: int):
        for q, factors in self.external:
            if q == p:
                return factors
        return None

    def element(self, coords: Sequence) -> "FieldElement":
        return FieldElement.of(self.f, coords)

    def gen(self) -> "FieldElement":
        return FieldElement.of(self.f, [0, 1])

    def one(self) -> "FieldElement":
        return FieldElement.of(self.f, [1])

    def __str__(self):
        return f"Q[x]/({self.f}), d_k = {self.d_k}"


def field_new(f: IntPolynomial, d_k: int, cyclotomic_tag: int | None = None,
              external: Iterable = ()) -> NumberField:
    if d_k <= 0:
        raise DiscMismatch("field discriminant must be positive")
    disc = poly_disc(f)
    if disc <= 0 or disc % d_k:
        raise DiscMismatch(f"disc(f) = {disc} is not a square multiple of {d_k}")
    ratio = disc // d_k
    index = math.isqrt(ratio)
    if index * index != ratio:
        raise DiscMismatch(f"disc(f)/d_k = {ratio} is not a perfect square")
    if not is_totally_real(f):
        raise NotTotallyReal(f"{f} has non-real roots")
    if f.degree > 1 and f.rational_root() is not None:
        raise Reducible(f"{f} has a rational root")
    if cyclotomic_tag is not None and euler_phi(cyclotomic_tag) // 2 != f.degree:
        raise ValidationError(f"cyclotomic tag {cyclotomic_tag} does not match degree {f.degree}")
    ext = tuple(sorted((int(p), tuple(tuple(ef) for ef in fs)) for p, fs in external))
    for p, fs in ext:
        if sum(e * fd for e, fd in fs) != f.degree:
            raise ValidationError(f"splitting override at {p} violates sum e*f = {f.degree}")
    return NumberField(f, d_k, index, cyclotomic_tag, ext)


def root_disc(K: NumberField):
    """d_k^(1/m) to 192 bits."""
    with mpmath.workprec(WORK_BITS):
        return mpmath.root(mpmath.mpf(K.d_k), K.m)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """Element of Q[x]/(f) in power-basis coordinates."""

    modulus: IntPolynomial
    coords: tuple

    @classmethod
    def of(cls, f: IntPolynomial, coords) -> "FieldElement":
        c = [Fraction(x) for x in coords]
        if len(c) > f.degree:
            c = _qdivmod(c, [Fraction(x) for x in f.coeffs])[1]
        c = list(c) + [Fraction(0)] * (f.degree - len(c))
        return cls(f, tuple(c))

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ValidationError("elements belong to different fields")

    def _lift(self, other):
        if isinstance(other, FieldElement):
            self._check(other)
            return other
        return FieldElement.of(self.modulus, [other])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        other = self._lift(other)
        return FieldElement(self.modulus, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.modulus, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        prod = _qmul(_trim(self.coords), _trim(other.coords))
        return FieldElement.of(self.modulus, prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        a = _trim(self.coords)
        if not a:
            raise DivisionByZero("inverse of zero")
        f = [Fraction(c) for c in self.modulus.coeffs]
        # extended Euclid: track s with s*a = r (mod f)
        r0, r1 = f, a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
            if not r1:
                raise ZeroDivisor(f"{self.modulus} is reducible: element shares a factor with it")
        inv = [x / r1[0] for x in s1]
        return FieldElement.of(self.modulus, inv)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = FieldElement.of(self.modulus, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coords]})"


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValidationError(f"unknown operation {op!r}")


def evaluate_in_field(coeffs: Sequence[int], alpha: FieldElement) -> FieldElement:
    acc = FieldElement.of(alpha.modulus, [0])
    for c in reversed(coeffs):
        acc = acc * alpha + c
    return acc


# ---------------------------------------------------------------------------
# real cyclotomic subfields

def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num = _qdivmod(num, [Fraction(c) for c in cyclotomic_poly(d)])[0]
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def real_cyclotomic_minpoly(q: int) -> IntPolynomial:
    """Minimal polynomial of 2cos(2pi/q)."""
    if q in (1, 2):
        return IntPolynomial((-2 if q == 1 else 2, 1))
    phi = cyclotomic_poly(q)
    d = (len(phi) - 1) // 2
    # z^-d Phi(z) = c_d + sum_k c_{d+k} (z^k + z^-k), and z^k + z^-k = D_k(z + 1/z)
    D = [[2], [0, 1]]
    for k in range(2, d + 1):
        nxt = [0] + D[-1]
        prev = D[-2] + [0] * (len(nxt) - len(D[-2]))
        D.append([a - b for a, b in zip(nxt, prev)])
    out = [0] * (d + 1)
    out[0] += phi[d]
    for k in range(1, d + 1):
        for i, c in enumerate(D[k]):
            out[i] += phi[d + k] * c
    return IntPolynomial(tuple(out))


def _unit_residues(n):
    return [a for a in range(1, n) if math.gcd(a, n) == 1] if n > 1 else [0]


def real_cyclotomic_contained(q: int, N: int) -> bool:
    """Is Q(zeta_q)^+ inside Q(zeta_N)^+?  Decided on subgroups of (Z/M)^*."""
    M = math.lcm(N, q)
    for a in _unit_residues(M):
        if (a - 1) % N == 0 or (a + 1) % N == 0:
            if (a - 1) % q and (a + 1) % q:
                return False
    return True


def _order_mod_pm(p, q):
    """Order of p in (Z/q)^*/{+-1}."""
    x, k = p % q, 1
    while x not in (1 % q, (q - 1) % q):
        x = x * p % q
        k += 1
    return k


def _certified_absent(K: NumberField, q: int, d: int) -> bool:
    """Rigorous exclusion tests for Q(zeta_q)^+ in K."""
    d_F = poly_disc(real_cyclotomic_minpoly(q))
    if K.d_k % (d_F ** (K.m // d)):
        return True
    from .primedec import factor_mod_p

    disc = K.poly_disc
    for p in range(2, 200):
        if any(p % r == 0 for r in range(2, math.isqrt(p) + 1)):
            continue
        if disc % p == 0 or q % p == 0:
            continue
        order = _order_mod_pm(p, q)
        if any(g.degree % order for g, _ in factor_mod_p(K.f, p)):
            return True
    return False


def _to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    man, exp = x.man_exp
    val = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -val if x < 0 else val


def _identify(value, bits):
    frac = _to_fraction(value).limit_denominator(10**6)
    if abs(value - mpmath.mpf(frac.numerator) / frac.denominator) > mpmath.mpf(2) ** (-(bits // 2)):
        return None
    return frac


def find_real_cyclotomic_generator(K: NumberField, q: int, max_doublings: int = 4):
    """Locate and certify a root of the minimal polynomial of 2cos(2pi/q) in K.

    Returns a FieldElement or None.
    """
    psi = real_cyclotomic_minpoly(q)
    d = psi.degree
    if K.m % d:
        return None
    reps = [j for j in range(1, q // 2 + 1) if math.gcd(j, q) == 1]
    bits = 128
    for _ in range(max_doublings + 1):
        with mpmath.workprec(bits + 32):
            roots = mpmath.polyroots(list(reversed(K.f.coeffs)), maxsteps=200, extraprec=2 * bits)
            roots = sorted(mpmath.re(r) for r in roots)
            targets = [2 * mpmath.cos(2 * mpmath.pi * j / q) for j in reps]
            V = mpmath.matrix([[r ** i for i in range(K.m)] for r in roots])
            rep = K.m // d
            for assign in _balanced_assignments(K.m, d, rep):
                t = mpmath.matrix([targets[a] for a in assign])
                try:
                    c = mpmath.lu_solve(V, t)
                except ZeroDivisionError:
                    continue
                coords = [_identify(c[i], bits) for i in range(K.m)]
                if any(x is None for x in coords):
                    continue
                alpha = FieldElement.of(K.f, coords)
                if evaluate_in_field(psi.coeffs, alpha).is_zero():
                    return alpha
        bits *= 2
    return None


def _balanced_assignments(m, d, rep):
    """Maps from m embeddings to d targets, each target hit ``rep`` times,
    with the first embedding pinned to target 0."""
    counts = [rep] * d
    counts[0] -= 1
    seen = set()
    rest = [t for t in range(d) for _ in range(counts[t])]
    for perm in itertools.permutations(rest):
        if perm in seen:
            continue
        seen.add(perm)
        yield (0,) + perm


@lru_cache(maxsize=None)
def contains_real_cyclotomic(K: NumberField, q: int) -> str:
    """Decide whether Q(zeta_q + zeta_q^-1) is a subfield of K."""
    if q < 3:
        raise ValidationError("q must be at least 3")
    d = euler_phi(q) // 2
    if K.m % d:
        return NO
    if d == 1:
        return YES
    if K.cyclotomic_tag is not None:
        return YES if real_cyclotomic_contained(q, K.cyclotomic_tag) else NO
    if _certified_absent(K, q, d):
        return NO
    if find_real_cyclotomic_generator(K, q) is not None:
        return YES
    return UNDETERMINED
