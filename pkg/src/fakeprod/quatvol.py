"""Quaternion algebras over totally real fields: covolumes and finiteness bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv

from .errors import NotDivision, ParityViolation, UnknownIdealTag, UnsupportedS, ValidationError
from .polyfield import NumberField
from .primedec import PrimeIdeal, prime_splitting
from .zetacalc import DEFAULT_CUTOFF, _endpoints, _with_iv_prec, zeta_values

# minimal root discriminants of totally real fields by degree
ROOT_DISC_MINIMA = {4: 5.189, 5: 6.809, 6: 8.182, 7: 11.051, 8: 11.385}

# constants of the covolume lower bound: g > A * exp(B*m - C/[k'_A:k])
CF_A = Fraction(142, 1000)
CF_B = Fraction(51, 1000)
CF_C = Fraction(190745, 10000)

# placeholders for the regulator lower bound R >= c1 * exp(c2 * m)
REGULATOR_C1 = 0.02
REGULATOR_C2 = 0.46


@dataclass(frozen=True)
class QuaternionAlgebra:
    """Quaternion algebra over K split at n real places and ramified at ``ram``."""

    K: NumberField
    n: int
    ram: tuple

    @property
    def m(self) -> int:
        return self.K.m

    @property
    def r(self) -> int:
        return len(self.ram)

    @property
    def label(self) -> str:
        dA = "".join(f"p{i.tag}" for i in self.ram) or "1"
        return f"A(d_k={self.K.d_k}; m={self.m}, n={self.n}, d_A={dA})"


def algebra_new(K: NumberField, n: int, ram) -> QuaternionAlgebra:
    ram = tuple(sorted(ram, key=lambda i: (i.p, i.f, i.e, i.j)))
    if not 1 <= n <= K.m:
        raise ValidationError(f"n = {n} must lie between 1 and {K.m}")
    if len(set(ram)) != len(ram):
        raise ValidationError("duplicate ramified prime")
    for ideal in ram:
        if ideal not in prime_splitting(K, ideal.p).ideals:
            raise UnknownIdealTag(f"{ideal} is not a prime of the field with d_k = {K.d_k}")
    if (K.m - n + len(ram)) % 2:
        raise ParityViolation("the number of ramified places must be even")
    if K.m - n + len(ram) < 1:
        raise NotDivision("an algebra ramified nowhere is a matrix algebra")
    return QuaternionAlgebra(K, n, ram)


def _norm_product(A):
    prod = 1
    for ideal in A.ram:
        prod *= ideal.norm - 1
    return prod


def covolume_norm1(A: QuaternionAlgebra, zeta_m1: Fraction | None = None,
                   cutoff: int = DEFAULT_CUTOFF) -> Fraction:
    """Euler number of the norm-1 group of a maximal order (negative for odd n)."""
    if zeta_m1 is None:
        zeta_m1 = zeta_values(A.K, cutoff).zeta_minus1
    sign = -1 if (A.m + A.n) % 2 else 1
    return sign * Fraction(2) ** (A.n - A.m + 1) * zeta_m1 * _norm_product(A)


def euler_crosscheck(A: QuaternionAlgebra, cutoff: int = DEFAULT_CUTOFF):
    """(-1)^n 2^(n-2m+1) pi^(-2m) d_k^(3/2) zeta_k(2) prod(Np - 1), as an interval."""
    z2 = zeta_values(A.K, cutoff).zeta2

    def compute():
        d = iv.mpf(A.K.d_k)
        val = (iv.mpf(2) ** (A.n - 2 * A.m + 1) * d * iv.sqrt(d) * z2.interval()
               * _norm_product(A) / iv.pi ** (2 * A.m))
        return -val if A.n % 2 else val

    return _with_iv_prec(compute)


@dataclass(frozen=True)
class VolumeReport:
    vol_norm1: Fraction
    euler_analytic: object
    required_index: Fraction

    @property
    def consistent(self) -> bool:
        lo, hi = _endpoints(self.euler_analytic)
        return lo <= self.vol_norm1 <= hi

    @property
    def relative_width(self) -> float:
        lo, hi = _endpoints(self.euler_analytic)
        return float((hi - lo) / abs(self.vol_norm1))


def volume_report(A: QuaternionAlgebra, cutoff: int = DEFAULT_CUTOFF) -> VolumeReport:
    vol = covolume_norm1(A, cutoff=cutoff)
    return VolumeReport(vol, euler_crosscheck(A, cutoff), Fraction(2) ** A.n / vol)


def dyadic_prime_count(K: NumberField) -> int:
    return len(prime_splitting(K, 2).factors)


def g_invariant(K: NumberField, kA_index: int = 1, cutoff: int = DEFAULT_CUTOFF):
    """g(k, A) = d_k^(3/2) zeta_k(2) / (2^(2m-1+t) pi^(2m) [k_A:k]) as an interval."""
    if kA_index < 1:
        raise ValidationError("[k_A:k] must be positive")
    z2 = zeta_values(K, cutoff).zeta2
    t = dyadic_prime_count(K)

    def compute():
        d = iv.mpf(K.d_k)
        return d * iv.sqrt(d) * z2.interval() / (
            iv.mpf(2) ** (2 * K.m - 1 + t) * iv.pi ** (2 * K.m) * kA_index)

    return _with_iv_prec(compute)


def gkb_volume(A: QuaternionAlgebra, kA_index: int = 1, cutoff: int = DEFAULT_CUTOFF):
    """Covolume of the normalizer group: 2^(t-t'+n) g(k,A) prod_{Np != 2} (Np - 1)/2."""
    t = dyadic_prime_count(A.K)
    t_ram = sum(1 for i in A.ram if i.norm == 2)
    g = g_invariant(A.K, kA_index, cutoff)
    factor = Fraction(1)
    for i in A.ram:
        if i.norm != 2:
            factor *= Fraction(i.norm - 1, 2)

    def compute():
        return iv.mpf(2) ** (t - t_ram + A.n) * g * iv.mpf(factor.numerator) / factor.denominator

    return _with_iv_prec(compute)


def cf_lower_bound(m: int, kpA_index: int = 1):
    """Lower bound 0.142 exp(0.051 m - 19.0745/[k'_A:k]) for g(k, A), as an interval."""
    if m < 1 or kpA_index < 1:
        raise ValidationError("m and [k'_A:k] must be positive")

    def compute():
        a = iv.mpf(CF_A.numerator) / CF_A.denominator
        b = iv.mpf(CF_B.numerator) / CF_B.denominator
        c = iv.mpf(CF_C.numerator) / CF_C.denominator
        return a * iv.exp(b * m - c / kpA_index)

    return _with_iv_prec(compute)


def max_degree() -> int:
    """Largest m with 0.142 exp(0.051 m - 19.0745) <= 1."""
    m = 1
    while cf_lower_bound(m + 1).a <= 1:
        m += 1
    return m


def brauer_siegel_hbound(K: NumberField, s: float = 2, R_lower: float = 1.0,
                         cutoff: int = DEFAULT_CUTOFF):
    """Upper bound for the class number from h R <= 2^(2-m) d_k zeta_k(2) / pi^m."""
    if s != 2:
        raise UnsupportedS("only s = 2 is supported")
    if R_lower <= 0:
        raise ValidationError("regulator lower bound must be positive")
    z2 = zeta_values(K, cutoff).zeta2

    def compute():
        return (iv.mpf(2) ** (2 - K.m) * K.d_k * z2.interval()
                / (iv.pi ** K.m * iv.mpf(R_lower)))

    return mpmath.mpf(_with_iv_prec(compute).b)


def regulator_lower_bound(m: int, c1: float = REGULATOR_C1, c2: float = REGULATOR_C2) -> float:
    return c1 * mpmath.exp(c2 * m)


def root_disc_ceiling(m: int):
    """(2 pi)^(4/3) / 2^(2/(3m)), as an interval."""
    if m < 1:
        raise ValidationError("m must be positive")

    def compute():
        return (2 * iv.pi) ** (iv.mpf(4) / 3) / iv.mpf(2) ** (iv.mpf(2) / (3 * m))

    return _with_iv_prec(compute)


def odlyzko_voight_min(m: int) -> float:
    if m not in ROOT_DISC_MINIMA:
        raise ValidationError(f"no tabulated minimum for degree {m}")
    return ROOT_DISC_MINIMA[m]


def below_root_disc_ceiling(K: NumberField) -> bool:
    """False only when d_k^(1/m) >= f(m) is certain."""
    ceiling = root_disc_ceiling(K.m)
    # compare d_k with f(m)^m rather than taking an interval root
    power = _with_iv_prec(lambda: ceiling ** K.m)
    return not K.d_k >= power.b


def maximal_lattice_index(r: int, kA_index: int = 1, eichler_norms=()) -> tuple:
    """Index 2^r [k_A:k] of the norm-1 group in the normalizer, and the possible
    Eichler-order indices 2^-s prod(Nq + 1), 0 <= s <= |S|."""
    if r < 0 or kA_index < 1:
        raise ValidationError("r must be >= 0 and [k_A:k] >= 1")
    prod = 1
    for N in eichler_norms:
        prod *= N + 1
    choices = {Fraction(prod, 2 ** s) for s in range(len(eichler_norms) + 1)}
    return 2 ** r * kA_index, frozenset(choices)


def candidate_ideals(K: NumberField, budget: Fraction) -> list:
    """Prime ideals with Np - 1 <= budget."""
    out = []
    p = 2
    while p - 1 <= budget:
        if all(p % d for d in range(2, int(p ** 0.5) + 1)):
            for ideal in prime_splitting(K, p).ideals:
                if ideal.norm - 1 <= budget:
                    out.append(ideal)
        p += 1
    return out


def ramification_sets(ideals, max_size: int):
    for r in range(max_size + 1):
        yield from itertools.combinations(ideals, r)
