"""Special values of Dedekind zeta functions of totally real fields.

zeta_k(2) comes from a truncated Euler product with a certified tail bound;
zeta_k(-1) follows from the functional equation and rational reconstruction.
Real cyclotomic subfields also get an exact route through generalized
Bernoulli numbers.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import mpmath
import numpy as np
from mpmath import iv
from mpmath.libmp import from_rational

from .errors import AmbiguousReconstruction, OddCharacter, ValidationError
from .polyfield import NO, NumberField, _to_fraction, contains_real_cyclotomic, euler_phi
from .primedec import prime_splitting

DEFAULT_CUTOFF = 2_000_000
MAX_DOUBLINGS = 4
IV_BITS = 192


# ---------------------------------------------------------------------------
# prime sieve

_sieve_lock = threading.Lock()
_sieve_cache = {"limit": 1, "primes": np.zeros(0, dtype=np.int64)}


def primes_upto(n: int) -> np.ndarray:
    with _sieve_lock:
        if _sieve_cache["limit"] >= n:
            pr = _sieve_cache["primes"]
            return pr[: np.searchsorted(pr, n, side="right")]
        flags = np.ones(n + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, math.isqrt(n) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        pr = np.nonzero(flags)[0].astype(np.int64)
        _sieve_cache.update(limit=n, primes=pr)
        return pr


# ---------------------------------------------------------------------------
# Frobenius cycle types for many primes at once
#
# For p > m with p not dividing disc(f), F_p[x]/(f) is a product of fields and
# Frobenius acts on it with trace(Q^d) = sum of the degrees f_i dividing d.
# That sum is at most m < p, so it is read off exactly from its residue.

def _reduce(prod, f, P):
    m = len(f)
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        for j, fj in enumerate(f):
            if fj:
                prod[k - m + j] = prod[k - m + j] - c * fj
    return [x % P for x in prod[:m]]


def _mulmod(a, b, f, P):
    m = len(f)
    prod = [None] * (2 * m - 1)
    for i in range(m):
        for j in range(m):
            t = a[i] * b[j]
            prod[i + j] = t if prod[i + j] is None else prod[i + j] + t
    return _reduce([x % P for x in prod], f, P)


def _sqrmod(a, f, P):
    m = len(f)
    prod = [None] * (2 * m - 1)
    for i in range(m):
        t = a[i] * a[i]
        prod[2 * i] = t if prod[2 * i] is None else prod[2 * i] + t
        for j in range(i + 1, m):
            t = a[i] * a[j]
            t = t + t
            prod[i + j] = t if prod[i + j] is None else prod[i + j] + t
    return _reduce([x % P for x in prod], f, P)


def _times_x(a, f, P):
    m = len(f)
    c = a[m - 1]
    out = [(-c * f[0]) % P]
    for j in range(1, m):
        out.append((a[j - 1] - c * f[j]) % P)
    return out


def _mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def residue_degree_counts(coeffs, primes: np.ndarray) -> np.ndarray:
    """Counts of primes of each residue degree, for unramified p > m.

    Returns an (len(primes), m + 1) array whose column d is the number of
    prime ideals of residue degree d above each p.
    """
    m = len(coeffs) - 1
    f = [int(c) for c in coeffs[:m]]
    P = np.asarray(primes, dtype=np.int64)
    n = len(P)
    out = np.zeros((n, m + 1), dtype=np.int64)
    if n == 0:
        return out
    pmax = int(P.max())
    bound = max(m * pmax * pmax, pmax * (1 + max(abs(c) for c in f)) ** m)
    if bound >= 2 ** 62:
        raise ValidationError("prime range too large for 64-bit Frobenius arithmetic")
    zero = np.zeros(n, dtype=np.int64)
    one = np.ones(n, dtype=np.int64)
    res = [one.copy()] + [zero.copy() for _ in range(m - 1)]
    for b in range(pmax.bit_length() - 1, -1, -1):
        res = _sqrmod(res, f, P)
        bit = ((P >> b) & 1).astype(bool)
        shifted = _times_x(res, f, P)
        res = [np.where(bit, s, r) for s, r in zip(shifted, res)]
    rows = [[one] + [zero] * (m - 1), res]
    for _ in range(2, m):
        rows.append(_mulmod(rows[-1], res, f, P))
    Q = np.stack([np.stack(r, axis=1) for r in rows[:m]], axis=1)
    Pm = P[:, None, None]
    traces = np.zeros((n, m + 1), dtype=np.int64)
    M = Q
    for d in range(1, m + 1):
        traces[:, d] = np.trace(M, axis1=1, axis2=2) % P
        if d < m:
            M = np.matmul(M, Q) % Pm
    for d in range(1, m + 1):
        acc = np.zeros(n, dtype=np.int64)
        for e in range(1, d + 1):
            if d % e == 0:
                mu = _mobius(d // e)
                if mu:
                    acc += mu * traces[:, e]
        out[:, d] = acc // d
    return out


# ---------------------------------------------------------------------------
# Euler product

def _log_factor(p: int, degrees) -> float:
    return -sum(math.log1p(-float(p) ** (-2 * f)) for f in degrees)


def _prime_factors(n: int) -> set:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


class _EulerTerms:
    """Per-field cache of log Euler factors, extended on demand."""

    def __init__(self):
        self._lock = threading.Lock()
        self._data = {}

    def get(self, K: NumberField, cutoff: int):
        with self._lock:
            have = self._data.get(K)
        if have is None or have[0] < cutoff:
            have = self._extend(K, have, cutoff)
            with self._lock:
                cur = self._data.get(K)
                if cur is None or cur[0] < have[0]:
                    self._data[K] = have
        limit, primes, terms = have
        idx = np.searchsorted(primes, cutoff, side="right")
        return primes[:idx], terms[:idx]

    def _extend(self, K, have, cutoff):
        start = 1 if have is None else have[0]
        pr = primes_upto(cutoff)
        pr = pr[np.searchsorted(pr, start, side="right"):]
        bad = _prime_factors(K.poly_disc)
        special = [int(p) for p in pr if p <= K.m or int(p) in bad]
        terms = np.zeros(len(pr), dtype=np.float64)
        mask = np.ones(len(pr), dtype=bool)
        for p in special:
            i = int(np.searchsorted(pr, p))
            mask[i] = False
            terms[i] = _log_factor(p, prime_splitting(K, p).residue_degrees)
        bulk = pr[mask]
        counts = residue_degree_counts(K.f.coeffs, bulk)
        pf = bulk.astype(np.float64)
        acc = np.zeros(len(bulk), dtype=np.float64)
        for d in range(1, K.m + 1):
            c = counts[:, d]
            if c.any():
                acc += c * -np.log1p(-np.power(pf, -2.0 * d))
        terms[mask] = acc
        if have is not None:
            pr = np.concatenate([have[1], pr])
            terms = np.concatenate([have[2], terms])
        return cutoff, pr, terms

    def clear(self):
        with self._lock:
            self._data.clear()


_EULER = _EulerTerms()


def clear_cache():
    _EULER.clear()


@dataclass(frozen=True)
class Zeta2Estimate:
    """zeta_k(2) as a midpoint with a certified radius."""

    lower: Fraction
    upper: Fraction
    cutoff: int

    @property
    def value(self):
        return (self.lower + self.upper) / 2

    @property
    def radius(self):
        return (self.upper - self.lower) / 2

    def interval(self):
        return iv.mpf([_fraction_mpf(self.lower, "floor"), _fraction_mpf(self.upper, "ceiling")])

    def __contains__(self, x):
        return self.lower <= x <= self.upper


def _endpoints(x):
    """Exact rational endpoints of an mpmath interval."""
    return _to_fraction(mpmath.mpf(x.a)), _to_fraction(mpmath.mpf(x.b))


def _fraction_mpf(x: Fraction, rounding: str):
    """x rounded down ("floor") or up ("ceiling") to an mpf."""
    rnd = "f" if rounding == "floor" else "c"
    return mpmath.mpf(from_rational(x.numerator, x.denominator, IV_BITS + 64, rnd))


def _with_iv_prec(fn):
    old = iv.prec
    iv.prec = IV_BITS
    try:
        return fn()
    finally:
        iv.prec = old


def zeta2_truncated(K: NumberField, cutoff: int = DEFAULT_CUTOFF) -> Zeta2Estimate:
    """Euler product over p <= cutoff plus the bound m/(cutoff - 1) on the log tail."""
    if cutoff < 3:
        raise ValidationError("cutoff must be at least 3")
    _, terms = _EULER.get(K, cutoff)
    s = math.fsum(terms.tolist())
    eps = 2.0 ** -52
    rounding = 8 * eps * float(np.abs(terms).sum()) + 4 * eps * abs(s)
    tail = Fraction(K.m, cutoff - 1)

    def compute():
        lo = iv.exp(iv.mpf(s) - iv.mpf(rounding))
        hi = iv.exp(iv.mpf(s) + iv.mpf(rounding) + iv.mpf(tail.numerator) / tail.denominator)
        return _endpoints(lo)[0], _endpoints(hi)[1]

    lower, upper = _with_iv_prec(compute)
    return Zeta2Estimate(lower, upper, cutoff)


# ---------------------------------------------------------------------------
# denominator bounds

def _primes_small(n):
    return [p for p in range(2, n + 1) if all(p % r for r in range(2, math.isqrt(p) + 1))]


def denominator_bound(m: int) -> int:
    """Degree-only bound B(m) with B(m) * zeta_k(-1) integral for every totally
    real field of degree m.

    It is the largest value w_2 can take in degree m: 2^(3 + v_2(m)) times
    p^b for odd p, with b maximal such that phi(p^b)/2 divides m.
    """
    if not 1 <= m <= 8:
        raise ValidationError("degree must be between 1 and 8")
    v2 = (m & -m).bit_length() - 1
    B = 2 ** (3 + v2)
    for p in _primes_small(2 * m + 1):
        if p == 2:
            continue
        b = 0
        while m % (euler_phi(p ** (b + 1)) // 2) == 0:
            b += 1
        B *= p ** b
    return B


@lru_cache(maxsize=None)
def field_denominator_bound(K: NumberField) -> int:
    """w_2(K): the largest w such that K(zeta_w)/K has exponent-2 Galois group.

    Computed from the real cyclotomic subfields of K; a subfield that cannot
    be excluded is treated as present, so the result only ever grows.
    """
    B = 8
    b = 3
    while K.m % (2 ** (b - 2)) == 0 and contains_real_cyclotomic(K, 2 ** b) != NO:
        B *= 2
        b += 1
    for p in _primes_small(2 * K.m + 1):
        if p == 2:
            continue
        q = p
        while K.m % (euler_phi(q) // 2) == 0 and (q == 3 or contains_real_cyclotomic(K, q) != NO):
            B *= p
            q *= p
    return B


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZetaValues:
    zeta2: Zeta2Estimate
    zeta_minus1: Fraction
    cutoff: int
    B: int


def zeta_minus1_interval(K: NumberField, z2: Zeta2Estimate):
    """(-1)^m 2^-m pi^-2m d_k^(3/2) zeta_k(2) as an outward-rounded interval."""
    def compute():
        d = iv.mpf(K.d_k)
        val = d * iv.sqrt(d) * z2.interval() / (iv.mpf(2) ** K.m * iv.pi ** (2 * K.m))
        return -val if K.m % 2 else val
    return _with_iv_prec(compute)


def _reconstruct(interval, B):
    a, b = _endpoints(interval)
    lo = math.ceil(a * B)
    hi = math.floor(b * B)
    if a <= 0 <= b:
        return None, "interval contains zero"
    if hi < lo:
        return None, "no rational with the allowed denominator in the interval"
    if hi > lo:
        return None, f"{hi - lo + 1} rationals in the interval"
    return Fraction(lo, B), ""


def zeta_values(K: NumberField, cutoff: int = DEFAULT_CUTOFF, bound: int | None = None,
                max_doublings: int = MAX_DOUBLINGS) -> ZetaValues:
    B = field_denominator_bound(K) if bound is None else bound
    c = cutoff
    why = ""
    for _ in range(max_doublings + 1):
        z2 = zeta2_truncated(K, c)
        value, why = _reconstruct(zeta_minus1_interval(K, z2), B)
        if value is not None:
            return ZetaValues(z2, value, c, B)
        c *= 2
    raise AmbiguousReconstruction(f"d_k = {K.d_k}: {why} after {max_doublings} doublings")


def zeta_minus1(K: NumberField, cutoff: int = DEFAULT_CUTOFF) -> Fraction:
    return zeta_values(K, cutoff).zeta_minus1


def zeta_q_2m(m: int):
    """zeta(2m) for the rationals, as a lower reference for zeta_k(2)."""
    with mpmath.workprec(IV_BITS):
        return mpmath.zeta(2 * m)


# ---------------------------------------------------------------------------
# exact cyclotomic numbers

@lru_cache(maxsize=None)
def _cyclo(n):
    from .polyfield import cyclotomic_poly
    return cyclotomic_poly(n)


@dataclass(frozen=True)
class CyclotomicNumber:
    """Element of Q(zeta_n), reduced modulo the n-th cyclotomic polynomial."""

    n: int
    coeffs: tuple

    @classmethod
    def of(cls, n, coeffs):
        c = [Fraction(x) for x in coeffs]
        phi = _cyclo(n)
        d = len(phi) - 1
        for k in range(len(c) - 1, d - 1, -1):
            t = c[k]
            if t:
                for j in range(d + 1):
                    c[k - d + j] -= t * phi[j]
        c = (c + [Fraction(0)] * d)[:d]
        return cls(n, tuple(c))

    @classmethod
    def root_power(cls, n, k):
        c = [0] * n
        c[k % n] = 1
        return cls.of(n, c)

    @classmethod
    def rational(cls, x, n=1):
        return cls.of(n, [x])

    def lift(self, N):
        if N % self.n:
            raise ValidationError("can only lift to a multiple of the order")
        s = N // self.n
        c = [Fraction(0)] * N
        for i, x in enumerate(self.coeffs):
            c[(i * s) % N] += x
        return CyclotomicNumber.of(N, c)

    def _common(self, other):
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(other, self.n)
        N = math.lcm(self.n, other.n)
        return self.lift(N), other.lift(N)

    def __add__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.n, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __mul__(self, other):
        a, b = self._common(other)
        out = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    out[i + j] += x * y
        return CyclotomicNumber.of(a.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CyclotomicNumber):
            if isinstance(other, (int, Fraction)):
                other = CyclotomicNumber.rational(other)
            else:
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash(self.coeffs) if self.is_rational() else hash((self.n, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValidationError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __str__(self):
        terms = []
        for i, x in enumerate(self.coeffs):
            if x:
                terms.append(str(x) if i == 0 else f"{x}*z{self.n}^{i}")
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# Dirichlet characters

def _primitive_root(pk, p):
    phi = euler_phi(pk)
    factors = [r for r in _primes_small(phi) if phi % r == 0]
    for g in range(2, pk):
        if math.gcd(g, p) == 1 and all(pow(g, phi // r, pk) != 1 for r in factors):
            return g
    return 1


def _unit_group_generators(N):
    """Generators and orders of (Z/N)^* as a product of cyclic groups."""
    gens = []
    n = N
    for p in _primes_small(N):
        if n % p:
            continue
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        pk = p ** k
        other = N // pk
        local = []
        if p == 2:
            if k >= 2:
                local.append((pk - 1, 2))
            if k >= 3:
                local.append((5, 2 ** (k - 2)))
        else:
            local.append((_primitive_root(pk, p), euler_phi(pk)))
        for g, order in local:
            # CRT: g mod p^k, 1 mod the rest
            x = g if other == 1 else (g * other * pow(other, -1, pk) + pk * pow(pk, -1, other)) % N
            gens.append((x, order))
    return gens


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(a) = zeta_L^exponents[a] for a coprime to N; None marks non-units."""

    modulus: int
    L: int
    exponents: tuple

    def __call__(self, a: int) -> CyclotomicNumber:
        e = self.exponents[a % self.modulus]
        if e is None:
            return CyclotomicNumber.rational(0, self.L)
        return CyclotomicNumber.root_power(self.L, e)

    @property
    def is_even(self) -> bool:
        return self.exponents[(self.modulus - 1) % self.modulus] == 0

    @property
    def order(self) -> int:
        g = self.L
        for e in self.exponents:
            if e is not None:
                g = math.gcd(g, e)
        return self.L // g

    @property
    def is_trivial(self) -> bool:
        return all(e in (0, None) for e in self.exponents)

    @property
    def conductor(self) -> int:
        N = self.modulus
        for d in range(1, N + 1):
            if N % d:
                continue
            if all(e in (0, None) for a, e in enumerate(self.exponents)
                   if e is not None and (a - 1) % d == 0):
                return d
        return N

    def primitive(self) -> "DirichletCharacter":
        f = self.conductor
        if f == self.modulus:
            return self
        N = self.modulus
        exps = []
        for a in range(f):
            if math.gcd(a, f) != 1:
                exps.append(None)
                continue
            lift = next(b for b in range(a, a + N * f, f) if math.gcd(b, N) == 1) if f > 1 else 1
            exps.append(self.exponents[lift % N])
        if f == 1:
            exps = [0]
        return DirichletCharacter(f, self.L, tuple(exps))


def dirichlet_characters(N: int) -> list:
    """All phi(N) characters modulo N."""
    if N < 1:
        raise ValidationError("modulus must be positive")
    gens = _unit_group_generators(N)
    L = 1
    for _, order in gens:
        L = math.lcm(L, order)
    logs = {}
    for ts in product(*[range(o) for _, o in gens]):
        a = 1 % N
        for (g, _), t in zip(gens, ts):
            a = a * pow(g, t, N) % N
        logs[a] = ts
    if N == 1:
        logs = {0: ()}
    chars = []
    for ss in product(*[range(o) for _, o in gens]):
        exps = []
        for a in range(N):
            if a not in logs:
                exps.append(None)
            else:
                exps.append(sum(s * t * (L // o) for s, t, (_, o) in zip(ss, logs[a], gens)) % L)
        chars.append(DirichletCharacter(N, L, tuple(exps)))
    return chars


def bernoulli_B2(chi: DirichletCharacter) -> CyclotomicNumber:
    """Generalized Bernoulli number B_{2,chi} of the primitive character behind chi."""
    if not chi.is_even:
        raise OddCharacter("B_2 is only needed for even characters")
    prim = chi.primitive()
    f = prim.modulus
    total = CyclotomicNumber.rational(0, prim.L)
    for a in range(1, f + 1):
        x = Fraction(a, f)
        total = total + prim(a) * (x * x - x + Fraction(1, 6))
    return total * f


def zeta_minus1_abelian(N: int) -> Fraction:
    """zeta(-1) of Q(zeta_N)^+ as a product of L(-1, chi) = -B_{2,chi}/2 over even chi."""
    if euler_phi(N) // 2 < 1:
        raise ValidationError("modulus too small")
    acc = CyclotomicNumber.rational(1)
    for chi in dirichlet_characters(N):
        if chi.is_even:
            acc = acc * (bernoulli_B2(chi) * Fraction(-1, 2))
    return acc.to_fraction()
