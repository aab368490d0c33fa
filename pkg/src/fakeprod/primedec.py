"""Decomposition of rational primes in number fields."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import IndexDivisible, MissingSplitting, ValidationError
from .polyfield import IntPolynomial, NumberField, euler_phi

SPLIT = "split"
NONSPLIT = "nonsplit"
UNDETERMINED = "undetermined"


# ---------------------------------------------------------------------------
# polynomials over F_p: lists of ints in [0, p), constant first, trimmed

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _norm(a, p):
    return _trim([x % p for x in a])


def _add(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _norm(out, p)


def _divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(q), a


def _monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _gcd(a, b, p):
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p)


def _powmod(base, e, mod, p):
    result = [1]
    base = _divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _divmod(_mul(result, base, p), mod, p)[1]
        base = _divmod(_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _deriv(a, p):
    return _norm([i * a[i] for i in range(1, len(a))], p)


def _pth_root(a, p):
    return [a[i] for i in range(0, len(a), p)]


def _squarefree(f, p):
    """Yun-style squarefree decomposition over F_p: list of (g, multiplicity)."""
    out = []
    df = _deriv(f, p)
    if not df:
        for g, k in _squarefree(_pth_root(f, p), p):
            out.append((g, k * p))
        return out
    c = _gcd(f, df, p)
    w = _divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        z = _divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((_monic(z, p), i))
        i += 1
        w = y
        c = _divmod(c, y, p)[0]
    if len(c) > 1:
        for g, k in _squarefree(_pth_root(c, p), p):
            out.append((g, k * p))
    return out


def _distinct_degree(g, p):
    out = []
    h = [0, 1]
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, g, p)
        t = _gcd(g, _sub(h, [0, 1], p), p)
        if len(t) > 1:
            out.append((t, d))
            g = _divmod(g, t, p)[0]
            h = _divmod(h, g, p)[1]
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def _equal_degree(g, d, p, rng):
    if len(g) - 1 == d:
        return [g]
    n = len(g) - 1
    while True:
        a = _norm([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map F_{2^d} -> F_2
            t, s = a, a
            for _ in range(d - 1):
                s = _divmod(_mul(s, s, p), g, p)[1]
                t = _add(t, s, p)
            b = t
        else:
            b = _sub(_powmod(a, (p ** d - 1) // 2, g, p), [1], p)
        u = _gcd(g, b, p)
        if 1 < len(u) < len(g):
            v = _divmod(g, u, p)[0]
            return _equal_degree(u, d, p, rng) + _equal_degree(_monic(v, p), d, p, rng)


def _factor_list(coeffs, p):
    f = _monic(_norm(list(coeffs), p), p)
    rng = random.Random(1000003 * p + len(f))
    out = []
    for g, mult in _squarefree(f, p):
        for h, d in _distinct_degree(g, p):
            for factor in _equal_degree(h, d, p, rng):
                out.append((tuple(factor), mult))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def factor_mod_p(f: IntPolynomial, p: int) -> list:
    """Monic irreducible factors of f over F_p with multiplicities."""
    return [(IntPolynomial(g), k) for g, k in _factor_list(f.coeffs, p)]


def dedekind_index_test(f: IntPolynomial, p: int) -> bool:
    """True iff p divides the index [O_k : Z[theta]] (Dedekind's criterion)."""
    factors = _factor_list(f.coeffs, p)
    g, h = [1], [1]
    for t, e in factors:
        g = _zmul(g, list(t))
        for _ in range(e - 1):
            h = _zmul(h, list(t))
    gh = _zmul(g, h)
    n = max(len(gh), len(f.coeffs))
    diff = [(f.coeffs[i] if i < len(f.coeffs) else 0) - (gh[i] if i < len(gh) else 0) for i in range(n)]
    assert all(c % p == 0 for c in diff)
    F = _norm([c // p for c in diff], p)
    if not F:
        z = _gcd(_norm(g, p), _norm(h, p), p)
    else:
        z = _gcd(_gcd(F, _norm(g, p), p), _norm(h, p), p)
    return len(z) > 1


def _zmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeIdeal:
    """Tag for a prime ideal: rational prime, e, f and an ordinal among equal (e, f)."""

    p: int
    e: int
    f: int
    j: int = 0

    @property
    def norm(self) -> int:
        return self.p ** self.f

    @property
    def tag(self) -> str:
        return f"{self.p}^{self.f}" + "'" * self.j

    def __str__(self):
        return f"p{self.p}(e={self.e},f={self.f})" + "'" * self.j


@dataclass(frozen=True)
class PrimeSplitting:
    p: int
    factors: tuple
    source: str

    @property
    def degree(self) -> int:
        return sum(e * f for e, f in self.factors)

    @property
    def residue_degrees(self) -> list:
        return sorted(f for _, f in self.factors)

    @property
    def norms(self) -> list:
        return [self.p ** f for _, f in self.factors]

    @property
    def ideals(self) -> list:
        seen = {}
        out = []
        for e, f in self.factors:
            j = seen.get((e, f), 0)
            seen[(e, f)] = j + 1
            out.append(PrimeIdeal(self.p, e, f, j))
        return out

    def is_unramified(self) -> bool:
        return all(e == 1 for e, _ in self.factors)


def _splitting(p, factors, source):
    return PrimeSplitting(p, tuple(sorted((int(e), int(f)) for e, f in factors)), source)


def kummer_dedekind(K: NumberField, p: int) -> PrimeSplitting:
    if dedekind_index_test(K.f, p):
        raise IndexDivisible(f"{p} divides the index of Z[theta] for d_k = {K.d_k}")
    return _splitting(p, [(mult, g.degree) for g, mult in factor_mod_p(K.f, p)], "kummer")


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    x, k = a % n, 1
    while x != 1:
        x = x * a % n
        k += 1
    return k


def cyclotomic_splitting(n: int, p: int) -> tuple:
    """(e, f, g) for p in Q(zeta_n)."""
    nu = _vp(n, p)
    rest = n // p ** nu
    e = euler_phi(p ** nu)
    f = multiplicative_order(p, rest)
    g = euler_phi(n) // (e * f)
    return e, f, g


@dataclass(frozen=True)
class AbelianPresentation:
    """Subfield of Q(zeta_M) fixed by the subgroup H of (Z/M)^*."""

    M: int
    H: frozenset

    def __post_init__(self):
        H = frozenset(a % self.M for a in self.H)
        object.__setattr__(self, "H", H)
        if any(math.gcd(a, self.M) != 1 for a in H):
            raise ValidationError("subgroup elements must be units")
        if any(a * b % self.M not in H for a in H for b in H):
            raise ValidationError("H is not closed under multiplication")

    @property
    def degree(self) -> int:
        return euler_phi(self.M) // len(self.H)


def real_cyclotomic_presentation(N: int) -> AbelianPresentation:
    return AbelianPresentation(N, frozenset({1 % N, (N - 1) % N}))


def _subgroup(gens, M):
    group = {1 % M}
    frontier = list(group)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % M
            if y not in group:
                group.add(y)
                frontier.append(y)
    return group


def abelian_splitting(pres: AbelianPresentation, p: int) -> tuple:
    """(e, f, g) for p in the fixed field of pres.H, from inertia and decomposition groups."""
    M = pres.M
    nu = _vp(M, p)
    pnu = p ** nu
    rest = M // pnu
    units = [a for a in range(M) if math.gcd(a, M) == 1] if M > 1 else [0]
    inertia = {a for a in units if (a - 1) % rest == 0}
    # Frobenius lift: p mod rest, 1 mod p^nu
    frob = next(a for a in units if (a - p) % rest == 0 and (a - 1) % pnu == 0) if rest > 1 else 1 % M
    decomp = _subgroup(list(inertia) + [frob], M)
    H = pres.H
    IH = {a * h % M for a in inertia for h in H}
    DH = {a * h % M for a in decomp for h in H}
    e = len(IH) // len(H)
    f = len(DH) // len(H) // e
    g = pres.degree // (e * f)
    return e, f, g


def _abelian_for(K: NumberField):
    if K.cyclotomic_tag is None:
        return None
    return real_cyclotomic_presentation(K.cyclotomic_tag)


@lru_cache(maxsize=None)
def prime_splitting(K: NumberField, p: int) -> PrimeSplitting:
    """Splitting of p in K: Kummer-Dedekind, then the abelian backend, then table data."""
    try:
        sp = kummer_dedekind(K, p)
    except IndexDivisible:
        pres = _abelian_for(K)
        if pres is not None:
            e, f, g = abelian_splitting(pres, p)
            sp = _splitting(p, [(e, f)] * g, "abelian")
        else:
            ext = K.external_splitting(p)
            if ext is None:
                raise MissingSplitting(
                    f"no splitting data for p = {p} in the field with d_k = {K.d_k}") from None
            sp = _splitting(p, ext, "external")
    if sp.degree != K.m:
        raise ValidationError(f"splitting of {p} violates the fundamental identity")
    return sp


def find_ideal(K: NumberField, ideal: PrimeIdeal) -> bool:
    return ideal in prime_splitting(K, ideal.p).ideals


def _split_by_norm(ideal: PrimeIdeal, q: int) -> str:
    # Frobenius of the ideal acts on zeta_q by its norm
    return SPLIT if ideal.norm % q == 1 % q else NONSPLIT


def _split_by_group(K: NumberField, ideal: PrimeIdeal, q: int) -> str:
    N = K.cyclotomic_tag
    if N is None:
        return UNDETERMINED
    M = math.lcm(N, q)
    units = [a for a in range(M) if math.gcd(a, M) == 1]
    H_k = frozenset(a for a in units if (a - 1) % N == 0 or (a + 1) % N == 0)
    H_L = frozenset(a for a in H_k if (a - 1) % q == 0)
    if len(H_k) != 2 * len(H_L):
        return UNDETERMINED
    g_k = abelian_splitting(AbelianPresentation(M, H_k), ideal.p)[2]
    g_L = abelian_splitting(AbelianPresentation(M, H_L), ideal.p)[2]
    return SPLIT if g_L == 2 * g_k else NONSPLIT


def splits_in_quadratic_ext(K: NumberField, ideal: PrimeIdeal, q: int, backend: str = "auto") -> str:
    """Does the prime ideal split in k(zeta_q)/k?

    ``backend`` is "norm" (needs p not dividing q), "group" (needs a conductor tag)
    or "auto", which prefers the norm rule.
    """
    if backend not in ("auto", "norm", "group"):
        raise ValidationError(f"unknown backend {backend!r}")
    if backend == "group" or (backend == "auto" and q % ideal.p == 0):
        return _split_by_group(K, ideal, q)
    if q % ideal.p == 0:
        return UNDETERMINED
    return _split_by_norm(ideal, q)
