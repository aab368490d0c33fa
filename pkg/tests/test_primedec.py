import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from fakeprod.errors import IndexDivisible, MissingSplitting, ValidationError
from fakeprod.polyfield import IntPolynomial, cyclotomic_poly, euler_phi, field_new, real_cyclotomic_minpoly
from fakeprod.primedec import (
    NONSPLIT,
    SPLIT,
    UNDETERMINED,
    AbelianPresentation,
    PrimeIdeal,
    abelian_splitting,
    cyclotomic_splitting,
    dedekind_index_test,
    factor_mod_p,
    find_ideal,
    kummer_dedekind,
    multiplicative_order,
    prime_splitting,
    real_cyclotomic_presentation,
    splits_in_quadratic_ext,
)
from known_fields import FIELD_ROWS, SPLITTING_ERRATA

SMALL_PRIMES = [p for p in range(2, 100) if all(p % d for d in range(2, p))]


def polymul_mod(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def polymod(a, b, p):
    a = [c % p for c in a]
    while len(a) >= len(b):
        c = a[-1]
        if c:
            for i in range(len(b)):
                a[len(a) - len(b) + i] = (a[len(a) - len(b) + i] - c * b[i]) % p
        a.pop()
    return a


def brute_irreducible(g, p):
    d = len(g) - 1
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not any(polymod(list(g), list(low) + [1], p)):
                return False
    return True


small_poly = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(lambda c: IntPolynomial(tuple(c) + (1,)))


@settings(max_examples=150, deadline=None)
@given(small_poly, st.sampled_from([2, 3, 5, 7]))
def test_factorization_recombines_into_irreducibles(f, p):
    factors = factor_mod_p(f, p)
    prod = [1]
    for g, k in factors:
        assert brute_irreducible(g.coeffs, p)
        for _ in range(k):
            prod = polymul_mod(prod, list(g.coeffs), p)
    assert prod == [c % p for c in f.coeffs]
    assert len({g for g, _ in factors}) == len(factors)


@settings(max_examples=100, deadline=None)
@given(small_poly, st.sampled_from([2, 3, 5, 7, 11]))
def test_linear_factors_match_root_count(f, p):
    roots = sum(1 for x in range(p) if f(x) % p == 0)
    assert roots == sum(1 for g, _ in factor_mod_p(f, p) if g.degree == 1)


def test_factorization_of_cyclotomic_polynomials():
    for n in (5, 7, 9, 13, 20, 21):
        for p in SMALL_PRIMES[:12]:
            if n % p == 0:
                continue
            e, f, g = cyclotomic_splitting(n, p)
            factors = factor_mod_p(IntPolynomial(cyclotomic_poly(n)), p)
            assert e == 1
            assert sorted(h.degree for h, _ in factors) == [f] * g


def test_dedekind_criterion():
    assert dedekind_index_test(IntPolynomial.parse("x^2 - 5"), 2)
    assert not dedekind_index_test(IntPolynomial.parse("x^2 - 5"), 5)
    assert not dedekind_index_test(IntPolynomial.parse("x^4 - 5x^2 + 5"), 2)
    with pytest.raises(IndexDivisible):
        kummer_dedekind(field_new(IntPolynomial.parse("x^2 - 5"), 5), 2)


def test_multiplicative_order_by_enumeration():
    for n in range(2, 60):
        for a in range(1, n):
            if math.gcd(a, n) == 1:
                k = multiplicative_order(a, n)
                assert pow(a, k, n) == 1
                assert all(pow(a, j, n) != 1 for j in range(1, k))


@pytest.mark.parametrize("n", [5, 8, 9, 12, 15, 16, 20, 24, 27, 36])
def test_cyclotomic_splitting_multiplies_out(n):
    for p in SMALL_PRIMES[:10]:
        e, f, g = cyclotomic_splitting(n, p)
        assert e * f * g == euler_phi(n)


@pytest.mark.parametrize("N", [5, 7, 8, 9, 11, 12, 13, 15, 16, 20, 21, 24, 28])
def test_group_splitting_matches_kummer_on_real_cyclotomic_fields(N):
    f = real_cyclotomic_minpoly(N)
    pres = real_cyclotomic_presentation(N)
    assert pres.degree == f.degree
    for p in SMALL_PRIMES:
        if dedekind_index_test(f, p):
            continue
        e, fd, g = abelian_splitting(pres, p)
        factors = factor_mod_p(f, p)
        assert sorted((k, h.degree) for h, k in factors) == [(e, fd)] * g


def test_presentation_validation():
    with pytest.raises(ValidationError):
        AbelianPresentation(20, frozenset({1, 2}))
    with pytest.raises(ValidationError):
        AbelianPresentation(20, frozenset({1, 3}))


def test_fundamental_identity_on_all_fields(fields):
    for K in fields:
        for p in SMALL_PRIMES:
            sp = prime_splitting(K, p)
            assert sum(e * f for e, f in sp.factors) == K.m


@pytest.mark.parametrize("dk", [2000, 2304])
def test_tagged_fields_abelian_and_kummer_agree(by_disc, dk):
    K = by_disc[dk]
    pres = real_cyclotomic_presentation(K.cyclotomic_tag)
    for p in SMALL_PRIMES:
        if dedekind_index_test(K.f, p):
            continue
        e, f, g = abelian_splitting(pres, p)
        assert kummer_dedekind(K, p).factors == tuple([(e, f)] * g)


def _cells():
    for _, dk, _, _, cells in FIELD_ROWS:
        for p, fs in cells.items():
            if (dk, p) not in SPLITTING_ERRATA:
                yield dk, p, fs


@pytest.mark.parametrize("dk,p,expected", list(_cells()))
def test_published_residue_degrees(by_disc, dk, p, expected):
    assert prime_splitting(by_disc[dk], p).residue_degrees == sorted(expected)


@pytest.mark.parametrize("key,recomputed", sorted(SPLITTING_ERRATA.items()))
def test_disputed_cells_hold_under_both_backends(by_disc, key, recomputed):
    dk, p = key
    K = by_disc[dk]
    assert prime_splitting(K, p).residue_degrees == recomputed
    # independent confirmation straight from the factorization mod p
    if not dedekind_index_test(K.f, p):
        assert sorted(g.degree for g, _ in factor_mod_p(K.f, p)) == recomputed


def test_ideal_tags(by_disc):
    assert [i.tag for i in prime_splitting(by_disc[38569], 7).ideals] == ["7^1", "7^4"]
    assert [i.tag for i in prime_splitting(by_disc[2000], 2).ideals] == ["2^2"]
    assert [i.tag for i in prime_splitting(by_disc[725], 11).ideals] == ["11^1", "11^1'", "11^2"]
    assert find_ideal(by_disc[2000], PrimeIdeal(5, 4, 1))
    assert not find_ideal(by_disc[2000], PrimeIdeal(5, 1, 1))


def test_override_rows_use_table_data(by_disc):
    sp = prime_splitting(by_disc[2225], 2)
    assert sp.source == "external"
    assert sp.residue_degrees == [2, 2]


def test_missing_splitting_is_reported():
    K = field_new(IntPolynomial.parse("x^2 - 5"), 5)
    with pytest.raises(MissingSplitting):
        prime_splitting(K, 2)


def test_splitting_in_cyclotomic_extension(by_disc):
    K = by_disc[2000]
    p5 = prime_splitting(K, 5).ideals[0]
    p2 = prime_splitting(K, 2).ideals[0]
    assert splits_in_quadratic_ext(K, p2, 5) == NONSPLIT  # 4 mod 5 != 1
    assert splits_in_quadratic_ext(K, p5, 4) == SPLIT  # 5 = 1 mod 4
    assert splits_in_quadratic_ext(K, p5, 5, backend="norm") == UNDETERMINED
    with pytest.raises(ValidationError):
        splits_in_quadratic_ext(K, p5, 5, backend="other")


@pytest.mark.parametrize("dk,qs", [(2000, (3, 4, 5, 20)), (2304, (3, 4, 8, 12, 24)),
                                   (453789, (3, 4, 7, 21)), (1259712, (3, 4, 9, 36))])
def test_norm_rule_agrees_with_group_rule(by_disc, dk, qs):
    K = by_disc[dk]
    for q in qs:
        for p in SMALL_PRIMES[:15]:
            if q % p == 0:
                continue
            for ideal in prime_splitting(K, p).ideals:
                by_group = splits_in_quadratic_ext(K, ideal, q, backend="group")
                if by_group == UNDETERMINED:
                    continue
                assert splits_in_quadratic_ext(K, ideal, q, backend="norm") == by_group
