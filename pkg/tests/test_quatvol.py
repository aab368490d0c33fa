from fractions import Fraction
import math

import mpmath
import pytest

from fakeprod.errors import NotDivision, ParityViolation, UnknownIdealTag, UnsupportedS, ValidationError
from fakeprod.primedec import PrimeIdeal, prime_splitting
from fakeprod.quatvol import (
    algebra_new,
    below_root_disc_ceiling,
    brauer_siegel_hbound,
    candidate_ideals,
    cf_lower_bound,
    covolume_norm1,
    dyadic_prime_count,
    euler_crosscheck,
    g_invariant,
    gkb_volume,
    max_degree,
    maximal_lattice_index,
    odlyzko_voight_min,
    ramification_sets,
    regulator_lower_bound,
    root_disc_ceiling,
    volume_report,
)
from fakeprod.zetacalc import _endpoints
from known_fields import ROOT_DISC_TABLE


def ideal(K, tag):
    p = int(tag.split("^")[0])
    return next(i for i in prime_splitting(K, p).ideals if i.tag == tag)


def test_known_fake_covolumes(by_disc, zetas):
    A = algebra_new(by_disc[2000], 4, [ideal(by_disc[2000], "2^2"), ideal(by_disc[2000], "5^1")])
    assert covolume_norm1(A, zetas[by_disc[2000]]) == 16
    B = algebra_new(by_disc[2304], 4, [ideal(by_disc[2304], "2^1"), ideal(by_disc[2304], "3^2")])
    assert covolume_norm1(B, zetas[by_disc[2304]]) == 16


def test_covolume_sign_follows_degree_gap(by_disc, zetas):
    K = by_disc[38569]
    A = algebra_new(K, 4, [ideal(K, "7^1")])
    assert covolume_norm1(A, zetas[K]) == 16
    B = algebra_new(K, 3, [])
    # odd n gives a negative Euler number
    assert covolume_norm1(B, zetas[K]) == zetas[K] / 2 < 0


@pytest.mark.parametrize("dk,tags", [(2000, ["2^2", "5^1"]), (1957, ["3^1", "7^1"]),
                                     (38569, ["7^1"]), (453789, [])])
def test_exact_volume_inside_analytic_interval(by_disc, dk, tags):
    K = by_disc[dk]
    rep = volume_report(algebra_new(K, 4, [ideal(K, t) for t in tags]))
    assert rep.consistent
    assert rep.relative_width < 1e-3
    assert rep.required_index * rep.vol_norm1 == 16


def test_crosscheck_sign_for_odd_n(by_disc):
    K = by_disc[38569]
    A = algebra_new(K, 3, [])
    lo, hi = _endpoints(euler_crosscheck(A))
    assert lo <= covolume_norm1(A) <= hi < 0


def test_algebra_validation(by_disc):
    K = by_disc[2000]
    p2, p5 = ideal(K, "2^2"), ideal(K, "5^1")
    with pytest.raises(ParityViolation):
        algebra_new(K, 4, [p2])
    with pytest.raises(NotDivision):
        algebra_new(K, 4, [])
    with pytest.raises(UnknownIdealTag):
        algebra_new(K, 4, [p2, PrimeIdeal(5, 1, 1)])
    with pytest.raises(ValidationError):
        algebra_new(K, 4, [p2, p2])
    with pytest.raises(ValidationError):
        algebra_new(K, 5, [p2, p5])
    assert algebra_new(K, 3, [p2]).r == 1
    assert algebra_new(by_disc[453789], 4, []).r == 0


def test_algebra_label(by_disc):
    K = by_disc[2000]
    A = algebra_new(K, 4, [ideal(K, "5^1"), ideal(K, "2^2")])
    assert [i.tag for i in A.ram] == ["2^2", "5^1"]
    assert "2000" in A.label


def test_max_degree():
    assert max_degree() == 412
    assert cf_lower_bound(412).b <= 1 < cf_lower_bound(413).a


def test_cf_bound_grows_with_degree_and_index():
    assert cf_lower_bound(10).b < cf_lower_bound(11).a
    assert cf_lower_bound(10, 1).b < cf_lower_bound(10, 2).a
    with pytest.raises(ValidationError):
        cf_lower_bound(0)


@pytest.mark.parametrize("m", sorted(ROOT_DISC_TABLE))
def test_root_disc_ceiling_table(m):
    printed, minimum = ROOT_DISC_TABLE[m]
    c = root_disc_ceiling(m)
    assert math.floor(float(c.a) * 1000) == int(printed.replace(".", ""))
    assert odlyzko_voight_min(m) == minimum
    assert (minimum < c.a) == (m <= 6)


def test_root_disc_ceiling_closed_form():
    with mpmath.workdps(120):
        for m in range(1, 12):
            exact = (2 * mpmath.pi) ** (mpmath.mpf(4) / 3) / 2 ** (mpmath.mpf(2) / (3 * m))
            lo, hi = _endpoints(root_disc_ceiling(m))
            assert lo <= Fraction(mpmath.nstr(exact, 110)) <= hi


def test_every_bundled_field_is_below_ceiling(fields):
    assert all(below_root_disc_ceiling(K) for K in fields)


def test_no_minimum_for_large_degree():
    with pytest.raises(ValidationError):
        odlyzko_voight_min(9)


def test_class_number_bound(by_disc):
    K = by_disc[725]
    h = brauer_siegel_hbound(K, 2, float(regulator_lower_bound(4)))
    assert h >= 1
    with pytest.raises(UnsupportedS):
        brauer_siegel_hbound(K, 3)
    with pytest.raises(ValidationError):
        brauer_siegel_hbound(K, 2, 0)


def test_normalizer_volume_relation(by_disc):
    # vol(normalizer) * 2^r [k_A:k] = Euler number of the norm-1 group, when no Np = 2
    K = by_disc[2304]
    A = algebra_new(K, 4, [ideal(K, "2^1"), ideal(K, "3^2")])
    assert dyadic_prime_count(K) == 1
    g = gkb_volume(A)
    assert g.a <= 4 <= g.b
    assert g_invariant(K, 2).b < g_invariant(K, 1).a


def test_lattice_indices():
    assert maximal_lattice_index(2) == (4, frozenset({Fraction(1)}))
    idx, eichler = maximal_lattice_index(1, 2, [3, 5])
    assert idx == 4
    assert eichler == {Fraction(24), Fraction(12), Fraction(6)}
    with pytest.raises(ValidationError):
        maximal_lattice_index(-1)


def test_candidate_ideals_respect_budget(by_disc):
    K = by_disc[38569]
    ids = candidate_ideals(K, Fraction(6))
    assert [i.tag for i in ids] == ["7^1"]
    assert list(ramification_sets(ids, 1)) == [(), (ids[0],)]
