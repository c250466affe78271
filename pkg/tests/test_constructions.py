import random
from fractions import Fraction

import pytest

from nlzeros import constructions as C
from nlzeros.diskcount import count_exact
from nlzeros.fixtures import (
    BARKER,
    BOUNDARY_K5,
    LARGE_NEWMAN,
    PRODUCT_F,
    PRODUCT_G,
    ROT_BARKER_N,
    SUPER_NEWMAN,
)
from nlzeros.minima import certify_min, sample_min
from nlzeros.poly import DomainError, IntPoly, from_string, rotate


def test_append_strict():
    f = from_string(LARGE_NEWMAN[6][0])
    res = C.append_monomial(f, 20)
    assert res.status == C.ROUCHE
    assert res.count.as_tuple() == (6, 0, 14)
    assert res.contract_holds


@pytest.mark.parametrize("n", [11, 13, 15, 21])
def test_append_boundary_odd(n):
    res = C.append_monomial(BOUNDARY_K5, n)
    assert BOUNDARY_K5(-1) == -1
    assert res.status == C.BOUNDARY
    assert (res.count.inside, res.count.on_circle) == (5, 0)


@pytest.mark.parametrize("n", [10, 12, 14])
def test_append_boundary_even_hits_minus_one(n):
    res = C.append_monomial(BOUNDARY_K5, n)
    assert res.poly(-1) == 0
    assert res.status == C.UNVERIFIED
    assert not res.contract_holds


def test_append_needs_room():
    with pytest.raises(DomainError):
        C.append_monomial(BOUNDARY_K5, 9)


def test_sandwich_super_newman():
    res = C.sandwich(SUPER_NEWMAN, 1, 40)
    assert res.status == C.ROUCHE
    assert (res.count.inside, res.count.on_circle) == (19, 0)


@pytest.mark.parametrize("n", [60, 61])
def test_sandwich_sweep(n):
    # r = n - 39 ... covers k in [19, n - 21]
    ks = set()
    for r in range(1, n - 38):
        res = C.sandwich(SUPER_NEWMAN, r, n)
        assert res.contract_holds
        ks.add(res.count.inside)
    assert set(range(19, n - 20)) <= ks


def test_sandwich_rejects_r0():
    with pytest.raises(DomainError):
        C.sandwich(SUPER_NEWMAN, 0, 40)


def test_fraction_intervals_example():
    fi = C.fraction_intervals(2, 3, 3, 5)
    got = sorted(fi.intervals)
    want = sorted([(Fraction(1, 3), Fraction(7, 20)), (Fraction(7, 18), Fraction(2, 5)),
                   (Fraction(3, 5), Fraction(11, 18)), (Fraction(13, 20), Fraction(2, 3))])
    assert got == want
    i1, i2, i3, i4 = fi.intervals
    assert (1 - i1[1], 1 - i1[0]) == i4 and (1 - i2[1], 1 - i2[0]) == i3


def test_fraction_interval_preimages():
    a, b, c, d = 2, 3, 3, 5
    fi = C.fraction_intervals(a, b, c, d)
    rng = random.Random(11)
    hits = 0
    while hits < 100:
        n = rng.randint(20, 4000)
        k = rng.randint(1, n - 1)
        x = Fraction(k, n)
        lo1, hi1 = fi.intervals[0]
        lo2, hi2 = fi.intervals[1]
        if not (lo1 < x < hi1 or lo2 < x < hi2):
            continue
        l, m = C.solve_lm(a, b, c, d, k, n)
        in_t1 = m > 0 and l > d * m
        in_t2 = l > 0 and m > c * l
        assert in_t1 or in_t2
        assert (a * l + b * m, c * l + d * m) == (k, n)
        hits += 1


def test_spaced_product_example():
    res = C.spaced_product(PRODUCT_F, PRODUCT_G, 6, 1)
    assert res.count.as_tuple() == (15, 0, 8)
    assert res.poly.degree == 23


def test_spaced_product_collision():
    with pytest.raises(C.ConstructionError, match="exponent 5"):
        C.spaced_product(PRODUCT_F, PRODUCT_G, 1, 1)


def test_spaced_product_grid():
    for l in range(1, 11):
        for m in range(1, 11):
            try:
                res = C.spaced_product(PRODUCT_F, PRODUCT_G, l, m)
            except C.ConstructionError:
                continue
            assert res.count.inside == 2 * l + 3 * m
            assert res.count.on_circle == 0
            assert res.poly.degree == 3 * l + 5 * m


def test_rotation_profile_barker():
    prof = C.rotation_profile(BARKER)
    assert [e.j for e in prof] == list(range(-6, 7))
    assert tuple(e.count.inside for e in prof) == ROT_BARKER_N
    strong = [e.j for e in prof if e.rouche_next]
    assert {-5, -4, -1, 0} <= set(strong)


def test_rotation_j2_minimum_is_small():
    # the j = 2 rotation nearly touches the circle
    g = rotate(BARKER, 2)
    assert sample_min(g, 1 << 16) < 0.011


def test_rotation_of_constant_pattern():
    f = IntPoly([1, 1, 1])
    assert rotate(f, 3) == f
    prof = C.rotation_profile(f)
    assert len({e.count.as_tuple() for e in prof}) == 1


def test_rotation_needs_nonzero_coefficients():
    with pytest.raises(DomainError):
        C.rotation_profile(IntPoly([1, 0, 1]))


@pytest.mark.parametrize("m,l,deg,N", [(2, 1, 7, 4), (1, 3, 6, 3)])
def test_spl_examples(m, l, deg, N):
    h, pred = C.spl_family(m, l)
    assert h.degree == deg and pred.inside == N
    assert count_exact(h) == pred


def test_spl_excluded():
    with pytest.raises(DomainError):
        C.spl_family(3, 4)


def test_iterate_flat():
    assert C.iterate_flat(0) == BARKER
    f1 = C.iterate_flat(1)
    assert f1.degree == 168
    assert set(f1.coeffs) == {-1, 1}
    assert sample_min(f1, 4096) > 168 ** 0.43
    assert certify_min(f1, 168 ** 0.43).certified
    with pytest.raises(DomainError):
        C.iterate_flat(C.FLAT_MAX_J + 1)
