"""End-to-end acceptance checks, one test per criterion.

Each test prints a PASS/FAIL line; the lines are repeated in the terminal
summary.  Scan archives come from the session fixtures in conftest.
"""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from nlzeros import constructions as C
from nlzeros import enumeration as E
from nlzeros.diskcount import count_exact, count_numeric
from nlzeros.fixtures import (
    ALL_TABLES,
    BARKER,
    LARGE_NEWMAN,
    PRODUCT_F,
    PRODUCT_G,
    ROT_BARKER_MIN,
    ROT_BARKER_N,
    SUPER_NEWMAN,
)
from nlzeros.minima import certify_min, class_rows, no_certificate_above, sample_min
from nlzeros.poly import LITTLEWOOD, NEWMAN, IntPoly, Pattern, expand_pattern, from_string, to_string
from nlzeros.prover import prove_pattern, verify_certificate
from nlzeros.search import SearchConfig, dfs_search


def test_1_exact_counting_fixtures(criterion):
    with criterion(1, "exact counting fixtures"):
        cases = [
            (IntPoly.from_exponents((0, 1, 4)), (2, 0, 2)),
            (IntPoly.from_exponents((0, 3, 5)), (3, 0, 2)),
            (SUPER_NEWMAN, (18, 0, 20)),
        ]
        for f, want in cases:
            t = time.perf_counter()
            got = count_exact(f).as_tuple()
            assert time.perf_counter() - t < 1.0
            assert got == want


def test_2_oracle_equivalence(criterion):
    with criterion(2, "count_exact agrees with the numeric oracle"):
        t0 = time.perf_counter()
        compared = disagree = 0

        def check(f):
            nonlocal compared, disagree
            num = count_numeric(f)
            if num.min_circle_distance <= 1e-6:
                return
            compared += 1
            if count_exact(f) != num.count:
                disagree += 1

        for n in range(1, 11):
            for f in E.littlewood_iter(n, normalized=False):
                check(f)
        rng = random.Random(20240611)
        for _ in range(100_000):
            n = rng.randint(1, 16)
            check(IntPoly([1] + [rng.randint(0, 1) for _ in range(n - 1)] + [1]))
        assert disagree == 0
        assert compared > 50_000
        assert time.perf_counter() - t0 < 600


def test_3_newman_admissibility(criterion, newman_archives):
    with criterion(3, "Newman admissibility for n <= 22"):
        nmax = max(newman_archives)
        assert nmax >= 22
        grid = E.build_grid(NEWMAN, nmax, newman_archives)
        assert grid.reflection_consistent()
        bad = set(grid.inadmissible())
        # at n = 4 the pairs k = 3, n - 3 coincide with k = 1, n - 1, covered below
        edge = {(k, n) for (k, n) in bad if k in (3, n - 3) and k not in (1, n - 1)}
        assert edge == {(3, 6)}
        assert (2, 21) in bad and (19, 21) in bad
        for n in range(2, nmax + 1):
            want = E.Status.INADMISSIBLE if n % 2 == 0 else E.Status.ADMISSIBLE
            assert grid.status(1, n) == want
            assert grid.status(n - 1, n) == want


def test_4_littlewood_admissibility(criterion, littlewood_archives):
    with criterion(4, "Littlewood admissibility for n <= 19"):
        nmax = max(littlewood_archives)
        assert nmax >= 19
        grid = E.build_grid(LITTLEWOOD, nmax, littlewood_archives)
        assert grid.inadmissible() == [(2, 13), (2, 19), (11, 13), (17, 19)]
        assert all(c.status != E.Status.UNKNOWN for c in grid.cells.values())


def test_5_conditional_mean(criterion, newman_archives, littlewood_archives):
    with criterion(5, "conditional mean of N over U = 0 is n/2"):
        for arcs, lo in ((newman_archives, 3), (littlewood_archives, 2)):
            for n in range(lo, max(arcs) + 1):
                st = E.stats_from_archive(arcs[n])
                assert st.conditional_mean == Fraction(n, 2)
                assert st.mean < Fraction(n, 2)


def test_6_minima(criterion):
    with criterion(6, "minimum modulus certificates"):
        assert certify_min(SUPER_NEWMAN, 2.0).certified
        assert sample_min(SUPER_NEWMAN, 32768) == pytest.approx(2.0181, abs=1e-3)
        for k, deg, mn in ((6, 12, 1.362), (8, 14, 1.025)):
            f = from_string(LARGE_NEWMAN[k][0])
            assert f.degree == deg and count_exact(f).as_tuple() == (k, 0, deg - k)
            assert certify_min(f, 1.0).certified
            assert sample_min(f, 32768) == pytest.approx(mn, abs=2e-3)
        for n in range(1, 17):
            none, hits = no_certificate_above(NEWMAN, n, 2.0)
            assert none, (n, [to_string(h) for h in hits])


def test_7_pattern_certificates(criterion):
    with criterion(7, "pattern certificates for all tabled families"):
        t0 = time.perf_counter()
        sizes = {name: len(rows) for name, rows in ALL_TABLES.items()}
        assert sizes == {"newman2": 10, "littlewood2": 4, "newman345": 9, "littlewood3to11": 9}
        for rows in ALL_TABLES.values():
            for row in rows:
                p = Pattern.parse(row.pattern)
                cert = prove_pattern(p, row.k, row.m_min)
                assert cert.k == row.k
                for m in range(row.m_min, row.m_min + 10):
                    assert p.degree(m) == row.degree[0] + row.degree[1] * m
                for m in range(row.m_min, 200):
                    assert cert.excluded(m) == row.is_excluded(m)
                assert len(cert.replay) == 20
                for m in cert.replay:
                    c = count_exact(expand_pattern(p, m))
                    assert (c.inside, c.on_circle) == (row.k, 0)
                ok, problems = verify_certificate(cert)
                assert ok, problems
        assert time.perf_counter() - t0 < 600


def test_8_spl_formula(criterion):
    with criterion(8, "SPL family counts"):
        for m in range(1, 9):
            for l in range(0, 13):
                if l == m + 1:
                    continue
                h, _ = C.spl_family(m, l)
                want = 2 * m if l < m + 1 else 2 * m + 1
                c = count_exact(h)
                assert (c.inside, c.on_circle) == (want, 0), (m, l)


def test_9_rotation(criterion):
    with criterion(9, "Barker rotation profile"):
        prof = C.rotation_profile(BARKER)
        assert tuple(e.count.inside for e in prof) == ROT_BARKER_N
        mins = np.array([sample_min(e.poly, 32768) for e in prof])
        assert np.all(np.abs(mins - np.array(ROT_BARKER_MIN)) <= 0.01), mins.round(4).tolist()


def test_10_spaced_products(criterion):
    with criterion(10, "spaced products"):
        fi = C.fraction_intervals(2, 3, 3, 5)
        F = Fraction
        assert sorted(fi.intervals) == [
            (F(1, 3), F(7, 20)), (F(7, 18), F(2, 5)), (F(3, 5), F(11, 18)), (F(13, 20), F(2, 3))]
        built = 0
        for l in range(1, 11):
            for m in range(1, 11):
                try:
                    res = C.spaced_product(PRODUCT_F, PRODUCT_G, l, m)
                except C.ConstructionError:
                    continue
                built += 1
                assert (res.count.inside, res.count.on_circle) == (2 * l + 3 * m, 0)
        assert built > 0


def test_11_search_tree(criterion):
    with criterion(11, "pattern search tree"):
        res = dfs_search(SearchConfig("111011", ("0", "011"), 2, 40))
        assert res.nodes["111011"].children == ["1110011", "111011011", "1110101"]
        assert "10110" + "011" + "0011" in res.terminal()
        assert [d.line() for d in res.patterns] == ["111|011| 13 2 newman"]
        assert res.patterns[0].pattern.render() == "111|011|"


def test_12_gray_enumeration(criterion):
    with criterion(12, "Gray-code enumeration"):
        for n in range(1, 21):
            rows = class_rows(NEWMAN, n)
            assert len(rows) == E.newman_count(n) == 2 ** (n - 1)
            # self-reciprocal members are palindromes
            sr = int(np.sum(np.all(rows == rows[:, ::-1], axis=1)))
            assert E.newman_count(n, E.Dedup.ONE_PER_RECIPROCAL_PAIR) == (len(rows) + sr) // 2
            assert E.newman_count(n, E.Dedup.EXCLUDE_SELF_RECIPROCAL) == (len(rows) - sr) // 2
            if len(rows) > 1:
                steps = np.count_nonzero(np.diff(rows.astype(np.int16), axis=0), axis=1)
                assert steps.max() <= 3
        for n in range(1, 15):
            all_keys = {tuple(c) for c in E.newman_iter_coeffs(n)}
            pairs = [tuple(c) for c in E.newman_iter_coeffs(n, E.Dedup.ONE_PER_RECIPROCAL_PAIR)]
            classes = {min(c, c[::-1]) for c in pairs}
            assert len(classes) == len(pairs)
            assert classes == {min(c, c[::-1]) for c in all_keys}
            for c in E.newman_iter_coeffs(n, E.Dedup.EXCLUDE_SELF_RECIPROCAL):
                assert c != c[::-1]
