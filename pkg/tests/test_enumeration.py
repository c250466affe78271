from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlzeros import enumeration as E
from nlzeros.diskcount import count_exact
from nlzeros.minima import class_rows
from nlzeros.poly import LITTLEWOOD, NEWMAN, IntPoly, is_self_reciprocal, reciprocal


def _self_reciprocal_newman(n):
    # free positions 1..n-1 mirrored
    return 1 << (n // 2) if n > 1 else 1


@pytest.mark.parametrize("n", range(1, 13))
def test_newman_iteration_counts(n):
    polys = list(E.newman_iter(n))
    assert len(polys) == 2 ** (n - 1) == E.newman_count(n)
    assert len({p.coeffs for p in polys}) == len(polys)
    pairs = list(E.newman_iter(n, E.Dedup.ONE_PER_RECIPROCAL_PAIR))
    nonself = list(E.newman_iter(n, E.Dedup.EXCLUDE_SELF_RECIPROCAL))
    n_self = sum(is_self_reciprocal(p) for p in polys)
    assert n_self == _self_reciprocal_newman(n)
    assert len(pairs) == (len(polys) + n_self) // 2 == E.newman_count(n, E.Dedup.ONE_PER_RECIPROCAL_PAIR)
    assert len(nonself) == (len(polys) - n_self) // 2 == E.newman_count(n, E.Dedup.EXCLUDE_SELF_RECIPROCAL)
    # one representative per pair
    seen = set()
    for p in pairs:
        key = min(p.coeffs, reciprocal(p).coeffs)
        assert key not in seen
        seen.add(key)
    assert not any(is_self_reciprocal(p) for p in nonself)


@pytest.mark.parametrize("n", [5, 8, 13, 16])
def test_kernel_decode_matches_python_order(n):
    rows = class_rows(NEWMAN, n)
    py = np.array(list(E.newman_iter_coeffs(n)), dtype=np.int8)
    assert np.array_equal(rows, py)


@pytest.mark.parametrize("n", [4, 9, 15])
def test_index_round_trip(n):
    for idx in range(0, E.newman_count(n), max(1, E.newman_count(n) // 97)):
        assert E.newman_index_of(E.newman_from_index(n, idx)) == idx
    for idx in range(0, E.littlewood_count(n), max(1, E.littlewood_count(n) // 97)):
        assert E.littlewood_index_of(E.littlewood_from_index(n, idx)) == idx


@given(st.integers(0, 1 << 30))
def test_gray_inverse(x):
    assert E.gray_inverse(E.gray(x)) == x


@pytest.mark.parametrize("n", [2, 7, 12, 18])
def test_gray_steps_are_small(n):
    rows = class_rows(NEWMAN, n).astype(int)
    assert np.abs(np.diff(rows, axis=0)).sum(axis=1).max() <= 3
    rows = class_rows(LITTLEWOOD, n).astype(int)
    assert (np.diff(rows, axis=0) != 0).sum(axis=1).max() <= 1


def test_symmetry_images_share_counts():
    f = IntPoly([1, 1, -1, 1, -1, -1, 1])
    counts = {count_exact(g).as_tuple() for g in E.symmetry_images(f)}
    assert len(counts) == 1


@pytest.mark.parametrize("tag,n", [(E.TAG_NEWMAN, 11), (E.TAG_LITTLEWOOD_NORM, 10), (E.TAG_LITTLEWOOD_ALL, 7)])
def test_scan_matches_exact(tag, n):
    N, U, _ = E.scan_records(tag, n, block=97)
    for idx in range(len(N)):
        c = count_exact(E.poly_from_index(tag, n, idx))
        assert (N[idx], U[idx]) == (c.inside, c.on_circle)


def test_parallel_scan_is_identical():
    a = E.scan_records(E.TAG_NEWMAN, 14, jobs=1, block=1024)
    b = E.scan_records(E.TAG_NEWMAN, 14, jobs=2, block=1024)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_archive_round_trip(tmp_path):
    N, U, _ = E.scan_records(E.TAG_LITTLEWOOD_NORM, 9)
    arc = E.ScanArchive(E.TAG_LITTLEWOOD_NORM, 9, N, U)
    path = tmp_path / E.archive_name(arc.tag, 9)
    arc.write(path)
    back = E.ScanArchive.read(path)
    assert back.degree == 9 and back.cls == LITTLEWOOD
    assert np.array_equal(back.N, N) and np.array_equal(back.U, U)
    assert path.read_bytes() == arc.to_bytes()


def test_archive_rejects_garbage(tmp_path):
    p = tmp_path / "bad.nlzc"
    p.write_bytes(b"NOPE")
    with pytest.raises(ValueError):
        E.ScanArchive.read(p)
    good = E.ScanArchive(E.TAG_NEWMAN, 3, np.array([1, 1, 1, 1], np.uint8), np.array([0, 0, 0, 9], np.uint8))
    p.write_bytes(good.to_bytes())
    with pytest.raises(ValueError):
        E.ScanArchive.read(p)


def test_littlewood_weighting():
    # normalized scan times 4 equals the full scan
    n = 8
    st_norm = E.scan_degree(LITTLEWOOD, n)
    st_all = E.scan_degree(LITTLEWOOD, n, normalized=False)
    assert [4 * x for x in st_norm.hist_all] == st_all.hist_all
    assert st_norm.total == st_all.total
    assert st_norm.mean == st_all.mean


def test_stats_moments_exact():
    st = E.DegreeStats(4, NEWMAN, 1, [1, 0, 2, 0, 1], [0, 0, 2, 0, 0])
    assert st.mean == 2
    assert st.variance == Fraction(2)
    assert st.conditional_mean == 2 and st.conditional_variance == 0


def test_grid_and_exports(tmp_path):
    arcs = {}
    for n in range(1, 9):
        N, U, _ = E.scan_records(E.TAG_NEWMAN, n)
        arcs[n] = E.ScanArchive(E.TAG_NEWMAN, n, N, U)
    grid = E.build_grid(NEWMAN, 8, arcs)
    assert grid.reflection_consistent()
    assert grid.status(1, 2) == E.Status.INADMISSIBLE
    assert grid.status(1, 3) == E.Status.ADMISSIBLE
    cell = grid.cells[(2, 4)]
    if cell.witness is not None:
        c = count_exact(cell.witness)
        assert (c.inside, c.on_circle) == (2, 0)
    csv = grid.to_csv().splitlines()
    assert csv[0] == "k,n,status,witness"
    assert grid.to_pgm().startswith(b"P5\n")
    stats = [E.stats_from_archive(a) for a in arcs.values()]
    paths = E.write_stats(stats, tmp_path)
    assert all(p.exists() for p in paths)


def test_fit_line():
    slope, icpt = E.fit_line([(0, 1), (1, 3), (2, 5)])
    assert slope == pytest.approx(2) and icpt == pytest.approx(1)


def test_extract():
    N, U, _ = E.scan_records(E.TAG_NEWMAN, 6)
    arc = E.ScanArchive(E.TAG_NEWMAN, 6, N, U)
    hits = E.extract(arc, lambda k, u: k == 3 and u == 0)
    assert hits == []
