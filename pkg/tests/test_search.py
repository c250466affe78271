import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlzeros.diskcount import count_exact
from nlzeros.poly import DomainError, LITTLEWOOD, expand_pattern, from_string, to_string
from nlzeros.search import (
    SearchConfig,
    alternate,
    children,
    dfs_search,
    factor_repetition,
    verify_path,
)

W = ("0", "011")


def test_children_of_seed():
    assert children("111011", W, 2) == ["1110011", "111011011", "1110101"]


def test_single_child():
    assert children("1110011", W, 2) == ["10110011"]


def test_no_words_no_children():
    assert children("111011", (), 2) == []


def test_children_preserve_count():
    for v in children("1110101", W, 2):
        c = count_exact(from_string(v))
        assert (c.inside, c.on_circle) == (2, 0)


@pytest.mark.parametrize("u,expected", [
    ("111" + "011" * 13, ("111", "011", 13, "")),
    ("1010", ("", "10", 2, "")),
    ("1111111", ("", "1", 7, "")),
    ("10", ("", "10", 1, "")),
    ("1101101", ("110", "1", 2, "01")),
    ("0101101101", ("0", "101", 3, "")),
])
def test_factor_repetition(u, expected):
    assert factor_repetition(u) == expected


@given(st.text(alphabet="01", min_size=1, max_size=30))
def test_factorization_reassembles(u):
    p, r, m, s = factor_repetition(u)
    assert p + r * m + s == u
    assert m >= 1 and r


def test_example_tree():
    res = dfs_search(SearchConfig("111011", W, 2, 40))
    assert res.nodes["111011"].children == ["1110011", "111011011", "1110101"]
    assert "101100110011" in res.terminal()
    assert res.nodes["101100110011"].parent == "101100011"
    lines = [d.line() for d in res.patterns]
    assert lines == ["111|011| 13 2 newman"]
    d = res.patterns[0]
    assert to_string(expand_pattern(d.pattern, d.m)) == d.witness
    assert verify_path(d)
    assert len(res.order) == len(set(res.order))


def test_seed_at_cap():
    res = dfs_search(SearchConfig("111011", W, 2, 5))
    assert res.order == ["111011"]
    assert res.patterns[0].witness == "111011"


def test_bad_seed():
    with pytest.raises(DomainError):
        SearchConfig("11001", W, 3, 40)
    with pytest.raises(DomainError):
        SearchConfig("1110110", W, 2, 40)


def test_littlewood_search():
    res = dfs_search(SearchConfig("+-++---", ("-", "+-"), 3, 12, LITTLEWOOD))
    assert res.patterns
    for d in res.patterns:
        assert verify_path(d)
        w = alternate(d.witness) if d.alternated else d.witness
        assert to_string(expand_pattern(d.pattern, d.m)) == w


def test_alternate_involution():
    assert alternate(alternate("+-+--+")) == "+-+--+"
    assert alternate("++++") == "+-+-"
