import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlzeros.fixtures import LARGE_NEWMAN, SUPER_NEWMAN
from nlzeros.minima import (
    autocorrelation,
    certify_min,
    certify_sum_above,
    filter_large,
    mu_estimate,
    sample_min,
)
from nlzeros.poly import NEWMAN, IntPoly, from_string


def _dense_min(f, M=1 << 16):
    t = np.linspace(0, 2 * np.pi, M, endpoint=False)
    return np.abs(np.polyval(list(reversed(f.coeffs)), np.exp(1j * t))).min()


def test_sample_min_super_newman():
    assert sample_min(SUPER_NEWMAN, 32768) == pytest.approx(2.0181, abs=1e-3)


def test_certify_super_newman():
    cert = certify_min(SUPER_NEWMAN, 2.0)
    assert cert.certified
    assert cert.margin > 0


@pytest.mark.parametrize("k", sorted(LARGE_NEWMAN))
def test_large_newman_table(k):
    word, mn = LARGE_NEWMAN[k]
    f = from_string(word)
    # table entries are truncated to three decimals
    assert sample_min(f, 32768) == pytest.approx(mn, abs=2e-3)
    assert certify_min(f, 1.0).certified


def test_certify_fails_below():
    assert not certify_min(IntPoly([1, 1, 1]), 0.5).certified
    assert not certify_min(IntPoly([1, 1]), 0.1).certified


def test_grid_validation():
    with pytest.raises(ValueError):
        sample_min(SUPER_NEWMAN, 48)
    with pytest.raises(ValueError):
        sample_min(SUPER_NEWMAN, 64)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([-1, 1]), min_size=3, max_size=14))
def test_certificate_is_sound(coeffs):
    f = IntPoly(coeffs)
    true_min = _dense_min(f)
    c = 0.9 * true_min
    if c <= 0.05:
        return
    cert = certify_min(f, c)
    assert cert.certified
    # certifying above the true minimum must fail
    assert not certify_min(f, true_min * 1.001 + 1e-6).certified


def test_autocorrelation_parseval():
    f = from_string("+++--+-")
    r = autocorrelation(f)
    assert r[0] == 7
    t = 0.37
    val = abs(sum(c * np.exp(1j * k * t) for k, c in enumerate(f.coeffs))) ** 2
    assert val == pytest.approx(r[0] + 2 * sum(r[s] * np.cos(s * t) for s in range(1, len(r))))


def test_sum_certification():
    ok, margin, _ = certify_sum_above(IntPoly([3]), IntPoly([1, 1]), 2.5)
    assert ok and margin > 0
    ok, _, _ = certify_sum_above(IntPoly([1]), IntPoly([1, 1]), 1.5)
    assert not ok


def test_filter_and_mu():
    surv = filter_large(NEWMAN, 12, 1.36)
    assert [s.line() for s in surv] == ["12 547 1111100110101 1.362373"]
    mu, f = mu_estimate(NEWMAN, 14)
    assert mu == pytest.approx(1.02575, abs=1e-4)
    assert mu_estimate(NEWMAN, 1)[0] == 0.0
