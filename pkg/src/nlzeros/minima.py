"""Minimum modulus on the unit circle: FFT sampling, sieving, certification."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numba import njit

from . import _kernels as K
from .enumeration import Dedup, littlewood_count, newman_count, newman_iter_coeffs
from .poly import LITTLEWOOD, NEWMAN, IntPoly, to_string

M1_DEFAULT = 128
M2_DEFAULT = 32768
CERT_CAP = 1 << 24

CERTIFIED_ABOVE = "CERTIFIED_ABOVE"
FAILED = "FAILED"


def _check_grid(n: int, M: int) -> None:
    if M < 1 or M & (M - 1):
        raise ValueError("M must be a power of two")
    if M < 2 * (n + 1):
        raise ValueError(f"M={M} too small for degree {n}")


def circle_values(coeffs: Sequence[int], M: int) -> np.ndarray:
    """f(exp(-2 pi i j / M)) for j < M; the set of values equals the M-th root grid."""
    a = np.asarray(coeffs, dtype=float)
    return np.fft.fft(a, M)


def sample_min(f: IntPoly, M: int = M1_DEFAULT) -> float:
    if f.degree <= 0:
        return float(abs(f.coeffs[0])) if f.coeffs else 0.0
    _check_grid(f.degree, M)
    return float(np.abs(circle_values(f.coeffs, M)).min())


def sample_min_matrix(rows: np.ndarray, M: int) -> np.ndarray:
    """Row-wise sampled minima for a (count, n+1) coefficient matrix."""
    _check_grid(rows.shape[1] - 1, M)
    return np.abs(np.fft.fft(rows.astype(float), M, axis=1)).min(axis=1)


def autocorrelation(f: IntPoly) -> List[int]:
    """r_s for s = 0..n with |f(e^{it})|^2 = r_0 + 2 sum_{s>0} r_s cos(s t)."""
    a = f.coeffs
    n = len(a) - 1
    return [sum(a[k + s] * a[k] for k in range(n + 1 - s)) for s in range(n + 1)]


@dataclass
class MinimaCertificate:
    polynomial: str
    threshold: float
    M: int
    lipschitz: float
    margin: float
    verdict: str
    grid_min: float

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED_ABOVE

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _fmt(f: IntPoly) -> str:
    try:
        return to_string(f)
    except ValueError:
        return ",".join(str(c) for c in f.coeffs)


def certify_min(f: IntPoly, c: float, M: Optional[int] = None, cap: int = CERT_CAP) -> MinimaCertificate:
    """Prove |f| > c on |z| = 1 by a Lipschitz bound on F(t) = |f(e^{it})|^2.

    F has derivative bounded by L = sum_s |s r_s| (two-sided sum), every t
    lies within pi/M of a grid point, so min_grid(F) - c^2 - L pi/M > 0
    proves the claim.  The floating error of the grid evaluation is
    absorbed by a slack of 1e-9 (sum |a_k|)^2.
    """
    if c <= 0:
        raise ValueError("threshold must be positive")
    r = autocorrelation(f)
    L = 2.0 * sum(s * abs(x) for s, x in enumerate(r))
    l1 = float(sum(abs(x) for x in f.coeffs))
    slack = 1e-9 * (1.0 + l1 * l1)
    n = max(f.degree, 0)
    if M is None:
        M = 64
        while M < 4 * (n + 1):
            M *= 2
    while True:
        vals = np.abs(circle_values(f.coeffs, M)) ** 2 if n > 0 else np.array([float(f.coeffs[0] ** 2)])
        gmin = float(vals.min())
        margin = gmin - c * c - L * math.pi / M - slack
        if margin > 0:
            return MinimaCertificate(_fmt(f), c, M, L, margin, CERTIFIED_ABOVE, math.sqrt(gmin))
        if gmin - c * c <= slack or M >= cap:
            return MinimaCertificate(_fmt(f), c, M, L, margin, FAILED, math.sqrt(max(gmin, 0.0)))
        # jump straight to a grid that could succeed, then keep doubling
        need = L * math.pi / max(gmin - c * c - slack, 1e-300)
        nxt = M * 2
        while nxt < need and nxt < cap:
            nxt *= 2
        M = min(nxt, cap)


def certify_sum_above(f: IntPoly, g: IntPoly, c: float, cap: int = 1 << 20) -> Tuple[bool, float, int]:
    """Prove |f| + |g| > c on the circle; returns (ok, margin, M).

    |f| and |g| are Lipschitz in t with constants sum k |a_k|.
    """
    Lf = float(sum(k * abs(x) for k, x in enumerate(f.coeffs)))
    Lg = float(sum(k * abs(x) for k, x in enumerate(g.coeffs)))
    l1 = float(sum(abs(x) for x in f.coeffs) + sum(abs(x) for x in g.coeffs))
    slack = 1e-9 * (1.0 + l1)
    n = max(f.degree, g.degree)
    M = 64
    while M < 4 * (n + 1):
        M *= 2
    while True:
        s = np.abs(circle_values(f.coeffs, M)) + np.abs(circle_values(g.coeffs, M))
        gmin = float(s.min())
        margin = gmin - c - (Lf + Lg) * math.pi / M - slack
        if margin > 0:
            return True, margin, M
        if gmin - c <= slack or M >= cap:
            return False, margin, M
        M *= 2


# enumeration-backed sieves

@njit(cache=True)
def _fill_newman(n, start, stop, out):
    row = np.zeros(n + 1, np.int64)
    for idx in range(start, stop):
        K.newman_coeffs(idx, n, row)
        out[idx - start, :] = row


def class_rows(cls: str, n: int, dedup: Dedup = Dedup.ALL) -> np.ndarray:
    """Coefficient matrix of the whole class in generation order."""
    if cls == NEWMAN:
        if dedup == Dedup.ALL:
            out = np.zeros((newman_count(n), n + 1), np.int8)
            _fill_newman(n, 0, newman_count(n), out)
            return out
        return np.array(list(newman_iter_coeffs(n, dedup)), dtype=np.int8).reshape(-1, n + 1)
    if cls == LITTLEWOOD:
        out = np.zeros((littlewood_count(n), n + 1), np.int8)
        row = np.zeros(n + 1, np.int64)
        for idx in range(len(out)):
            K.littlewood_coeffs(idx, n, True, row)
            out[idx] = row
        return out
    raise ValueError(cls)


@dataclass
class Survivor:
    degree: int
    index: int
    poly: IntPoly
    sampled_min: float

    def line(self) -> str:
        return f"{self.degree} {self.index} {to_string(self.poly)} {self.sampled_min:.6f}"


def filter_large(cls: str, n: int, threshold: float, M1: int = M1_DEFAULT, M2: int = M2_DEFAULT,
                 dedup: Dedup = Dedup.EXCLUDE_SELF_RECIPROCAL, chunk: int = 1 << 15) -> List[Survivor]:
    """Two-stage sieve keeping sample_min >= threshold at M1, then at M2.

    Indices refer to the enumeration order of the chosen dedup mode.
    """
    if not M1 < M2:
        raise ValueError("need M1 < M2")
    M1 = max(M1, _pow2_at_least(2 * (n + 1)))
    M2 = max(M2, 2 * M1)
    rows = class_rows(cls, n, dedup if cls == NEWMAN else Dedup.ALL)
    out: List[Survivor] = []
    for s in range(0, len(rows), chunk):
        block = rows[s:s + chunk]
        m1 = sample_min_matrix(block, M1)
        keep = np.nonzero(m1 >= threshold)[0]
        if len(keep) == 0:
            continue
        m2 = sample_min_matrix(block[keep], M2)
        for off, v in zip(keep, m2):
            if v >= threshold:
                out.append(Survivor(n, s + int(off), IntPoly(block[off].tolist()), float(v)))
    return out


def _pow2_at_least(x: int) -> int:
    m = 1
    while m < x:
        m *= 2
    return m


def mu_estimate(cls: str, n: int, M1: int = M1_DEFAULT, M2: int = M2_DEFAULT, top: int = 16) -> Tuple[float, IntPoly]:
    """Largest min |f| over the class (one per reciprocal pair) with its maximizer.

    Coarse sampling ranks the class; the best candidates are resampled at M2
    and the winner is the maximal refined value.
    """
    rows = class_rows(cls, n, Dedup.ONE_PER_RECIPROCAL_PAIR if cls == NEWMAN else Dedup.ALL)
    M1 = max(M1, _pow2_at_least(2 * (n + 1)))
    m1 = sample_min_matrix(rows, M1)
    order = np.argsort(-m1, kind="stable")[:top]
    m2 = sample_min_matrix(rows[order], max(M2, 2 * M1))
    best = int(np.argmax(m2))
    return float(m2[best]), IntPoly(rows[order[best]].tolist())


def no_certificate_above(cls: str, n: int, c: float, M: int = M1_DEFAULT) -> Tuple[bool, List[IntPoly]]:
    """Exhaustively check that no class member of degree n has min |f| > c.

    sample_min is an upper bound for the true minimum, so a sampled value
    below c rules the polynomial out; anything else gets a certification
    attempt.  Returns (none_certified, polynomials that did certify).
    """
    rows = class_rows(cls, n)
    m = sample_min_matrix(rows, max(M, _pow2_at_least(2 * (n + 1))))
    cand = np.nonzero(m > c)[0]
    hits = []
    for i in cand:
        f = IntPoly(rows[i].tolist())
        if certify_min(f, c).certified:
            hits.append(f)
    return not hits, hits
