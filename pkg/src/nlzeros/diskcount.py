"""Counting zeros inside / on / outside the unit circle.

count_exact is the exact path (integer Bistritz table, self-inversive gcd
split for singular tables, Routh-Hurwitz style Cauchy index as the
fallback for nonessential singularities).  count_numeric is the
floating-point oracle used to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as igcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .poly import (
    DomainError,
    IntPoly,
    cyclotomic,
    cyclotomic_orders_upto,
    divexact,
    divmod_monic,
    euler_phi,
    gcd,
    prem,
    primitive,
    reciprocal,
)


@dataclass(frozen=True)
class ZeroCount:
    inside: int
    on_circle: int
    outside: int

    @property
    def degree(self) -> int:
        return self.inside + self.on_circle + self.outside

    def reciprocal(self) -> "ZeroCount":
        return ZeroCount(self.outside, self.on_circle, self.inside)

    def __add__(self, other: "ZeroCount") -> "ZeroCount":
        return ZeroCount(self.inside + other.inside, self.on_circle + other.on_circle,
                         self.outside + other.outside)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.inside, self.on_circle, self.outside)

    def __str__(self):
        return f"{self.inside} {self.on_circle} {self.outside}"


# Bistritz

def _content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = igcd(g, c)
    return g


def bistritz(coeffs: Sequence[int]) -> Optional[Tuple[int, int]]:
    """(inside, outside) from the integer Bistritz table, or None when singular.

    Rows are rescaled by positive integers only (sign of T_k(0), content),
    which keeps the sign pattern of T_k(1) intact.  Outside count equals the
    number of sign variations in T_n(1), ..., T_0(1).
    """
    a = list(coeffs)
    n = len(a) - 1
    if n < 1:
        return (0, 0)
    rev = a[::-1]
    t_hi = [x + y for x, y in zip(a, rev)]
    d = [x - y for x, y in zip(a, rev)]
    # (D - D#)/(z - 1) by synthetic division, top down
    t_lo = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc += d[i]
        t_lo[i - 1] = acc
    vals = [sum(t_hi), sum(t_lo)]
    for k in range(n - 1, 0, -1):
        t0 = t_lo[0]
        s0 = t_hi[0]
        if t0 == 0 or s0 == 0:
            return None
        # T_{k-1} = (s0 (z+1) T_k - t0 T_{k+1}) / z
        new = [0] * k
        for i in range(1, k + 1):
            v = s0 * (t_lo[i] if i < len(t_lo) else 0) + s0 * t_lo[i - 1] - t0 * t_hi[i]
            new[i - 1] = v
        if t0 < 0:
            new = [-c for c in new]
        g = _content(new)
        if g == 0:
            return None
        if g > 1:
            new = [c // g for c in new]
        t_hi, t_lo = t_lo, new
        vals.append(sum(t_lo))
    if t_lo[0] == 0 or t_hi[0] == 0 or any(v == 0 for v in vals):
        return None
    var = sum(1 for x, y in zip(vals, vals[1:]) if (x > 0) != (y > 0))
    return (n - var, var)


# multipliers with all zeros strictly outside; they break the |a_0| = |a_n|
# degeneracy that makes every Newman/Littlewood table singular at once
_MULTIPLIERS = (IntPoly([2, 1]), IntPoly([5, 3, 1]), IntPoly([7, -2, 3, 1]))


def bistritz_multiplied(f: IntPoly) -> Optional[Tuple[int, int]]:
    for mult in _MULTIPLIERS:
        r = bistritz((f * mult).coeffs)
        if r is not None:
            return (r[0], r[1] - mult.degree)
    return None


# Cauchy index route

def _mobius(a: Sequence[int]) -> List[int]:
    """Coefficients of Q(s) = sum a_j (1+s)^j (1-s)^(n-j); maps |z|<1 to Re s < 0."""
    n = len(a) - 1
    h = [a[n]]
    pw = [1]  # (1 - s)^(n - j)
    for j in range(n - 1, -1, -1):
        pw = [x - y for x, y in zip(pw + [0], [0] + pw)]
        h = [x + y for x, y in zip(h + [0], [0] + h)]
        for i, c in enumerate(pw):
            h[i] += a[j] * c
    while h and h[-1] == 0:
        h.pop()
    return h


def _sign_at_inf(p: Sequence[int], positive: bool) -> int:
    s = 1 if p[-1] > 0 else -1
    if not positive and (len(p) - 1) % 2:
        s = -s
    return s


def _variations(signs) -> int:
    s = [x for x in signs if x]
    return sum(1 for x, y in zip(s, s[1:]) if x != y)


def _signed_prem(f: Sequence[int], g: Sequence[int]) -> List[int]:
    """prem scaled by a positive factor (sign of lc^k undone)."""
    r = prem(f, g)
    k = len(f) - len(g) + 1
    if g[-1] < 0 and k % 2 == 1:
        r = [-c for c in r]
    return r


def cauchy_index_count(coeffs: Sequence[int]) -> Optional[int]:
    """Number of zeros inside the disk via the Cauchy index of Im Q(iy)/Re Q(iy).

    Returns None when f(-1) = 0 or Re/Im share a factor (zero pairs
    symmetric about the circle); callers remove gcd(f, f*) first so this
    never happens on the exact path.
    """
    a = list(coeffs)
    n = len(a) - 1
    Q = _mobius(a)
    if len(Q) - 1 != n:
        return None
    A = [0] * (n + 1)
    B = [0] * (n + 1)
    for k, q in enumerate(Q):
        if k % 2 == 0:
            A[k] = q if (k // 2) % 2 == 0 else -q
        else:
            B[k] = q if ((k - 1) // 2) % 2 == 0 else -q
    while A and A[-1] == 0:
        A.pop()
    while B and B[-1] == 0:
        B.pop()
    if not A or not B:
        return None
    seq = [A, B]
    while True:
        r = _signed_prem(seq[-2], seq[-1])
        if not r:
            break
        g = _content(r)
        seq.append([-c // g for c in r])
    if len(seq[-1]) > 1:
        return None
    ind = _variations(_sign_at_inf(p, False) for p in seq) - _variations(_sign_at_inf(p, True) for p in seq)
    # total change of arg Q(iy) over the real line, in units of pi
    d_a, d_b = len(A) - 1, len(B) - 1
    edge = 0
    if d_b > d_a:
        s = 1 if (A[-1] > 0) == (B[-1] > 0) else -1
        edge = (s - s * (-1) ** (d_b - d_a)) // 2
    diff = edge - ind  # n_left - n_right
    if (n + diff) % 2:
        raise ArithmeticError("inconsistent Cauchy index")
    return (n + diff) // 2


# circle zeros

@dataclass(frozen=True)
class CircleZeros:
    count: int
    cyclotomic_part: Tuple[Tuple[int, int], ...]
    non_cyclotomic: IntPoly

    def __iter__(self):
        return iter((self.count, list(self.cyclotomic_part), self.non_cyclotomic))


def strip_cyclotomic(f: IntPoly) -> Tuple[IntPoly, List[Tuple[int, int]]]:
    """Divide out every cyclotomic factor with multiplicity."""
    cur = list(f.coeffs)
    parts = []
    deg = len(cur) - 1
    for d in cyclotomic_orders_upto(max(deg, 1)):
        ph = euler_phi(d)
        if ph > len(cur) - 1:
            continue
        phi_c = cyclotomic(d).coeffs
        mult = 0
        while len(cur) - 1 >= ph:
            q, r = divmod_monic(cur, phi_c)
            if r:
                break
            cur = q
            mult += 1
        if mult:
            parts.append((d, mult))
    return IntPoly(cur), parts


def _lucas_transform(s: Sequence[int]) -> List[int]:
    """T with s(z) = z^m T(z + 1/z) for palindromic s of degree 2m."""
    m = (len(s) - 1) // 2
    out = [s[m]]
    v_prev, v_cur = [2], [0, 1]  # V_0 = 2, V_1 = x
    for k in range(1, m + 1):
        c = s[m + k]
        vk = v_cur
        if len(out) < len(vk):
            out += [0] * (len(vk) - len(out))
        for i, x in enumerate(vk):
            out[i] += c * x
        v_next = [0] + v_cur
        for i, x in enumerate(v_prev):
            v_next[i] -= x
        v_prev, v_cur = v_cur, v_next
    while out and out[-1] == 0:
        out.pop()
    return out


def _eval_int(p: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_sequence(p: Sequence[int]) -> List[List[int]]:
    p = list(p)
    seq = [p, [i * c for i, c in enumerate(p) if i]]
    while len(seq[-1]) > 1:
        r = _signed_prem(seq[-2], seq[-1])
        if not r:
            break
        g = _content(r)
        seq.append([-c // g for c in r])
    return seq


def count_real_roots(p: Sequence[int], lo: int, hi: int) -> int:
    """Distinct real roots of p in the open interval (lo, hi); p(lo), p(hi) nonzero."""
    if len(p) <= 1:
        return 0
    seq = sturm_sequence(p)
    va = _variations((_eval_int(q, lo) > 0) - (_eval_int(q, lo) < 0) for q in seq)
    vb = _variations((_eval_int(q, hi) > 0) - (_eval_int(q, hi) < 0) for q in seq)
    return va - vb


def count_real_roots_mult(p: Sequence[int], lo: int, hi: int) -> int:
    """Roots in (lo, hi) with multiplicity via the chain G_{j+1} = gcd(G_j, G_j')."""
    total = 0
    g = primitive(IntPoly(p))
    while g.degree >= 1:
        total += count_real_roots(g.coeffs, lo, hi)
        g = gcd(g, IntPoly(i * c for i, c in enumerate(g.coeffs) if i))
    return total


def circle_zeros(f: IntPoly) -> CircleZeros:
    """Exact number of zeros on |z| = 1 with multiplicity."""
    if f.is_zero():
        raise DomainError("zero polynomial")
    f = f.shift(-f.valuation())
    if f.degree < 1:
        return CircleZeros(0, (), IntPoly([1]))
    rest, parts = strip_cyclotomic(f)
    count = sum(euler_phi(d) * m for d, m in parts)
    if rest.degree < 1:
        return CircleZeros(count, tuple(parts), IntPoly([1]))
    s = gcd(rest, reciprocal(rest))
    if s.degree < 1:
        return CircleZeros(count, tuple(parts), IntPoly([1]))
    # s has no zeros at +-1, so it is palindromic of even degree
    if s.degree % 2 or s.coeffs != tuple(reversed(s.coeffs)):
        raise ArithmeticError("self-inversive residual is not palindromic of even degree")
    t = _lucas_transform(s.coeffs)
    count += 2 * count_real_roots_mult(t, -2, 2)
    return CircleZeros(count, tuple(parts), s)


def count_exact(f: IntPoly) -> ZeroCount:
    """Exact (inside, on_circle, outside) with multiplicity; z^k factors count as inside."""
    if f.is_zero():
        raise DomainError("zero polynomial")
    v = f.valuation()
    f = f.shift(-v)
    if f.degree == 0:
        return ZeroCount(v, 0, 0)
    r = bistritz_multiplied(f)
    if r is not None:
        return ZeroCount(v + r[0], 0, r[1])
    g = gcd(f, reciprocal(f))
    u = circle_zeros(g).count if g.degree > 0 else 0
    pair = (g.degree - u) // 2
    q = divexact(f, g) if g.degree > 0 else f
    if q.degree == 0:
        return ZeroCount(v + pair, u, pair)
    rq = bistritz_multiplied(q)
    if rq is None:
        ins = cauchy_index_count(q.coeffs)
        if ins is None:
            raise ArithmeticError("cofactor still shares zeros with its reciprocal")
        rq = (ins, q.degree - ins)
    return ZeroCount(v + pair + rq[0], u, pair + rq[1])


def count_poly(coeffs: Sequence[int]) -> ZeroCount:
    return count_exact(IntPoly(coeffs))


# numeric oracle

@dataclass(frozen=True)
class NumericCount:
    count: ZeroCount
    min_circle_distance: float
    reliable: bool


class NumericError(ArithmeticError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


def count_numeric(f: IntPoly, tol: float = 1e-9) -> NumericCount:
    """Companion-matrix roots classified by |root| against 1 +- tol."""
    if f.degree < 1:
        raise DomainError("degree must be >= 1")
    c = np.array(f.coeffs[::-1], dtype=float)
    try:
        roots = np.roots(c)
    except np.linalg.LinAlgError as e:
        raise NumericError(f"eigenvalue iteration failed: {e}") from e
    # np.roots drops trailing zero coefficients (zeros at the origin)
    nzero = f.degree - len(roots)
    mod = np.abs(roots)
    dist = np.abs(mod - 1.0)
    inside = int(np.sum(mod < 1 - tol)) + nzero
    on = int(np.sum(dist <= tol))
    outside = int(np.sum(mod > 1 + tol))
    md = float(dist.min()) if len(dist) else float("inf")
    return NumericCount(ZeroCount(inside, on, outside), md, md >= 10 * tol)
