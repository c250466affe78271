"""Constructions of class members with prescribed zero counts.

Every builder recounts its output with count_exact; the analytic argument
only motivates the construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .diskcount import ZeroCount, count_exact
from .minima import certify_min, certify_sum_above, sample_min
from .poly import DomainError, IntPoly, from_string, rotate, to_string
from .prover import check_dominance, resolvent
from .cyclo import CycloElem
from . import fixtures

ROUCHE = "ROUCHE"
BOUNDARY = "BOUNDARY"
UNVERIFIED = "UNVERIFIED"


class ConstructionError(ValueError):
    pass


@dataclass
class Construction:
    poly: IntPoly
    count: ZeroCount
    expected_inside: Optional[int]
    status: str

    @property
    def contract_holds(self) -> bool:
        return (self.expected_inside is None or self.count.inside == self.expected_inside) \
            and self.count.on_circle == 0


def _touching_ok(f: IntPoly, g: IntPoly) -> bool:
    """|f| >= 1 on the circle with equality only at roots of unity where g is nonzero."""
    R = resolvent(f, IntPoly([1]))
    dom = check_dominance(R, f.degree)
    if not dom.holds:
        return False
    for d, j in dom.points():
        if CycloElem.from_poly(g, d, j).is_zero():
            return False
    return True


def append_monomial(f: IntPoly, n: int) -> Construction:
    """g = f + z^n; N(g) = N(f) when |f| > 1 on the circle (or touches 1 harmlessly)."""
    if n < f.degree + 1:
        raise DomainError("need n > deg f")
    g = f + IntPoly.monomial(n)
    if certify_min(f, 1.0).certified:
        status = ROUCHE
    elif _touching_ok(f, g):
        status = BOUNDARY
    else:
        status = UNVERIFIED
    fc = count_exact(f)
    return Construction(g, count_exact(g), fc.inside if status != UNVERIFIED else None, status)


def sandwich(f: IntPoly, r: int, n: int) -> Construction:
    """h = 1 + z^r f + z^n; N(h) = N(f) + r when |f| > 2 on the circle."""
    if r < 1:
        raise DomainError("r must be >= 1")
    if n < r + f.degree + 1:
        raise DomainError("need n > r + deg f")
    h = IntPoly([1]) + f.shift(r) + IntPoly.monomial(n)
    ok = certify_min(f, 2.0).certified
    exp = count_exact(f).inside + r if ok else None
    return Construction(h, count_exact(h), exp, ROUCHE if ok else UNVERIFIED)


# spaced products

@dataclass(frozen=True)
class FractionInterval:
    intervals: Tuple[Tuple[Fraction, Fraction], ...]

    def contains(self, x: Fraction) -> bool:
        return any(lo <= x <= hi for lo, hi in self.intervals)


def fraction_intervals(a: int, b: int, c: int, d: int) -> FractionInterval:
    """k/n ranges reachable by f(z^l) g(z^m) or its reciprocal; a, c = N, deg of f and b, d of g."""
    if a * d - b * c != 1:
        raise DomainError("need ad - bc = 1")
    i1 = (Fraction(b, d), Fraction(a + b * c, c + c * d))
    i2 = (Fraction(b + a * d, d + c * d), Fraction(a, c))
    i3 = (1 - i2[1], 1 - i2[0])
    i4 = (1 - i1[1], 1 - i1[0])
    return FractionInterval((i1, i2, i3, i4))


def solve_lm(a: int, b: int, c: int, d: int, k: int, n: int) -> Tuple[int, int]:
    """(l, m) with (k, n) = (a l + b m, c l + d m)."""
    return d * k - b * n, -c * k + a * n


def _substitute(f: IntPoly, l: int) -> IntPoly:
    out = [0] * (f.degree * l + 1)
    for i, x in enumerate(f.coeffs):
        out[i * l] = x
    return IntPoly(out)


def spaced_product(f: IntPoly, g: IntPoly, l: int, m: int, check_det: bool = True) -> Construction:
    if l < 1 or m < 1:
        raise DomainError("l, m must be positive")
    cf, cg = count_exact(f), count_exact(g)
    if cf.on_circle or cg.on_circle:
        raise DomainError("factors must have no zeros on the circle")
    a, c, b, d = cf.inside, f.degree, cg.inside, g.degree
    if check_det and a * d - b * c != 1:
        raise DomainError("need N(f) deg g - N(g) deg f = 1")
    seen = {}
    for i, x in enumerate(f.coeffs):
        if not x:
            continue
        for j, y in enumerate(g.coeffs):
            if not y:
                continue
            e = i * l + j * m
            if e in seen:
                raise ConstructionError(f"terms collide at exponent {e}")
            seen[e] = True
    h = _substitute(f, l) * _substitute(g, m)
    return Construction(h, count_exact(h), a * l + b * m, ROUCHE)


# rotations

@dataclass
class RotationEntry:
    j: int
    poly: IntPoly
    count: ZeroCount
    sampled_min: float
    rouche_next: bool = False


def rotation_profile(f: IntPoly, M: int = 32768) -> List[RotationEntry]:
    """Counts and minima of Rot^j f over one cycle, j centered on 0.

    Between consecutive rotations f, g = Rot f we have z f - g = a_n (z^(n+1) - 1),
    so |f| + |g| > 2 |a_n| on the circle forces N(g) = N(f) + 1.
    """
    if any(c == 0 for c in f.coeffs):
        raise DomainError("rotation needs all coefficients nonzero")
    n = f.degree
    js = range(-(n // 2), n + 1 - n // 2)
    out = []
    for j in js:
        g = rotate(f, j)
        out.append(RotationEntry(j, g, count_exact(g), sample_min(g, M)))
    for e, nxt in zip(out, out[1:]):
        lhs = e.poly.shift(1) - nxt.poly
        an = e.poly.coeffs[-1]
        if lhs != IntPoly([-an] + [0] * n + [an]):
            raise ArithmeticError("rotation identity fails")
        ok, _, _ = certify_sum_above(e.poly, nxt.poly, 2.0 * abs(an))
        e.rouche_next = ok
        if ok and nxt.count.inside != e.count.inside + 1:
            raise ArithmeticError(f"certified rotation at j={e.j} did not raise N by one")
    return out


# explicit families

def spl_word(m: int, l: int) -> str:
    return "+-+" * m + "+" + "-" * l


def spl_family(m: int, l: int) -> Tuple[IntPoly, ZeroCount]:
    """(+-+)^m + (-)^l with its predicted count: N = 2m for l < m+1, 2m+1 for l > m+1."""
    if m < 1 or l < 0:
        raise DomainError("need m >= 1, l >= 0")
    if l == m + 1:
        raise DomainError("l = m + 1 is excluded")
    h = from_string(spl_word(m, l))
    N = 2 * m if l < m + 1 else 2 * m + 1
    return h, ZeroCount(N, 0, h.degree - N)


FLAT_MAX_J = 2


def iterate_flat(j: int, f0: IntPoly = fixtures.BARKER) -> IntPoly:
    """f_{i+1}(z) = f_i(z^(n_i + 1)) f_i(z), starting from the Barker polynomial."""
    if j < 0:
        raise DomainError("j must be >= 0")
    if j > FLAT_MAX_J:
        raise DomainError(f"j > {FLAT_MAX_J} exceeds the resource guard")
    f = f0
    for _ in range(j):
        f = _substitute(f, f.degree + 1) * f
    base = f0.degree + 1
    if f.degree != base ** (2 ** j) - 1:
        raise ArithmeticError("unexpected degree")
    return f
