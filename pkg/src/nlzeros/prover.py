"""Certify N(h_m) = k, U(h_m) = 0 for all members of a pattern family.

A family prefix . period^m . suffix is written as

    h_m(z) = (f(z) + z^(s + t m) g(z)) / D(z),   D = (1 - z^t) / d,

with d = gcd(F, G, 1 - z^t).  When |f| >= |g| on the circle (checked with
the resolvent R = f f* z^(e - deg f) - g g* z^(e - deg g)), zeros of the
numerator on the circle can only sit at equality points, and Boyd's
exit-point formula N(h) = N(f) - E applies.  E counts unimodular zeros of
the numerator with xi(zeta) = zeta f'/f - zeta g'/g > n; it vanishes once n
exceeds the largest xi over the equality points that are ever numerator
zeros, so N(h_m) = N(f) from that m on.  The real numbers xi are evaluated
in the cyclotomic field; their sign against n uses an exact zero test and
mpmath.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from math import gcd as igcd
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath

from .cyclo import CycloElem
from .diskcount import circle_zeros, count_exact
from .poly import (
    DomainError,
    IntPoly,
    Pattern,
    cyclotomic,
    derivative,
    divexact,
    divides,
    euler_phi,
    expand_pattern,
    gcd_many,
    primitive,
    reciprocal,
    resultant_in_second,
    word_poly,
)

REPLAY_COUNT = 20
REGRESSION_SPAN = 30


class ProofError(Exception):
    """A pipeline stage could not certify the family."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


# rational form

@dataclass(frozen=True)
class RationalForm:
    f: IntPoly
    g: IntPoly
    d: IntPoly
    D: IntPoly
    t: int
    s: int

    def exponent(self, m: int) -> int:
        return self.s + self.t * m

    def numerator(self, m: int) -> IntPoly:
        return self.f + self.g.shift(self.exponent(m))

    def h(self, m: int) -> IntPoly:
        return divexact(self.numerator(m), self.D)


def to_rational_form(p: Pattern, check_upto: int = 5) -> RationalForm:
    if not p.period:
        raise DomainError("pattern needs a nonempty period")
    P = word_poly(p.prefix, p.alphabet)
    Rw = word_poly(p.period, p.alphabet)
    S = word_poly(p.suffix, p.alphabet)
    a, t = len(p.prefix), len(p.period)
    one_minus = IntPoly([1] + [0] * (t - 1) + [-1])
    F = one_minus * P + Rw.shift(a)
    G = one_minus * S - Rw
    if G.is_zero():
        raise ProofError("rational_form", "suffix part vanishes identically")
    e = G.valuation()
    G = G.shift(-e)
    d = gcd_many(F, G, one_minus) if not F.is_zero() else gcd_many(G, one_minus)
    f, g, D = divexact(F, d), divexact(G, d), divexact(one_minus, d)
    if f.is_zero():
        raise ProofError("rational_form", "f vanishes identically")
    # overall sign: first nonzero coefficient of f positive
    if f.coeffs[f.valuation()] < 0:
        f, g, D = -f, -g, -D
    rf = RationalForm(f, g, d, D, t, a + e)
    for m in range(check_upto + 1):
        num = rf.numerator(m)
        if not divides(D, num) or divexact(num, D) != expand_pattern(p, m):
            raise ProofError("rational_form", f"expansion mismatch at m={m}")
    return rf


# resolvent and dominance

def resolvent(f: IntPoly, g: IntPoly) -> IntPoly:
    e = max(f.degree, g.degree)
    return (f * reciprocal(f)).shift(e - f.degree) - (g * reciprocal(g)).shift(e - g.degree)


def is_palindromic(R: IntPoly, e: int) -> bool:
    c = list(R.coeffs) + [0] * (2 * e + 1 - len(R.coeffs))
    return len(c) == 2 * e + 1 and c == c[::-1]


@dataclass
class DominanceReport:
    holds: bool
    middle: int
    equality_orders: List[Tuple[int, int]]  # (order, multiplicity in R)
    non_cyclotomic_zeros: int
    reason: str = ""

    def points(self) -> List[Tuple[int, int]]:
        """(order, j) for every equality point."""
        return [(d, j) for d, _ in self.equality_orders for j in range(d) if igcd(j, d) == 1 or d == 1]


def check_dominance(R: IntPoly, e: Optional[int] = None) -> DominanceReport:
    """|f| >= |g| on the circle iff R has positive middle coefficient and no odd circle zeros."""
    if R.is_zero():
        return DominanceReport(False, 0, [], 0, "resolvent vanishes identically")
    if e is None:
        e = (R.degree + R.valuation()) // 2
    middle = R.coeffs[e] if e < len(R.coeffs) else 0
    cz = circle_zeros(R)
    cyc = list(cz.cyclotomic_part)
    noncyc = cz.count - sum(euler_phi(d) * mlt for d, mlt in cyc)
    if middle <= 0:
        return DominanceReport(False, middle, cyc, noncyc, "middle coefficient is not positive")
    odd = [d for d, mlt in cyc if mlt % 2]
    if odd:
        return DominanceReport(False, middle, cyc, noncyc, f"odd multiplicity at orders {odd}")
    if noncyc:
        return DominanceReport(False, middle, cyc, noncyc, "non-cyclotomic circle zeros")
    return DominanceReport(True, middle, cyc, 0)


# equality-point analysis

def _elem(f: IntPoly, d: int, j: int) -> CycloElem:
    return CycloElem.from_poly(f, d, j)


def xi_value(rf: RationalForm, d: int, j: int) -> CycloElem:
    """zeta f'/f - zeta g'/g at zeta = exp(2 pi i j / d), exactly."""
    z = CycloElem.power(d, j)
    fz, gz = _elem(rf.f, d, j), _elem(rf.g, d, j)
    if fz.is_zero() or gz.is_zero():
        raise ProofError("critical_exponent", f"f or g vanishes at order {d}")
    xi = z * _elem(derivative(rf.f), d, j) / fz - z * _elem(derivative(rf.g), d, j) / gz
    if not xi.is_real():
        raise ProofError("critical_exponent", f"xi not real at order {d}")
    return xi


def unimodular_progressions(rf: RationalForm, d: int, j: int = 1) -> Tuple[int, List[int]]:
    """(period P, residues r mod P) with numerator(h_m)(zeta) = 0 iff m = r mod P."""
    fz = _elem(rf.f, d, j)
    if fz.is_zero():
        raise ProofError("progressions", f"f vanishes at the order-{d} point")
    P = d // igcd(d, rf.t)
    res = [r for r in range(P) if _elem(rf.numerator(r), d, j).is_zero()]
    return P, res


@dataclass
class EqualityPoint:
    order: int
    j: int
    period: int
    residues: List[int]
    denominator_zero: bool
    xi: Optional[float] = None
    xi_exact: Optional[Tuple[str, ...]] = None

    def excludes(self, m: int) -> bool:
        return bool(self.residues) and not self.denominator_zero and (m % self.period) in self.residues

    def numerator_zero(self, m: int) -> bool:
        return (m % self.period) in self.residues


def analyse_points(rf: RationalForm, dom: DominanceReport) -> List[EqualityPoint]:
    out = []
    for d, j in dom.points():
        P, res = unimodular_progressions(rf, d, j)
        dz = _elem(rf.D, d, j).is_zero()
        pt = EqualityPoint(d, j, P, res, dz)
        if res:
            xi = xi_value(rf, d, j)
            pt.xi = float(xi.to_mp().real)
            pt.xi_exact = tuple(str(c) for c in xi.c)
        out.append(pt)
    return out


def _xi_elem(rf: RationalForm, pt: EqualityPoint) -> CycloElem:
    return xi_value(rf, pt.order, pt.j)


def critical_exponent(rf: RationalForm, points: Sequence[EqualityPoint]) -> float:
    """Largest xi over equality points that are numerator zeros for some m (-inf if none)."""
    vals = [pt.xi for pt in points if pt.residues]
    return max(vals) if vals else -math.inf


def critical_m(rf: RationalForm, points: Sequence[EqualityPoint]) -> int:
    """Least m >= 0 with n = s + t m strictly above every relevant xi."""
    m = 0
    rel = [pt for pt in points if pt.residues]
    while any((_xi_elem(rf, pt) - rf.exponent(m)).real_sign() >= 0 for pt in rel):
        m += 1
    return m


def exit_count(rf: RationalForm, points: Sequence[EqualityPoint], m: int) -> int:
    n = rf.exponent(m)
    E = 0
    for pt in points:
        if not pt.numerator_zero(m):
            continue
        sg = (_xi_elem(rf, pt) - n).real_sign()
        if sg == 0:
            raise ProofError("exit_count", f"singular exponent n={n} at order {pt.order}")
        if sg > 0:
            E += 1
    return E


def certified_count(rf: RationalForm, points: Sequence[EqualityPoint], m: int, Nf: Optional[int] = None) -> int:
    if Nf is None:
        Nf = count_exact(rf.f).inside
    return Nf - exit_count(rf, points, m)


def critical_polynomial(rf: RationalForm, R: IntPoly) -> IntPoly:
    """S(z) = Res_w(R(w), w(f'g - f g')(w) - z f(w) g(w))."""
    f, g = rf.f, rf.g
    P = (derivative(f) * g - f * derivative(g)).shift(1)
    return resultant_in_second(R, P, f * g)


# certificate

@dataclass
class ProofCertificate:
    pattern: str
    k: int
    m0: int
    m1: int
    m_min: int
    n0: Optional[float]
    exclusions: List[Tuple[int, int]]  # (modulus, residue)
    f: List[int]
    g: List[int]
    denominator: List[int]
    t: int
    s: int
    resolvent: List[int]
    middle: int
    equality_orders: List[Tuple[int, int]]
    S: List[int]
    base_count: int
    exit_regime: List[Tuple[int, int, int]]  # (m, E, predicted N) for m < m0
    direct: List[Tuple[int, int, int]]  # (m, N, U) counted directly below m0
    replay: List[int]
    flags: List[str] = field(default_factory=list)

    def excluded(self, m: int) -> bool:
        return any(m % q == r for q, r in self.exclusions)

    def to_json(self) -> str:
        d = asdict(self)
        if self.n0 is None:
            d["n0"] = None
        return json.dumps(d, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ProofCertificate":
        d = json.loads(text)
        for key in ("exclusions", "equality_orders", "exit_regime", "direct"):
            d[key] = [tuple(x) for x in d[key]]
        return cls(**d)


def _norm_exclusions(points: Sequence[EqualityPoint]) -> List[Tuple[int, int]]:
    ex = set()
    for pt in points:
        if pt.residues and not pt.denominator_zero:
            for r in pt.residues:
                ex.add((pt.period, r))
    # drop classes implied by a coarser one
    keep = [(q, r) for q, r in ex
            if not any(q2 != q and q % q2 == 0 and r % q2 == r2 for q2, r2 in ex)]
    return sorted(keep)


def prove_pattern(p: Pattern, k: Optional[int] = None, m_min: Optional[int] = None) -> ProofCertificate:
    """Certify N(h_m) = k, U(h_m) = 0 for all non-excluded m >= m_min.

    m >= m0 is covered by the exit-point argument; m_min <= m < m0 is
    counted directly.  With m_min omitted the smallest valid start is used.
    """
    rf = to_rational_form(p)
    R = resolvent(rf.f, rf.g)
    e = max(rf.f.degree, rf.g.degree)
    if not is_palindromic(R, e):
        raise ProofError("resolvent", "resolvent is not palindromic")
    dom = check_dominance(R, e)
    if not dom.holds:
        raise ProofError("dominance", dom.reason)
    points = analyse_points(rf, dom)
    Nf_count = count_exact(rf.f)
    if Nf_count.on_circle:
        raise ProofError("base_count", "f has zeros on the circle")
    Nf = Nf_count.inside
    if k is not None and Nf != k:
        raise ProofError("base_count", f"N(f) = {Nf}, expected {k}")
    k = Nf
    n0 = critical_exponent(rf, points)
    m0 = critical_m(rf, points)
    exclusions = _norm_exclusions(points)

    def excluded(m):
        return any(m % q == r for q, r in exclusions)

    S = critical_polynomial(rf, R) if R.degree > 0 else IntPoly([1])
    flags = []
    for pt in points:
        if pt.residues and abs(_eval_float(S, pt.xi)) > 1e-6 * _scale(S, pt.xi):
            raise ProofError("critical_exponent", f"xi at order {pt.order} is not a root of S")

    # direct counts from 0 through the regression window
    top = m0 + REGRESSION_SPAN
    counts = {}
    for m in range(top + 1):
        if m * len(p.period) + len(p.prefix) + len(p.suffix) == 0:
            continue
        c = count_exact(expand_pattern(p, m))
        counts[m] = (c.inside, c.on_circle)
    bad = [m for m, c in counts.items() if not excluded(m) and c != (k, 0)]
    if any(m >= m0 for m in bad):
        raise ProofError("replay", f"direct count disagrees at m={min(x for x in bad if x >= m0)}")
    m1 = (max(bad) + 1) if bad else min(counts)
    while excluded(m1):
        m1 += 1
    if m1 != m0:
        flags.append(f"empirical threshold m1={m1} differs from m0={m0}")
    if m_min is None:
        m_min = m1
    if m_min < m1:
        raise ProofError("direct", f"N(h_m) != {k} at some m >= {m_min}")

    regime = []
    for m in range(m0):
        try:
            E = exit_count(rf, points, m)
            regime.append((m, E, Nf - E))
        except ProofError:
            regime.append((m, -1, -1))
    direct = [(m, *counts[m]) for m in range(m_min, m0) if m in counts and not excluded(m)]
    replay = []
    m = m0
    while len(replay) < REPLAY_COUNT:
        if not excluded(m):
            c = counts.get(m)
            if c is None:
                cc = count_exact(expand_pattern(p, m))
                c = (cc.inside, cc.on_circle)
            if c != (k, 0):
                raise ProofError("replay", f"count {c} at m={m}")
            replay.append(m)
        m += 1

    return ProofCertificate(
        pattern=p.render(), k=k, m0=m0, m1=m1, m_min=m_min,
        n0=None if n0 == -math.inf else n0,
        exclusions=exclusions, f=list(rf.f.coeffs), g=list(rf.g.coeffs),
        denominator=list(rf.D.coeffs), t=rf.t, s=rf.s,
        resolvent=list(R.coeffs), middle=dom.middle, equality_orders=dom.equality_orders,
        S=list(S.coeffs), base_count=Nf, exit_regime=regime, direct=direct, replay=replay, flags=flags,
    )


def _eval_float(S: IntPoly, x: float) -> float:
    with mpmath.workdps(50):
        acc = mpmath.mpf(0)
        for c in reversed(S.coeffs):
            acc = acc * x + c
        return float(acc)


def _scale(S: IntPoly, x: float) -> float:
    return sum(abs(c) * abs(x) ** i for i, c in enumerate(S.coeffs)) + 1.0


def verify_certificate(cert: ProofCertificate) -> Tuple[bool, List[str]]:
    """Rebuild the certificate from its pattern and replay the direct counts."""
    problems = []
    try:
        fresh = prove_pattern(Pattern.parse(cert.pattern), cert.k, cert.m_min)
    except ProofError as exc:
        return False, [str(exc)]
    for name in ("k", "m0", "exclusions", "f", "g", "denominator", "resolvent", "S", "base_count", "replay"):
        if getattr(fresh, name) != getattr(cert, name):
            problems.append(f"field {name} differs")
    p = Pattern.parse(cert.pattern)
    for m in cert.replay + [x[0] for x in cert.direct]:
        c = count_exact(expand_pattern(p, m))
        if (c.inside, c.on_circle) != (cert.k, 0):
            problems.append(f"count at m={m} is {c}")
    return not problems, problems
