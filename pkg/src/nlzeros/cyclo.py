"""Exact arithmetic in Q(x) / Phi_d(x), x = exp(2 pi i / d)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

import mpmath

from .poly import IntPoly, _divmod_q, cyclotomic, euler_phi


class CycloElem:
    __slots__ = ("d", "c")

    def __init__(self, d: int, coeffs: Sequence):
        self.d = d
        self.c = _reduce(d, [Fraction(x) for x in coeffs])

    @classmethod
    def from_poly(cls, f: IntPoly, d: int, j: int = 1) -> "CycloElem":
        """f(x^j)."""
        sub = [0] * max(d, 1)
        for i, a in enumerate(f.coeffs):
            sub[(i * j) % d] += a
        return cls(d, sub)

    @classmethod
    def power(cls, d: int, e: int) -> "CycloElem":
        c = [0] * d
        c[e % d] = 1
        return cls(d, c)

    @classmethod
    def const(cls, d: int, v) -> "CycloElem":
        return cls(d, [v])

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, other):
        return isinstance(other, CycloElem) and self.d == other.d and self.c == other.c

    def __hash__(self):
        return hash((self.d, self.c))

    def __add__(self, o):
        o = self._lift(o)
        return CycloElem(self.d, [a + b for a, b in zip(self.c, o.c)])

    def __sub__(self, o):
        o = self._lift(o)
        return CycloElem(self.d, [a - b for a, b in zip(self.c, o.c)])

    def __neg__(self):
        return CycloElem(self.d, [-a for a in self.c])

    def __mul__(self, o):
        o = self._lift(o)
        out = [Fraction(0)] * (2 * len(self.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return CycloElem(self.d, out)

    def inverse(self) -> "CycloElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # extended Euclid of (element, Phi_d) over Q
        phi = [Fraction(x) for x in cyclotomic(self.d).coeffs]
        r0, r1 = phi, _strip(list(self.c))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        inv = [x / r1[0] for x in s1]
        return CycloElem(self.d, inv)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def conj(self) -> "CycloElem":
        """Complex conjugate: x -> x^{-1} = x^{d-1}."""
        out = [Fraction(0)] * self.d
        for i, a in enumerate(self.c):
            out[(-i) % self.d] += a
        return CycloElem(self.d, out)

    def is_real(self) -> bool:
        return self == self.conj()

    def to_mp(self, dps: int = 60):
        with mpmath.workdps(dps):
            x = mpmath.expjpi(mpmath.mpf(2) / self.d)
            acc = mpmath.mpc(0)
            for i, a in enumerate(self.c):
                if a:
                    acc += mpmath.mpf(a.numerator) / a.denominator * x ** i
            return acc

    def real_sign(self, dps: int = 60) -> int:
        """Sign of a real element: exact zero test, then high-precision evaluation."""
        if self.is_zero():
            return 0
        if not self.is_real():
            raise ValueError("element is not real")
        v = self.to_mp(dps).real
        if abs(v) < mpmath.mpf(10) ** (-(dps // 2)):
            return self.real_sign(dps * 2)
        return 1 if v > 0 else -1

    def _lift(self, o) -> "CycloElem":
        if isinstance(o, CycloElem):
            if o.d != self.d:
                raise ValueError("mixed cyclotomic orders")
            return o
        return CycloElem.const(self.d, o)

    def __repr__(self):
        return f"CycloElem(d={self.d}, {[str(x) for x in self.c]})"


def _strip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(out)


def _psub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _strip([Fraction(x) for x in out])


def _reduce(d: int, c) -> Tuple[Fraction, ...]:
    ph = euler_phi(d)
    folded = [Fraction(0)] * max(d, 1)
    for i, a in enumerate(c):
        folded[i % d] += a
    _, r = _divmod_q(folded, cyclotomic(d).coeffs)
    r = list(r) + [Fraction(0)] * (ph - len(r))
    return tuple(r[:ph])
