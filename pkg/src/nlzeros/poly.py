"""Exact integer polynomials, words and coefficient patterns.

Coefficients are stored low-to-high, so ``IntPoly([1, 1, 0, 0, 1])`` is
1 + z + z^4.  Python ints give arbitrary precision everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd
from typing import Iterable, List, Sequence, Tuple

NEWMAN = "newman"
LITTLEWOOD = "littlewood"
CLASSES = (NEWMAN, LITTLEWOOD)

BINARY = "binary01"
PM1 = "pm1"


class DomainError(ValueError):
    pass


def _trim(c: List[int]) -> List[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class IntPoly:
    """Dense polynomial with integer coefficients, immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim([int(x) for x in coeffs])
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, *a):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "IntPoly":
        exps = list(exps)
        c = [0] * (max(exps) + 1)
        for e in exps:
            c[e] += 1
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return pretty(self)

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPoly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "IntPoly":
        """Multiply by z^k (k >= 0) or drop the k lowest coefficients (k < 0)."""
        if k >= 0:
            return IntPoly([0] * k + list(self.coeffs))
        return IntPoly(self.coeffs[-k:])

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def valuation(self) -> int:
        """Largest k with z^k | f."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise DomainError("valuation of zero polynomial")

    def divmod(self, other: "IntPoly") -> Tuple[List[Fraction], List[Fraction]]:
        return _divmod_q(list(self.coeffs), list(_lift(other).coeffs))

    def __floordiv__(self, other):
        return divexact(self, _lift(other))

    def __mod__(self, other):
        q, r = self.divmod(other)
        if any(x.denominator != 1 for x in r):
            raise DomainError("remainder is not integral")
        return IntPoly(int(x) for x in r)


def _lift(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly([x])
    return IntPoly(x)


def _divmod_q(a: Sequence, b: Sequence):
    b = list(b)
    _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    _trim(r)
    db = len(b) - 1
    lc = Fraction(b[-1])
    if len(r) - 1 < db:
        return [], r
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lc
        q[k] = c
        if c:
            for i, y in enumerate(b):
                r[k + i] -= c * y
    r = r[:db]
    _trim(r)
    return q, r


def divexact(f: IntPoly, g: IntPoly) -> IntPoly:
    """Exact quotient f/g in Z[z]; raises if g does not divide f."""
    q, r = _divmod_q(f.coeffs, g.coeffs)
    if r or any(x.denominator != 1 for x in q):
        raise DomainError("not an exact division")
    return IntPoly(int(x) for x in q)


def divides(g: IntPoly, f: IntPoly) -> bool:
    if f.is_zero():
        return True
    if g.degree > f.degree:
        return False
    _, r = _divmod_q(f.coeffs, g.coeffs)
    return not r


def divmod_monic(f: Sequence[int], g: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Integer long division by a monic g (fast path for cyclotomics)."""
    r = list(f)
    db = len(g) - 1
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        q[k] = c
        if c:
            for i in range(db + 1):
                r[k + i] -= c * g[i]
    return q, _trim(r[:db])


def content(f: IntPoly) -> int:
    g = 0
    for c in f.coeffs:
        g = igcd(g, c)
    return g


def primitive(f: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    if f.is_zero():
        return f
    c = content(f)
    if f.lc < 0:
        c = -c
    return IntPoly(x // c for x in f.coeffs)


def reciprocal(f: IntPoly) -> IntPoly:
    """Coefficient reversal z^deg f * f(1/z)."""
    if f.is_zero():
        raise DomainError("reciprocal of zero polynomial")
    return IntPoly(reversed(f.coeffs))


def is_self_reciprocal(f: IntPoly) -> bool:
    return f.coeffs == tuple(reversed(f.coeffs))


def rotate(f: IntPoly, steps: int) -> IntPoly:
    """Cyclic shift of the coefficient vector; forward moves a_n to the constant term."""
    if f.is_zero() or any(c == 0 for c in f.coeffs):
        raise DomainError("rotation needs all coefficients nonzero")
    c = list(f.coeffs)
    k = steps % len(c)
    if k == 0:
        return f
    return IntPoly(c[-k:] + c[:-k])


def derivative(f: IntPoly) -> IntPoly:
    return IntPoly(i * c for i, c in enumerate(f.coeffs) if i)


def prem(f: Sequence[int], g: Sequence[int]) -> List[int]:
    """Pseudo-remainder lc(g)^(deg f - deg g + 1) * f mod g, in Z[z]."""
    f = list(f)
    db = len(g) - 1
    lc = g[-1]
    k = len(f) - 1 - db
    if k < 0:
        return f
    for _ in range(k + 1):
        if len(f) - 1 < db:
            f = [lc * c for c in f]
            continue
        t = f[-1]
        sh = len(f) - 1 - db
        f = [lc * c for c in f]
        for i, c in enumerate(g):
            f[sh + i] -= t * c
        f.pop()
        _trim(f)
    return f


def gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    if f.is_zero():
        return primitive(g)
    if g.is_zero():
        return primitive(f)
    a, b = primitive(f), primitive(g)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = IntPoly(prem(a.coeffs, b.coeffs))
        a, b = b, (primitive(r) if not r.is_zero() else r)
    return primitive(a)


def gcd_many(*ps: IntPoly) -> IntPoly:
    out = IntPoly()
    for p in ps:
        if out.is_zero():
            out = primitive(p)
        else:
            out = gcd(out, p)
    return out


def resultant(f: Sequence, g: Sequence) -> Fraction:
    """Resultant of two univariate polynomials by the Euclidean recursion over Q."""
    a = _trim([Fraction(x) for x in f])
    b = _trim([Fraction(x) for x in g])
    if not a or not b:
        return Fraction(0)
    acc = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return acc * b[0] ** da
        if da == 0:
            return acc * a[0] ** db
        if da < db:
            a, b = b, a
            if (da * db) % 2:
                acc = -acc
            continue
        _, r = _divmod_q(a, b)
        if not r:
            return Fraction(0)
        dr = len(r) - 1
        # Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
        acc *= b[-1] ** (da - dr)
        if (da * db) % 2:
            acc = -acc
        a, b = b, r


def resultant_in_second(R: IntPoly, P: IntPoly, Q: IntPoly) -> IntPoly:
    """S(z) = Res_w(R(w), P(w) - z Q(w)) via integer evaluation and interpolation.

    deg S <= deg R.  Evaluation points where the formal degree of P - zQ
    drops are skipped so every sample uses the same Sylvester shape.
    """
    dform = max(P.degree, Q.degree)
    top = (P.coeffs[dform] if P.degree == dform else 0, Q.coeffs[dform] if Q.degree == dform else 0)
    npts = R.degree + 1
    xs: List[int] = []
    ys: List[Fraction] = []
    z = 0
    while len(xs) < npts:
        if top[0] - z * top[1] != 0:
            xs.append(z)
            ys.append(resultant(R.coeffs, (P - Q * z).coeffs))
        z += 1
    coeffs = _interpolate(xs, ys)
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("resultant interpolation is not integral")
    return IntPoly(int(c) for c in coeffs)


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> List[Fraction]:
    # Newton divided differences, then expand to monomial basis
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k in range(n):
        for i, c in enumerate(basis):
            out[i] += dd[k] * c
        nb = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nb[i + 1] += c
            nb[i] -= xs[k] * c
        basis = nb
    return _trim(out)


# cyclotomic polynomials

@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """Phi_d by dividing z^d - 1 by Phi_e for every proper divisor e."""
    if d < 1:
        raise DomainError("cyclotomic order must be positive")
    num = IntPoly([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            q, _ = divmod_monic(num.coeffs, cyclotomic(e).coeffs)
            num = IntPoly(q)
    return num


def cyclotomic_orders_upto(deg: int) -> List[int]:
    """All d with phi(d) <= deg (phi(d) >= sqrt(d/2) bounds the search)."""
    return [d for d in range(1, 2 * deg * deg + 3) if euler_phi(d) <= deg]


@dataclass(frozen=True)
class CyclotomicPoint:
    """zeta = exp(2 pi i j / d) with gcd(j, d) = 1."""

    order: int
    j: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("order must be >= 1")
        object.__setattr__(self, "j", self.j % self.order)
        if igcd(self.j, self.order) != 1 and self.order > 1:
            raise DomainError("exponent must be coprime to the order")

    def to_complex(self) -> complex:
        import cmath
        return cmath.exp(2j * cmath.pi * self.j / self.order)


def reduce_mod_cyclotomic(coeffs: Sequence[int], d: int) -> Tuple[int, ...]:
    """Residue of an integer polynomial modulo Phi_d, padded to length phi(d)."""
    # fold by z^d = 1 first, then divide by the monic Phi_d
    folded = [0] * d
    for i, c in enumerate(coeffs):
        folded[i % d] += c
    _, r = divmod_monic(folded, cyclotomic(d).coeffs)
    r = list(r) + [0] * (euler_phi(d) - len(r))
    return tuple(r)


def eval_at_root_of_unity(f: IntPoly, pt: CyclotomicPoint) -> Tuple[int, ...]:
    """f(zeta^j) as an element of Z[x]/Phi_d (x = exp(2 pi i/d)); zero tuple iff f(zeta) = 0."""
    d, j = pt.order, pt.j
    sub = [0] * (d if d > 1 else 1)
    for i, c in enumerate(f.coeffs):
        sub[(i * j) % d] += c
    return reduce_mod_cyclotomic(sub, d)


def vanishes_at_root_of_unity(f: IntPoly, d: int) -> bool:
    return not any(eval_at_root_of_unity(f, CyclotomicPoint(d, 1)))


# words and text format

def coeffs_to_word(coeffs: Sequence[int]) -> str:
    """Render coefficients as a 0/1 string (Newman) or +/- string (Littlewood)."""
    vals = set(coeffs)
    if vals <= {0, 1}:
        return "".join(str(c) for c in coeffs)
    if vals <= {-1, 1}:
        return "".join("+" if c > 0 else "-" for c in coeffs)
    raise DomainError("coefficients are not in {0,1} or {-1,1}")


def to_string(f: IntPoly) -> str:
    return coeffs_to_word(f.coeffs)


def parse_coeffs(s: str) -> List[int]:
    s = s.strip().replace(" ", "").replace("−", "-")
    if not s:
        raise DomainError("empty polynomial string")
    out = []
    for ch in s:
        if ch in "01":
            out.append(int(ch))
        elif ch == "+":
            out.append(1)
        elif ch == "-":
            out.append(-1)
        else:
            raise DomainError(f"bad coefficient character {ch!r}")
    if any(c == -1 for c in out) and any(c == 0 for c in out):
        raise DomainError("mixed 0 and - coefficients")
    return out


def from_string(s: str) -> IntPoly:
    """Parse '11001' (= 1+z+z^4) or '+-+' (= 1-z+z^2)."""
    return IntPoly(parse_coeffs(s))


def pretty(f: IntPoly, var: str = "z") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            term = str(mag)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            term = mon if mag == 1 else f"{mag}{mon}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        s += f" {sign} {term}"
    return s


def in_class(f: IntPoly, cls: str) -> bool:
    c = f.coeffs
    if not c:
        return False
    if cls == NEWMAN:
        return c[0] == 1 and c[-1] == 1 and all(x in (0, 1) for x in c)
    if cls == LITTLEWOOD:
        return all(x in (-1, 1) for x in c)
    raise DomainError(f"unknown class {cls!r}")


def class_of(f: IntPoly) -> str:
    for cls in CLASSES:
        if in_class(f, cls):
            return cls
    raise DomainError("polynomial is neither Newman nor Littlewood")


# patterns

@dataclass(frozen=True)
class Pattern:
    """prefix . period^m . suffix, words stored as 0/1 bytes."""

    prefix: bytes
    period: bytes
    suffix: bytes
    alphabet: str = BINARY

    def __post_init__(self):
        if self.alphabet not in (BINARY, PM1):
            raise DomainError(f"unknown alphabet {self.alphabet!r}")
        for w in (self.prefix, self.period, self.suffix):
            if any(b not in (0, 1) for b in w):
                raise DomainError("pattern words hold 0/1 bytes")

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """'111|011|' or '++-|-+|' (prefix|period|suffix)."""
        parts = text.replace("−", "-").split("|")
        if len(parts) != 3:
            raise DomainError("pattern text must be prefix|period|suffix")
        joined = "".join(parts)
        alpha = PM1 if any(ch in "+-" for ch in joined) else BINARY
        return cls(*(word_from_text(p, alpha) for p in parts), alphabet=alpha)

    def render(self) -> str:
        return "|".join(word_to_text(w, self.alphabet) for w in (self.prefix, self.period, self.suffix))

    def length(self, m: int) -> int:
        return len(self.prefix) + m * len(self.period) + len(self.suffix)

    def degree(self, m: int) -> int:
        return self.length(m) - 1

    def word(self, m: int) -> bytes:
        if m > 0 and not self.period:
            raise DomainError("empty period with m > 0")
        return self.prefix + self.period * m + self.suffix

    @property
    def cls(self) -> str:
        return LITTLEWOOD if self.alphabet == PM1 else NEWMAN


def word_from_text(s: str, alphabet: str) -> bytes:
    if alphabet == BINARY:
        if any(ch not in "01" for ch in s):
            raise DomainError(f"bad binary word {s!r}")
        return bytes(int(ch) for ch in s)
    if any(ch not in "+-" for ch in s):
        raise DomainError(f"bad +/- word {s!r}")
    return bytes(1 if ch == "+" else 0 for ch in s)


def word_to_text(w: bytes, alphabet: str) -> str:
    if alphabet == BINARY:
        return "".join(str(b) for b in w)
    return "".join("+" if b else "-" for b in w)


def word_coeffs(w: bytes, alphabet: str) -> List[int]:
    if alphabet == BINARY:
        return list(w)
    return [2 * b - 1 for b in w]


def word_poly(w: bytes, alphabet: str) -> IntPoly:
    return IntPoly(word_coeffs(w, alphabet))


def expand_pattern(p: Pattern, m: int) -> IntPoly:
    if m < 0:
        raise DomainError("repetition count must be >= 0")
    return word_poly(p.word(m), p.alphabet)
