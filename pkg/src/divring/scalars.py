"""Exact arithmetic substrate: coefficient rings, quadratic imaginary scalars,
finite module presentations, and rational kernel computation.

Everything here is exact; no value anywhere in the package is a float.
Rationals are fractions.Fraction, residues are ints in [0, m), and elements
of Q(sqrt(-d)) are pairs of rationals.  All values are immutable and safe to
share.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence


class RingError(Exception):
    pass


class NotAField(RingError):
    """Inversion requested in a carrier that is not a field."""


class ZeroInverse(RingError, ZeroDivisionError):
    """Inversion of zero."""


class InfiniteCarrier(RingError):
    """Enumeration requested for an infinite carrier."""


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


class Ring:
    """Descriptor for a coefficient ring; elements are plain ints/Fractions.

    Subclasses provide exact arithmetic on their canonical element
    representation.  Descriptors compare equal when they denote the same ring.
    """

    is_field = False
    size: Optional[int] = None
    name = "?"

    def coerce(self, v):
        raise NotImplementedError

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def inverse(self, a):
        raise NotAField("%s is not a field" % self.name)

    def elements(self) -> Iterator:
        raise InfiniteCarrier("%s has an infinite carrier" % self.name)

    def format(self, a) -> str:
        return str(a)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash((type(self).__name__, self.name))


class Rationals(Ring):
    is_field = True
    name = "Q"

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v)
        raise TypeError("cannot coerce %r into Q" % (v,))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def inverse(self, a):
        if a == 0:
            raise ZeroInverse("0 has no inverse in Q")
        return 1 / Fraction(a)


class Integers(Ring):
    name = "Z"

    def coerce(self, v):
        if isinstance(v, int):
            return v
        if isinstance(v, Fraction) and v.denominator == 1:
            return int(v)
        if isinstance(v, str):
            return int(v)
        raise TypeError("cannot coerce %r into Z" % (v,))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0


class IntegersMod(Ring):
    """Z/m with canonical residues in [0, m); a field exactly when m is prime."""

    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.m = m
        self.is_field = is_prime(m)
        self.size = m
        self.name = "Fp(%d)" % m if self.is_field else "Zmod(%d)" % m

    def coerce(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise TypeError("cannot coerce %r into %s" % (v, self.name))
            v = int(v)
        if isinstance(v, str):
            v = int(v)
        return v % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def is_zero(self, a):
        return a % self.m == 0

    def inverse(self, a):
        if not self.is_field:
            raise NotAField("%s is not a field (composite modulus)" % self.name)
        a %= self.m
        if a == 0:
            raise ZeroInverse("0 has no inverse in %s" % self.name)
        return pow(a, -1, self.m)

    def elements(self):
        return iter(range(self.m))


QQ = Rationals()
ZZ = Integers()


def Zmod(m: int) -> IntegersMod:
    return IntegersMod(m)


def Fp(p: int) -> IntegersMod:
    if not is_prime(p):
        raise NotAField("Fp(%d): %d is not prime" % (p, p))
    return IntegersMod(p)


def scalar_inverse(ring: Ring, s):
    """Inverse of s in a field carrier.

    Raises NotAField when the carrier is Z or a composite Z/m, ZeroInverse
    when s = 0.
    """
    if not ring.is_field:
        raise NotAField("%s is not a field" % ring.name)
    s = ring.coerce(s)
    if ring.is_zero(s):
        raise ZeroInverse("zero has no inverse")
    return ring.inverse(s)


# ---------------------------------------------------------------------------
# Quadratic imaginary scalars Q(sqrt(-d)), d in {1, 3}.
# ---------------------------------------------------------------------------

def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(v)


def _sqrt_fraction(q: Fraction) -> Optional[Fraction]:
    # exact square root of a nonnegative rational, or None
    if q < 0:
        return None
    from math import isqrt

    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class QuadImaginary:
    """An element re + im*sqrt(-d) of Q(sqrt(-d)), d in {1, 3}.

    Treated as immutable everywhere.  Rational values are normalized to the
    d = 1 tag so that equality and hashing never depend on which field a
    rational was built in.  Mixing two genuinely irrational values from
    different fields is an error.
    """

    __slots__ = ("re", "im", "d")

    def __init__(self, re, im=0, d: int = 1):
        if not isinstance(re, Fraction):
            re = _frac(re)
        if not isinstance(im, Fraction):
            im = _frac(im)
        if im == 0:
            d = 1
        elif d not in (1, 3):
            raise ValueError("d must be 1 or 3")
        self.re = re
        self.im = im
        self.d = d

    # -- field bookkeeping ---------------------------------------------------
    def _join_d(self, other: "QuadImaginary") -> int:
        if self.im == 0:
            return other.d
        if other.im == 0:
            return self.d
        if self.d != other.d:
            raise ValueError("cannot mix Q(sqrt(-%d)) and Q(sqrt(-%d))" % (self.d, other.d))
        return self.d

    @property
    def is_rational(self) -> bool:
        return self.im == 0

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = as_quad(other)
        d = self._join_d(other)
        return QuadImaginary(self.re + other.re, self.im + other.im, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadImaginary(-self.re, -self.im, self.d)

    def __sub__(self, other):
        return self + (-as_quad(other))

    def __rsub__(self, other):
        return as_quad(other) + (-self)

    def __mul__(self, other):
        other = as_quad(other)
        d = self._join_d(other)
        re = self.re * other.re - d * self.im * other.im
        im = self.re * other.im + self.im * other.re
        return QuadImaginary(re, im, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadImaginary":
        return QuadImaginary(self.re, -self.im, self.d)

    def norm(self) -> Fraction:
        # value * conjugate, always a nonnegative rational
        return self.re * self.re + self.d * self.im * self.im

    def inverse(self) -> "QuadImaginary":
        nm = self.norm()
        if nm == 0:
            raise ZeroInverse("zero has no inverse")
        return QuadImaginary(self.re / nm, -self.im / nm, self.d)

    def __truediv__(self, other):
        return self * as_quad(other).inverse()

    def __pow__(self, k: int) -> "QuadImaginary":
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadImaginary(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def abs_as_rational(self) -> Optional[Fraction]:
        """|value| as an exact rational when the norm is a rational square."""
        return _sqrt_fraction(self.norm())

    # -- comparisons ---------------------------------------------------------
    def key(self):
        # (Re, Im) lexicographic; valid within a single Q(sqrt(-d))
        return (self.re, self.im)

    def __eq__(self, other):
        if not isinstance(other, QuadImaginary):
            try:
                other = as_quad(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im and self.d == other.d

    def __hash__(self):
        return hash((self.re, self.im, self.d))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        s = "sqrt(-%d)" % self.d
        if self.re == 0:
            return "%s*%s" % (self.im, s)
        sign = "+" if self.im > 0 else "-"
        return "%s%s%s*%s" % (self.re, sign, abs(self.im), s)


def as_quad(v) -> QuadImaginary:
    if isinstance(v, QuadImaginary):
        return v
    if isinstance(v, (int, Fraction)):
        return QuadImaginary(v)
    raise TypeError("cannot interpret %r as a quadratic imaginary scalar" % (v,))


GAUSS_I = QuadImaginary(0, 1, 1)
ZETA3 = QuadImaginary(Fraction(-1, 2), Fraction(1, 2), 3)
ZETA6 = QuadImaginary(Fraction(1, 2), Fraction(1, 2), 3)


# ---------------------------------------------------------------------------
# Finite module presentations.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModulePresentation:
    """A right module over a finite ring (or Z), presented as a product of
    cyclic groups Z/d1 x ... x Z/dk with the ring acting coordinatewise, or
    the rational backend "Q as Q-module" (orders=None).

    Elements of a finite module are tuples of residues; elements of the
    rational backend are Fractions.
    """

    ring: Ring
    orders: Optional[tuple] = None

    def __post_init__(self):
        if self.orders is not None:
            if len(self.orders) == 0:
                raise ValueError("finite module needs at least one cyclic factor")
            for d in self.orders:
                if d < 1:
                    raise ValueError("cyclic factor orders must be >= 1")
                if isinstance(self.ring, IntegersMod) and (d == 1 or self.ring.m % d != 0):
                    if d != 1:
                        raise ValueError(
                            "Z/%d is not a %s-module (need d | m)" % (d, self.ring.name)
                        )
        else:
            if not isinstance(self.ring, (Integers, Rationals)):
                raise ValueError("rational backend needs ring Z or Q")

    @property
    def is_finite(self) -> bool:
        return self.orders is not None

    @property
    def size(self) -> Optional[int]:
        if self.orders is None:
            return None
        out = 1
        for d in self.orders:
            out *= d
        return out

    @property
    def name(self) -> str:
        if self.orders is None:
            return "Q"
        return "x".join("Zmod(%d)" % d for d in self.orders)

    def zero(self):
        if self.orders is None:
            return Fraction(0)
        return tuple(0 for _ in self.orders)

    def add(self, a, b):
        if self.orders is None:
            return a + b
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def neg(self, a):
        if self.orders is None:
            return -a
        return tuple((-x) % d for x, d in zip(a, self.orders))

    def act(self, a, r):
        """Right action a*r of a ring element on a module element."""
        if self.orders is None:
            return a * Fraction(r)
        r = int(r)
        return tuple((x * r) % d for x, d in zip(a, self.orders))

    def elements(self) -> Iterator:
        if self.orders is None:
            raise InfiniteCarrier("Q is not enumerable")
        return itertools.product(*(range(d) for d in self.orders))

    def dot(self, row: Sequence, col: Sequence):
        """Sum of a_i * x_i for a row over M and a column over the ring."""
        acc = self.zero()
        for a, x in zip(row, col):
            acc = self.add(acc, self.act(a, x))
        return acc


def enumerate_module(module: ModulePresentation, n: int) -> Iterator[tuple]:
    """Yield every element of M^n exactly once, in mixed-radix order."""
    if not module.is_finite:
        raise InfiniteCarrier("cannot enumerate the rational backend")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return itertools.product(module.elements(), repeat=n)


# ---------------------------------------------------------------------------
# Exact rational linear algebra.
# ---------------------------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in m[:r]], pivots


def rational_rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    reduced, _ = rref(rows)
    return len(reduced)


def rational_kernel_basis(rows: Sequence[Sequence]):
    """Basis of the left kernel {v in Q^n : v A = 0} of an n-row matrix A.

    The basis is returned as rows in reduced echelon form, so the output is
    canonical for a given subspace.
    """
    n = len(rows)
    if n == 0:
        return []
    m = len(rows[0]) if rows[0] is not None else 0
    # v A = 0  <=>  A^T v^T = 0; solve for v in Q^n
    at = [[Fraction(rows[i][j]) for i in range(n)] for j in range(m)]
    if not at:
        # no columns: every v annihilates A
        basis = [tuple(Fraction(1) if j == i else Fraction(0) for j in range(n)) for i in range(n)]
        return basis
    reduced, pivots = rref(at)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref(basis)
    return [tuple(row) for row in canon]


def row_dot(v: Sequence, w: Sequence):
    acc = Fraction(0)
    for a, b in zip(v, w):
        acc += Fraction(a) * Fraction(b)
    return acc


# ---------------------------------------------------------------------------
# Plain-text descriptor grammar.
# ---------------------------------------------------------------------------

_ZMOD_RE = re.compile(r"^(?:Zmod|Fp)\((\d+)\)$")


def parse_ring(text: str) -> Ring:
    """Parse 'Z', 'Q', 'Zmod(m)' or 'Fp(p)'."""
    text = text.strip()
    if text == "Z":
        return ZZ
    if text == "Q":
        return QQ
    m = _ZMOD_RE.match(text)
    if m:
        mod = int(m.group(1))
        if text.startswith("Fp"):
            return Fp(mod)
        return IntegersMod(mod)
    raise ValueError("cannot parse ring descriptor %r" % text)


def parse_module(text: str, ring: Optional[Ring] = None) -> ModulePresentation:
    """Parse 'Q', 'Zmod(4)', 'Zmod(2)*Zmod(4)' or 'Zmod(2)^2'.

    The acting ring defaults to the cyclic ring of a single factor, or to Z
    for products and to Q for the rational backend.
    """
    text = text.strip()
    if text == "Q":
        return ModulePresentation(ring or QQ, None)
    orders = []
    for part in text.split("*"):
        part = part.strip()
        power = 1
        if "^" in part:
            part, exp = part.split("^")
            power = int(exp)
        m = _ZMOD_RE.match(part.strip())
        if not m:
            raise ValueError("cannot parse module descriptor %r" % text)
        orders.extend([int(m.group(1))] * power)
    if ring is None:
        ring = IntegersMod(orders[0]) if len(set(orders)) == 1 else ZZ
    return ModulePresentation(ring, tuple(orders))


def parse_scaling_constant(text: str) -> QuadImaginary:
    """Parse the c of a scaled extension group: a rational literal, 'i',
    'zeta3', 'zeta6', 'gauss(re,im)' or 'sqrt3(re,im)'."""
    text = text.strip()
    if text == "i":
        return GAUSS_I
    if text == "-i":
        return -GAUSS_I
    if text == "zeta3":
        return ZETA3
    if text == "zeta6":
        return ZETA6
    m = re.match(r"^(gauss|sqrt3)\(([^,]+),([^)]+)\)$", text)
    if m:
        d = 1 if m.group(1) == "gauss" else 3
        return QuadImaginary(Fraction(m.group(2)), Fraction(m.group(3)), d)
    return QuadImaginary(Fraction(text))
