"""Right-ordered groups of the scaled-extension family.

A nonzero scalar c in Q(sqrt(-d)) determines the group of normal forms
y^h x^n (h in Q(sqrt(-d)), n in Z) with the commutation rule

    y^h x = x y^(c*h),

so conjugation by x scales the exponent of y by c^-1.  The multiplication
law in normal form is

    (y^h x^n) (y^h' x^n') = y^(h + c^-n h') x^(n+n'),

and (y^h x^n)^-1 = y^(-c^n h) x^(-n).

c = -1 realizes the Klein bottle group <s,t | ts = st^-1> via y = t, x = s;
c = 1 is free abelian of rank 2.

The right-invariant total order compares normal forms lexicographically by
(n, Re h, Im h): right multiplication adds the same c^-n h'' to both h's
when the x-exponents agree, so comparisons are preserved.  The dual left
order is g <=* h iff g^-1 >= h^-1; it is left-invariant and has the same
positive cone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .scalars import QuadImaginary, as_quad

RIGHT_ORDER = "right"
DUAL_LEFT_ORDER = "dual-left"


@dataclass(frozen=True)
class ConjugatedBy:
    """Order tag for the local order <=_g: a <=_g b iff g a g^-1 <= g b g^-1."""

    g: "GroupElement"


class GroupDescriptor:
    """The scaled extension group determined by c."""

    def __init__(self, c):
        c = as_quad(c)
        if c.is_zero:
            raise ValueError("c must be nonzero")
        self.c = c
        self._cpow = {0: QuadImaginary(1), 1: c}

    def c_pow(self, k: int) -> QuadImaginary:
        if k not in self._cpow:
            if k > 0:
                self._cpow[k] = self.c_pow(k - 1) * self.c
            else:
                if -1 not in self._cpow:
                    self._cpow[-1] = self.c.inverse()
                self._cpow[k] = self.c_pow(k + 1) * self._cpow[-1]
        return self._cpow[k]

    @property
    def is_klein_bottle(self) -> bool:
        return self.c == QuadImaginary(-1)

    def element(self, h, n: int) -> "GroupElement":
        return GroupElement(self, as_quad(h), int(n))

    def identity(self) -> "GroupElement":
        return GroupElement(self, QuadImaginary(0), 0)

    @property
    def gen_y(self) -> "GroupElement":
        return self.element(1, 0)

    @property
    def gen_x(self) -> "GroupElement":
        return self.element(0, 1)

    def __eq__(self, other):
        return isinstance(other, GroupDescriptor) and self.c == other.c

    def __hash__(self):
        return hash(("GroupDescriptor", self.c))

    def __repr__(self):
        return "GroupDescriptor(c=%r)" % (self.c,)

    # literal grammar, see parse_element below
    def parse(self, text: str) -> "GroupElement":
        return parse_element(text, self)

    def format(self, g: "GroupElement") -> str:
        return format_element(g)


class GroupElement:
    """A normal form y^h x^n; treated as immutable, sort keys cached."""

    __slots__ = ("group", "h", "n", "_rkey", "_dkey", "_hash", "_inv")

    def __init__(self, group: GroupDescriptor, h: QuadImaginary, n: int):
        self.group = group
        self.h = h
        self.n = n
        self._rkey = None
        self._dkey = None
        self._hash = None
        self._inv = None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        g = self.group
        if g is not other.group and g != other.group:
            raise ValueError("elements of different groups")
        return GroupElement(g, self.h + g.c_pow(-self.n) * other.h, self.n + other.n)

    def inverse(self) -> "GroupElement":
        out = self._inv
        if out is None:
            g = self.group
            out = GroupElement(g, -(g.c_pow(self.n) * self.h), -self.n)
            out._inv = self
            self._inv = out
        return out

    def __pow__(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.group.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def is_identity(self) -> bool:
        return self.n == 0 and self.h.is_zero

    def right_key(self):
        """Sort key realizing the right-invariant order."""
        k = self._rkey
        if k is None:
            k = (self.n, self.h.re, self.h.im)
            self._rkey = k
        return k

    def dual_key(self):
        """Sort key for the dual left order (g <=* h iff g^-1 >= h^-1)."""
        k = self._dkey
        if k is None:
            n, re_, im_ = self.inverse().right_key()
            k = (-n, -re_, -im_)
            self._dkey = k
        return k

    def conjugate_by(self, g: "GroupElement") -> "GroupElement":
        return g * self * g.inverse()

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.n == other.n and self.h == other.h and self.group == other.group

    def __hash__(self):
        hs = self._hash
        if hs is None:
            hs = hash((self.n, self.h))
            self._hash = hs
        return hs

    def __repr__(self):
        return format_element(self)


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def inv(a: GroupElement) -> GroupElement:
    return a.inverse()


def order_key(g: GroupElement, tag=RIGHT_ORDER):
    """A total-order sort key for the tagged order (RIGHT or DUAL_LEFT)."""
    if tag == RIGHT_ORDER:
        return g.right_key()
    if tag == DUAL_LEFT_ORDER:
        return g.dual_key()
    raise ValueError("order_key only supports RIGHT_ORDER and DUAL_LEFT_ORDER")


def compare(a: GroupElement, b: GroupElement, tag=RIGHT_ORDER) -> int:
    """-1, 0 or 1 as a <, =, > b under the tagged order."""
    if isinstance(tag, ConjugatedBy):
        ka = a.conjugate_by(tag.g).right_key()
        kb = b.conjugate_by(tag.g).right_key()
    else:
        ka = order_key(a, tag)
        kb = order_key(b, tag)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def sort_elements(elems: Iterable[GroupElement], tag=RIGHT_ORDER) -> List[GroupElement]:
    if isinstance(tag, ConjugatedBy):
        return sorted(elems, key=lambda e: e.conjugate_by(tag.g).right_key())
    return sorted(elems, key=lambda e: order_key(e, tag))


def local_order_class(g: GroupElement, s_set: Sequence[GroupElement]) -> List[GroupElement]:
    """S sorted by the local order <=_g (conjugation by g, then compare)."""
    if not s_set:
        raise ValueError("S must be nonempty")
    if len(set(s_set)) != len(list(s_set)):
        raise ValueError("S must be duplicate-free")
    return sort_elements(s_set, ConjugatedBy(g))


@dataclass
class PeriodicityReport:
    window: int
    classes: list            # class of x^n for n = -N..N, as tuples of elements
    period: Optional[int]    # minimal period found within the window, if any

    def class_at(self, n: int):
        return self.classes[n + self.window]


def positivity_periodicity_probe(
    group: GroupDescriptor, s_set: Sequence[GroupElement], window: int
) -> PeriodicityReport:
    """Classify x^n (|n| <= window) by the local order it induces on S, and
    report the minimal period of the classification sequence if one shows up
    within the window."""
    if window < 1:
        raise ValueError("window must be >= 1")
    classes = []
    for n in range(-window, window + 1):
        g = group.gen_x ** n
        classes.append(tuple(local_order_class(g, s_set)))
    period = None
    length = len(classes)
    for p in range(1, window + 1):
        if all(classes[i] == classes[i + p] for i in range(length - p)):
            period = p
            break
    return PeriodicityReport(window, classes, period)


# ---------------------------------------------------------------------------
# Element literal grammar: y^(a+b*w)x^n with `w` the field's irrational basis
# element (i for d=1, zeta3 for d=3); t^i*s^j sugar for c = -1.
# ---------------------------------------------------------------------------

_ATOM_RE = re.compile(
    r"\s*(?:\*\s*)?"
    r"(?:(?P<one>1)"
    r"|(?P<gen>[ystx])(?:\^(?:\((?P<paren>[^()]*)\)|(?P<plain>-?\d+)))?"
    r")"
)


def _basis_w(group: GroupDescriptor) -> QuadImaginary:
    from .scalars import GAUSS_I, ZETA3

    if group.c.d == 3:
        return ZETA3
    return GAUSS_I


def _parse_exponent(text: str, group: GroupDescriptor) -> QuadImaginary:
    text = text.replace(" ", "")
    w = _basis_w(group)
    # split into signed additive pieces
    total = QuadImaginary(0)
    for m in re.finditer(r"[+-]?[^+-]+", text):
        piece = m.group(0)
        sign = 1
        if piece.startswith("+"):
            piece = piece[1:]
        elif piece.startswith("-"):
            sign = -1
            piece = piece[1:]
        if piece.endswith("w"):
            coeff = piece[:-1].rstrip("*")
            q = Fraction(coeff) if coeff else Fraction(1)
            total = total + sign * q * w
        else:
            total = total + QuadImaginary(sign * Fraction(piece))
    return total


def parse_element(text: str, group: GroupDescriptor) -> GroupElement:
    """Parse a group element literal, e.g. 'y^(1/2+1*w)x^-2', 't^2*s', 'ts'."""
    out = group.identity()
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty element literal")
    while pos < len(text):
        m = _ATOM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse element literal %r at %r" % (text, text[pos:]))
        pos = m.end()
        if m.group("one"):
            continue
        gen = m.group("gen")
        if m.group("paren") is not None:
            if gen != "y":
                raise ValueError("only y takes a parenthesized exponent")
            out = out * GroupElement(group, _parse_exponent(m.group("paren"), group), 0)
            continue
        k = int(m.group("plain")) if m.group("plain") is not None else 1
        if gen in ("y", "t"):
            out = out * GroupElement(group, QuadImaginary(k), 0)
        else:  # x or s
            out = out * GroupElement(group, QuadImaginary(0), k)
    return out


def _format_exponent(h: QuadImaginary, group: GroupDescriptor) -> str:
    w = _basis_w(group)
    # write h = a + b*w in the basis {1, w}
    b = h.im / w.im if h.im != 0 else Fraction(0)
    a = h.re - b * w.re
    if b == 0:
        return str(a)
    bs = "w" if b == 1 else ("-w" if b == -1 else "%s*w" % b)
    if a == 0:
        return bs
    return "%s%s%s" % (a, "+" if not bs.startswith("-") else "", bs)


def format_element(g: GroupElement) -> str:
    if g.is_identity:
        return "1"
    if g.group.is_klein_bottle and g.h.is_rational and g.h.re.denominator == 1:
        i = int(g.h.re)
        j = g.n
        parts = []
        if i:
            parts.append("t" if i == 1 else "t^%d" % i)
        if j:
            parts.append("s" if j == 1 else "s^%d" % j)
        return "*".join(parts)
    parts = []
    if not g.h.is_zero:
        exp = _format_exponent(g.h, g.group)
        if re.fullmatch(r"-?\d+", exp) and exp != "1":
            parts.append("y^%s" % exp)
        elif exp == "1":
            parts.append("y")
        else:
            parts.append("y^(%s)" % exp)
    if g.n:
        parts.append("x" if g.n == 1 else "x^%d" % g.n)
    return "".join(parts)
