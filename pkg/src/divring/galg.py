"""The group algebra kG: finite formal k-linear combinations of group
elements, with the bilinear extension of group multiplication.

Terms are kept in canonical form: sorted by the right order, no zero
coefficients.  Coefficients live in a field carrier (Q or F_p).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Tuple

from .ogroup import GroupDescriptor, GroupElement, order_key, parse_element
from .scalars import Ring


class AlgebraElement:
    __slots__ = ("field", "group", "terms")

    def __init__(self, field: Ring, group: GroupDescriptor, terms: Dict[GroupElement, object]):
        if not field.is_field:
            raise ValueError("kG needs a field carrier, got %s" % field.name)
        clean = {g: c for g, c in terms.items() if not field.is_zero(c)}
        ordered = sorted(clean.items(), key=lambda item: order_key(item[0]))
        self.field = field
        self.group = group
        self.terms = tuple(ordered)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, field, group):
        return cls(field, group, {})

    @classmethod
    def one(cls, field, group):
        return cls(field, group, {group.identity(): field.one()})

    @classmethod
    def monomial(cls, field, group, g: GroupElement, coeff=1):
        return cls(field, group, {g: field.coerce(coeff)})

    # -- queries ---------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> List[GroupElement]:
        """Support, strictly increasing under the right order."""
        return [g for g, _ in self.terms]

    def coefficient(self, g: GroupElement):
        for h, c in self.terms:
            if h == g:
                return c
        return self.field.zero()

    def least_term(self) -> Tuple[GroupElement, object]:
        if self.is_zero:
            raise ValueError("zero has no least term")
        return self.terms[0]

    # -- arithmetic --------------------------------------------------------------
    def _check(self, other: "AlgebraElement"):
        if self.field != other.field or self.group != other.group:
            raise ValueError("mixed group algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        acc = dict(self.terms)
        for g, c in other.terms:
            acc[g] = self.field.add(acc.get(g, self.field.zero()), c)
        return AlgebraElement(self.field, self.group, acc)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(
            self.field, self.group, {g: self.field.neg(c) for g, c in self.terms}
        )

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, coeff) -> "AlgebraElement":
        coeff = self.field.coerce(coeff)
        return AlgebraElement(
            self.field, self.group, {g: self.field.mul(c, coeff) for g, c in self.terms}
        )

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        acc: Dict[GroupElement, object] = {}
        for g, cg in self.terms:
            for h, ch in other.terms:
                gh = g * h
                c = self.field.mul(cg, ch)
                acc[gh] = self.field.add(acc.get(gh, self.field.zero()), c)
        return AlgebraElement(self.field, self.group, acc)

    def translate(self, g: GroupElement) -> "AlgebraElement":
        """Right translate u*g (order-preserving on the support)."""
        return AlgebraElement(self.field, self.group, {h * g: c for h, c in self.terms})

    # -- protocol ------------------------------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.field == other.field
            and self.group == other.group
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.group, self.terms))

    def __repr__(self):
        return format_algebra(self)


def algebra_mul(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    return u * v


def support(u: AlgebraElement) -> List[GroupElement]:
    return u.support()


# ---------------------------------------------------------------------------
# Literal grammar: sums of [coeff *] element-words, e.g. "1 - t",
# "3/2*y^(1)x^0 + -1*y^(0)x^1", "s + ts".
# ---------------------------------------------------------------------------

_COEFF_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*(?:\*\s*)?")


def _split_terms(text: str) -> List[str]:
    terms = []
    current = ""
    depth = 0
    sign = ""
    last = ""  # last significant char; +/- after '^' belongs to an exponent
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and last != "^":
            if current.strip():
                terms.append(sign + current)
                current = ""
                sign = "-" if ch == "-" else ""
            else:
                # leading sign (possibly doubled as in "+ -1*t")
                sign = "-" if (ch == "-") != (sign == "-") else ""
            continue
        current += ch
        if not ch.isspace():
            last = ch
    if current.strip():
        terms.append(sign + current)
    return terms


def parse_algebra(text: str, field: Ring, group: GroupDescriptor) -> AlgebraElement:
    text = text.strip()
    if not text or text == "0":
        return AlgebraElement.zero(field, group)
    acc: Dict[GroupElement, object] = {}
    for raw in _split_terms(text):
        raw = raw.strip()
        sign = field.one()
        if raw.startswith("-"):
            sign = field.neg(sign)
            raw = raw[1:].strip()
        coeff = field.one()
        m = _COEFF_RE.match(raw)
        body = raw
        if m:
            rest = raw[m.end():].strip()
            if rest or m.group(0).rstrip().endswith("*") or raw == m.group(1):
                coeff = field.coerce(Fraction(m.group(1)))
                body = rest
        if body:
            g = parse_element(body, group)
        else:
            g = group.identity()
        c = field.mul(sign, coeff)
        acc[g] = field.add(acc.get(g, field.zero()), c)
    return AlgebraElement(field, group, acc)


def _format_coeff(field: Ring, c) -> str:
    return str(c)


def format_algebra(u: AlgebraElement) -> str:
    if u.is_zero:
        return "0"
    parts = []
    for g, c in u.terms:
        gs = u.group.format(g)
        if gs == "1":
            piece = _format_coeff(u.field, c)
        elif c == u.field.one():
            piece = gs
        else:
            piece = "%s*%s" % (_format_coeff(u.field, c), gs)
        parts.append(piece)
    out = parts[0]
    for piece in parts[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out
