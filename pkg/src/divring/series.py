"""Lazy series over a right-ordered group: streams of (element, coefficient)
pairs in strictly increasing order under the tagged group order.

k((G)) (right order) is a right kG-module, k((G*)) (dual left order) a left
kG-module; both directions run through the same engine under a GroupView
that fixes the multiplication convention and the sort key.

Inversion solves b*x = a coefficient by coefficient: the support of b is
confined to the closure Y of rho^-1(supp a) under the maps y -> rho^-1(y*h)
for h in supp(x), generated in increasing order, and each coefficient is
gamma*delta^-1 where gamma is the current remainder coefficient at rho(g)
and delta the coefficient of g^-1*rho(g) in x.  That closure keeps every
remainder support point inside rho(Y): such a point is y*h for a used
support point y of b, and its rho-preimage is a member by construction.

Infinite streams never terminate on their own, so every consuming operation
runs on a step budget ("gas"): each pull of a source term burns one unit,
and running dry raises BudgetExceeded.  All equalities the package reports
about series are exact prefix equalities up to such a budget.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .galg import AlgebraElement
from .ogroup import (
    DUAL_LEFT_ORDER,
    RIGHT_ORDER,
    GroupDescriptor,
    GroupElement,
    order_key,
)
from .scalars import Ring
from .wqo import BudgetExceeded, ClosureBudget, OrderedClosure, PartialOpFamily

DEFAULT_BUDGET = 4000
DEFAULT_CLOSURE = ClosureBudget(max_elements=100000, max_steps=2000000)


class StreamOrderError(RuntimeError):
    """A series source emitted terms out of order or with zero coefficient."""


class SupportEscape(RuntimeError):
    """An inversion remainder grew support outside rho(Y)."""


class ZeroDivisor(RuntimeError):
    """Inversion of the zero algebra element."""


# -- gas ---------------------------------------------------------------------

_GAS_STACK: List[list] = []


@contextmanager
def step_budget(n: int):
    """Bound the number of source pulls performed inside the block."""
    frame = [n]
    _GAS_STACK.append(frame)
    try:
        yield
    finally:
        _GAS_STACK.pop()


def _tick():
    for frame in _GAS_STACK:
        frame[0] -= 1
        if frame[0] < 0:
            raise BudgetExceeded("series step budget exhausted")


# -- views --------------------------------------------------------------------

@dataclass(frozen=True)
class GroupView:
    """Multiplication and ordering conventions for one module side."""

    tag: str

    def key(self, g: GroupElement):
        if self.tag == RIGHT_ORDER:
            return g.right_key()
        return g.dual_key()

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        if self.tag == RIGHT_ORDER:
            return a * b
        return b * a

    def inv(self, a: GroupElement) -> GroupElement:
        return a.inverse()


RIGHT_VIEW = GroupView(RIGHT_ORDER)
DUAL_LEFT_VIEW = GroupView(DUAL_LEFT_ORDER)


def _view_for(tag: str) -> GroupView:
    if tag == RIGHT_ORDER:
        return RIGHT_VIEW
    if tag == DUAL_LEFT_ORDER:
        return DUAL_LEFT_VIEW
    raise ValueError("unknown order tag %r" % tag)


# -- streams --------------------------------------------------------------------

class SeriesStream:
    """Memoized lazy stream of (GroupElement, coefficient) pairs.

    Terms strictly increase under the tagged order; zero coefficients are
    never stored.  Already-pulled terms are cached, so independent cursors
    over one stream are cheap and inversion can revisit coefficients.
    """

    def __init__(self, field: Ring, group: GroupDescriptor, order: str,
                 source_factory: Optional[Callable[[], Iterator]] = None,
                 finite_terms: Optional[Sequence[Tuple[GroupElement, object]]] = None):
        self.field = field
        self.group = group
        self.order = order
        self._memo: List[Tuple[GroupElement, object]] = list(finite_terms or [])
        self._keys = [order_key(g, order) for g, _ in self._memo]
        self._factory = source_factory
        self._source: Optional[Iterator] = None
        self._replay = 0
        for i in range(1, len(self._keys)):
            if not self._keys[i - 1] < self._keys[i]:
                raise StreamOrderError("finite backing not strictly increasing")

    # construction -------------------------------------------------------------
    @classmethod
    def from_algebra(cls, u: AlgebraElement, order: str = RIGHT_ORDER) -> "SeriesStream":
        terms = sorted(u.terms, key=lambda t: order_key(t[0], order))
        return cls(u.field, u.group, order, finite_terms=terms)

    @classmethod
    def zero(cls, field, group, order: str = RIGHT_ORDER) -> "SeriesStream":
        return cls(field, group, order, finite_terms=[])

    @classmethod
    def from_generator(cls, field, group, order, gen_factory: Callable[[], Iterator]) -> "SeriesStream":
        return cls(field, group, order, source_factory=gen_factory)

    @property
    def is_finitely_backed(self) -> bool:
        return self._factory is None and self._source is None

    # pulling -------------------------------------------------------------------
    def _extend(self) -> bool:
        # A BudgetExceeded escaping a pull kills the source generator frame,
        # so the factory is kept and the source rebuilt lazily, replaying
        # (and discarding) the already-memoized prefix.  Budget exhaustion is
        # therefore recoverable and never mistaken for stream end.
        while True:
            if self._source is None:
                if self._factory is None:
                    return False
                self._source = self._factory()
                self._replay = 0
            try:
                _tick()
                g, c = next(self._source)
            except StopIteration:
                self._source = None
                self._factory = None
                return False
            except BudgetExceeded:
                self._source = None
                raise
            if self._replay < len(self._memo):
                if (g, c) != self._memo[self._replay]:
                    raise StreamOrderError("source replay diverged at %r" % (g,))
                self._replay += 1
                continue
            if self.field.is_zero(c):
                raise StreamOrderError("source emitted a zero coefficient")
            gk = order_key(g, self.order)
            if self._keys and not self._keys[-1] < gk:
                raise StreamOrderError("source emitted %r out of order" % (g,))
            self._memo.append((g, c))
            self._keys.append(gk)
            self._replay += 1
            return True

    def term(self, i: int) -> Optional[Tuple[GroupElement, object]]:
        while len(self._memo) <= i:
            if not self._extend():
                return None
        return self._memo[i]

    def terms(self) -> Iterator[Tuple[GroupElement, object]]:
        i = 0
        while True:
            t = self.term(i)
            if t is None:
                return
            yield t
            i += 1

    def support_stream(self) -> Iterator[GroupElement]:
        for g, _ in self.terms():
            yield g

    # consumption ---------------------------------------------------------------
    def prefix(self, k: int, budget: int = DEFAULT_BUDGET):
        """First k terms plus a status: 'filled', 'ended' or 'budget'."""
        out = []
        try:
            with step_budget(budget):
                for i in range(k):
                    t = self.term(i)
                    if t is None:
                        return out, "ended"
                    out.append(t)
            return out, "filled"
        except BudgetExceeded:
            return out, "budget"

    def coefficient_at(self, g: GroupElement, budget: int = DEFAULT_BUDGET):
        """Coefficient of g, pulling until the stream passes g or ends.

        Raises BudgetExceeded when the stream neither passes g nor ends
        within the budget.
        """
        with step_budget(budget):
            return self._coefficient(g)

    def _coefficient(self, g: GroupElement):
        gk = order_key(g, self.order)
        # pull until the memoized frontier passes g or the stream ends
        while not self._keys or self._keys[-1] < gk:
            if not self._extend():
                break
        i = bisect.bisect_left(self._keys, gk)
        if i < len(self._keys) and self._keys[i] == gk:
            return self._memo[i][1]
        return self.field.zero()

    def to_algebra(self, budget: int = DEFAULT_BUDGET) -> AlgebraElement:
        """Materialize a stream known to be finite."""
        with step_budget(budget):
            terms = {}
            for g, c in self.terms():
                terms[g] = c
        return AlgebraElement(self.field, self.group, terms)


def coefficient_at(a: SeriesStream, g: GroupElement, budget: int = DEFAULT_BUDGET):
    return a.coefficient_at(g, budget)


# -- rho --------------------------------------------------------------------------

def _rho_view(support: Sequence[GroupElement], g: GroupElement, view: GroupView) -> GroupElement:
    best = None
    bk = None
    for h in support:
        cand = view.mul(g, h)
        ck = view.key(cand)
        if bk is None or ck < bk:
            best, bk = cand, ck
    if best is None:
        raise ValueError("support must be nonempty")
    return best


def _rho_inverse_view(support: Sequence[GroupElement], g: GroupElement, view: GroupView) -> GroupElement:
    # the unique g' with rho(g') = g is g*h0^-1 for the h0 maximizing it
    best = None
    bk = None
    for h in support:
        cand = view.mul(g, view.inv(h))
        ck = view.key(cand)
        if bk is None or ck > bk:
            best, bk = cand, ck
    if best is None:
        raise ValueError("support must be nonempty")
    return best


def rho(support: Sequence[GroupElement], g: GroupElement) -> GroupElement:
    """The least element of g*support under the right order."""
    return _rho_view(list(support), g, RIGHT_VIEW)


def rho_inverse(support: Sequence[GroupElement], g: GroupElement) -> GroupElement:
    """The unique g' with rho(support, g') = g, realized by maximizing g*h^-1."""
    return _rho_inverse_view(list(support), g, RIGHT_VIEW)


# -- module actions ------------------------------------------------------------------

def _combine(field, group, order, branches) -> SeriesStream:
    """Merge-add scaled copies of streams: branches are (stream, element or
    None, scalar); element e translates the branch through the view (g*e on
    the right side, e*g on the dual side)."""
    view = _view_for(order)

    def gen():
        heap = []
        serial = itertools.count()
        cursors = []
        for stream, elt, scal in branches:
            idx = len(cursors)
            cursors.append([stream, elt, scal, 0])
            t = stream.term(0)
            if t is not None:
                g = view.mul(t[0], elt) if elt is not None else t[0]
                heapq.heappush(heap, (view.key(g), next(serial), idx, g, field.mul(t[1], scal)))
        pending_g = None
        pending_c = field.zero()
        while heap:
            _, _, idx, g, c = heapq.heappop(heap)
            cur = cursors[idx]
            cur[3] += 1
            t = cur[0].term(cur[3])
            if t is not None:
                g2 = view.mul(t[0], cur[1]) if cur[1] is not None else t[0]
                heapq.heappush(heap, (view.key(g2), next(serial), idx, g2, field.mul(t[1], cur[2])))
            if pending_g is not None and g == pending_g:
                pending_c = field.add(pending_c, c)
            else:
                if pending_g is not None and not field.is_zero(pending_c):
                    yield pending_g, pending_c
                pending_g, pending_c = g, c
        if pending_g is not None and not field.is_zero(pending_c):
            yield pending_g, pending_c

    return SeriesStream.from_generator(field, group, order, gen)


def _act(a: SeriesStream, x: AlgebraElement, view: GroupView) -> SeriesStream:
    if x.is_zero:
        return SeriesStream.zero(a.field, a.group, a.order)
    branches = [(a, h, c) for h, c in x.terms]
    return _combine(a.field, a.group, a.order, branches)


def act_right(a: SeriesStream, x: AlgebraElement) -> SeriesStream:
    """The right module action a*x on k((G))."""
    if a.order != RIGHT_ORDER:
        raise ValueError("act_right needs a right-order stream")
    return _act(a, x, RIGHT_VIEW)


def act_left(r: AlgebraElement, b: SeriesStream) -> SeriesStream:
    """The left module action r*b on k((G*))."""
    if b.order != DUAL_LEFT_ORDER:
        raise ValueError("act_left needs a dual-order stream")
    return _act(b, r, DUAL_LEFT_VIEW)


def series_add(u: SeriesStream, v: SeriesStream) -> SeriesStream:
    if u.order != v.order:
        raise ValueError("mixed orders")
    return _combine(u.field, u.group, u.order,
                    [(u, None, u.field.one()), (v, None, v.field.one())])


def series_sub(u: SeriesStream, v: SeriesStream) -> SeriesStream:
    if u.order != v.order:
        raise ValueError("mixed orders")
    return _combine(u.field, u.group, u.order,
                    [(u, None, u.field.one()), (v, None, u.field.neg(u.field.one()))])


def series_scale(u: SeriesStream, c) -> SeriesStream:
    c = u.field.coerce(c)
    if u.field.is_zero(c):
        return SeriesStream.zero(u.field, u.group, u.order)
    return _combine(u.field, u.group, u.order, [(u, None, c)])


# -- inversion ------------------------------------------------------------------------

def dubrovin_families(seed_support: Iterable[GroupElement],
                      x_support: Sequence[GroupElement],
                      view: GroupView = RIGHT_VIEW) -> List[PartialOpFamily]:
    """The closure instance behind inversion.

    Seeds are rho^-1 of the given support points.  The unary maps, indexed
    by ordered pairs (h0, h1) of distinct support elements of x, send y to
    y*h1*h0^-1 exactly when that value is the base of the translate of
    supp(x) whose least element is y*h1 (i.e. rho^-1(y*h1) = y*h1*h0^-1).
    Closing under them puts rho^-1(y*supp(x)) inside the closure for every
    member y, which is precisely what keeps every remainder support point
    a - (partial b)*x inside rho of the closure: any such point is y*h with
    y a used support point of b, and its rho-preimage is then a member.
    """
    supp_x = sorted(x_support, key=view.key)
    seed = PartialOpFamily(0, seed_support,
                           lambda g: _rho_inverse_view(supp_x, g, view))
    pairs = [(h0, h1) for h0 in supp_x for h1 in supp_x if h0 != h1]

    def step(y, pair):
        h0, h1 = pair
        p = view.mul(y, h1)
        base = view.mul(p, view.inv(h0))
        if _rho_inverse_view(supp_x, p, view) != base:
            return None
        if base == y:
            return None
        return base

    return [seed, PartialOpFamily(1, pairs, step)]


def _invert(a: SeriesStream, x: AlgebraElement, view: GroupView, *,
            check_support: bool, closure_budget: ClosureBudget) -> SeriesStream:
    if x.is_zero:
        raise ZeroDivisor("cannot invert the action of 0")
    field = a.field
    supp_x = sorted((g for g, _ in x.terms), key=view.key)
    coeff_x = {g: c for g, c in x.terms}

    def rho_(g):
        return _rho_view(supp_x, g, view)

    rho_inv_cache = {}

    def rho_inv(g):
        r = rho_inv_cache.get(g)
        if r is None:
            r = _rho_inverse_view(supp_x, g, view)
            rho_inv_cache[g] = r
        return r

    # same generated set as the pair-indexed dubrovin_families: for fixed h1
    # only the maximizing h0 contributes, so index by h1 alone; results never
    # fall below y since rho^-1(y*h1) >= y*h1*h1^-1 = y, with equality dropped
    # as a duplicate
    def step(y, h1):
        r = rho_inv(view.mul(y, h1))
        if r == y:
            return None
        return r

    unary_family = PartialOpFamily(1, supp_x, step)

    def gen():
        seed_family = PartialOpFamily(0, a.support_stream(), lambda g: rho_inv(g))
        closure = OrderedClosure([seed_family, unary_family], view.key, closure_budget)
        betas = {}
        # audit state: every candidate remainder support point (a's support
        # and products y*h for emitted y with nonzero beta) is checked once
        # when the target frontier passes it
        product_heap: list = []
        serial = itertools.count()
        a_scan = 0

        def remainder_coeff(p):
            c = a._coefficient(p)
            for h in supp_x:
                gp = view.mul(p, view.inv(h))
                b = betas.get(gp)
                if b is not None and not field.is_zero(b):
                    c = field.sub(c, field.mul(b, coeff_x[h]))
            return c

        def audit_below(tk):
            # candidates strictly below the current target must lie in
            # rho(emitted Y): either they are earlier targets, or their
            # remainder coefficient is zero
            nonlocal a_scan
            while product_heap and product_heap[0][0] < tk:
                _, _, p = heapq.heappop(product_heap)
                if betas.get(rho_inv(p)) is None and not field.is_zero(remainder_coeff(p)):
                    raise SupportEscape(
                        "remainder support point %r lies outside rho(Y)" % (p,))
            while a_scan < len(a._keys) and a._keys[a_scan] < tk:
                p = a._memo[a_scan][0]
                a_scan += 1
                if betas.get(rho_inv(p)) is None and not field.is_zero(remainder_coeff(p)):
                    raise SupportEscape(
                        "remainder support point %r lies outside rho(Y)" % (p,))

        for g in closure:
            target = rho_(g)
            gamma = a._coefficient(target)
            for h in supp_x:
                gp = view.mul(target, view.inv(h))
                beta_gp = betas.get(gp)
                if beta_gp is not None:
                    gamma = field.sub(gamma, field.mul(beta_gp, coeff_x[h]))
            if check_support:
                audit_below(view.key(target))
            h = view.mul(view.inv(g), target)
            delta = coeff_x.get(h)
            assert delta is not None, "rho target must come from supp(x)"
            beta = field.mul(gamma, field.inverse(delta))
            betas[g] = beta
            if not field.is_zero(beta):
                if check_support:
                    for hh in supp_x:
                        p = view.mul(g, hh)
                        heapq.heappush(product_heap, (view.key(p), next(serial), p))
                yield g, beta

    return SeriesStream.from_generator(field, a.group, a.order, gen)


def dubrovin_invert(a: SeriesStream, x: AlgebraElement, *,
                    check_support: bool = False,
                    closure_budget: Optional[ClosureBudget] = None) -> SeriesStream:
    """The unique b with b*x = a, as a lazy stream (x nonzero).

    delta is always a nonzero coefficient of x, so no division by zero can
    occur; budget exhaustion from the support closure or from pulling a
    propagates as BudgetExceeded.
    """
    if a.order != RIGHT_ORDER:
        raise ValueError("dubrovin_invert needs a right-order stream")
    return _invert(a, x, RIGHT_VIEW, check_support=check_support,
                   closure_budget=closure_budget or DEFAULT_CLOSURE)


def dubrovin_invert_left(a: SeriesStream, x: AlgebraElement, *,
                         check_support: bool = False,
                         closure_budget: Optional[ClosureBudget] = None) -> SeriesStream:
    """The unique b with x*b = a in k((G*)); same engine under the dual view."""
    if a.order != DUAL_LEFT_ORDER:
        raise ValueError("dubrovin_invert_left needs a dual-order stream")
    return _invert(a, x, DUAL_LEFT_VIEW, check_support=check_support,
                   closure_budget=closure_budget or DEFAULT_CLOSURE)


def roundtrip_prefix_agreement(a: SeriesStream, x: AlgebraElement, k: int = 50,
                               budget: int = DEFAULT_BUDGET, *,
                               check_support: bool = True,
                               strict_prefix: bool = False) -> bool:
    """Exact prefix check that act_right(dubrovin_invert(a, x), x) agrees
    with a on every group element <= rho(supp x, g_K), where g_K is the
    K-th emitted support point of the inverse (or on all of G when the
    inverse terminates).

    The bound makes the check closed: every product contributing a
    coefficient at p <= rho(g_K) comes from an inverse support point q with
    rho(q) <= p, hence q <= g_K, hence q lies in the pulled prefix.  The
    action coefficient at p is then exactly sum over h of
    beta(p*h^-1) * coeff_x(h).

    With strict_prefix, a budget stop before the K-th term (leaving a weaker
    bound than requested) raises BudgetExceeded instead of verifying less.
    """
    field = a.field
    b = dubrovin_invert(a, x, check_support=check_support)
    terms, status = b.prefix(k, budget)
    beta = {g: c for g, c in terms}
    supp_x = [g for g, _ in x.terms]
    coeff_x = dict(x.terms)
    frontier = None
    if status != "ended":
        if not terms or (strict_prefix and len(terms) < k):
            raise BudgetExceeded(
                "only %d of %d inverse terms within budget" % (len(terms), k))
        frontier = rho(supp_x, terms[-1][0]).right_key()

    def within(p):
        return frontier is None or p.right_key() <= frontier

    candidates = set()
    for g in beta:
        for h in supp_x:
            p = g * h
            if within(p):
                candidates.add(p)
    with step_budget(budget):
        for g, _ in a.terms():
            if not within(g):
                break
            candidates.add(g)
    for p in candidates:
        acc = field.zero()
        for h in supp_x:
            bq = beta.get(p * h.inverse())
            if bq is not None:
                acc = field.add(acc, field.mul(bq, coeff_x[h]))
        if acc != a.coefficient_at(p, budget):
            return False
    return True


# -- pairing ---------------------------------------------------------------------------

def pair(a: SeriesStream, b: SeriesStream, budget: int = DEFAULT_BUDGET):
    """<a, b> = sum over g of alpha_g * beta_(g^-1).

    a runs over the right order, b over the dual left order, so the inverses
    of b's support descend under the right order while a's support ascends:
    every match lies in the interval between a's least element and the
    largest inverse from b.  The inverses are buffered down past a's least
    element, then a is scanned up through the window.  Both sweeps are
    exact; if neither finishes within the budget (two infinite streams
    creeping toward each other), BudgetExceeded is raised.
    """
    if a.order != RIGHT_ORDER or b.order != DUAL_LEFT_ORDER:
        raise ValueError("pair needs (right, dual-left) streams")
    field = a.field
    total = field.zero()
    with step_budget(budget):
        ta = a.term(0)
        tb = b.term(0)
        if ta is None or tb is None:
            return total
        a0_key = ta[0].right_key()
        top_key = tb[0].inverse().right_key()
        inverted = {}
        j = 0
        while tb is not None:
            ginv = tb[0].inverse()
            if ginv.right_key() < a0_key:
                break
            inverted[ginv] = tb[1]
            j += 1
            tb = b.term(j)
        i = 0
        while ta is not None and ta[0].right_key() <= top_key:
            coeff = inverted.get(ta[0])
            if coeff is not None:
                total = field.add(total, field.mul(ta[1], coeff))
            i += 1
            ta = a.term(i)
    return total


# -- experiments -------------------------------------------------------------------------

@dataclass
class ProbeLine:
    kind: str      # 'injectivity' or 'surjectivity'
    outcome: str
    detail: str


def _apply_operator(a: SeriesStream, x1, x2, y1, y2) -> SeriesStream:
    """a * (y1 - x1*x2^-1*y2), all actions on the right."""
    m1 = act_right(a, y1)
    m2 = act_right(dubrovin_invert(act_right(a, x1), x2), y2)
    return series_sub(m1, m2)


def probe_zero_or_invertible(field, group, x1, x2, y1, y2, rng, *,
                             trials: int = 3, budget: int = DEFAULT_BUDGET,
                             depth: int = 8,
                             sample_algebra: Optional[Callable] = None):
    """Evidence probe for whether y1 - x1*x2^-1*y2 acts as zero or invertibly.

    Reports per-trial evidence lines only; nothing here can decide the
    question.  Injectivity trials feed random nonzero finite inputs and look
    for a nonzero output term within budget.  Surjectivity trials run a
    greedy leading-term solve against a random finite target and report the
    depth reached or the obstruction hit.
    """
    if sample_algebra is None:
        raise ValueError("need a sampler for algebra elements")
    lines: List[ProbeLine] = []
    for _ in range(trials):
        a = sample_algebra(rng, nonzero=True)
        w = _apply_operator(SeriesStream.from_algebra(a), x1, x2, y1, y2)
        got, status = w.prefix(1, budget)
        if got:
            lines.append(ProbeLine("injectivity", "nonzero-image",
                                   "input %r gave leading term %r" % (a, got[0])))
        elif status == "ended":
            lines.append(ProbeLine("injectivity", "zero-image",
                                   "input %r was annihilated exactly" % (a,)))
        else:
            lines.append(ProbeLine("injectivity", "inconclusive",
                                   "no nonzero term for %r within budget" % (a,)))
    for _ in range(trials):
        t = sample_algebra(rng, nonzero=True)
        lines.append(_greedy_solve_line(field, group, t, x1, x2, y1, y2, budget, depth))
    return lines


def _greedy_solve_line(field, group, target, x1, x2, y1, y2, budget, depth) -> ProbeLine:
    sx1 = [g for g, _ in x1.terms]
    sx2 = [g for g, _ in x2.terms]
    sy1 = [g for g, _ in y1.terms]
    sy2 = [g for g, _ in y2.terms]

    def route_min(g):
        r1 = rho(sy1, g)
        r2 = rho(sy2, rho_inverse(sx2, rho(sx1, g)))
        return min(r1, r2, key=lambda e: order_key(e, RIGHT_ORDER))

    residual = SeriesStream.from_algebra(target)
    solved = 0
    try:
        for _ in range(depth):
            got, status = residual.prefix(1, budget)
            if not got:
                return ProbeLine("surjectivity",
                                 "residual-exhausted" if status == "ended" else "budget",
                                 "solved %d leading terms" % solved)
            e, ce = got[0]
            cand1 = rho_inverse(sy1, e)
            cand2 = rho_inverse(sx1, rho(sx2, rho_inverse(sy2, e)))
            chosen = None
            for g in sorted({cand1, cand2},
                            key=lambda z: order_key(z, RIGHT_ORDER), reverse=True):
                if route_min(g) != e:
                    continue
                gw = _apply_operator(
                    SeriesStream.from_algebra(AlgebraElement.monomial(field, group, g)),
                    x1, x2, y1, y2)
                cg = gw.coefficient_at(e, budget)
                if not field.is_zero(cg):
                    chosen = (gw, field.mul(ce, field.inverse(cg)))
                    break
            if chosen is None:
                return ProbeLine("surjectivity", "obstruction",
                                 "leading term %r unreachable: candidate routes cancel" % (e,))
            gw, beta = chosen
            residual = series_sub(residual, series_scale(gw, beta))
            solved += 1
        return ProbeLine("surjectivity", "depth-reached",
                         "solved %d leading terms without obstruction" % solved)
    except BudgetExceeded:
        return ProbeLine("surjectivity", "budget",
                         "budget exhausted after %d solved terms" % solved)
