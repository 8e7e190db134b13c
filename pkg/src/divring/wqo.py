"""Generic closure engine for families of isotone, nondecreasing partial
operations, with ordered emission and well-partial-order sampling probes.

A family of arity n is applied to n already-generated elements plus an index
from its index set; the closure is the least set containing every defined
value.  Zeroary families seed the process; with no zeroary family the
closure is empty.

ordered_close emits the closure as a strictly increasing stream.  It keeps a
min-priority pool of generated-but-unemitted elements and emits the pool
minimum m only once the next unconsumed seed is >= m; operations of arity
>= 1 must be strictly increasing in their element arguments where defined,
so successors of anything emitted later can never fall below m.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class OrderViolation(RuntimeError):
    """An evaluator produced a value not strictly above an element argument."""


@dataclass(frozen=True)
class ClosureBudget:
    max_elements: int
    max_steps: int

    def __post_init__(self):
        if self.max_elements < 1 or self.max_steps < 1:
            raise ValueError("budget bounds must be positive")


@dataclass
class PartialOpFamily:
    """arity-n partial operations s(x_0..x_{n-1}, i), one per index i.

    apply(*xs, i) returns the value or None where undefined.  For arity >= 1
    the index set must be re-iterable (a list); a zeroary index set may be a
    one-shot stream, consumed lazily in its given (nondecreasing) order.
    """

    arity: int
    indices: Iterable
    apply: Callable

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be >= 0")


@dataclass
class ClosureResult:
    elements: list  # discovery order
    truncated: bool

    def as_set(self):
        return set(self.elements)

    def __contains__(self, item):
        return item in set(self.elements)

    def __len__(self):
        return len(self.elements)


def close(families: Sequence[PartialOpFamily], budget: ClosureBudget) -> ClosureResult:
    """Worklist closure, deterministic discovery order, truncating at budget."""
    seeds = [f for f in families if f.arity == 0]
    ops = [f for f in families if f.arity > 0]
    elements: List = []
    seen = set()
    steps = 0
    truncated = False

    def add(v) -> bool:
        nonlocal truncated
        if v is None or v in seen:
            return False
        if len(elements) >= budget.max_elements:
            truncated = True
            return False
        seen.add(v)
        elements.append(v)
        return True

    for fam in seeds:
        for idx in fam.indices:
            if steps >= budget.max_steps or truncated:
                truncated = True
                break
            steps += 1
            add(fam.apply(idx))
        if truncated:
            break

    frontier = 0
    while frontier < len(elements) and not truncated:
        e = elements[frontier]
        frontier += 1
        known = elements[:frontier]
        for fam in ops:
            n = fam.arity
            for combo in itertools.product(known, repeat=n):
                if e not in combo:
                    continue
                for idx in fam.indices:
                    if steps >= budget.max_steps:
                        truncated = True
                        break
                    steps += 1
                    add(fam.apply(*combo, idx))
                if truncated:
                    break
            if truncated:
                break
    return ClosureResult(elements, truncated)


class OrderedClosure:
    """Iterator over the closure in strictly increasing key order.

    Raises BudgetExceeded if the budget is hit while elements remain, and
    OrderViolation if an operation of arity >= 1 fails to strictly increase.
    """

    def __init__(self, families: Sequence[PartialOpFamily], key: Callable, budget: ClosureBudget):
        self.key = key
        self.budget = budget
        self._ops = [f for f in families if f.arity > 0]
        self._pool: list = []  # heap of (key, serial, value)
        self._seen = set()
        self._emitted: List = []
        self._serial = itertools.count()
        self._steps = 0
        # one lazy cursor per zeroary family, merged through a small heap
        self._seed_heap: list = []
        for fam in families:
            if fam.arity == 0:
                it = iter(fam.indices)
                self._advance_seed(fam, it)

    def _advance_seed(self, fam, it):
        for idx in it:
            self._steps += 1
            v = fam.apply(idx)
            if v is not None:
                heapq.heappush(self._seed_heap, (self.key(v), next(self._serial), v, fam, it))
                return
            if self._steps >= self.budget.max_steps:
                raise BudgetExceeded("step budget exhausted while scanning seeds",
                                     partial=list(self._emitted))

    def _push_pool(self, v):
        if v in self._seen:
            return
        self._seen.add(v)
        heapq.heappush(self._pool, (self.key(v), next(self._serial), v))

    def __iter__(self):
        return self

    def __next__(self):
        while True:
            if self._seed_heap and (
                not self._pool or self._seed_heap[0][0] <= self._pool[0][0]
            ):
                _, _, v, fam, it = heapq.heappop(self._seed_heap)
                self._push_pool(v)
                self._advance_seed(fam, it)
                continue
            if not self._pool:
                raise StopIteration
            if len(self._emitted) >= self.budget.max_elements:
                raise BudgetExceeded("element budget exhausted", partial=list(self._emitted))
            _, _, m = heapq.heappop(self._pool)
            self._generate_from(m)
            self._emitted.append(m)
            return m

    def _generate_from(self, m):
        for fam in self._ops:
            if fam.arity == 1:
                combos = [(m,)]
            else:
                known = self._emitted + [m]
                combos = (c for c in itertools.product(known, repeat=fam.arity) if m in c)
            for combo in combos:
                for idx in fam.indices:
                    if self._steps >= self.budget.max_steps:
                        raise BudgetExceeded("step budget exhausted",
                                             partial=list(self._emitted))
                    self._steps += 1
                    v = fam.apply(*combo, idx)
                    if v is None:
                        continue
                    vk = self.key(v)
                    for arg in combo:
                        if vk <= self.key(arg):
                            raise OrderViolation(
                                "operation produced %r, not above its argument %r" % (v, arg)
                            )
                    self._push_pool(v)


def ordered_close(
    families: Sequence[PartialOpFamily], key: Callable, budget: ClosureBudget
) -> OrderedClosure:
    return OrderedClosure(families, key, budget)


# ---------------------------------------------------------------------------
# Well-partial-order probes on finite samples.
# ---------------------------------------------------------------------------

@dataclass
class WpoReport:
    sample_size: int
    max_chain: list       # a longest strictly descending chain
    max_antichain: list   # a largest antichain

    @property
    def max_chain_size(self) -> int:
        return len(self.max_chain)

    @property
    def max_antichain_size(self) -> int:
        return len(self.max_antichain)


def wpo_probe(sample: Sequence, le: Callable) -> WpoReport:
    """Longest strictly descending subsequence and largest antichain of a
    finite sample sequence under the partial order le(a, b) <=> a <= b.

    The sample is treated as a sequence, as in bad-sequence arguments: a
    descending chain must respect the listing order.  Small samples are
    searched exhaustively; larger ones use the exact chain-cover duality for
    the antichain.
    """
    items = list(sample)
    n = len(items)
    if n == 0:
        return WpoReport(0, [], [])
    lt = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and le(items[i], items[j]) and not le(items[j], items[i]):
                lt[i][j] = True

    # longest strictly descending subsequence (indices increase, values drop)
    best_from: List[Optional[list]] = [None] * n

    def chain_down(i) -> list:
        if best_from[i] is not None:
            return best_from[i]
        best: list = []
        for j in range(i + 1, n):
            if lt[j][i]:  # items[j] < items[i]
                cand = chain_down(j)
                if len(cand) > len(best):
                    best = cand
        best_from[i] = [i] + best
        return best_from[i]

    best_chain: list = []
    for i in range(n):
        cand = chain_down(i)
        if len(cand) > len(best_chain):
            best_chain = cand

    if n <= 16:
        best_anti: list = []
        for mask in range(1, 1 << n):
            members = [i for i in range(n) if mask >> i & 1]
            if len(members) <= len(best_anti):
                continue
            if all(
                not lt[a][b] and not lt[b][a]
                for ai, a in enumerate(members)
                for b in members[ai + 1:]
            ):
                best_anti = members
    else:
        best_anti = _max_antichain_by_matching(n, lt)

    return WpoReport(n, [items[i] for i in best_chain], [items[i] for i in best_anti])


def _max_antichain_by_matching(n: int, lt) -> list:
    # Dilworth via bipartite matching on the (transitive) strict order.
    match_r = [-1] * n

    def try_augment(u, visited) -> bool:
        for v in range(n):
            if lt[u][v] and v not in visited:
                visited.add(v)
                if match_r[v] == -1 or try_augment(match_r[v], visited):
                    match_r[v] = u
                    return True
        return False

    for u in range(n):
        try_augment(u, set())

    match_l = [-1] * n
    for v, u in enumerate(match_r):
        if u != -1:
            match_l[u] = v

    # Koenig: minimum vertex cover from unmatched left vertices
    visited_l = set()
    visited_r = set()
    stack = [u for u in range(n) if match_l[u] == -1]
    while stack:
        u = stack.pop()
        if u in visited_l:
            continue
        visited_l.add(u)
        for v in range(n):
            if lt[u][v] and v not in visited_r:
                visited_r.add(v)
                if match_r[v] != -1:
                    stack.append(match_r[v])
    cover = {("L", u) for u in range(n) if u not in visited_l}
    cover |= {("R", v) for v in visited_r}
    anti = [i for i in range(n) if ("L", i) not in cover and ("R", i) not in cover]
    return anti
