"""Prime-matrix-ideal calculus over exact rings: diagonal and determinantal
sums, non-full detection, module-induced ideals, and windowed audits of the
axioms a singular kernel satisfies.

Integer matrices are always examined over an explicit entry window, printed
in every report: the axioms quantify over all matrices, and bounded
exhaustion with a declared scope is the honest desk-scale surrogate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .report import AuditReport
from .scalars import (
    InfiniteCarrier,
    Integers,
    IntegersMod,
    ModulePresentation,
    Ring,
    enumerate_module,
    rational_rank,
)


class NotSummable(ValueError):
    """Determinantal sum of matrices differing off the summed line."""


class SearchSpaceTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class SquareMatrix:
    ring: Ring
    rows: tuple

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.rows):
                raise ValueError("matrix must be square")

    @classmethod
    def of(cls, ring: Ring, rows: Iterable) -> "SquareMatrix":
        return cls(ring, tuple(tuple(ring.coerce(v) for v in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def __repr__(self):
        return "[%s]" % "; ".join(" ".join(str(v) for v in row) for row in self.rows)


def identity_matrix(ring: Ring, n: int) -> SquareMatrix:
    return SquareMatrix.of(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def mat_mul(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    ring = a.ring
    n = a.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ring.zero()
            for k in range(n):
                acc = ring.add(acc, ring.mul(a.rows[i][k], b.rows[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return SquareMatrix(ring, tuple(rows))


def elementary(ring: Ring, n: int, i: int, j: int, sign: int = 1) -> SquareMatrix:
    """I_n +- e_ij (i != j)."""
    if i == j:
        raise ValueError("off-diagonal index pair required")
    rows = [[ring.one() if a == b else ring.zero() for b in range(n)] for a in range(n)]
    rows[i][j] = ring.coerce(sign)
    return SquareMatrix.of(ring, rows)


def det(a: SquareMatrix):
    """Exact determinant by cofactor expansion (desk-scale sizes)."""
    ring = a.ring
    n = a.n
    if n == 0:
        return ring.one()
    if n == 1:
        return a.rows[0][0]
    acc = ring.zero()
    sub_rows = a.rows[1:]
    for j in range(n):
        minor = SquareMatrix(ring, tuple(
            tuple(row[k] for k in range(n) if k != j) for row in sub_rows))
        term = ring.mul(a.rows[0][j], det(minor))
        acc = ring.add(acc, term if j % 2 == 0 else ring.neg(term))
    return acc


# ---------------------------------------------------------------------------
# The two sum operations.
# ---------------------------------------------------------------------------

def diag_sum(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """Block diagonal sum with zero off-blocks."""
    if a.ring != b.ring:
        raise ValueError("mixed rings")
    ring = a.ring
    z = ring.zero()
    rows = [row + tuple(z for _ in range(b.n)) for row in a.rows]
    rows += [tuple(z for _ in range(a.n)) + row for row in b.rows]
    return SquareMatrix(ring, tuple(rows))


def det_sum(a: SquareMatrix, b: SquareMatrix, r: int, axis: str = "column") -> SquareMatrix:
    """Determinantal sum along the r-th row or column (0-indexed); defined
    only when the matrices agree off that line."""
    if a.ring != b.ring or a.n != b.n:
        raise NotSummable("shape or ring mismatch")
    ring = a.ring
    n = a.n
    if axis == "column":
        for j in range(n):
            if j != r and a.column(j) != b.column(j):
                raise NotSummable("matrices differ in column %d" % j)
        rows = []
        for i in range(n):
            row = list(a.rows[i])
            row[r] = ring.add(a.rows[i][r], b.rows[i][r])
            rows.append(tuple(row))
        return SquareMatrix(ring, tuple(rows))
    if axis == "row":
        for i in range(n):
            if i != r and a.rows[i] != b.rows[i]:
                raise NotSummable("matrices differ in row %d" % i)
        rows = list(a.rows)
        rows[r] = tuple(ring.add(x, y) for x, y in zip(a.rows[r], b.rows[r]))
        return SquareMatrix(a.ring, tuple(rows))
    raise ValueError("axis must be 'row' or 'column'")


# ---------------------------------------------------------------------------
# Non-fullness.
# ---------------------------------------------------------------------------

def is_non_full(a: SquareMatrix, *, factor_ceiling: int = 2_000_000) -> bool:
    """A = B*C with B n x (n-1) and C (n-1) x n.

    Over Z this is equivalent to rank < n over Q (Z is a domain with field
    of fractions Q); over a finite ring it is decided by exhaustive factor
    search, since rank does not characterize fullness over non-domains.
    The 1x1 zero matrix is non-full (empty product convention).
    """
    n = a.n
    if n == 0:
        return False
    if isinstance(a.ring, Integers):
        return rational_rank([list(r) for r in a.rows]) < n
    ring = a.ring
    if n == 1:
        return ring.is_zero(a.rows[0][0])
    count = ring.m ** (2 * n * (n - 1))
    if count > factor_ceiling:
        raise SearchSpaceTooLarge("factor search of %d pairs" % count)
    entries = range(ring.m)
    for b_flat in itertools.product(entries, repeat=n * (n - 1)):
        b_rows = [b_flat[i * (n - 1):(i + 1) * (n - 1)] for i in range(n)]
        for c_flat in itertools.product(entries, repeat=(n - 1) * n):
            c_rows = [c_flat[i * n:(i + 1) * n] for i in range(n - 1)]
            ok = True
            for i in range(n):
                for j in range(n):
                    acc = ring.zero()
                    for k in range(n - 1):
                        acc = ring.add(acc, ring.mul(b_rows[i][k], c_rows[k][j]))
                    if acc != a.rows[i][j]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
    return False


# ---------------------------------------------------------------------------
# Membership specs.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InducedNonInjective:
    """Square matrices acting non-injectively on M^n (rows over M)."""

    module: ModulePresentation

    @property
    def name(self):
        return "non-injective-on-%s" % self.module.name


@dataclass(frozen=True)
class InducedNonSurjective:
    module: ModulePresentation

    @property
    def name(self):
        return "non-surjective-on-%s" % self.module.name


@dataclass(frozen=True)
class DetDivisibleBy:
    p: int

    @property
    def name(self):
        return "det-divisible-by-%d" % self.p


@dataclass(frozen=True)
class ExplicitList:
    matrices: frozenset

    @property
    def name(self):
        return "explicit-list(%d)" % len(self.matrices)


def _acts_injectively(module: ModulePresentation, a: SquareMatrix) -> bool:
    n = a.n
    if not module.is_finite:
        raise InfiniteCarrier("need a finite module")
    cols = [a.column(j) for j in range(n)]
    for v in enumerate_module(module, n):
        if all(x == module.zero() for x in v):
            continue
        if all(module.dot(v, col) == module.zero() for col in cols):
            return False
    return True


def _acts_surjectively(module: ModulePresentation, a: SquareMatrix) -> bool:
    n = a.n
    if not module.is_finite:
        raise InfiniteCarrier("need a finite module")
    cols = [a.column(j) for j in range(n)]
    seen = set()
    for v in enumerate_module(module, n):
        seen.add(tuple(module.dot(v, col) for col in cols))
    return len(seen) == module.size ** n


def ideal_member(spec, a: SquareMatrix) -> bool:
    if isinstance(spec, InducedNonInjective):
        return not _acts_injectively(spec.module, a)
    if isinstance(spec, InducedNonSurjective):
        return not _acts_surjectively(spec.module, a)
    if isinstance(spec, DetDivisibleBy):
        d = det(a)
        return d % spec.p == 0
    if isinstance(spec, ExplicitList):
        return a in spec.matrices
    raise TypeError("unknown spec %r" % (spec,))


# ---------------------------------------------------------------------------
# Windowed matrix enumeration.
# ---------------------------------------------------------------------------

def window_matrices(ring: Ring, n: int, entry_bound: Optional[int]) -> Iterable[SquareMatrix]:
    if isinstance(ring, IntegersMod):
        entries = range(ring.m)
    else:
        if entry_bound is None:
            raise InfiniteCarrier("need an entry bound over %s" % ring.name)
        entries = range(-entry_bound, entry_bound + 1)
    for flat in itertools.product(entries, repeat=n * n):
        yield SquareMatrix.of(ring, [flat[i * n:(i + 1) * n] for i in range(n)])


def _window_desc(ring: Ring, entry_bound) -> str:
    if isinstance(ring, IntegersMod):
        return "all of %s" % ring.name
    return "entries in [-%d, %d]" % (entry_bound, entry_bound)


# ---------------------------------------------------------------------------
# Axiom audits.
# ---------------------------------------------------------------------------

def axioms_audit(spec, ring: Ring, *, max_size: int = 2, entry_bound: int = 2,
                 include_row_sums: bool = True, ceiling: int = 10_000_000) -> AuditReport:
    """Windowed audit of the singular-kernel axioms: non-full matrices are
    members, diagonal sums absorb arbitrary blocks, both determinantal sums
    preserve membership, stripping a diagonal 1 preserves membership, the
    1x1 identity is not a member, diagonal sums are prime, and membership is
    stable under left and right multiplication by I +- e_ij."""
    rep = AuditReport(
        "matrix-ideal-axioms",
        {"spec": spec.name, "ring": ring.name, "max_size": max_size,
         "window": _window_desc(ring, entry_bound)},
    )
    member = _member_cache(spec)

    mats = {n: list(window_matrices(ring, n, entry_bound)) for n in range(1, max_size + 1)}

    # (non-full membership)
    for n in range(1, max_size + 1):
        for a in mats[n]:
            if is_non_full(a):
                rep.record("non-full-matrices-are-members", repr(a), member(a))

    # (diagonal sum with arbitrary block)
    for na in range(1, max_size):
        nb = max_size - na
        for a in mats[na]:
            if not member(a):
                continue
            for b in mats[nb]:
                rep.record("diag-sum-absorbs", "%r (+) %r" % (a, b), member(diag_sum(a, b)))

    # (determinantal sums, both axes; identical pairs double a line)
    axes = ("column", "row") if include_row_sums else ("column",)
    for axis in axes:
        for n in range(1, max_size + 1):
            for a, b, line in _summable_pairs(mats[n], n, axis):
                if member(a) and member(b):
                    rep.record("det-sum-%s-closure" % axis,
                               "%r nabla %r" % (a, b),
                               member(det_sum(a, b, line, axis)))

    # (strip a diagonal 1)
    for n in range(1, max_size):
        one = SquareMatrix.of(ring, [[1]])
        for a in mats[n]:
            if member(diag_sum(a, one)):
                rep.record("unit-block-strips", "%r (+) [1]" % (a,), member(a))

    # (the 1x1 identity is outside)
    rep.record("identity-not-member", "[1]", not member(SquareMatrix.of(ring, [[1]])))

    # (primeness of diagonal sums)
    for na in range(1, max_size):
        nb = max_size - na
        for a in mats[na]:
            for b in mats[nb]:
                if member(diag_sum(a, b)):
                    rep.record("diag-sum-prime", "%r (+) %r" % (a, b), member(a) or member(b))

    # (stability under I +- e_ij, both sides)
    for n in range(1, max_size + 1):
        elems = [elementary(ring, n, i, j, s)
                 for i in range(n) for j in range(n) if i != j for s in (1, -1)]
        for a in mats[n]:
            if not member(a):
                continue
            ok = all(member(mat_mul(e, a)) for e in elems)
            rep.record("elementary-left-multiplication", repr(a), ok)
            ok = all(member(mat_mul(a, e)) for e in elems)
            rep.record("elementary-right-multiplication", repr(a), ok)

    return rep


def _member_cache(spec):
    cache = {}

    def member(a: SquareMatrix) -> bool:
        hit = cache.get(a)
        if hit is None:
            hit = ideal_member(spec, a)
            cache[a] = hit
        return hit

    return member


def _summable_pairs(mats: Sequence[SquareMatrix], n: int, axis: str):
    """Triples (a, b, line) with the matrices agreeing off that line; equal
    matrices are summable along every line."""
    for a in mats:
        for b in mats:
            if a == b:
                for line in range(n):
                    yield a, b, line
                continue
            line = _diff_line(a, b, axis)
            if line is not None:
                yield a, b, line


def _diff_line(a: SquareMatrix, b: SquareMatrix, axis: str) -> Optional[int]:
    n = a.n
    diff = []
    if axis == "column":
        for j in range(n):
            if a.column(j) != b.column(j):
                diff.append(j)
    else:
        for i in range(n):
            if a.rows[i] != b.rows[i]:
                diff.append(i)
    if len(diff) == 1:
        return diff[0]
    return None


def module_conditions_audit(module: ModulePresentation, ring: Ring, mode: str, *,
                            max_n: int = 2, entry_bound: int = 2) -> AuditReport:
    """Audit the two module conditions behind induced specs.

    injective mode: no n x (n-1) matrix over the window injects M^n into
    M^(n-1), and for each kernel K of such a matrix the column vectors acting
    nonzero on K are either all one-to-one on K or none is.
    surjective mode: the duals with images and spanning.
    A pass on both, for a nonzero faithful module, certifies the induced
    spec as a prime matrix ideal; the verdict line states it.
    """
    if not module.is_finite:
        raise InfiniteCarrier("need a finite module")
    if mode not in ("injective", "surjective"):
        raise ValueError("mode must be injective or surjective")
    rep = AuditReport(
        "module-conditions",
        {"module": module.name, "ring": ring.name, "mode": mode, "max_n": max_n,
         "window": _window_desc(ring, entry_bound)},
    )
    if isinstance(ring, IntegersMod):
        entries = list(range(ring.m))
    else:
        entries = list(range(-entry_bound, entry_bound + 1))

    for n in range(1, max_n + 1):
        if mode == "injective":
            _injective_conditions(rep, module, ring, entries, n)
        else:
            _surjective_conditions(rep, module, ring, entries, n)

    first = "no-thin-map-injects" if mode == "injective" else "no-wide-map-surjects"
    second = "kernel-one-to-one-dichotomy" if mode == "injective" else "image-spanning-dichotomy"
    ok1 = not any(f.axiom == first for f in rep.failures)
    ok2 = not any(f.axiom == second for f in rep.failures)
    if ok1 and ok2:
        rep.note("verdict: both conditions hold on the window; the induced "
                 "%s spec behaves as a prime matrix ideal here" % mode)
    else:
        rep.note("verdict: condition failure witnessed; the induced %s spec "
                 "is not certified prime by this route" % mode)
    return rep


def _thin_matrices(entries, n: int, cols: int):
    """All n x cols matrices (as tuples of columns) over the entry list."""
    column_space = list(itertools.product(entries, repeat=n))
    return itertools.product(column_space, repeat=cols)


def _injective_conditions(rep, module, ring, entries, n):
    zero = module.zero()
    for cols in _thin_matrices(entries, n, n - 1):
        kernel = [v for v in enumerate_module(module, n)
                  if all(module.dot(v, c) == zero for c in cols)]
        nontrivial = len(kernel) > 1
        rep.record("no-thin-map-injects", "X=%s" % (cols,), nontrivial)
        if not nontrivial:
            continue
        one_to_one = []
        crushing = []
        for y in itertools.product(entries, repeat=n):
            images = [module.dot(v, y) for v in kernel]
            if all(v == zero for v in images):
                continue
            if len(set(images)) == len(images):
                one_to_one.append(y)
            else:
                crushing.append(y)
        ok = not (one_to_one and crushing)
        rep.record("kernel-one-to-one-dichotomy", "X=%s" % (cols,), ok,
                   witness=None if ok else
                   "one-to-one column %s vs crushing column %s" % (one_to_one[0], crushing[0]))


def _surjective_conditions(rep, module, ring, entries, n):
    all_vectors = set(enumerate_module(module, n))
    for rows in _thin_matrices(entries, n, n - 1):
        # rows is a tuple of n-1 rows, each of length n, mapping M^(n-1) -> M^n
        image = set()
        for v in enumerate_module(module, n - 1):
            image.add(tuple(module.dot(v, tuple(r[j] for r in rows)) for j in range(n)))
        rep.record("no-wide-map-surjects", "X=%s" % (rows,), image != all_vectors)
        if image == all_vectors:
            continue
        spanning = []
        failing = []
        for y in itertools.product(entries, repeat=n):
            y_image = {tuple(module.act(m, yj) for yj in y) for m in module.elements()}
            if y_image <= image:
                continue
            # additive span of image and y_image
            span = set(image)
            frontier = list(span)
            gens = list(y_image)
            while frontier:
                v = frontier.pop()
                for g in gens:
                    w = tuple(module.add(a, b) for a, b in zip(v, g))
                    if w not in span:
                        span.add(w)
                        frontier.append(w)
            if span == all_vectors:
                spanning.append(y)
            else:
                failing.append(y)
        ok = not (spanning and failing)
        rep.record("image-spanning-dichotomy", "X=%s" % (rows,), ok,
                   witness=None if ok else
                   "spanning row %s vs non-spanning row %s" % (spanning[0], failing[0]))


def malcolmson_audit(spec, ring: Ring, *, n: int = 2, entry_bound: int = 2) -> AuditReport:
    """Windowed check that closure under row determinantal sums and closure
    under left multiplication by I +- e_ij stand or fall together, plus exact
    replays of the two matrix identities the bridge argument rests on."""
    rep = AuditReport(
        "malcolmson-bridge",
        {"spec": spec.name, "ring": ring.name, "n": n,
         "window": _window_desc(ring, entry_bound)},
    )
    member = _member_cache(spec)
    mats = list(window_matrices(ring, n, entry_bound))

    row_closure_ok = True
    for a, b, r in _summable_pairs(mats, n, "row"):
        if member(a) and member(b):
            if not member(det_sum(a, b, r, "row")):
                row_closure_ok = False
                rep.record("row-det-sum-closure", "%r nabla %r" % (a, b), False)
    rep.record("row-det-sum-closure", "window sweep", True)

    elem_closure_ok = True
    elems = [elementary(ring, n, i, j, s)
             for i in range(n) for j in range(n) if i != j for s in (1, -1)]
    for a in mats:
        if member(a):
            for e in elems:
                if not member(mat_mul(e, a)):
                    elem_closure_ok = False
                    rep.record("elementary-left-closure", "%r * %r" % (e, a), False)
    rep.record("elementary-left-closure", "window sweep", True)

    rep.record("closures-stand-together", "window equivalence",
               row_closure_ok == elem_closure_ok)

    # the 2x2 signed swap identity
    e21 = elementary(ring, 2, 1, 0, 1)
    e12neg = elementary(ring, 2, 0, 1, -1)
    product = mat_mul(mat_mul(e21, e12neg), e21)
    swap = SquareMatrix.of(ring, [[0, -1], [1, 0]])
    rep.record("signed-swap-identity", "(I+e21)(I-e12)(I+e21)", product == swap)

    # lower-left block insertion: [[A,0],[0,B]] in P iff [[A,0],[C,B]] in P
    small = list(window_matrices(ring, 1, min(entry_bound, 1)))
    for a in small:
        for b in small:
            base = diag_sum(a, b)
            for c_val in ([0, 1] if not isinstance(ring, IntegersMod) else range(min(ring.m, 2))):
                rows = [list(r) for r in base.rows]
                rows[1][0] = ring.coerce(c_val)
                modified = SquareMatrix.of(ring, rows)
                rep.record("lower-left-block-free",
                           "%r vs %r" % (base, modified),
                           member(base) == member(modified))
    return rep
