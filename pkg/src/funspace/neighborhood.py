"""Local navigation of the consistent-function order, without enumeration.

The order on shapes ("S ⪯ S'" iff every clause of S contains a clause of
S') has covering steps of a very constrained form, which is what makes
neighbor computation local.  Everything here revolves around one object:

    D(S)  = states outside the function's true set (up-set of the clauses)
    M(S)  = the maximal elements of D(S)

M(S) is computable without scanning B^p: a state m is in D(S) iff it
contains no clause, i.e. its complement hits every clause; so M(S) is
exactly { complement of h : h a minimal hitting set (transversal) of the
clause family }.  Transversals come from Berge's sequential algorithm.

Parents (covers above S) add one or two elements of M(S) as new clauses:

* rule 1 — m ∈ M(S) comparable to no clause: S ∪ {m} is already an
  antichain cover; the true set grows by exactly {m}.
* rule 2 — m ∈ M(S) strictly below some clause: adding m absorbs those
  clauses; the result is a parent iff it still covers every regulator.
* rule 3 — two absorbing m, m' ∈ M(S), each failing rule 2's cover test
  alone, whose joint addition covers: the true set grows by {m, m'}.

Rule 3 never needs comparable pairs: if m ⊂ m' both lie in M(S), the
single addition of m' would already cover whenever the pair does, so the
pair step is not a cover.  Children are the exact inverses (drop one
clause, or a pair of clauses neither droppable alone, and re-minimize the
remaining true set); `children` keeps precisely the candidates whose
parent set contains the start, which is the defining duality.

`build_hasse` is the independent oracle: it ranks all shapes by true-set
containment and extracts covering pairs directly from the definition, so
the rule-based neighbors can be tested against it (p ≤ 5).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .errors import (
    ArityMismatch,
    ArityTooLarge,
    DedekindUnknown,
    NotAParent,
)
from .shapes import (
    FunctionShape,
    bits_of,
    inf_shape,
    popcount,
    sup_shape,
    true_count,
)

PARENT_R1 = "parent-r1"  # independent new clause
PARENT_R2 = "parent-r2"  # absorbing new clause
PARENT_R3 = "parent-r3"  # pair of absorbing clauses, covering jointly
CHILD = "child"


@dataclass(frozen=True)
class NeighborStep:
    """One covering edge incident to a shape.

    ``delta`` is the true-set growth along the edge (from the lower to the
    upper shape): 1 for single-state steps, 2 for pair steps.
    """

    shape: FunctionShape
    rule: str
    delta: int

    def sort_key(self) -> tuple:
        return (self.rule, self.shape.sort_key())


def _is_subset(a: int, b: int) -> bool:
    return a & b == a


def _minimal_transversals(clauses: tuple[int, ...]) -> list[int]:
    """Minimal hitting sets of a clause family, as bitmasks (Berge)."""
    trans = [0]
    for c in clauses:
        nxt = [t for t in trans if t & c]
        for t in trans:
            if t & c:
                continue
            for b in bits_of(c):
                nxt.append(t | (1 << b))
        nxt.sort(key=popcount)
        kept: list[int] = []
        for t in nxt:
            if not any(_is_subset(u, t) for u in kept):
                kept.append(t)
        trans = kept
    return trans


def max_outside(shape: FunctionShape) -> tuple[int, ...]:
    """Maximal states outside the true set (all-positive reading), ascending.

    These are the complements of the minimal transversals of the clause
    family.  Every parent step adds clauses from this set.
    """
    full = (1 << shape.arity) - 1
    return tuple(sorted(full ^ t for t in _minimal_transversals(shape.clauses)))


def independent(sigma: Iterable[int] | int, shape: FunctionShape) -> bool:
    """Is the index set comparable to no clause of the shape?

    Accepts 1-based indices or a prepacked bitmask.
    """
    if isinstance(sigma, int):
        m = sigma
    else:
        m = 0
        for i in sigma:
            if not 1 <= i <= shape.arity:
                raise ValueError(f"regulator index {i} outside 1..{shape.arity}")
            m |= 1 << (i - 1)
    if m == 0:
        return False
    return all(not _is_subset(m, c) and not _is_subset(c, m) for c in shape.clauses)


def _with_clause(shape: FunctionShape, m: int) -> tuple[int, ...]:
    """Clauses of min(S ∪ {m}): drop clauses strictly above m, insert m."""
    kept = [c for c in shape.clauses if not (_is_subset(m, c) and c != m)]
    kept.append(m)
    kept.sort()
    return tuple(kept)


def _covers(clauses: Iterable[int], p: int) -> bool:
    u = 0
    for c in clauses:
        u |= c
    return u == (1 << p) - 1


def parents(shape: FunctionShape) -> tuple[NeighborStep, ...]:
    """All covers of ``shape`` from above, tagged by the rule that built them."""
    p = shape.arity
    steps: list[NeighborStep] = []
    failed: list[int] = []  # absorbing maximal states that fail the cover test alone
    for m in max_outside(shape):
        if m == 0:
            continue  # only at the one-shape arity-1 order; no parent there
        if all(not _is_subset(m, c) for c in shape.clauses):
            # Independent: m is maximal outside, so no clause fits inside it
            # either; S ∪ {m} is an antichain and covers at least as much.
            new = tuple(sorted(shape.clauses + (m,)))
            steps.append(
                NeighborStep(FunctionShape(p, new), PARENT_R1, 1)
            )
        else:
            new = _with_clause(shape, m)
            if _covers(new, p):
                steps.append(NeighborStep(FunctionShape(p, new), PARENT_R2, 1))
            else:
                failed.append(m)
    for m1, m2 in combinations(failed, 2):
        kept = [
            c
            for c in shape.clauses
            if not (_is_subset(m1, c) and c != m1)
            and not (_is_subset(m2, c) and c != m2)
        ]
        merged = tuple(sorted(kept + [m1, m2]))
        if _covers(merged, p):
            steps.append(NeighborStep(FunctionShape(p, merged), PARENT_R3, 2))
    steps.sort(key=NeighborStep.sort_key)
    return tuple(steps)


def _in_up_set(clauses: tuple[int, ...], state: int) -> bool:
    return any(_is_subset(c, state) for c in clauses)


def _remove_minimals(
    shape: FunctionShape, removed: tuple[int, ...]
) -> FunctionShape | None:
    """Shape of T(S) minus the given clauses, or None when not a valid shape.

    The result's clauses are the kept ones plus the new minimal elements of
    the punctured up-set; those can only be one-bit extensions of removed
    clauses.  Returns None when the remainder is empty or stops covering
    some regulator.
    """
    p = shape.arity
    full = (1 << p) - 1
    removed_set = set(removed)
    kept = tuple(c for c in shape.clauses if c not in removed_set)
    new: set[int] = set()
    for x in removed:
        for k in range(p):
            bit = 1 << k
            if x & bit:
                continue
            y = x | bit
            # y is minimal in the punctured up-set iff every immediate
            # subset is either removed or outside the up-set entirely.
            ok = True
            for j in bits_of(y):
                z = y ^ (1 << j)
                if z not in removed_set and _in_up_set(shape.clauses, z):
                    ok = False
                    break
            if ok:
                new.add(y)
    clauses = tuple(sorted(set(kept) | new))
    if not clauses or not _covers(clauses, p):
        return None
    return FunctionShape(p, clauses)


def children(shape: FunctionShape) -> tuple[NeighborStep, ...]:
    """All covers of ``shape`` from below.

    Candidates come from inverse removals; the defining contract — keep
    exactly those S' with ``shape`` among S'.parents() — is applied as a
    final filter.
    """
    steps: list[NeighborStep] = []
    failing: list[int] = []
    for c in shape.clauses:
        cand = _remove_minimals(shape, (c,))
        if cand is None:
            failing.append(c)
        else:
            steps.append(NeighborStep(cand, CHILD, 1))
    for c1, c2 in combinations(failing, 2):
        cand = _remove_minimals(shape, (c1, c2))
        if cand is not None:
            steps.append(NeighborStep(cand, CHILD, 2))
    steps = [
        st
        for st in steps
        if any(pst.shape == shape for pst in parents(st.shape))
    ]
    steps.sort(key=NeighborStep.sort_key)
    return tuple(steps)


def siblings(shape: FunctionShape, via: str = "parents") -> tuple[FunctionShape, ...]:
    """Shapes sharing a parent with ``shape`` (or a child / either).

    ``via``: 'parents' (default) — other children of the shape's parents;
    'children' — other parents of the shape's children; 'both' — union.
    Direct neighbors of ``shape`` and the shape itself never count.
    """
    if via not in ("parents", "children", "both"):
        raise ValueError("via must be 'parents', 'children' or 'both'")
    exclude = {shape}
    exclude.update(st.shape for st in parents(shape))
    exclude.update(st.shape for st in children(shape))
    out: set[FunctionShape] = set()
    if via in ("parents", "both"):
        for pst in parents(shape):
            for cst in children(pst.shape):
                if cst.shape not in exclude:
                    out.add(cst.shape)
    if via in ("children", "both"):
        for cst in children(shape):
            for pst in parents(cst.shape):
                if pst.shape not in exclude:
                    out.add(pst.shape)
    return tuple(sorted(out, key=FunctionShape.sort_key))


@dataclass(frozen=True)
class HasseSlice:
    """One shape with its complete local neighborhood."""

    center: FunctionShape
    parents: tuple[NeighborStep, ...]
    children: tuple[NeighborStep, ...]
    siblings: tuple[FunctionShape, ...]


def hasse_slice(shape: FunctionShape, sibling_via: str = "parents") -> HasseSlice:
    return HasseSlice(
        center=shape,
        parents=parents(shape),
        children=children(shape),
        siblings=siblings(shape, via=sibling_via),
    )


def parent_step(lower: FunctionShape, upper: FunctionShape) -> NeighborStep:
    """The tagged covering step from ``lower`` up to ``upper``.

    Raises NotAParent when ``upper`` does not cover ``lower``.
    """
    if lower.arity != upper.arity:
        raise ArityMismatch("shapes of different arity cannot be neighbors")
    for st in parents(lower):
        if st.shape == upper:
            return st
    raise NotAParent(f"{upper} does not cover {lower}")


def random_path(p: int, seed: int | None = None) -> list[FunctionShape]:
    """Uniform-upward random walk from the bottom shape to the top one.

    At each step one parent is chosen uniformly.  Deterministic for a given
    seed; every consecutive pair is a covering edge.
    """
    rng = random.Random(seed)
    cur = inf_shape(p)
    path = [cur]
    top = sup_shape(p)
    while cur != top:
        options = parents(cur)
        cur = options[rng.randrange(len(options))].shape
        path.append(cur)
    return path


# ---------------------------------------------------------------------------
# Enumeration and counting


def enumerate_all(p: int) -> Iterator[FunctionShape]:
    """Yield every valid shape of arity p, in a canonical deterministic order.

    Depth-first antichain extension over clause masks in ascending numeric
    order: each partial antichain is visited exactly once, and the ones
    covering {1..p} are emitted.  Work is proportional to the number of
    antichains, so p = 6 (≈7.8M shapes) takes on the order of a minute and
    p ≥ 7 is out of reach by intent.
    """
    if not 1 <= p <= 6:
        raise ArityTooLarge(f"full enumeration supports 1 <= p <= 6, got {p}")
    full = (1 << p) - 1
    # follow[m] = bitset over mask values of the masks > m incomparable to m.
    follow = [0] * (full + 1)
    for m in range(1, full + 1):
        acc = 0
        for m2 in range(m + 1, full + 1):
            inter = m & m2
            if inter != m and inter != m2:
                acc |= 1 << m2
        follow[m] = acc
    chosen: list[int] = []

    def walk(cands: int, union: int) -> Iterator[FunctionShape]:
        if union == full:
            yield FunctionShape._unchecked(p, tuple(chosen))
        rest = cands
        while rest:
            low = rest & -rest
            rest ^= low
            m = low.bit_length() - 1
            chosen.append(m)
            yield from walk(rest & follow[m], union | m)
            chosen.pop()

    all_masks = ((1 << (full + 1)) - 1) ^ 1  # bits 1..full
    yield from walk(all_masks, 0)


#: Sizes of the free distributive lattice on p generators (number of
#: monotone Boolean functions of p variables, constants included).
_MONOTONE_COUNTS = {
    1: 3,
    2: 6,
    3: 20,
    4: 168,
    5: 7581,
    6: 7828354,
    7: 2414682040998,
    8: 56130437228687557907788,
}


@cache
def count_consistent(p: int) -> int:
    """Number of consistent functions with exactly p (essential) regulators.

    Subtract the two constants and, via binomial inclusion, every monotone
    function whose support is a proper subset of the p regulators.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if p not in _MONOTONE_COUNTS:
        raise DedekindUnknown(
            f"counts known only for p <= {max(_MONOTONE_COUNTS)}, got {p}"
        )
    total = _MONOTONE_COUNTS[p] - 2
    for k in range(1, p):
        total -= comb(p, k) * count_consistent(k)
    return total


# ---------------------------------------------------------------------------
# Brute-force diagram (the oracle the rules are tested against)


@dataclass
class HasseDiagram:
    """Full covering diagram of the order for one arity.

    ``edges`` holds (lower_index, upper_index) pairs into ``shapes``.
    """

    p: int
    shapes: tuple[FunctionShape, ...]
    edges: frozenset[tuple[int, int]]
    _index: dict[FunctionShape, int] = field(default_factory=dict, repr=False)

    def index(self, shape: FunctionShape) -> int:
        if not self._index:
            self._index.update((s, i) for i, s in enumerate(self.shapes))
        return self._index[shape]

    def parents_of(self, shape: FunctionShape) -> set[FunctionShape]:
        i = self.index(shape)
        return {self.shapes[b] for a, b in self.edges if a == i}

    def children_of(self, shape: FunctionShape) -> set[FunctionShape]:
        i = self.index(shape)
        return {self.shapes[a] for a, b in self.edges if b == i}


def _truth_mask(shape: FunctionShape) -> int:
    """True set as a 2^p-bit integer (all-positive signs; order-faithful)."""
    tt = 0
    for s in range(1 << shape.arity):
        if any(_is_subset(c, s) for c in shape.clauses):
            tt |= 1 << s
    return tt


def build_hasse(p: int) -> HasseDiagram:
    """Construct the full diagram from the definition of the order (p ≤ 5).

    Ranks every shape by its true set and keeps the covering pairs: b
    covers a iff T(a) ⊂ T(b) with nothing strictly between.  Quadratic in
    the number of shapes; deliberately independent of `parents`/`children`
    so it can serve as their oracle.
    """
    if not 1 <= p <= 5:
        raise ArityTooLarge(f"diagram construction supports 1 <= p <= 5, got {p}")
    shapes = tuple(enumerate_all(p))
    tts = [_truth_mask(s) for s in shapes]
    order = sorted(range(len(shapes)), key=lambda i: (popcount(tts[i]), tts[i]))
    edges: set[tuple[int, int]] = set()
    for a in range(len(shapes)):
        ta = tts[a]
        mins: list[int] = []
        for b in order:  # ascending |T| is a linear extension of the order
            tb = tts[b]
            if tb == ta or ta & tb != ta:
                continue
            if any(tm & tb == tm for tm in mins):
                continue
            mins.append(tb)
            edges.add((a, b))
    return HasseDiagram(p, shapes, frozenset(edges))


def verify_rules(p: int, diagram: HasseDiagram | None = None) -> list[str]:
    """Compare rule-based neighbors against the brute-force diagram.

    Returns human-readable discrepancy descriptions (empty = clean).  Also
    checks the structural edge facts: true-set growth along every edge is
    1 or 2, matching the step's tag, and levels never decrease upward.
    ``diagram`` may pass in a prebuilt ``build_hasse(p)`` result.
    """
    from .shapes import level, level_leq  # local import keeps module top light

    hd = build_hasse(p) if diagram is None else diagram
    problems: list[str] = []
    for i, s in enumerate(hd.shapes):
        want_up = hd.parents_of(s)
        got_up = {st.shape for st in parents(s)}
        if got_up != want_up:
            extra = got_up - want_up
            missing = want_up - got_up
            problems.append(
                f"parents({s}): extra={sorted(map(str, extra))} "
                f"missing={sorted(map(str, missing))}"
            )
        want_down = hd.children_of(s)
        got_down = {st.shape for st in children(s)}
        if got_down != want_down:
            extra = got_down - want_down
            missing = want_down - got_down
            problems.append(
                f"children({s}): extra={sorted(map(str, extra))} "
                f"missing={sorted(map(str, missing))}"
            )
        for st in parents(s):
            d = true_count(st.shape) - true_count(s)
            if d != st.delta or d not in (1, 2):
                problems.append(
                    f"edge {s} -> {st.shape}: true-set grows by {d}, tagged {st.delta}"
                )
            if not level_leq(level(s), level(st.shape)):
                problems.append(
                    f"edge {s} -> {st.shape}: level {level(s)} above {level(st.shape)}"
                )
    return problems
