"""State-transition dynamics of Boolean networks built from shapes.

A network is a list of components, each either a constant (an input) or a
consistent function of some of the other components (possibly itself).
Network states are int bitmasks, bit i = component i (0-based); rendering
uses component 1 leftmost via :func:`funspace.shapes.state_to_string`.

Two update schemes: asynchronous (one component flips per transition; the
union over components gives the transition graph) and synchronous (all
components update together).  Self-loops are never materialized, so stable
states are exactly the nodes without successors in either graph.

The second half of the module counts a single component's increasing and
decreasing transitions — the quantity governed by structural bounds that
depend only on whether the target regulates itself and with which sign —
and walks those counts along upward paths in the function order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    ArityMismatch,
    NotAChain,
    NotAutoregulated,
    SingleRegulator,
    StateSpaceTooLarge,
)
from .neighborhood import parent_step
from .shapes import (
    FunctionShape,
    RegulatorContext,
    evaluate,
    make_shape,
    true_count,
)

#: Refuse to materialize graphs over more than 2**25 states by default.
DEFAULT_STATE_LIMIT = 25


@dataclass(frozen=True)
class Component:
    """One network component: a named constant or a signed function.

    ``regulators`` lists regulator positions as indices into the network's
    component tuple, in the same order as ``ctx.signs`` and the shape's
    1-based clause indices.  For constants, ``shape``/``ctx`` are None and
    ``constant`` holds the value.
    """

    name: str
    regulators: tuple[int, ...] = ()
    shape: FunctionShape | None = None
    ctx: RegulatorContext | None = None
    constant: bool | None = None

    def __post_init__(self) -> None:
        if self.shape is None:
            if self.constant is None or self.regulators or self.ctx is not None:
                raise ValueError(f"component {self.name}: constants take no regulators")
        else:
            if self.ctx is None or self.constant is not None:
                raise ValueError(f"component {self.name}: function needs a context")
            if len(self.regulators) != self.shape.arity:
                raise ArityMismatch(
                    f"component {self.name}: {len(self.regulators)} regulators "
                    f"for an arity-{self.shape.arity} shape"
                )
            if self.ctx.arity != self.shape.arity:
                raise ArityMismatch(f"component {self.name}: context arity differs")
            if len(set(self.regulators)) != len(self.regulators):
                raise ValueError(f"component {self.name}: repeated regulator")


@dataclass(frozen=True)
class BooleanNetwork:
    components: tuple[Component, ...]

    def __post_init__(self) -> None:
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise ValueError("duplicate component names")
        n = len(self.components)
        for i, c in enumerate(self.components):
            for r in c.regulators:
                if not 0 <= r < n:
                    raise ValueError(f"component {c.name}: regulator index {r} out of range")
            if c.ctx is not None:
                # self_index must agree with the regulator list.
                if i in c.regulators:
                    want = c.regulators.index(i) + 1
                else:
                    want = None
                if c.ctx.self_index != want:
                    raise ValueError(
                        f"component {c.name}: self_index {c.ctx.self_index} "
                        f"inconsistent with regulators (expected {want})"
                    )

    @property
    def n(self) -> int:
        return len(self.components)

    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.components)

    def index(self, name: str) -> int:
        for i, c in enumerate(self.components):
            if c.name == name:
                return i
        raise KeyError(name)

    def local_state(self, i: int, state: int) -> int:
        """Project a network state onto component i's regulator coordinates."""
        c = self.components[i]
        local = 0
        for k, r in enumerate(c.regulators):
            if state & (1 << r):
                local |= 1 << k
        return local

    def component_value(self, i: int, state: int) -> bool:
        c = self.components[i]
        if c.shape is None:
            return bool(c.constant)
        return evaluate(c.shape, c.ctx, self.local_state(i, state))

    def step_sync(self, state: int) -> int:
        nxt = 0
        for i in range(self.n):
            if self.component_value(i, state):
                nxt |= 1 << i
        return nxt


def _check_limit(n: int, limit: int) -> None:
    if n > limit:
        raise StateSpaceTooLarge(
            f"{n} components exceed the {limit}-component state-space limit"
        )


@dataclass(frozen=True)
class STG:
    """A state-transition graph; nodes are all states 0..2^n-1 implicitly."""

    mode: str  # 'async' | 'sync'
    n: int
    successors: tuple[tuple[int, ...], ...]

    def stable_states(self) -> tuple[int, ...]:
        return tuple(s for s in range(1 << self.n) if not self.successors[s])

    @property
    def n_edges(self) -> int:
        return sum(len(s) for s in self.successors)


def stg_async(bn: BooleanNetwork, limit: int = DEFAULT_STATE_LIMIT) -> STG:
    """Asynchronous graph: one transition per component whose value differs."""
    _check_limit(bn.n, limit)
    succ = []
    for s in range(1 << bn.n):
        target = bn.step_sync(s)
        diff = s ^ target
        succ.append(tuple(s ^ (1 << i) for i in range(bn.n) if diff & (1 << i)))
    return STG("async", bn.n, tuple(succ))


def stg_sync(bn: BooleanNetwork, limit: int = DEFAULT_STATE_LIMIT) -> STG:
    """Synchronous graph: every state maps to its full update (no self-loops)."""
    _check_limit(bn.n, limit)
    succ = []
    for s in range(1 << bn.n):
        t = bn.step_sync(s)
        succ.append((t,) if t != s else ())
    return STG("sync", bn.n, tuple(succ))


def stable_states(bn: BooleanNetwork, limit: int = DEFAULT_STATE_LIMIT) -> tuple[int, ...]:
    """Fixed points of the update (scheme-independent), ascending."""
    _check_limit(bn.n, limit)
    return tuple(s for s in range(1 << bn.n) if bn.step_sync(s) == s)


def attractors(stg: STG) -> tuple[frozenset[int], ...]:
    """Terminal strongly connected components, sorted by smallest state.

    Iterative Tarjan over the successor lists; an SCC is an attractor when
    no edge leaves it.  Stable states come out as singletons.
    """
    n_states = 1 << stg.n
    succ = stg.successors
    index = [-1] * n_states
    low = [0] * n_states
    on_stack = bytearray(n_states)
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n_states):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            advanced = False
            for k in range(pi, len(succ[v])):
                w = succ[v][k]
                if index[w] == -1:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    out = []
    for comp in sccs:
        members = set(comp)
        if all(w in members for v in comp for w in succ[v]):
            out.append(frozenset(comp))
    out.sort(key=min)
    return tuple(out)


# ---------------------------------------------------------------------------
# Single-component transition counting


@dataclass(frozen=True)
class TransitionSet:
    """Increasing/decreasing transitions of one component over a state space.

    States recorded are the sources (the state before the flip); ``n`` is
    the dimension of the space they live in.
    """

    component: int
    n: int
    increasing: frozenset[int]
    decreasing: frozenset[int]

    @property
    def n_increasing(self) -> int:
        return len(self.increasing)

    @property
    def n_decreasing(self) -> int:
        return len(self.decreasing)

    @property
    def total(self) -> int:
        return self.n_increasing + self.n_decreasing


def component_transitions(
    bn: BooleanNetwork, i: int, limit: int = DEFAULT_STATE_LIMIT
) -> TransitionSet:
    """All states where component i's asynchronous update fires, by direction."""
    _check_limit(bn.n, limit)
    inc, dec = [], []
    bit = 1 << i
    for s in range(1 << bn.n):
        v = bn.component_value(i, s)
        if v and not s & bit:
            inc.append(s)
        elif not v and s & bit:
            dec.append(s)
    return TransitionSet(i, bn.n, frozenset(inc), frozenset(dec))


def shape_transition_counts(
    shape: FunctionShape, ctx: RegulatorContext
) -> tuple[int, int, int]:
    """(increasing, decreasing, n) for a single target in its minimal space.

    Without autoregulation the space is B^(p+1) but the target coordinate
    is forced at every transition source, so the counts reduce to the
    regulator space: increasing = |T(f)|, decreasing = 2^p − |T(f)|, and
    they always sum to 2^(n−1) = 2^p.  With autoregulation the space is
    B^p itself and the counts come from splitting T(f) on the target's own
    coordinate.
    """
    if shape.arity != ctx.arity:
        raise ArityMismatch("shape and context arity differ")
    p = shape.arity
    if ctx.self_index is None:
        t = true_count(shape)
        return t, (1 << p) - t, p + 1
    bit = 1 << (ctx.self_index - 1)
    neg = ctx.neg_mask
    inc = dec = 0
    for s in range(1 << p):
        lits = s ^ neg
        v = any(c & lits == c for c in shape.clauses)
        if v and not s & bit:
            inc += 1
        elif not v and s & bit:
            dec += 1
    return inc, dec, p


@dataclass(frozen=True)
class BoundsReport:
    """Structural bounds on one component's transition counts.

    ``case`` is 'none', 'positive' or 'negative' (autoregulation).  The
    bounds depend only on the case and the space dimension n:

    * none      — total is exactly 2^(n−1); up to 2^(n−1)−1 increasing,
                  at least 1 decreasing.
    * positive  — total in [0, 2^(n−1)); same increasing cap, possibly no
                  decreasing transition.
    * negative  — total in (2^(n−1), 2^n]; increasing can reach 2^(n−1),
                  at least 1 decreasing.
    """

    case: str
    n: int
    total_min: int
    total_max: int
    max_increasing: int
    min_decreasing: int

    def admits(self, increasing: int, decreasing: int) -> bool:
        total = increasing + decreasing
        return (
            self.total_min <= total <= self.total_max
            and increasing <= self.max_increasing
            and decreasing >= self.min_decreasing
        )


def transition_bounds(ctx: RegulatorContext, n: int | None = None) -> BoundsReport:
    """Bounds for a target with this context; n defaults to the minimal space."""
    if ctx.self_index is None:
        case = "none"
        dim = ctx.arity + 1 if n is None else n
        half = 1 << (dim - 1)
        return BoundsReport(case, dim, half, half, half - 1, 1)
    dim = ctx.arity if n is None else n
    half = 1 << (dim - 1)
    if ctx.self_sign() > 0:
        return BoundsReport("positive", dim, 0, half - 1, half - 1, 0)
    return BoundsReport("negative", dim, half + 1, 1 << dim, half, 1)


def f_star(ctx: RegulatorContext) -> FunctionShape:
    """The self-priming function: self AND (OR of every other regulator).

    Clause family { {self, k} : k ≠ self }.  Needs autoregulation and at
    least two regulators.
    """
    if ctx.self_index is None:
        raise NotAutoregulated("self-priming function needs the target as regulator")
    if ctx.arity < 2:
        raise SingleRegulator("self-priming function needs a second regulator")
    self_bit = 1 << (ctx.self_index - 1)
    masks = sorted(self_bit | (1 << k) for k in range(ctx.arity) if (1 << k) != self_bit)
    return FunctionShape(ctx.arity, tuple(masks))


@dataclass(frozen=True)
class TraceRow:
    shape: FunctionShape
    true_size: int
    increasing: int
    decreasing: int

    @property
    def total(self) -> int:
        return self.increasing + self.decreasing


def path_trace(
    ctx: RegulatorContext, path: Sequence[FunctionShape]
) -> list[TraceRow]:
    """Transition counts along an upward path of covering steps.

    Validates the chain: consecutive shapes must be child/parent pairs
    (NotAParent when not), all of the context's arity.
    """
    if not path:
        raise NotAChain("empty path")
    for s in path:
        if s.arity != ctx.arity:
            raise ArityMismatch(f"shape {s} does not match context arity {ctx.arity}")
    for a, b in zip(path, path[1:]):
        parent_step(a, b)  # raises NotAParent on a broken link
    rows = []
    for s in path:
        inc, dec, _ = shape_transition_counts(s, ctx)
        rows.append(TraceRow(s, true_count(s), inc, dec))
    return rows


def network_from_functions(
    specs: Iterable[tuple[str, object]],
) -> BooleanNetwork:
    """Convenience builder from (name, spec) pairs.

    ``spec`` is either a bool (constant input) or a triple
    (regulator_names, sign_string, clause_index_sets) with clause indices
    referring to positions in regulator_names (1-based).
    """
    specs = list(specs)
    order = {name: i for i, (name, _) in enumerate(specs)}
    comps = []
    for i, (name, spec) in enumerate(specs):
        if isinstance(spec, bool):
            comps.append(Component(name=name, constant=spec))
            continue
        reg_names, sign_text, clause_sets = spec
        regs = tuple(order[r] for r in reg_names)
        self_index = regs.index(i) + 1 if i in regs else None
        ctx = RegulatorContext.from_str(sign_text, self_index)
        shape = make_shape(clause_sets, len(regs))
        comps.append(
            Component(name=name, regulators=regs, shape=shape, ctx=ctx)
        )
    return BooleanNetwork(tuple(comps))
