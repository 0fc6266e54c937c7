"""Probabilistic Boolean networks over function neighborhoods.

Instead of perturbing a network's wiring, each component gets a small
*ensemble* of candidate functions: its reference function with most of the
probability mass and the reference's order neighbors (parents/children,
optionally siblings) sharing the remainder uniformly.  Updates are
synchronous; at every step each component independently samples which of
its candidate functions to apply.

A run stops when the current state is stable under the *reference
realization* — the per-component maximal-probability functions — or after
``max_steps`` steps.  Randomness is reproducible: each run derives its own
generator from the master seed by an integer mix, and exactly one draw is
consumed per randomized component per step.

The built-in model is a 23-component T-helper-cell differentiation
network whose stable patterns are read as phenotypes through the Tbet and
GATA3 markers (Th1 = Tbet only, Th2 = GATA3 only, Th0 = neither).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cache
from typing import Callable, Iterable, Sequence

from .dynamics import BooleanNetwork
from .errors import ArityMismatch, InvalidProbability, MissingMarker
from .modelio import parse_model
from .neighborhood import children, parents, siblings
from .shapes import FunctionShape, POSITIVE, state_to_string


@dataclass(frozen=True)
class FunctionEnsemble:
    """Candidate functions of one component with their probabilities."""

    entries: tuple[tuple[FunctionShape, float], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise InvalidProbability("empty ensemble")
        arities = {s.arity for s, _ in self.entries}
        if len(arities) != 1:
            raise ArityMismatch("ensemble mixes arities")
        shapes = [s for s, _ in self.entries]
        if len(set(shapes)) != len(shapes):
            raise InvalidProbability("repeated shape in ensemble")
        total = 0.0
        for _, prob in self.entries:
            if not prob > 0:
                raise InvalidProbability(f"probability {prob} must be positive")
            total += prob
        if abs(total - 1.0) > 1e-9:
            raise InvalidProbability(f"probabilities sum to {total}, expected 1")

    @property
    def reference(self) -> FunctionShape:
        """The maximal-probability entry (ties: first in canonical shape order)."""
        best = max(prob for _, prob in self.entries)
        ties = [s for s, prob in self.entries if prob == best]
        return min(ties, key=FunctionShape.sort_key)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ProbabilisticNetwork:
    """A network plus per-component ensembles (None = fixed function)."""

    network: BooleanNetwork
    ensembles: tuple[FunctionEnsemble | None, ...]

    def __post_init__(self) -> None:
        if len(self.ensembles) != self.network.n:
            raise ValueError("one ensemble slot per component required")
        for i, ens in enumerate(self.ensembles):
            if ens is None:
                continue
            comp = self.network.components[i]
            if comp.shape is None:
                raise ValueError(f"component {comp.name} is constant")
            if ens.entries[0][0].arity != comp.shape.arity:
                raise ArityMismatch(
                    f"component {comp.name}: ensemble arity differs"
                )


def neighbor_ensemble(
    bn: BooleanNetwork,
    i: int,
    mode: str = "parents_children",
    ref_prob: float = 0.8,
) -> FunctionEnsemble:
    """Ensemble for component i: reference plus its order neighbors.

    ``mode``: 'parents_children' uses direct neighbors; 'with_siblings'
    additionally includes siblings through shared parents and shared
    children.  The remainder 1 − ref_prob is split uniformly.  Components
    whose function has no neighbors keep the reference alone.
    """
    if mode not in ("parents_children", "with_siblings"):
        raise ValueError("mode must be 'parents_children' or 'with_siblings'")
    if not 0 < ref_prob <= 1:
        raise InvalidProbability(f"ref_prob {ref_prob} outside (0, 1]")
    comp = bn.components[i]
    if comp.shape is None:
        raise ValueError(f"component {comp.name} is constant")
    ref = comp.shape
    others: list[FunctionShape] = [st.shape for st in parents(ref)]
    others += [st.shape for st in children(ref)]
    if mode == "with_siblings":
        others += list(siblings(ref, via="both"))
    others = sorted(set(others), key=FunctionShape.sort_key)
    if not others or ref_prob == 1:
        return FunctionEnsemble(((ref, 1.0),))
    share = (1.0 - ref_prob) / len(others)
    return FunctionEnsemble(((ref, ref_prob),) + tuple((s, share) for s in others))


def randomized_network(
    bn: BooleanNetwork,
    components: Iterable[str] | None = None,
    mode: str = "parents_children",
    ref_prob: float = 0.8,
) -> ProbabilisticNetwork:
    """Attach neighbor ensembles to the named components (None = all non-constant)."""
    if components is None:
        targets = {i for i, c in enumerate(bn.components) if c.shape is not None}
    else:
        targets = {bn.index(name) for name in components}
    slots: list[FunctionEnsemble | None] = []
    for i in range(bn.n):
        if i in targets:
            slots.append(neighbor_ensemble(bn, i, mode=mode, ref_prob=ref_prob))
        else:
            slots.append(None)
    return ProbabilisticNetwork(bn, tuple(slots))


# ---------------------------------------------------------------------------
# Simulation


def _compile_shape(
    bn: BooleanNetwork, i: int, shape: FunctionShape
) -> tuple[tuple[int, int], ...]:
    """Clauses as (must-be-1, must-be-0) masks over *network* state bits."""
    comp = bn.components[i]
    out = []
    for c in shape.clauses:
        ones = zeros = 0
        for k, r in enumerate(comp.regulators):
            if not c & (1 << k):
                continue
            if comp.ctx.signs[k] == POSITIVE:
                ones |= 1 << r
            else:
                zeros |= 1 << r
        out.append((ones, zeros))
    return tuple(out)


def _eval_compiled(clauses: tuple[tuple[int, int], ...], state: int) -> bool:
    for ones, zeros in clauses:
        if state & ones == ones and not state & zeros:
            return True
    return False


def _mix_seed(master: int, k: int) -> int:
    """Derive run k's seed from the master seed (splitmix-style)."""
    x = (master + (k + 1) * 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


@dataclass(frozen=True)
class RunOutcome:
    run: int
    seed: int
    steps: int
    final_state: int
    absorbed: bool
    label: str


@dataclass(frozen=True)
class SimulationReport:
    seed: int
    runs: int
    max_steps: int
    outcomes: tuple[RunOutcome, ...]

    @property
    def proportions(self) -> dict[str, float]:
        counts: dict[str, int] = {}
        for o in self.outcomes:
            counts[o.label] = counts.get(o.label, 0) + 1
        return {k: v / len(self.outcomes) for k, v in sorted(counts.items())}

    def count(self, label: str) -> int:
        return sum(1 for o in self.outcomes if o.label == label)


def simulate(
    pnet: ProbabilisticNetwork,
    initial: int,
    runs: int,
    seed: int,
    max_steps: int = 1000,
    classifier: Callable[[int], str] | None = None,
) -> SimulationReport:
    """Run the ensemble dynamics ``runs`` times from ``initial``.

    Each run updates synchronously, drawing one function per randomized
    component per step.  A run ends when a sampled step leaves the state
    unchanged (a length-1 cycle under the functions drawn that step), when
    a fully deterministic network revisits a state (a provable cycle), or
    after ``max_steps``.  ``absorbed`` on the outcome records whether the
    run ended at such a fixed point.  ``classifier`` labels the final
    state (default: the state string).
    """
    bn = pnet.network
    n = bn.n
    const_mask = 0
    for i, c in enumerate(bn.components):
        if c.shape is None and c.constant:
            const_mask |= 1 << i

    # Randomized components: (index, cumulative probs, compiled shapes).
    randomized = []
    for i, ens in enumerate(pnet.ensembles):
        if ens is None or len(ens) == 1:
            continue
        cum = []
        acc = 0.0
        for _, prob in ens.entries:
            acc += prob
            cum.append(acc)
        cum[-1] = 1.0
        compiled = tuple(_compile_shape(bn, i, s) for s, _ in ens.entries)
        randomized.append((i, tuple(cum), compiled))
    randomized_idx = {i for i, _, _ in randomized}

    fixed_compiled: list[tuple[tuple[int, int], ...] | None] = []
    for i, c in enumerate(bn.components):
        if c.shape is None or i in randomized_idx:
            fixed_compiled.append(None)
            continue
        ens = pnet.ensembles[i]
        shape = c.shape if ens is None else ens.entries[0][0]
        fixed_compiled.append(_compile_shape(bn, i, shape))

    # With no randomized components every trajectory is deterministic, so
    # a revisited state proves a cycle; under per-step sampling a revisit
    # proves nothing and runs continue until a sampled fixed point.
    deterministic = not randomized

    if classifier is None:
        classifier = lambda s: state_to_string(s, n)  # noqa: E731

    outcomes = []
    for run in range(runs):
        run_seed = _mix_seed(seed, run)
        rng = random.Random(run_seed)
        state = initial
        steps = 0
        absorbed = False
        visited = {state} if deterministic else None
        while steps < max_steps:
            nxt = const_mask
            for i in range(n):
                cl = fixed_compiled[i]
                if cl is not None and _eval_compiled(cl, state):
                    nxt |= 1 << i
            for i, cum, compiled in randomized:
                r = rng.random()
                pick = 0
                while cum[pick] < r:
                    pick += 1
                if _eval_compiled(compiled[pick], state):
                    nxt |= 1 << i
            steps += 1
            if nxt == state:
                absorbed = True
                break
            state = nxt
            if deterministic:
                if state in visited:
                    break
                visited.add(state)
        outcomes.append(
            RunOutcome(run, run_seed, steps, state, absorbed, classifier(state))
        )
    return SimulationReport(seed, runs, max_steps, tuple(outcomes))


# ---------------------------------------------------------------------------
# The T-helper-cell differentiation model


_TH_MODEL_TEXT = """\
targets, factors
GATA3, (!Tbet & STAT6) | (!Tbet & GATA3)
IFNb, false
IFNbR, IFNb
IFNg, (!STAT3 & NFAT) | (!STAT3 & Tbet) | (!STAT3 & IRAK) | (!STAT3 & STAT4)
IFNgR, IFNg
IL10, GATA3
IL10R, IL10
IL12, false
IL12R, !STAT6 & IL12
IL18, false
IL18R, !STAT6 & IL18
IL4, GATA3 & !STAT1
IL4R, IL4 & !SOCS1
IRAK, IL18R
JAK1, IFNgR & !SOCS1
NFAT, TCR
SOCS1, STAT1 | Tbet
STAT1, JAK1 | IFNbR
STAT3, IL10R
STAT4, !GATA3 & IL12R
STAT6, IL4R
TCR, false
Tbet, (!GATA3 & STAT1) | (!GATA3 & Tbet)
"""


@cache
def th_model() -> BooleanNetwork:
    """The 23-component T-helper differentiation network."""
    return parse_model(_TH_MODEL_TEXT)


def th_initial_state(active: Sequence[str] = ("IFNg",)) -> int:
    """State with the named components on and everything else off."""
    bn = th_model()
    state = 0
    for name in active:
        state |= 1 << bn.index(name)
    return state


def classify_phenotype(bn: BooleanNetwork, state: int) -> str:
    """Read the differentiation phenotype off the Tbet/GATA3 markers."""
    try:
        tbet = bn.index("Tbet")
        gata3 = bn.index("GATA3")
    except KeyError as exc:
        raise MissingMarker(f"network lacks marker component {exc.args[0]}") from None
    t = bool(state & (1 << tbet))
    g = bool(state & (1 << gata3))
    if t and not g:
        return "Th1"
    if g and not t:
        return "Th2"
    if not t and not g:
        return "Th0"
    return "Other"


@dataclass(frozen=True)
class NeighborTableEntry:
    """One regulated component's function-space neighborhood."""

    name: str
    shape: FunctionShape
    regulator_names: tuple[str, ...]
    n_regulators: int
    n_functions: int
    parents: tuple[FunctionShape, ...]
    children: tuple[FunctionShape, ...]
    starred_siblings: tuple[FunctionShape, ...]


def th_neighbor_table(bn: BooleanNetwork | None = None) -> dict[str, NeighborTableEntry]:
    """Neighborhood table for every regulated component.

    ``starred_siblings`` uses the wide sibling notion (shared parent or
    shared child), which is what the published table's starred rows count.
    """
    from .neighborhood import count_consistent

    if bn is None:
        bn = th_model()
    table: dict[str, NeighborTableEntry] = {}
    for i, comp in enumerate(bn.components):
        if comp.shape is None:
            continue
        shape = comp.shape
        names = tuple(bn.components[r].name for r in comp.regulators)
        table[comp.name] = NeighborTableEntry(
            name=comp.name,
            shape=shape,
            regulator_names=names,
            n_regulators=shape.arity,
            n_functions=count_consistent(shape.arity),
            parents=tuple(st.shape for st in parents(shape)),
            children=tuple(st.shape for st in children(shape)),
            starred_siblings=siblings(shape, via="both"),
        )
    return table


#: Experiment presets: which components get ensembles, and the neighbor mode.
EXPERIMENTS: dict[str, tuple[tuple[str, ...] | None, str]] = {
    "A": (None, "parents_children"),
    "B": (None, "with_siblings"),
    "C": (("GATA3",), "parents_children"),
    "D": (("Tbet",), "parents_children"),
    "E": (("IL4",), "parents_children"),
    "F": (("IL4R",), "parents_children"),
}


def experiment_network(which: str, ref_prob: float = 0.8) -> ProbabilisticNetwork:
    """Preset ensemble networks A–F on the T-helper model.

    A/B randomize every regulated component (direct neighbors / with
    siblings); C–F randomize a single lineage-critical component each:
    GATA3, Tbet, IL4, IL4R.
    """
    try:
        components, mode = EXPERIMENTS[which.upper()]
    except KeyError:
        raise ValueError(f"unknown experiment {which!r}; expected A..F") from None
    return randomized_network(
        th_model(), components=components, mode=mode, ref_prob=ref_prob
    )


def run_experiment(
    which: str,
    runs: int = 1000,
    seed: int = 1,
    max_steps: int = 1000,
    ref_prob: float = 0.8,
) -> SimulationReport:
    """Simulate one preset experiment from the IFNg-pulse initial state."""
    pnet = experiment_network(which, ref_prob=ref_prob)
    bn = pnet.network
    return simulate(
        pnet,
        th_initial_state(),
        runs=runs,
        seed=seed,
        max_steps=max_steps,
        classifier=lambda s: classify_phenotype(bn, s),
    )
