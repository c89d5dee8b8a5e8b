"""Compatibility scenarios and the graph algorithms that gate every theorem.

A scenario is a triple (X, C, O): a finite set of measurements X, a family of
contexts C (sets of jointly measurable measurements forming an antichain that
covers X), and a finite outcome label list per measurement. Contexts are
stored as ordered tuples; that order fixes how joint-outcome tables are keyed
everywhere else in the package.

A scenario is *simple* when every context has exactly two measurements; its
compatibility graph then has measurements as vertices and contexts as edges.
Simple scenarios admit contextual behaviors exactly when that graph contains
a cycle, and the paradox detectors scan induced (chordless) cycles, so this
module also provides chordless-cycle enumeration and cycle traversal.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidScenario, NonSimpleScenario, NotCycle


@dataclass(frozen=True)
class Scenario:
    """A compatibility scenario (X, C, O).

    :param measurements: ordered measurement labels, the set X.
    :param outcomes: map measurement label -> ordered tuple of outcome labels.
    :param contexts: ordered tuple of contexts; each context is an ordered
        tuple of measurement labels. The stored order of a context is the key
        order of every joint-outcome table attached to it.
    """

    measurements: tuple[str, ...]
    outcomes: dict[str, tuple[str, ...]]
    contexts: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "measurements", tuple(self.measurements))
        object.__setattr__(
            self, "outcomes", {m: tuple(v) for m, v in self.outcomes.items()}
        )
        object.__setattr__(self, "contexts", tuple(tuple(c) for c in self.contexts))
        self._validate()

    def _validate(self) -> None:
        if not self.measurements:
            raise InvalidScenario("scenario has no measurements")
        if len(set(self.measurements)) != len(self.measurements):
            raise InvalidScenario("duplicate measurement labels")
        mset = set(self.measurements)
        if set(self.outcomes) != mset:
            missing = sorted(mset - set(self.outcomes)) or sorted(set(self.outcomes) - mset)
            raise InvalidScenario(f"outcome map does not match measurements: {missing}")
        for m in self.measurements:
            labels = self.outcomes[m]
            if len(labels) < 2 or len(set(labels)) != len(labels):
                raise InvalidScenario(f"measurement {m!r} needs >= 2 distinct outcome labels")
        if not self.contexts:
            raise InvalidScenario("scenario has no contexts")
        seen_sets = []
        for c in self.contexts:
            if not c:
                raise InvalidScenario("empty context")
            if len(set(c)) != len(c):
                raise InvalidScenario(f"context {c} repeats a measurement")
            for m in c:
                if m not in mset:
                    raise InvalidScenario(f"context {c} uses unknown measurement {m!r}")
            seen_sets.append(frozenset(c))
        covered = set().union(*seen_sets)
        if covered != mset:
            raise InvalidScenario(f"measurements not covered by any context: {sorted(mset - covered)}")
        for i, a in enumerate(seen_sets):
            for j, b in enumerate(seen_sets):
                if i != j and a <= b:
                    raise InvalidScenario(
                        f"contexts must form an antichain: {self.contexts[i]} within {self.contexts[j]}"
                    )

    # -- derived views ----------------------------------------------------

    @property
    def is_simple(self) -> bool:
        """True when every context has exactly two measurements."""
        return all(len(c) == 2 for c in self.contexts)

    def outcomes_of(self, measurement: str) -> tuple[str, ...]:
        """Outcome label tuple of one measurement."""
        return self.outcomes[measurement]

    def outcome_index(self, measurement: str, label: str) -> int:
        """Position of an outcome label in its measurement's outcome list."""
        try:
            return self.outcomes[measurement].index(label)
        except ValueError:
            raise InvalidScenario(f"unknown outcome {label!r} for measurement {measurement!r}") from None

    def context_cells(self, context_index: int) -> int:
        """Number of joint outcomes of one context."""
        cells = 1
        for m in self.contexts[context_index]:
            cells *= len(self.outcomes[m])
        return cells

    # -- JSON --------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "measurements": list(self.measurements),
            "outcomes": {m: list(v) for m, v in self.outcomes.items()},
            "contexts": [list(c) for c in self.contexts],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Scenario":
        if not isinstance(data, dict):
            raise InvalidScenario("scenario JSON must be an object")
        for key in ("measurements", "outcomes", "contexts"):
            if key not in data:
                raise InvalidScenario(f"scenario JSON missing {key!r}")
        try:
            return cls(
                measurements=tuple(str(m) for m in data["measurements"]),
                outcomes={str(m): tuple(str(o) for o in v) for m, v in data["outcomes"].items()},
                contexts=tuple(tuple(str(m) for m in c) for c in data["contexts"]),
            )
        except (TypeError, AttributeError) as exc:
            raise InvalidScenario(f"malformed scenario JSON: {exc}") from exc


def load_scenario(path: str) -> Scenario:
    """Read a scenario from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        return Scenario.from_json_dict(json.load(fh))


# -- standard families ------------------------------------------------------


def make_n_cycle(n: int, l: int = 2) -> Scenario:
    """The n-cycle scenario: measurements M1..Mn, contexts {M_i, M_(i+1)}.

    :param n: number of measurements, at least 3. n=4 with l=2 is the CHSH
        scenario, n=5 with l=2 is KCBS.
    :param l: outcomes per measurement, at least 2, labeled "0".."l-1".
    """
    if n < 3:
        raise InvalidScenario(f"n-cycle needs n >= 3, got {n}")
    if l < 2:
        raise InvalidScenario(f"n-cycle needs l >= 2 outcomes, got {l}")
    names = tuple(f"M{i}" for i in range(1, n + 1))
    labels = tuple(str(o) for o in range(l))
    contexts = tuple((names[i], names[(i + 1) % n]) for i in range(n))
    return Scenario(names, {m: labels for m in names}, contexts)


def make_bipartite_bell(k: int, l: int = 2) -> Scenario:
    """The bipartite Bell scenario (2, k, l): complete bipartite compatibility.

    Measurements A1..Ak and B1..Bk, each with l outcomes; every pair
    {A_i, B_j} is a context, so the compatibility graph is K_{k,k}.
    """
    if k < 2:
        raise InvalidScenario(f"bipartite Bell needs k >= 2 settings, got {k}")
    if l < 2:
        raise InvalidScenario(f"bipartite Bell needs l >= 2 outcomes, got {l}")
    alice = tuple(f"A{i}" for i in range(1, k + 1))
    bob = tuple(f"B{j}" for j in range(1, k + 1))
    labels = tuple(str(o) for o in range(l))
    contexts = tuple((a, b) for a in alice for b in bob)
    return Scenario(alice + bob, {m: labels for m in alice + bob}, contexts)


# -- cycle structure ---------------------------------------------------------


@dataclass(frozen=True)
class CycleDecomposition:
    """All induced cycles of a simple scenario's compatibility graph.

    Each cycle is an ordered measurement tuple whose consecutive pairs (and
    the last-first pair) are contexts and which has no chord. Cycles are
    canonicalized: smallest label first, then the direction whose second
    label is smaller, and the list is sorted. is_acyclic is true exactly
    when the list is empty.
    """

    cycles: tuple[tuple[str, ...], ...]
    is_acyclic: bool


def chordless_cycles(s: Scenario) -> CycleDecomposition:
    """Enumerate every chordless cycle of a simple scenario.

    Runs a DFS from each start vertex over paths confined to larger labels,
    pruning any extension adjacent to an interior path vertex (that edge
    would be a chord). Adjacency to the start vertex closes a cycle and
    forbids further extension. Each cycle is produced once: the start is its
    smallest label and the two traversal directions are collapsed by
    requiring the second label to precede the last.

    Exponential in the worst case; intended for desk-scale graphs.

    :raises NonSimpleScenario: if some context does not have exactly two
        measurements.
    """
    for c in s.contexts:
        if len(c) != 2:
            raise NonSimpleScenario(f"context {c} has {len(c)} measurements, need exactly 2")
    adj: dict[str, set[str]] = {m: set() for m in s.measurements}
    for u, v in s.contexts:
        adj[u].add(v)
        adj[v].add(u)

    found: list[tuple[str, ...]] = []

    def extend(path: list[str], members: set[str]) -> None:
        start, last = path[0], path[-1]
        interior = path[1:-1]
        at_root = len(path) == 1
        for y in sorted(adj[last]):
            if y <= start or y in members:
                continue
            if any(y in adj[p] for p in interior):
                continue  # chord against an interior vertex
            if not at_root and y in adj[start]:
                if path[1] < y:
                    found.append(tuple(path) + (y,))
                continue  # extending past y would leave the chord start-y
            path.append(y)
            members.add(y)
            extend(path, members)
            members.discard(y)
            path.pop()

    for start in sorted(s.measurements):
        extend([start], {start})

    found.sort()
    return CycleDecomposition(cycles=tuple(found), is_acyclic=not found)


def traverse_cycle(s: Scenario) -> tuple[tuple[int, tuple[str, str]], ...]:
    """Orient a scenario whose compatibility graph is one single cycle.

    Returns the traversal as ((context position, (u, v)), ...) of length n,
    starting from the first stored context in its stored orientation and
    walking the cycle until it closes. Positions index into s.contexts.

    :raises NotCycle: if the graph is not a single cycle covering all
        measurements (every vertex degree 2, n contexts, connected).
    """
    n = len(s.measurements)
    if len(s.contexts) != n or n < 3 or not s.is_simple:
        raise NotCycle(f"need n measurements and n 2-element contexts, got {len(s.contexts)} contexts on {n}")
    incident: dict[str, list[int]] = {m: [] for m in s.measurements}
    for pos, (u, v) in enumerate(s.contexts):
        incident[u].append(pos)
        incident[v].append(pos)
    for m, lst in incident.items():
        if len(lst) != 2:
            raise NotCycle(f"measurement {m!r} lies in {len(lst)} contexts, need exactly 2")
    order: list[tuple[int, tuple[str, str]]] = []
    pos, (u, v) = 0, s.contexts[0]
    prev_pos = 0
    order.append((0, (u, v)))
    cur = v
    for _ in range(n - 1):
        nxt_pos = incident[cur][0] if incident[cur][1] == prev_pos else incident[cur][1]
        a, b = s.contexts[nxt_pos]
        w = b if a == cur else a
        order.append((nxt_pos, (cur, w)))
        prev_pos = nxt_pos
        cur = w
    if cur != u or len({p for p, _ in order}) != n:
        raise NotCycle("compatibility graph is not one single cycle")
    return tuple(order)
