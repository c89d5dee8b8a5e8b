"""Behaviors: exact probability tables indexed by a scenario's contexts.

A behavior attaches to every context a probability distribution over that
context's joint outcomes, stored as Fractions so nondisturbance and the
classical-polytope tests downstream are exact. A possibilistic behavior
keeps only which joint outcomes are possible; collapsing a probability table
to its support gives one.

Joint outcomes of a context are ordered lexicographically in the context's
stored measurement order, with the last measurement varying fastest. All
tables in this package use that cell order.
"""
from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .errors import InvalidBehavior, NegativeProbability, SubsetNotInContext
from .scenario import Scenario


def joint_outcomes(s: Scenario, context: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
    """Yield the joint outcome label tuples of a context in cell order."""
    return itertools.product(*(s.outcomes[m] for m in context))


def cell_index(s: Scenario, context: tuple[str, ...], labels: tuple[str, ...]) -> int:
    """Cell position of a joint outcome inside its context's table."""
    if len(labels) != len(context):
        raise InvalidBehavior(f"outcome tuple {labels} does not match context {context}")
    idx = 0
    for m, o in zip(context, labels):
        idx = idx * len(s.outcomes[m]) + s.outcome_index(m, o)
    return idx


@dataclass(frozen=True)
class Violation:
    """One witnessed disagreement between two contexts' shared marginals."""

    context_a: int
    context_b: int
    measurements: tuple[str, ...]
    outcomes: tuple[str, ...]
    value_a: object
    value_b: object


@dataclass(frozen=True)
class DisturbanceReport:
    """Outcome of a nondisturbance check; violation is None when ok."""

    ok: bool
    violation: Violation | None = None


@dataclass(frozen=True)
class Behavior:
    """Probability tables over every context of a scenario.

    tables[i][cell_index(...)] is the probability of one joint outcome of
    scenario.contexts[i]; each table sums to exactly 1. metadata is an
    optional free-form dict carried through JSON round trips.
    """

    scenario: Scenario
    tables: tuple[tuple[Fraction, ...], ...]
    metadata: dict | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        tables = tuple(tuple(Fraction(x) for x in t) for t in self.tables)
        object.__setattr__(self, "tables", tables)
        s = self.scenario
        if len(tables) != len(s.contexts):
            raise InvalidBehavior(f"expected {len(s.contexts)} tables, got {len(tables)}")
        for i, t in enumerate(tables):
            cells = s.context_cells(i)
            if len(t) != cells:
                raise InvalidBehavior(
                    f"table for context {s.contexts[i]} has {len(t)} cells, expected {cells}"
                )
            for p in t:
                if p < 0:
                    raise NegativeProbability(f"negative probability {p} in context {s.contexts[i]}")
            if sum(t) != 1:
                raise InvalidBehavior(f"table for context {s.contexts[i]} sums to {sum(t)}, not 1")

    def probability(self, context_index: int, outcomes: tuple[str, ...]) -> Fraction:
        """Probability of one joint outcome of one context."""
        c = self.scenario.contexts[context_index]
        return self.tables[context_index][cell_index(self.scenario, c, tuple(outcomes))]

    def marginal(
        self, context_index: int, measurements: tuple[str, ...], outcomes: tuple[str, ...]
    ) -> Fraction:
        """Marginal probability of outcomes on a measurement subset.

        :raises SubsetNotInContext: if some measurement is not in the context.
        """
        c = self.scenario.contexts[context_index]
        positions = _subset_positions(c, measurements)
        want = dict(zip(positions, outcomes))
        total = Fraction(0)
        for cell, joint in enumerate(joint_outcomes(self.scenario, c)):
            if all(joint[pos] == o for pos, o in want.items()):
                total += self.tables[context_index][cell]
        return total


@dataclass(frozen=True)
class PossibilisticBehavior:
    """Possible joint outcomes per context, same cell order as Behavior."""

    scenario: Scenario
    tables: tuple[tuple[bool, ...], ...]
    metadata: dict | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        tables = tuple(tuple(bool(x) for x in t) for t in self.tables)
        object.__setattr__(self, "tables", tables)
        s = self.scenario
        if len(tables) != len(s.contexts):
            raise InvalidBehavior(f"expected {len(s.contexts)} tables, got {len(tables)}")
        for i, t in enumerate(tables):
            cells = s.context_cells(i)
            if len(t) != cells:
                raise InvalidBehavior(
                    f"table for context {s.contexts[i]} has {len(t)} cells, expected {cells}"
                )
            if not any(t):
                raise InvalidBehavior(f"context {s.contexts[i]} has no possible outcome")

    def is_possible(self, context_index: int, outcomes: tuple[str, ...]) -> bool:
        """Whether one joint outcome of one context is possible."""
        c = self.scenario.contexts[context_index]
        return self.tables[context_index][cell_index(self.scenario, c, tuple(outcomes))]

    def possible_outcomes(self, context_index: int) -> tuple[tuple[str, ...], ...]:
        """All possible joint outcome tuples of one context, in cell order."""
        c = self.scenario.contexts[context_index]
        return tuple(
            joint
            for cell, joint in enumerate(joint_outcomes(self.scenario, c))
            if self.tables[context_index][cell]
        )

    def marginal(
        self, context_index: int, measurements: tuple[str, ...], outcomes: tuple[str, ...]
    ) -> bool:
        """Possibilistic marginal: OR of the consistent cells.

        :raises SubsetNotInContext: if some measurement is not in the context.
        """
        c = self.scenario.contexts[context_index]
        positions = _subset_positions(c, measurements)
        want = dict(zip(positions, outcomes))
        for cell, joint in enumerate(joint_outcomes(self.scenario, c)):
            if self.tables[context_index][cell] and all(joint[pos] == o for pos, o in want.items()):
                return True
        return False


AnyBehavior = Union[Behavior, PossibilisticBehavior]


def _subset_positions(context: tuple[str, ...], measurements: tuple[str, ...]) -> tuple[int, ...]:
    positions = []
    for m in measurements:
        if m not in context:
            raise SubsetNotInContext(f"measurement {m!r} is not in context {context}")
        positions.append(context.index(m))
    return tuple(positions)


def collapse(b: Behavior) -> PossibilisticBehavior:
    """Possibilistic collapse: keep which cells carry positive probability."""
    return PossibilisticBehavior(
        scenario=b.scenario,
        tables=tuple(tuple(p > 0 for p in t) for t in b.tables),
        metadata=b.metadata,
    )


def check_nondisturbance(b: Behavior) -> DisturbanceReport:
    """Exact nondisturbance: overlapping contexts share their marginals.

    Compares, for every context pair, the marginal distributions on the full
    intersection of their measurement sets; agreement there implies
    agreement on every smaller common subset. Returns the first violation
    in stored context order.
    """
    return _check_nd(b)


def check_possibilistic_nd(pb: PossibilisticBehavior) -> DisturbanceReport:
    """Possibilistic nondisturbance: OR-marginals agree across contexts."""
    return _check_nd(pb)


def _check_nd(b: AnyBehavior) -> DisturbanceReport:
    s = b.scenario
    for i in range(len(s.contexts)):
        for j in range(i + 1, len(s.contexts)):
            shared = tuple(m for m in s.contexts[i] if m in s.contexts[j])
            if not shared:
                continue
            for joint in itertools.product(*(s.outcomes[m] for m in shared)):
                va = b.marginal(i, shared, joint)
                vb = b.marginal(j, shared, joint)
                if va != vb:
                    return DisturbanceReport(
                        ok=False,
                        violation=Violation(i, j, shared, joint, va, vb),
                    )
    return DisturbanceReport(ok=True)


# -- JSON -------------------------------------------------------------------


def _parse_rational(raw) -> Fraction:
    if isinstance(raw, bool):
        raise InvalidBehavior(f"probability {raw!r} is not a number or rational string")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidBehavior(f"cannot parse probability {raw!r}: {exc}") from exc
    raise InvalidBehavior(f"probability {raw!r} must be an int or a 'num/den' string")


def behavior_from_json_dict(data: dict, base_dir: str | None = None) -> AnyBehavior:
    """Build a (possibly possibilistic) behavior from its JSON object form.

    The "scenario" entry is either an inline scenario object or a path,
    resolved relative to base_dir. Each table entry names its context by
    measurement set (any member order) and gives either "probs", a map from
    comma-joined outcome labels to rationals with omitted cells read as 0,
    or "possible", a list of outcome label tuples.
    """
    if not isinstance(data, dict):
        raise InvalidBehavior("behavior JSON must be an object")
    if "scenario" not in data or "tables" not in data:
        raise InvalidBehavior("behavior JSON needs 'scenario' and 'tables'")
    sval = data["scenario"]
    if isinstance(sval, str):
        path = sval if os.path.isabs(sval) or base_dir is None else os.path.join(base_dir, sval)
        with open(path, encoding="utf-8") as fh:
            scenario = Scenario.from_json_dict(json.load(fh))
    else:
        scenario = Scenario.from_json_dict(sval)

    entries = data["tables"]
    if not isinstance(entries, list):
        raise InvalidBehavior("'tables' must be a list")
    by_set: dict[frozenset, dict] = {}
    for entry in entries:
        if not isinstance(entry, dict) or "context" not in entry:
            raise InvalidBehavior("each table entry needs a 'context'")
        key = frozenset(str(m) for m in entry["context"])
        if key in by_set:
            raise InvalidBehavior(f"duplicate table for context {sorted(key)}")
        by_set[key] = entry

    kinds = {("probs" in e, "possible" in e) for e in by_set.values()}
    if kinds == {(True, False)}:
        possibilistic = False
    elif kinds == {(False, True)}:
        possibilistic = True
    else:
        raise InvalidBehavior("every table entry needs exactly one of 'probs' or 'possible'")

    prob_tables: list[tuple[Fraction, ...]] = []
    bool_tables: list[tuple[bool, ...]] = []
    for i, context in enumerate(scenario.contexts):
        entry = by_set.pop(frozenset(context), None)
        if entry is None:
            raise InvalidBehavior(f"no table for context {context}")
        stored = tuple(str(m) for m in entry["context"])
        if possibilistic:
            table = [False] * scenario.context_cells(i)
            for labels in entry["possible"]:
                joint = tuple(str(o) for o in labels)
                if len(joint) != len(stored):
                    raise InvalidBehavior(f"outcome tuple {joint} does not match context {stored}")
                remapped = tuple(joint[stored.index(m)] for m in context)
                table[cell_index(scenario, context, remapped)] = True
            bool_tables.append(tuple(table))
        else:
            cells = [Fraction(0)] * scenario.context_cells(i)
            for key, raw in entry["probs"].items():
                joint = tuple(key.split(","))
                if len(joint) != len(stored):
                    raise InvalidBehavior(f"outcome key {key!r} does not match context {stored}")
                remapped = tuple(joint[stored.index(m)] for m in context)
                cells[cell_index(scenario, context, remapped)] = _parse_rational(raw)
            prob_tables.append(tuple(cells))
    if by_set:
        extra = [sorted(k) for k in by_set]
        raise InvalidBehavior(f"tables given for unknown contexts: {extra}")

    metadata = data.get("metadata")
    if possibilistic:
        return PossibilisticBehavior(scenario, tuple(bool_tables), metadata=metadata)
    return Behavior(scenario, tuple(prob_tables), metadata=metadata)


def behavior_to_json_dict(b: AnyBehavior) -> dict:
    """Serialize a behavior with an inline scenario; zero cells are omitted."""
    s = b.scenario
    tables = []
    for i, context in enumerate(s.contexts):
        entry: dict = {"context": list(context)}
        if isinstance(b, PossibilisticBehavior):
            entry["possible"] = [
                list(joint)
                for cell, joint in enumerate(joint_outcomes(s, context))
                if b.tables[i][cell]
            ]
        else:
            entry["probs"] = {
                ",".join(joint): str(b.tables[i][cell])
                for cell, joint in enumerate(joint_outcomes(s, context))
                if b.tables[i][cell]
            }
        tables.append(entry)
    out = {"scenario": s.to_json_dict(), "tables": tables}
    if b.metadata is not None:
        out["metadata"] = b.metadata
    return out


def load_behavior(path: str) -> AnyBehavior:
    """Read a behavior (probabilistic or possibilistic) from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return behavior_from_json_dict(data, base_dir=os.path.dirname(os.path.abspath(path)))


def save_behavior(b: AnyBehavior, path: str) -> None:
    """Write a behavior to a JSON file with an inline scenario."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(behavior_to_json_dict(b), fh, indent=2)
        fh.write("\n")
