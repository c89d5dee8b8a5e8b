"""Classical structure of a behavior: support, the LC/SC hierarchy, and the
noncontextual polytope.

The decidable questions live on two levels. The possibilistic level asks
which global assignments (one outcome per measurement) restrict to a
possible joint outcome in every context; the surviving set is the support.
A behavior is logically contextual (LC) when some possible joint outcome of
some context is the restriction of no support member, and strongly
contextual (SC) when the support is empty. The probabilistic level asks for
a global distribution whose marginals reproduce every context table; its
existence is decided by one exact rational LP, whose optimum also yields the
contextual fraction.

Global assignments are enumerated in mixed-radix order over the scenario's
measurement order (last measurement fastest), vectorized with numpy in
fixed-size chunks so nothing above the enumeration cap is materialized.

support / is_logically_contextual / is_strongly_contextual accept a Behavior
or a PossibilisticBehavior; probability tables are read through their
possibilistic collapse (cell possible iff p > 0).
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import simplex
from .behavior import AnyBehavior, Behavior, PossibilisticBehavior, check_nondisturbance, joint_outcomes
from .errors import EnumerationCapExceeded, NotNondisturbing
from .scenario import Scenario

DEFAULT_CAP = 1 << 24
_CHUNK = 1 << 16


def default_cap() -> int:
    """The enumeration cap: CTX_CAP from the environment, else 2^24."""
    raw = os.environ.get("CTX_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"CTX_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"CTX_CAP must be positive, got {cap}")
    return cap


@dataclass(frozen=True)
class GlobalAssignment:
    """One outcome per measurement, stored as (measurement, outcome) pairs
    in scenario order."""

    values: tuple[tuple[str, str], ...]

    def as_dict(self) -> dict[str, str]:
        return dict(self.values)

    def restrict(self, context: tuple[str, ...]) -> tuple[str, ...]:
        """The assignment's joint outcome on one context."""
        lookup = dict(self.values)
        return tuple(lookup[m] for m in context)


@dataclass(frozen=True)
class HierarchyReport:
    """Where one behavior sits in the contextuality hierarchy.

    Flags not computed (level-limited) or undefined (behavior disturbs, so
    the classical questions do not apply) are None. witness is the first
    (context, joint outcome) certifying LC, in (context index, cell) order.
    """

    nd: bool
    nc: bool | None = None
    logically_contextual: bool | None = None
    strongly_contextual: bool | None = None
    witness: tuple[tuple[str, ...], tuple[str, ...]] | None = None
    support_size: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "nd": self.nd,
            "nc": self.nc,
            "lc": self.logically_contextual,
            "sc": self.strongly_contextual,
            "witness": None
            if self.witness is None
            else {"context": list(self.witness[0]), "outcome": list(self.witness[1])},
            "support_size": self.support_size,
        }


# -- vectorized assignment enumeration ---------------------------------------


class _Engine:
    """Per-shape tables for scanning all global assignments of a scenario.

    Assignment index -> context cell code is an affine digit map; the
    arrays here let a whole chunk of indices be mapped at once.
    """

    def __init__(self, radices: tuple[int, ...], ctx_positions: tuple[tuple[int, ...], ...]):
        self.radices = radices
        self.total = math.prod(radices)
        strides = [1] * len(radices)
        for q in range(len(radices) - 2, -1, -1):
            strides[q] = strides[q + 1] * radices[q + 1]
        self.contexts = []
        for positions in ctx_positions:
            pos_strides = np.array([strides[q] for q in positions], dtype=np.int64)
            pos_radices = np.array([radices[q] for q in positions], dtype=np.int64)
            cell_strides = np.ones(len(positions), dtype=np.int64)
            for k in range(len(positions) - 2, -1, -1):
                cell_strides[k] = cell_strides[k + 1] * radices[positions[k + 1]]
            n_cells = int(np.prod(pos_radices))
            self.contexts.append((pos_strides, pos_radices, cell_strides, n_cells))

    def cell_codes(self, arr: np.ndarray, ci: int) -> np.ndarray:
        pos_strides, pos_radices, cell_strides, _ = self.contexts[ci]
        codes = np.zeros(len(arr), dtype=np.int64)
        for stride, radix, cstride in zip(pos_strides, pos_radices, cell_strides):
            codes += (arr // stride) % radix * cstride
        return codes


@lru_cache(maxsize=256)
def _engine(radices: tuple[int, ...], ctx_positions: tuple[tuple[int, ...], ...]) -> _Engine:
    return _Engine(radices, ctx_positions)


def _engine_for(s: Scenario) -> _Engine:
    index = {m: q for q, m in enumerate(s.measurements)}
    radices = tuple(len(s.outcomes[m]) for m in s.measurements)
    ctx_positions = tuple(tuple(index[m] for m in c) for c in s.contexts)
    return _engine(radices, ctx_positions)


def enumeration_size(s: Scenario) -> int:
    """Number of global assignments, prod of outcome counts."""
    return math.prod(len(s.outcomes[m]) for m in s.measurements)


def _check_cap(s: Scenario, cap: int | None) -> int:
    cap = default_cap() if cap is None else cap
    total = enumeration_size(s)
    if total > cap:
        raise EnumerationCapExceeded(f"{total} global assignments exceed the cap {cap}")
    return total


def _possible_tables(b: AnyBehavior) -> list[np.ndarray]:
    if isinstance(b, PossibilisticBehavior):
        return [np.array(t, dtype=bool) for t in b.tables]
    return [np.array([p > 0 for p in t], dtype=bool) for t in b.tables]


def _survivor_chunks(b: AnyBehavior, cap: int | None) -> Iterator[np.ndarray]:
    """Yield chunks of assignment indices whose every restriction is possible."""
    total = _check_cap(b.scenario, cap)
    eng = _engine_for(b.scenario)
    tables = _possible_tables(b)
    for start in range(0, total, _CHUNK):
        arr = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        mask = np.ones(len(arr), dtype=bool)
        for ci, table in enumerate(tables):
            mask &= table[eng.cell_codes(arr, ci)]
            if not mask.any():
                break
        survivors = arr[mask]
        if len(survivors):
            yield survivors


def _assignment_from_index(s: Scenario, idx: int) -> GlobalAssignment:
    radices = [len(s.outcomes[m]) for m in s.measurements]
    digits = []
    for r in reversed(radices):
        idx, d = divmod(idx, r)
        digits.append(d)
    digits.reverse()
    return GlobalAssignment(
        tuple((m, s.outcomes[m][d]) for m, d in zip(s.measurements, digits))
    )


# -- possibilistic level ------------------------------------------------------


def support(b: AnyBehavior, cap: int | None = None) -> tuple[GlobalAssignment, ...]:
    """All global assignments consistent with every context's possible set.

    :raises EnumerationCapExceeded: when the assignment count exceeds cap.
    """
    s = b.scenario
    out = []
    for chunk in _survivor_chunks(b, cap):
        out.extend(_assignment_from_index(s, int(i)) for i in chunk)
    return tuple(out)


def support_size(b: AnyBehavior, cap: int | None = None) -> int:
    """Number of support assignments, without materializing them."""
    return sum(len(chunk) for chunk in _survivor_chunks(b, cap))


def is_strongly_contextual(b: AnyBehavior, cap: int | None = None) -> bool:
    """True iff the support is empty (stops at the first survivor)."""
    for _ in _survivor_chunks(b, cap):
        return False
    return True


def _coverage(b: AnyBehavior, cap: int | None):
    """Which possible cells are restrictions of support members.

    Returns (covered, possible, support_count) with one boolean numpy array
    per context in each of covered/possible. Stops scanning early once every
    possible cell is covered, in which case support_count is a lower bound
    (only valid for deciding LC, which is then false).
    """
    eng = _engine_for(b.scenario)
    tables = _possible_tables(b)
    covered = [np.zeros(len(t), dtype=bool) for t in tables]
    remaining = sum(int(t.sum()) for t in tables)
    count = 0
    for chunk in _survivor_chunks(b, cap):
        count += len(chunk)
        if remaining == 0:
            continue
        for ci, table in enumerate(tables):
            codes = eng.cell_codes(chunk, ci)
            new = (np.bincount(codes, minlength=len(table)) > 0) & ~covered[ci]
            if new.any():
                covered[ci] |= new
                remaining -= int((new & table).sum())
        if remaining == 0:
            break
    return covered, tables, count


def logical_contextuality_witness(
    b: AnyBehavior, cap: int | None = None
) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
    """First possible joint outcome with no extension in the support.

    Returns (context labels, outcome labels), scanning contexts in stored
    order and cells in table order, or None when every possible outcome
    extends (the behavior is then not LC).
    """
    covered, tables, _ = _coverage(b, cap)
    s = b.scenario
    for ci, (table, cov) in enumerate(zip(tables, covered)):
        bad = table & ~cov
        if bad.any():
            cell = int(np.flatnonzero(bad)[0])
            joint = list(joint_outcomes(s, s.contexts[ci]))[cell]
            return (s.contexts[ci], joint)
    return None


def is_logically_contextual(b: AnyBehavior, cap: int | None = None) -> bool:
    """True iff some possible joint outcome extends to no support member."""
    return logical_contextuality_witness(b, cap) is not None


# -- probabilistic level ------------------------------------------------------


def _noncontextual_lp(
    b: Behavior, cap: int | None
) -> tuple[Fraction, tuple[GlobalAssignment, ...], list[Fraction]]:
    """Maximize the total weight of a subnormalized global distribution whose
    context marginals are dominated by b's tables.

    Only support assignments can carry weight (any other assignment hits a
    zero cell, whose constraint forces its weight to 0), so the LP runs over
    the support. Constraints for zero cells are then satisfied identically
    and are skipped. The optimum is 1 exactly when b is noncontextual, and
    the maximizer is then a global distribution reproducing every table: each
    context's constraints sum to (total weight) <= 1 with slack 1 - total, so
    optimum 1 makes every constraint tight.
    """
    report = check_nondisturbance(b)
    if not report.ok:
        v = report.violation
        raise NotNondisturbing(
            f"contexts {b.scenario.contexts[v.context_a]} and {b.scenario.contexts[v.context_b]} "
            f"disagree on {v.measurements}={v.outcomes}: {v.value_a} vs {v.value_b}"
        )
    sup = support(b, cap)
    if not sup:
        return Fraction(0), sup, []
    s = b.scenario
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    restrictions = [[t.restrict(c) for t in sup] for c in s.contexts]
    zero, one = Fraction(0), Fraction(1)
    for ci, c in enumerate(s.contexts):
        for cell, joint in enumerate(joint_outcomes(s, c)):
            p = b.tables[ci][cell]
            if p == 0:
                continue
            rows.append([one if r == joint else zero for r in restrictions[ci]])
            rhs.append(p)
    opt, x = simplex.maximize([one] * len(sup), rows, rhs)
    return opt, sup, x


def noncontextual_weight(b: Behavior, cap: int | None = None) -> Fraction:
    """Largest total weight of a subnormalized global distribution dominated
    by b. Equals 1 iff b is noncontextual; 1 minus it is the contextual
    fraction.

    :raises NotNondisturbing: if b's overlapping marginals disagree.
    """
    opt, _, _ = _noncontextual_lp(b, cap)
    return opt


def is_noncontextual(b: Behavior, cap: int | None = None) -> bool:
    """True iff a single global distribution reproduces every context table."""
    return noncontextual_weight(b, cap) == 1


def global_distribution(
    b: Behavior, cap: int | None = None
) -> dict[GlobalAssignment, Fraction] | None:
    """A global distribution reproducing b by marginals, or None if contextual."""
    opt, sup, x = _noncontextual_lp(b, cap)
    if opt != 1:
        return None
    return {t: w for t, w in zip(sup, x) if w > 0}


def contextual_fraction(b: Behavior, cap: int | None = None) -> Fraction:
    """1 minus the maximal noncontextual weight; 1 exactly on SC behaviors."""
    return 1 - noncontextual_weight(b, cap)


# -- combined report ----------------------------------------------------------


def hierarchy(b: Behavior, cap: int | None = None, level: str = "all") -> HierarchyReport:
    """Classify a behavior at the requested level of the hierarchy.

    level is one of "nd", "nc", "lc", "sc", "all". Nondisturbance is always
    checked first; if it fails, every later flag is undefined (None). Flags
    outside the requested level stay None.
    """
    if level not in ("nd", "nc", "lc", "sc", "all"):
        raise ValueError(f"unknown level {level!r}")
    nd_ok = check_nondisturbance(b).ok
    if not nd_ok or level == "nd":
        return HierarchyReport(nd=nd_ok)
    nc = lc = sc = None
    witness = None
    size = None
    if level in ("nc", "all"):
        nc = is_noncontextual(b, cap)
    if level in ("lc", "all"):
        witness = logical_contextuality_witness(b, cap)
        lc = witness is not None
        size = support_size(b, cap)
    if level in ("sc", "all"):
        sc = is_strongly_contextual(b, cap)
        if level == "sc":
            size = support_size(b, cap)
    return HierarchyReport(
        nd=True,
        nc=nc,
        logically_contextual=lc,
        strongly_contextual=sc,
        witness=witness,
        support_size=size,
    )
