"""Correlator inequalities on dichotomic cycles.

For an n-cycle with two-outcome measurements, each context i has a
correlator E_i = p_i(0,0) + p_i(1,1) - p_i(0,1) - p_i(1,0), and the
classical polytope is cut out by the family

    sum_i g_i E_i <= n - 2,   g_i = +-1 with an odd number of -1 entries.

The family is complete for nondisturbing dichotomic cycles: a behavior is
noncontextual exactly when every member holds. Maximizing the left side
over valid sign vectors has a closed form, so evaluate_all reports the
tight member and its value exactly, in rational arithmetic. The maximal
quantum value has a known closed form in n as well (the n=4 case is
Tsirelson's 2*sqrt(2)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .behavior import Behavior, check_nondisturbance
from .errors import NonDichotomic, NotNondisturbing
from .scenario import traverse_cycle


@dataclass(frozen=True)
class NcycleInequality:
    """One member of the family: a sign per context, odd count of -1."""

    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", tuple(int(g) for g in self.signs))
        if len(self.signs) < 3:
            raise ValueError(f"need at least 3 contexts, got {len(self.signs)}")
        if any(g not in (-1, 1) for g in self.signs):
            raise ValueError("signs must be +1 or -1")
        if self.signs.count(-1) % 2 == 0:
            raise ValueError("the number of -1 signs must be odd")

    @property
    def classical_bound(self) -> int:
        return len(self.signs) - 2


def correlator(b: Behavior, i: int) -> Fraction:
    """E_i of the 1-based stored context i: p(equal) - p(different).

    Exact, and independent of the stored measurement order of the context.

    :raises NonDichotomic: if either measurement has more than 2 outcomes.
    """
    s = b.scenario
    if not 1 <= i <= len(s.contexts):
        raise ValueError(f"context index must be in 1..{len(s.contexts)}, got {i}")
    c = s.contexts[i - 1]
    if len(c) != 2:
        raise ValueError(f"context {c} is not a pair")
    for m in c:
        if len(s.outcomes[m]) != 2:
            raise NonDichotomic(f"measurement {m!r} has {len(s.outcomes[m])} outcomes, need 2")
    t = b.tables[i - 1]
    return 2 * (t[0] + t[3]) - 1


def evaluate(b: Behavior, ineq: NcycleInequality) -> Fraction:
    """Exact value of sum_i signs[i] * E_i on a dichotomic cycle behavior.

    :raises NotCycle: if the scenario is not a single cycle.
    """
    traverse_cycle(b.scenario)
    if len(ineq.signs) != len(b.scenario.contexts):
        raise ValueError(
            f"inequality has {len(ineq.signs)} signs for {len(b.scenario.contexts)} contexts"
        )
    return sum(g * correlator(b, i + 1) for i, g in enumerate(ineq.signs))


def quantum_bound(n: int) -> float:
    """Largest quantum value of the family's left side on the n-cycle."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    c = math.cos(math.pi / n)
    if n % 2 == 1:
        return (3 * n * c - n) / (1 + c)
    return n * c


@dataclass(frozen=True)
class ViolationReport:
    """The tight family member for one behavior and how far it reaches."""

    max_value: Fraction
    signs: tuple[int, ...]
    classical_bound: int
    quantum_bound: float
    violates_classical: bool
    violates_quantum: bool

    def to_json_dict(self) -> dict:
        return {
            "max_value": str(self.max_value),
            "max_value_float": float(self.max_value),
            "signs": list(self.signs),
            "classical_bound": self.classical_bound,
            "quantum_bound": self.quantum_bound,
            "violates_classical": self.violates_classical,
            "violates_quantum": self.violates_quantum,
        }


def evaluate_all(b: Behavior) -> ViolationReport:
    """Maximize over the whole family in closed form.

    With free signs the maximum of sum g_i E_i is sum |E_i|, reached at
    g_i = sign(E_i). If that sign vector has an even number of -1 entries,
    the cheapest repair is flipping the sign at the smallest |E_i| (first
    such index on ties), costing 2|E_i|; no valid vector does better.

    :raises NotCycle: if the scenario is not a single cycle.
    :raises NotNondisturbing: if the behavior disturbs.
    """
    traverse_cycle(b.scenario)
    report = check_nondisturbance(b)
    if not report.ok:
        raise NotNondisturbing(f"behavior disturbs: {report.violation}")
    n = len(b.scenario.contexts)
    corr = [correlator(b, i + 1) for i in range(n)]
    signs = [1 if e >= 0 else -1 for e in corr]
    if signs.count(-1) % 2 == 0:
        weakest = min(range(n), key=lambda i: abs(corr[i]))
        signs[weakest] = -signs[weakest]
    value = sum(g * e for g, e in zip(signs, corr))
    qb = quantum_bound(n)
    return ViolationReport(
        max_value=value,
        signs=tuple(signs),
        classical_bound=n - 2,
        quantum_bound=qb,
        violates_classical=value > n - 2,
        violates_quantum=float(value) > qb + 1e-12,
    )
