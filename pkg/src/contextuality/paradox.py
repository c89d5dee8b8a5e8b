"""Possibilistic paradoxes: certificate-producing detectors and the PR-box
classification of strong contextuality.

A possibilistic paradox on a cycle is one possible joint outcome (a, b)
together with impossibility facts around the cycle that forbid every global
assignment extending it. The detectors find such paradoxes by reachable-set
propagation: starting from {b}, push the set of attainable outcomes through
each context's possibility relation; a paradox exists exactly when a is not
reachable after going all the way around. Propagation is O(n l^2) per
witness, and each impossibility it uses is recorded, so every certificate
can be re-validated directly against the tables with no trust in the
detector.

On dichotomic simple scenarios, scanning the chordless cycles of the
compatibility graph decides logical contextuality outright; on dichotomic
cycles, strong contextuality holds exactly for the PR-box-like tables (one
odd-parity family of two-element complement-closed rows), which is what
classify_strong_contextuality recognizes.

All context indices in certificates and classifications are 1-based
positions into the scenario's stored context list.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .behavior import AnyBehavior, PossibilisticBehavior, cell_index, collapse, check_possibilistic_nd
from .errors import (
    NonDichotomic,
    NonSimpleScenario,
    NotCycle,
    NotPossibilisticallyND,
    WrongScenarioShape,
)
from .scenario import Scenario, chordless_cycles, traverse_cycle


@dataclass(frozen=True)
class ChainStep:
    """One propagation step of a paradox certificate.

    The step's context is the oriented pair (u, v) at 1-based stored index
    context_index. Any extension of the witness must give u a value in
    reachable_in; every pair in forbidden (= reachable_in x complement of
    reachable_out) is impossible in this context, so v's value is confined
    to reachable_out.
    """

    context_index: int
    context: tuple[str, str]
    reachable_in: tuple[str, ...]
    forbidden: tuple[tuple[str, str], ...]
    reachable_out: tuple[str, ...]


@dataclass(frozen=True)
class ParadoxCertificate:
    """A possibilistic paradox: a possible pair that cannot close its cycle.

    witness_pair = (a, b) is possible in base_context (oriented as stored
    here); the chain's n-1 steps walk the remaining contexts once around,
    and a is not in the last reachable set, so no global assignment gives
    the base context the value (a, b). The forbidden sets realize the
    partition form of the general-outcome paradox; for dichotomic cycles
    each step forbids exactly the single chain pair of the two-outcome form.
    """

    base_context_index: int
    base_context: tuple[str, str]
    witness_pair: tuple[str, str]
    chain: tuple[ChainStep, ...]

    def to_json_dict(self) -> dict:
        return {
            "base_context_index": self.base_context_index,
            "base_context": list(self.base_context),
            "witness": list(self.witness_pair),
            "chain": [
                {
                    "context_index": st.context_index,
                    "context": list(st.context),
                    "reachable_in": list(st.reachable_in),
                    "forbidden": [list(p) for p in st.forbidden],
                    "reachable_out": list(st.reachable_out),
                }
                for st in self.chain
            ],
        }


def _as_possibilistic(b: AnyBehavior) -> PossibilisticBehavior:
    return b if isinstance(b, PossibilisticBehavior) else collapse(b)


def _oriented_possible(
    pb: PossibilisticBehavior, stored_index: int, pair: tuple[str, str], labels: tuple[str, str]
) -> bool:
    """Possibility of (u, v) = labels where pair may reverse the stored order."""
    stored = pb.scenario.contexts[stored_index]
    if stored == pair:
        ordered = labels
    else:
        ordered = (labels[1], labels[0])
    return pb.tables[stored_index][cell_index(pb.scenario, stored, ordered)]


def verify_certificate(b: AnyBehavior, cert: ParadoxCertificate) -> bool:
    """Re-validate a certificate directly against the tables.

    Checks, using nothing but the behavior and the certificate's own data:
    the witness pair is possible; the chain walks the base context's cycle
    once; each step's forbidden set is exactly reachable_in x (outcomes
    minus reachable_out) and every listed pair is impossible; consecutive
    reachable sets agree; and the witness's first outcome is missing from
    the final reachable set. Those facts alone force the paradox.
    """
    pb = _as_possibilistic(b)
    s = pb.scenario
    by_set = {frozenset(c): i for i, c in enumerate(s.contexts)}

    def stored(pair: tuple[str, str]) -> int | None:
        return by_set.get(frozenset(pair))

    base = stored(cert.base_context)
    if base is None or base + 1 != cert.base_context_index:
        return False
    if not _oriented_possible(pb, base, cert.base_context, cert.witness_pair):
        return False
    a, b_out = cert.witness_pair
    # Any closed walk through distinct contexts is sound; its length need not
    # relate to the full context count (the walk may cover one cycle of a
    # larger scenario).
    prev_vertex = cert.base_context[1]
    prev_reach: tuple[str, ...] = (b_out,)
    seen = {base}
    for st in cert.chain:
        ci = stored(st.context)
        if ci is None or ci + 1 != st.context_index or ci in seen:
            return False
        seen.add(ci)
        u, v = st.context
        if u != prev_vertex or tuple(st.reachable_in) != prev_reach:
            return False
        out_set = set(st.reachable_out)
        if not out_set <= set(s.outcomes[v]):
            return False
        expect_forbidden = {
            (x, y) for x in st.reachable_in for y in s.outcomes[v] if y not in out_set
        }
        if set(st.forbidden) != expect_forbidden:
            return False
        for x, y in st.forbidden:
            if _oriented_possible(pb, ci, st.context, (x, y)):
                return False
        prev_vertex = v
        prev_reach = tuple(st.reachable_out)
    if prev_vertex != cert.base_context[0]:
        return False
    return a not in prev_reach


def _scan_cycle(pb: PossibilisticBehavior) -> ParadoxCertificate | None:
    """Reachable-set scan over every base context and witness pair.

    Assumes the scenario is a single cycle and pb is possibilistically ND;
    bases run in stored context order, witness pairs lexicographically in
    the traversal orientation, and the first paradox found is returned.
    """
    s = pb.scenario
    order = traverse_cycle(s)
    n = len(order)
    pos_of = {stored: walk for walk, (stored, _) in enumerate(order)}

    for base in range(n):
        walk_start = pos_of[base]
        _, (u, v) = order[walk_start]
        for a, b_out in itertools.product(s.outcomes[u], s.outcomes[v]):
            if not _oriented_possible(pb, base, (u, v), (a, b_out)):
                continue
            reach = (b_out,)
            steps = []
            for j in range(1, n):
                ci, (x_m, y_m) = order[(walk_start + j) % n]
                outs = s.outcomes[y_m]
                image = tuple(
                    y
                    for y in outs
                    if any(_oriented_possible(pb, ci, (x_m, y_m), (x, y)) for x in reach)
                )
                forbidden = tuple(
                    (x, y) for x in reach for y in outs if y not in image
                )
                steps.append(
                    ChainStep(
                        context_index=ci + 1,
                        context=(x_m, y_m),
                        reachable_in=reach,
                        forbidden=forbidden,
                        reachable_out=image,
                    )
                )
                reach = image
            if a not in reach:
                return ParadoxCertificate(
                    base_context_index=base + 1,
                    base_context=(u, v),
                    witness_pair=(a, b_out),
                    chain=tuple(steps),
                )
    return None


def detect_cycle_paradox(b: AnyBehavior) -> ParadoxCertificate | None:
    """Find a possibilistic paradox on a single-cycle scenario, any outcome
    count.

    Returns the first certificate in canonical order (base context index,
    then lexicographic witness pair), or None; None means the behavior is
    not logically contextual, because on cycles the reachability argument is
    exhaustive over possible pairs.

    :raises NotCycle: if the compatibility graph is not one single cycle.
    :raises NotPossibilisticallyND: if OR-marginals of overlapping contexts
        disagree.
    """
    pb = _as_possibilistic(b)
    traverse_cycle(pb.scenario)
    report = check_possibilistic_nd(pb)
    if not report.ok:
        v = report.violation
        raise NotPossibilisticallyND(
            f"contexts {pb.scenario.contexts[v.context_a]} and "
            f"{pb.scenario.contexts[v.context_b]} disagree on possibility of "
            f"{v.measurements}={v.outcomes}"
        )
    return _scan_cycle(pb)


@dataclass(frozen=True)
class SimpleScenarioParadox:
    """A paradox found on one chordless cycle of a simple scenario.

    The certificate's context indices refer to the original scenario's
    stored contexts, so it verifies directly against the behavior that was
    scanned; cycle records which chordless cycle carried the paradox.
    """

    certificate: ParadoxCertificate
    cycle: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {"cycle": list(self.cycle), **self.certificate.to_json_dict()}


def _restrict_to_cycle(pb: PossibilisticBehavior, cycle: tuple[str, ...]) -> PossibilisticBehavior:
    s = pb.scenario
    by_set = {frozenset(c): i for i, c in enumerate(s.contexts)}
    contexts = []
    tables = []
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        ci = by_set[frozenset((u, v))]
        contexts.append((u, v))
        stored = s.contexts[ci]
        table = []
        for x in s.outcomes[u]:
            for y in s.outcomes[v]:
                ordered = (x, y) if stored == (u, v) else (y, x)
                table.append(pb.tables[ci][cell_index(s, stored, ordered)])
        tables.append(tuple(table))
    sub = Scenario(cycle, {m: s.outcomes[m] for m in cycle}, tuple(contexts))
    return PossibilisticBehavior(sub, tuple(tables))


def detect_simple_scenario_paradox(b: AnyBehavior) -> SimpleScenarioParadox | None:
    """Decide logical contextuality of a dichotomic simple scenario by
    scanning its chordless cycles.

    Restricts the behavior to each chordless cycle in canonical order and
    runs the cycle detector; the first hit is returned. None on acyclic
    scenarios (no cycles, hence never logically contextual) and on behaviors
    whose every cycle restriction is paradox-free.

    :raises NonSimpleScenario: if some context is not a pair.
    :raises NonDichotomic: if some measurement has more than two outcomes
        (the cycle-scan reduction is only exhaustive for two).
    :raises NotPossibilisticallyND: if the behavior itself disturbs.
    """
    pb = _as_possibilistic(b)
    s = pb.scenario
    decomposition = chordless_cycles(s)  # raises NonSimpleScenario
    for m in s.measurements:
        if len(s.outcomes[m]) != 2:
            raise NonDichotomic(f"measurement {m!r} has {len(s.outcomes[m])} outcomes, need 2")
    report = check_possibilistic_nd(pb)
    if not report.ok:
        v = report.violation
        raise NotPossibilisticallyND(
            f"contexts {s.contexts[v.context_a]} and {s.contexts[v.context_b]} disagree "
            f"on possibility of {v.measurements}={v.outcomes}"
        )
    by_set = {frozenset(c): i for i, c in enumerate(s.contexts)}
    for cycle in decomposition.cycles:
        # A restriction of a possibilistically-ND behavior to a subfamily of
        # its contexts is still possibilistically ND, so no recheck here.
        sub = _restrict_to_cycle(pb, cycle)
        cert = _scan_cycle(sub)
        if cert is not None:
            # Re-index from the cycle restriction to the parent's contexts so
            # the certificate verifies against the behavior it was asked about.
            return SimpleScenarioParadox(
                certificate=ParadoxCertificate(
                    base_context_index=by_set[frozenset(cert.base_context)] + 1,
                    base_context=cert.base_context,
                    witness_pair=cert.witness_pair,
                    chain=tuple(
                        ChainStep(
                            context_index=by_set[frozenset(st.context)] + 1,
                            context=st.context,
                            reachable_in=st.reachable_in,
                            forbidden=st.forbidden,
                            reachable_out=st.reachable_out,
                        )
                        for st in cert.chain
                    ),
                ),
                cycle=cycle,
            )
    return None


@dataclass(frozen=True)
class BellParadox:
    """A paradox on a bipartite Bell scenario, in Alice/Bob index form.

    The witness pair is possible in context {A_i, B_j} with Alice outcome a
    and Bob outcome b; the impossibility chain runs through A_m and B_l
    (i != m, j != l). certificate and cycle are the generic detector's
    output for the underlying 4-cycle.
    """

    i: int
    j: int
    m: int
    l: int
    alice_outcome: str
    bob_outcome: str
    certificate: ParadoxCertificate
    cycle: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "m": self.m,
            "l": self.l,
            "alice_outcome": self.alice_outcome,
            "bob_outcome": self.bob_outcome,
            "cycle": list(self.cycle),
            **self.certificate.to_json_dict(),
        }


def _bell_parts(s: Scenario) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Split a complete-bipartite simple scenario into (Alice, Bob) parts.

    The part containing the first measurement is Alice's. Raises
    WrongScenarioShape unless the compatibility graph is K_{k,k} with
    k >= 2 and contexts are exactly the cross pairs.
    """
    if not s.is_simple:
        raise WrongScenarioShape("contexts must be pairs")
    adj: dict[str, set[str]] = {m: set() for m in s.measurements}
    for u, v in s.contexts:
        adj[u].add(v)
        adj[v].add(u)
    color: dict[str, int] = {}
    queue = [s.measurements[0]]
    color[s.measurements[0]] = 0
    while queue:
        x = queue.pop()
        for y in adj[x]:
            if y not in color:
                color[y] = 1 - color[x]
                queue.append(y)
            elif color[y] == color[x]:
                raise WrongScenarioShape("compatibility graph is not bipartite")
    if len(color) != len(s.measurements):
        raise WrongScenarioShape("compatibility graph is not connected")
    alice = tuple(m for m in s.measurements if color[m] == 0)
    bob = tuple(m for m in s.measurements if color[m] == 1)
    if len(alice) != len(bob) or len(alice) < 2:
        raise WrongScenarioShape(f"parts have sizes {len(alice)} and {len(bob)}, need equal k >= 2")
    if len(s.contexts) != len(alice) * len(bob):
        raise WrongScenarioShape("contexts must be every Alice-Bob pair")
    return alice, bob


def detect_bell22_paradox(b: AnyBehavior) -> BellParadox | None:
    """The simple-scenario detector on a dichotomic bipartite Bell scenario,
    reported as Alice/Bob indices.

    :raises WrongScenarioShape: if the scenario is not complete-bipartite
        with equal parts, or some measurement is not dichotomic.
    """
    pb = _as_possibilistic(b)
    s = pb.scenario
    alice, bob = _bell_parts(s)
    for m in s.measurements:
        if len(s.outcomes[m]) != 2:
            raise WrongScenarioShape(f"measurement {m!r} has {len(s.outcomes[m])} outcomes, need 2")
    hit = detect_simple_scenario_paradox(pb)
    if hit is None:
        return None
    cert, cycle = hit.certificate, hit.cycle
    u, v = cert.base_context
    a, b_out = cert.witness_pair
    others = [x for x in cycle if x not in (u, v)]
    if u in alice:
        i, j = alice.index(u) + 1, bob.index(v) + 1
        alice_out, bob_out = a, b_out
    else:
        j, i = bob.index(u) + 1, alice.index(v) + 1
        bob_out, alice_out = a, b_out
    m_idx = next(alice.index(x) + 1 for x in others if x in alice)
    l_idx = next(bob.index(x) + 1 for x in others if x in bob)
    return BellParadox(
        i=i,
        j=j,
        m=m_idx,
        l=l_idx,
        alice_outcome=alice_out,
        bob_outcome=bob_out,
        certificate=cert,
        cycle=cycle,
    )


@dataclass(frozen=True)
class ChenParadox:
    """An order-based paradox on a 4-cycle with totally ordered outcomes.

    In the base context some strictly increasing pair is possible, while in
    the three following contexts (cycle order) every strictly decreasing
    pair is impossible; that forces logical contextuality. witness_pair is
    the first possible increasing pair of the base context.
    """

    base_context_index: int
    witness_pair: tuple[str, str]

    def to_json_dict(self) -> dict:
        return {
            "base_context_index": self.base_context_index,
            "witness_pair": list(self.witness_pair),
        }


def detect_chen_paradox(b: AnyBehavior) -> ChenParadox | None:
    """Look for the order paradox on a 4-cycle whose measurements share one
    totally ordered outcome set (order = position in the outcome tuple).

    :raises WrongScenarioShape: unless the scenario is a 4-cycle and all
        outcome tuples have equal length.
    """
    pb = _as_possibilistic(b)
    s = pb.scenario
    try:
        order = traverse_cycle(s)
    except NotCycle as exc:
        raise WrongScenarioShape(str(exc)) from exc
    if len(order) != 4:
        raise WrongScenarioShape(f"need a 4-cycle, got {len(order)} contexts")
    sizes = {len(s.outcomes[m]) for m in s.measurements}
    if len(sizes) != 1:
        raise WrongScenarioShape(f"outcome counts differ across measurements: {sorted(sizes)}")

    def ordered_pairs(walk_pos: int, increasing: bool):
        ci, (u, v) = order[walk_pos]
        for xi, x in enumerate(s.outcomes[u]):
            for yi, y in enumerate(s.outcomes[v]):
                if (xi < yi) if increasing else (xi > yi):
                    yield ci, (u, v), (x, y)

    for p in range(4):
        witness = next(
            (
                pair
                for ci, ctx, pair in ordered_pairs(p, increasing=True)
                if _oriented_possible(pb, ci, ctx, pair)
            ),
            None,
        )
        if witness is None:
            continue
        if any(
            _oriented_possible(pb, ci, ctx, pair)
            for q in (p + 1, p + 2, p + 3)
            for ci, ctx, pair in ordered_pairs(q % 4, increasing=False)
        ):
            continue
        return ChenParadox(base_context_index=order[p][0] + 1, witness_pair=witness)
    return None


# -- strong contextuality on dichotomic cycles --------------------------------


@dataclass(frozen=True)
class PrBoxForm:
    """The PR-box normal form of a strongly contextual dichotomic cycle.

    Relative to the reference assignment (one outcome label per measurement,
    cycle order), every context is perfectly correlated except the one at
    flip_context_index (1-based stored index), which is perfectly
    anticorrelated. The representation is canonical but not unique: any
    context can play the flip role (with the assignment re-walked
    accordingly), and the complement of the assignment works too; this form
    fixes the smallest flip index and starts the walk at the first
    measurement's first outcome label.
    """

    flip_context_index: int
    measurements: tuple[str, ...]
    assignment: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "flip_context_index": self.flip_context_index,
            "measurements": list(self.measurements),
            "assignment": list(self.assignment),
        }


def _xor_type(pb: PossibilisticBehavior, ci: int) -> str | None:
    """'E' if possibles are exactly {(0,0),(1,1)} by outcome index, 'N' for
    {(0,1),(1,0)}, None otherwise. Orientation-independent."""
    table = pb.tables[ci]
    if table == (True, False, False, True):
        return "E"
    if table == (False, True, True, False):
        return "N"
    return None


def classify_strong_contextuality(b: AnyBehavior) -> PrBoxForm | None:
    """Recognize strong contextuality of a dichotomic cycle behavior by its
    PR-box structure.

    A possibilistically-ND dichotomic cycle behavior is strongly contextual
    exactly when every context has two complement-closed possible outcomes
    and the unequal-pair contexts are odd in number; the normal form is then
    read off by walking the cycle. Returns None for every other behavior.

    :raises NotCycle: if the scenario is not a single cycle.
    :raises NonDichotomic: if some measurement is not two-outcome.
    :raises NotPossibilisticallyND: if the behavior disturbs.
    """
    pb = _as_possibilistic(b)
    s = pb.scenario
    order = traverse_cycle(s)
    for m in s.measurements:
        if len(s.outcomes[m]) != 2:
            raise NonDichotomic(f"measurement {m!r} has {len(s.outcomes[m])} outcomes, need 2")
    report = check_possibilistic_nd(pb)
    if not report.ok:
        v = report.violation
        raise NotPossibilisticallyND(
            f"contexts {s.contexts[v.context_a]} and {s.contexts[v.context_b]} disagree "
            f"on possibility of {v.measurements}={v.outcomes}"
        )
    types = {}
    for ci in range(len(s.contexts)):
        t = _xor_type(pb, ci)
        if t is None:
            return None
        types[ci] = t
    if sum(1 for t in types.values() if t == "N") % 2 == 0:
        return None
    flip = min(ci for ci, t in types.items() if t == "N")

    measurements = tuple(pair[0] for _, pair in order)
    bits = {measurements[0]: 0}
    for walk in range(len(order)):
        ci, (u, v) = order[walk]
        t_bit = 1 if types[ci] == "N" else 0
        nxt = bits[u] ^ t_bit ^ (1 if ci == flip else 0)
        if v in bits:
            assert bits[v] == nxt, "odd-parity walk must close"
        else:
            bits[v] = nxt
    assignment = tuple(s.outcomes[m][bits[m]] for m in measurements)
    return PrBoxForm(flip_context_index=flip + 1, measurements=measurements, assignment=assignment)


def pr_box_behavior(
    scenario: Scenario, flip_context_index: int, assignment=None
) -> PossibilisticBehavior:
    """Build the strongly contextual table with one anticorrelated context.

    Relative to the assignment (outcome labels in cycle order, default all
    first labels), the context at flip_context_index (1-based stored index)
    allows exactly the two pairs disagreeing with it on one side, and every
    other context allows exactly the agreeing pairs. Any choice produces a
    strongly contextual behavior; Table 3's PR box is the 4-cycle with the
    last context flipped.

    :raises NotCycle: if the scenario is not a single cycle.
    :raises NonDichotomic: if some measurement is not two-outcome.
    """
    order = traverse_cycle(scenario)
    s = scenario
    for m in s.measurements:
        if len(s.outcomes[m]) != 2:
            raise NonDichotomic(f"measurement {m!r} has {len(s.outcomes[m])} outcomes, need 2")
    n = len(order)
    if not 1 <= flip_context_index <= n:
        raise ValueError(f"flip_context_index must be in 1..{n}, got {flip_context_index}")
    measurements = tuple(pair[0] for _, pair in order)
    if assignment is None:
        assignment = tuple(s.outcomes[m][0] for m in measurements)
    assignment = tuple(str(a) for a in assignment)
    if len(assignment) != n:
        raise ValueError(f"assignment needs {n} entries, got {len(assignment)}")
    bit = {
        m: s.outcomes[m].index(a) for m, a in zip(measurements, assignment)
    }
    tables: list[tuple[bool, ...] | None] = [None] * n
    for ci, (u, v) in order:
        flip = 1 if ci == flip_context_index - 1 else 0
        # pairs (x, y) with x ^ bit[u] == y ^ bit[v] ^ flip are possible
        stored = s.contexts[ci]
        table = []
        for x in (0, 1):
            for y in (0, 1):
                if stored == (u, v):
                    xu, yv = x, y
                else:
                    xu, yv = y, x
                table.append((xu ^ bit[u]) == (yv ^ bit[v]) ^ flip)
        tables[ci] = tuple(table)
    return PossibilisticBehavior(s, tuple(tables))
