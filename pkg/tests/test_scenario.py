"""Scenario construction, the standard families, and cycle enumeration."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contextuality import (
    InvalidScenario,
    NonSimpleScenario,
    NotCycle,
    Scenario,
    chordless_cycles,
    load_scenario,
    make_bipartite_bell,
    make_n_cycle,
    traverse_cycle,
)
from oracle import brute_induced_cycle_count


def square_with_chord() -> Scenario:
    """4-cycle plus one diagonal context."""
    names = ("M1", "M2", "M3", "M4")
    return Scenario(
        names,
        {m: ("0", "1") for m in names},
        (("M1", "M2"), ("M2", "M3"), ("M3", "M4"), ("M4", "M1"), ("M1", "M3")),
    )


# ============================================================
# 1. Construction and validation
# ============================================================

class TestScenarioValidation:
    def test_minimal_valid(self):
        s = Scenario(("A",), {"A": ("0", "1")}, (("A",),))
        assert s.measurements == ("A",)
        assert s.context_cells(0) == 2

    @pytest.mark.parametrize(
        "measurements, outcomes, contexts",
        [
            ((), {}, ()),
            (("A", "A"), {"A": ("0", "1")}, (("A",),)),
            (("A",), {}, (("A",),)),
            (("A",), {"A": ("0",)}, (("A",),)),
            (("A",), {"A": ("0", "0")}, (("A",),)),
            (("A",), {"A": ("0", "1")}, ()),
            (("A", "B"), {"A": ("0", "1"), "B": ("0", "1")}, (("A",),)),
            (("A",), {"A": ("0", "1")}, (("A", "B"),)),
            (("A", "B"), {"A": ("0", "1"), "B": ("0", "1")}, (("A", "A"), ("A", "B"))),
            (("A", "B"), {"A": ("0", "1"), "B": ("0", "1")}, (("A",), ("A", "B"))),
        ],
    )
    def test_invalid_structures(self, measurements, outcomes, contexts):
        with pytest.raises(InvalidScenario):
            Scenario(measurements, outcomes, contexts)

    def test_context_order_is_preserved(self):
        s = Scenario(
            ("A", "B"), {"A": ("0", "1"), "B": ("0", "1")}, (("B", "A"),)
        )
        assert s.contexts[0] == ("B", "A")

    def test_outcome_index_unknown_label(self):
        s = make_n_cycle(3)
        with pytest.raises(InvalidScenario):
            s.outcome_index("M1", "7")


# ============================================================
# 2. Standard families
# ============================================================

class TestFamilies:
    @pytest.mark.parametrize("n", [3, 4, 5, 8])
    def test_n_cycle_shape(self, n):
        s = make_n_cycle(n)
        assert len(s.measurements) == n
        assert len(s.contexts) == n
        assert s.contexts[-1] == (f"M{n}", "M1"), "last context wraps to M1"
        assert s.is_simple

    def test_n_cycle_outcome_count(self):
        s = make_n_cycle(4, 3)
        assert all(s.outcomes[m] == ("0", "1", "2") for m in s.measurements)

    @pytest.mark.parametrize("n, l", [(2, 2), (3, 1)])
    def test_n_cycle_rejects_small(self, n, l):
        with pytest.raises(InvalidScenario):
            make_n_cycle(n, l)

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_bipartite_bell_shape(self, k):
        s = make_bipartite_bell(k)
        assert len(s.measurements) == 2 * k
        assert len(s.contexts) == k * k
        # contexts run Alice-major: (A1,B1), (A1,B2), ..., (A2,B1), ...
        assert s.contexts[0] == ("A1", "B1")
        assert s.contexts[k] == ("A2", "B1")

    def test_json_round_trip(self, tmp_path):
        s = make_bipartite_bell(3)
        again = Scenario.from_json_dict(s.to_json_dict())
        assert again == s
        path = tmp_path / "scenario.json"
        path.write_text(__import__("json").dumps(s.to_json_dict()))
        assert load_scenario(path) == s


# ============================================================
# 3. Chordless cycle enumeration
# ============================================================

class TestChordlessCycles:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_single_cycle(self, n):
        dec = chordless_cycles(make_n_cycle(n))
        assert len(dec.cycles) == 1
        assert not dec.is_acyclic
        assert set(dec.cycles[0]) == set(make_n_cycle(n).measurements)

    @pytest.mark.parametrize("k, count", [(2, 1), (3, 9), (4, 36)])
    def test_bipartite_bell_counts(self, k, count):
        # K_{k,k} has (k choose 2)^2 induced 4-cycles and nothing longer
        dec = chordless_cycles(make_bipartite_bell(k))
        assert len(dec.cycles) == count
        assert all(len(c) == 4 for c in dec.cycles)

    def test_tree_has_none(self):
        names = ("M1", "M2", "M3", "M4")
        s = Scenario(
            names,
            {m: ("0", "1") for m in names},
            (("M1", "M2"), ("M2", "M3"), ("M2", "M4")),
        )
        dec = chordless_cycles(s)
        assert dec.cycles == ()
        assert dec.is_acyclic

    def test_square_with_chord(self):
        # the diagonal splits the square into two triangles; the square
        # itself has a chord and must not be reported
        dec = chordless_cycles(square_with_chord())
        assert len(dec.cycles) == 2
        assert all(len(c) == 3 for c in dec.cycles)

    def test_rejects_non_simple(self):
        s = Scenario(
            ("A", "B", "C"),
            {m: ("0", "1") for m in "ABC"},
            (("A", "B", "C"),),
        )
        with pytest.raises(NonSimpleScenario):
            chordless_cycles(s)

    @given(st.integers(0, 10_000))
    @settings(max_examples=60, deadline=None)
    def test_count_matches_brute_force(self, seed):
        """On random graphs, the enumerator finds exactly the vertex subsets
        that induce a cycle (each chordless cycle is determined by its
        vertex set)."""
        rng = random.Random(seed)
        n = rng.randint(3, 7)
        pairs = list(itertools.combinations(range(n), 2))
        edges = {frozenset(p) for p in pairs if rng.random() < 0.45}
        # make sure every vertex is covered so the scenario is valid
        for v in range(n):
            if not any(v in e for e in edges):
                other = (v + 1) % n
                edges.add(frozenset((v, other)))
        names = tuple(f"M{i}" for i in range(n))
        contexts = tuple(
            (names[min(e)], names[max(e)]) for e in sorted(edges, key=sorted)
        )
        s = Scenario(names, {m: ("0", "1") for m in names}, contexts)
        dec = chordless_cycles(s)
        assert len(dec.cycles) == brute_induced_cycle_count(n, edges), (
            f"graph with edges {sorted(map(sorted, edges))}"
        )
        assert len({frozenset(c) for c in dec.cycles}) == len(dec.cycles)


# ============================================================
# 4. Cycle traversal
# ============================================================

class TestTraverseCycle:
    def test_orientation_starts_at_first_context(self):
        s = make_n_cycle(5)
        order = traverse_cycle(s)
        assert order[0] == (0, ("M1", "M2"))
        assert [idx for idx, _ in order] == [0, 1, 2, 3, 4]
        # consecutive oriented pairs chain head to tail and close up
        for (_, (u, v)), (_, (u2, _)) in zip(order, order[1:]):
            assert v == u2
        assert order[-1][1][1] == order[0][1][0]

    def test_traversal_follows_stored_orientation_of_first_context(self):
        names = ("X", "Y", "Z")
        s = Scenario(
            names,
            {m: ("0", "1") for m in names},
            (("Y", "X"), ("X", "Z"), ("Z", "Y")),
        )
        order = traverse_cycle(s)
        assert order[0] == (0, ("Y", "X"))

    @pytest.mark.parametrize(
        "contexts",
        [
            (("M1", "M2"), ("M2", "M3"), ("M2", "M4")),  # tree
            (("M1", "M2"), ("M2", "M3"), ("M3", "M4"), ("M4", "M1"), ("M1", "M3")),  # chord
            (("M1", "M2", "M3"), ("M3", "M4")),  # non-simple
        ],
    )
    def test_rejects_non_cycles(self, contexts):
        names = ("M1", "M2", "M3", "M4")
        s = Scenario(names, {m: ("0", "1") for m in names}, contexts)
        with pytest.raises(NotCycle):
            traverse_cycle(s)
