"""The ctx command line: JSON contracts, exit codes, file round-trips."""

import json
import math
from fractions import Fraction

import pytest

from contextuality import (
    behavior_from_json_dict,
    behavior_to_json_dict,
    collapse,
    fixture,
    hardy_probability,
)
from contextuality.cli import run
from contextuality.quantum import HARDY_TSIRELSON


@pytest.fixture
def hardy_file(tmp_path):
    path = tmp_path / "hardy.json"
    path.write_text(json.dumps(behavior_to_json_dict(fixture("hardy"))))
    return str(path)


@pytest.fixture
def bell_file(tmp_path):
    path = tmp_path / "bell.json"
    path.write_text(json.dumps(behavior_to_json_dict(fixture("bell"))))
    return str(path)


@pytest.fixture
def pr_file(tmp_path):
    path = tmp_path / "pr.json"
    path.write_text(json.dumps(behavior_to_json_dict(fixture("pr-box"))))
    return str(path)


@pytest.fixture
def hardy_possibilistic_file(tmp_path):
    path = tmp_path / "hardy_pp.json"
    path.write_text(json.dumps(behavior_to_json_dict(collapse(fixture("hardy")))))
    return str(path)


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


# ======================================================================
# 1. check
# ======================================================================


class TestCheck:
    def test_full_report(self, capsys, hardy_file):
        code, data = run_json(capsys, ["check", "--behavior", hardy_file])
        assert code == 0
        assert data == {
            "nd": True,
            "nc": False,
            "lc": True,
            "sc": False,
            "witness": {"context": ["A1", "B1"], "outcome": ["1", "1"]},
            "support_size": 5,
        }

    def test_level_lc_filters_keys(self, capsys, hardy_file):
        code, data = run_json(capsys, ["check", "--behavior", hardy_file, "--level", "lc"])
        assert code == 0
        assert data == {
            "lc": True,
            "witness": {"context": ["A1", "B1"], "outcome": ["1", "1"]},
        }

    def test_level_nd(self, capsys, bell_file):
        code, data = run_json(capsys, ["check", "--behavior", bell_file, "--level", "nd"])
        assert code == 0
        assert data == {"nd": True}

    def test_level_nc(self, capsys, bell_file):
        code, data = run_json(capsys, ["check", "--behavior", bell_file, "--level", "nc"])
        assert code == 0
        assert data == {"nc": True}

    def test_level_sc(self, capsys, pr_file):
        code, data = run_json(capsys, ["check", "--behavior", pr_file, "--level", "sc"])
        assert code == 0
        assert data == {"sc": True, "support_size": 0}

    def test_disturbing_input_reports_failed_gate(self, capsys, tmp_path):
        payload = {
            "scenario": {
                "measurements": ["M1", "M2", "M3"],
                "outcomes": {"M1": ["0", "1"], "M2": ["0", "1"], "M3": ["0", "1"]},
                "contexts": [["M1", "M2"], ["M2", "M3"], ["M3", "M1"]],
            },
            "tables": [
                {"context": ["M1", "M2"], "probs": {"0,0": "1/4", "1,1": "3/4"}},
                {"context": ["M2", "M3"], "probs": {"0,0": "1/4", "0,1": "1/4", "1,0": "1/4", "1,1": "1/4"}},
                {"context": ["M3", "M1"], "probs": {"0,0": "1/4", "0,1": "1/4", "1,0": "1/4", "1,1": "1/4"}},
            ],
        }
        path = tmp_path / "disturb.json"
        path.write_text(json.dumps(payload))
        code, data = run_json(capsys, ["check", "--behavior", str(path), "--level", "lc"])
        assert code == 0
        assert data["nd"] is False
        assert data["lc"] is None

    def test_cap_exceeded_exits_2(self, capsys, bell_file):
        assert run(["check", "--behavior", bell_file, "--cap", "8"]) == 2
        assert "cap" in capsys.readouterr().err

    def test_env_cap_junk_exits_3(self, capsys, bell_file, monkeypatch):
        monkeypatch.setenv("CTX_CAP", "many")
        assert run(["check", "--behavior", bell_file]) == 3

    def test_missing_file_exits_3(self, capsys, tmp_path):
        assert run(["check", "--behavior", str(tmp_path / "nope.json")]) == 3

    def test_malformed_json_exits_3(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert run(["check", "--behavior", str(path)]) == 3


# ======================================================================
# 2. pp find
# ======================================================================


class TestPpFind:
    def test_certificate_json(self, capsys, hardy_file):
        code, data = run_json(capsys, ["pp", "find", "--behavior", hardy_file])
        assert code == 0
        assert data["base_context_index"] == 1
        assert data["witness"] == ["1", "1"]
        assert len(data["chain"]) == 3

    def test_no_paradox_exits_1(self, capsys, bell_file):
        code, data = run_json(capsys, ["pp", "find", "--behavior", bell_file])
        assert code == 1
        assert data is None

    def test_text_format(self, capsys, hardy_file):
        code = run(["pp", "find", "--behavior", hardy_file, "--format", "text"])
        out = capsys.readouterr().out
        assert code == 0
        assert "paradox at context 1" in out
        assert "('1', '1')" in out

    def test_text_none(self, capsys, bell_file):
        code = run(["pp", "find", "--behavior", bell_file, "--format", "text"])
        assert code == 1
        assert capsys.readouterr().out.strip() == "none"

    def test_possibilistic_input(self, capsys, hardy_possibilistic_file):
        code, data = run_json(
            capsys, ["pp", "find", "--behavior", hardy_possibilistic_file, "--possibilistic"]
        )
        assert code == 0
        assert data["witness"] == ["1", "1"]

    def test_flag_and_payload_must_agree(self, capsys, hardy_file, hardy_possibilistic_file):
        assert run(["pp", "find", "--behavior", hardy_file, "--possibilistic"]) == 3
        assert run(["pp", "find", "--behavior", hardy_possibilistic_file]) == 3

    def test_simple_scenario_fallback(self, capsys, tmp_path):
        # A behavior whose scenario is not a single cycle lands in the
        # chordless-cycle detector and reports which cycle fired. K_{3,3}
        # with a possibilistic Hardy square planted on A1 B1 A2 B2.
        names = [f"A{i}" for i in (1, 2, 3)] + [f"B{i}" for i in (1, 2, 3)]
        scenario = {
            "measurements": names,
            "outcomes": {m: ["0", "1"] for m in names},
            "contexts": [[a, b] for a in names[:3] for b in names[3:]],
        }
        full = [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]
        holes = {
            ("A2", "B1"): ["0", "1"],  # B1=1, A2=0 impossible
            ("A2", "B2"): ["1", "1"],
            ("A1", "B2"): ["1", "0"],  # B2=0, A1=1 impossible
        }
        tables = []
        for a in names[:3]:
            for b in names[3:]:
                hole = holes.get((a, b))
                tables.append(
                    {
                        "context": [a, b],
                        "possible": [cell for cell in full if cell != hole],
                    }
                )
        path = tmp_path / "bell33_pp.json"
        path.write_text(json.dumps({"scenario": scenario, "tables": tables}))
        code, data = run_json(capsys, ["pp", "find", "--behavior", str(path), "--possibilistic"])
        assert code == 0
        assert data["cycle"] == ["A1", "B1", "A2", "B2"]
        assert data["witness"] == ["1", "1"]


# ======================================================================
# 3. ineq
# ======================================================================


class TestIneq:
    def test_pr_box_report(self, capsys, pr_file):
        code, data = run_json(capsys, ["ineq", "--behavior", pr_file])
        assert code == 0
        assert data["max_value"] == "4"
        assert data["signs"] == [1, 1, 1, -1]
        assert data["violates_classical"] is True
        assert data["violates_quantum"] is True

    def test_bell_respects_bound(self, capsys, bell_file):
        code, data = run_json(capsys, ["ineq", "--behavior", bell_file])
        assert code == 0
        assert data["violates_classical"] is False

    def test_non_cycle_exits_3(self, capsys, tmp_path):
        payload = {
            "scenario": {
                "measurements": ["M1", "M2"],
                "outcomes": {"M1": ["0", "1"], "M2": ["0", "1"]},
                "contexts": [["M1", "M2"]],
            },
            "tables": [
                {"context": ["M1", "M2"], "probs": {"0,0": "1/2", "1,1": "1/2"}}
            ],
        }
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(payload))
        assert run(["ineq", "--behavior", str(path)]) == 3


# ======================================================================
# 4. quantum and gamma
# ======================================================================


class TestQuantum:
    def test_odd_defaults_emit_symmetric_point(self, capsys):
        code, data = run_json(capsys, ["quantum", "ncycle", "--n", "5"])
        assert code == 0
        b = behavior_from_json_dict(data)
        assert b.tables[0][1] == Fraction(1, 9)

    def test_even_writes_file(self, capsys, tmp_path):
        out = tmp_path / "n4.json"
        code, data = run_json(
            capsys,
            ["quantum", "ncycle", "--n", "4", "--alpha", "0.3", "--out", str(out)],
        )
        assert code == 0
        assert data["written"] == str(out)
        assert data["witness"] == pytest.approx(hardy_probability(4, 0.3), abs=1e-9)
        reloaded = behavior_from_json_dict(json.loads(out.read_text()))
        assert float(reloaded.tables[0][3]) == pytest.approx(data["witness"], abs=1e-9)

    def test_odd_theta_round_trip(self, capsys, tmp_path):
        out = tmp_path / "n7.json"
        code, data = run_json(
            capsys,
            [
                "quantum", "ncycle", "--n", "7",
                "--theta", "0.8,1.1",
                "--eta", "0.3,0.2,0.9",
                "--v3", "0.8,0.1,0.6",
                "--out", str(out),
            ],
        )
        assert code == 0
        b = behavior_from_json_dict(json.loads(out.read_text()))
        assert len(b.scenario.contexts) == 7
        for ci in range(7):
            assert b.tables[ci][3] == 0

    @pytest.mark.parametrize(
        "argv",
        [
            ["quantum", "ncycle", "--n", "5", "--alpha", "0.3"],
            ["quantum", "ncycle", "--n", "4", "--theta", "0.5"],
            ["quantum", "ncycle", "--n", "7", "--theta", "0.5"],
            ["quantum", "ncycle", "--n", "4", "--alpha", "0.0"],
            ["quantum", "ncycle", "--n", "5", "--eta", "1,0"],
        ],
        ids=["alpha-on-odd", "theta-on-even", "theta-count", "alpha-endpoint", "eta-count"],
    )
    def test_bad_parameters_exit_3(self, capsys, argv):
        assert run(argv) == 3


class TestGamma:
    def test_even_four(self, capsys):
        code, data = run_json(capsys, ["gamma", "--n", "4"])
        assert code == 0
        assert data["gamma"] == pytest.approx(HARDY_TSIRELSON, abs=1e-9)
        assert data["params"]["n"] == 4
        assert 0 < data["params"]["alpha"] < math.pi / 4

    def test_odd_five_small_budget(self, capsys):
        code, data = run_json(capsys, ["gamma", "--n", "5", "--restarts", "2", "--seed", "0"])
        assert code == 0
        assert set(data) == {"n", "gamma", "params", "trace", "notes"}
        assert len(data["trace"]) == 2
        assert data["gamma"] <= 1 / 9 + 1e-9

    def test_bad_n_exits_3(self, capsys):
        assert run(["gamma", "--n", "3"]) == 3


# ======================================================================
# 5. bundle and fixtures
# ======================================================================


class TestBundle:
    def test_json_edges(self, capsys, hardy_file):
        code, data = run_json(capsys, ["bundle", "--behavior", hardy_file])
        assert code == 0
        assert len(data["edges"]) == 13
        dead = [e for e in data["edges"] if not e["in_some_loop"]]
        assert dead == [
            {"context": 1, "left": ["A1", "1"], "right": ["B1", "1"], "in_some_loop": False}
        ]

    def test_dot_output(self, capsys, pr_file):
        code = run(["bundle", "--behavior", pr_file, "--format", "dot"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("graph bundle {")
        assert out.count("style=dashed") == 8

    def test_possibilistic_input(self, capsys, hardy_possibilistic_file):
        code, data = run_json(
            capsys, ["bundle", "--behavior", hardy_possibilistic_file, "--possibilistic"]
        )
        assert code == 0
        assert len(data["edges"]) == 13

    def test_cap_exits_2(self, capsys, hardy_file):
        assert run(["bundle", "--behavior", hardy_file, "--cap", "4"]) == 2


class TestFixtures:
    @pytest.mark.parametrize("name", ["bell", "hardy", "pr-box", "cabello5", "hardy4"])
    def test_every_fixture_emits_loadable_json(self, capsys, name):
        code, data = run_json(capsys, ["fixtures", "--name", name])
        assert code == 0
        b = behavior_from_json_dict(data)
        assert b.scenario.measurements

    def test_out_file(self, capsys, tmp_path):
        out = tmp_path / "pr.json"
        code, data = run_json(capsys, ["fixtures", "--name", "pr-box", "--out", str(out)])
        assert code == 0
        assert data == {"written": str(out), "name": "pr-box"}
        assert json.loads(out.read_text())["tables"]

    def test_unknown_name_exits_3(self, capsys):
        assert run(["fixtures", "--name", "frobnicate"]) == 3


# ======================================================================
# 6. Top-level argument handling
# ======================================================================


class TestArgHandling:
    def test_unknown_command_exits_3(self, capsys):
        assert run(["frobnicate"]) == 3

    def test_no_command_exits_3(self, capsys):
        assert run([]) == 3

    def test_help_exits_0(self, capsys):
        assert run(["--help"]) == 0
        assert "check" in capsys.readouterr().out
