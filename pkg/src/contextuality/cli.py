"""Command-line surface: `ctx` with subcommands check, pp, ineq, quantum,
gamma, bundle, and fixtures.

Machine-readable JSON goes to stdout, diagnostics to stderr. Exit codes:
0 for a decided answer (for `pp find`, a certificate), 1 for `pp find`
when no paradox exists, 2 when the enumeration cap is exceeded, 3 for
invalid input of any kind.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .behavior import (
    Behavior,
    PossibilisticBehavior,
    behavior_from_json_dict,
    behavior_to_json_dict,
)
from .bundle import build_bundle
from .classical import hierarchy
from .errors import ContextualityError, EnumerationCapExceeded, NotCycle
from .fixtures import FIXTURES, fixture
from .inequality import evaluate_all
from .paradox import detect_cycle_paradox, detect_simple_scenario_paradox
from .quantum import (
    EvenCycleParams,
    OddCycleParams,
    build_even_cycle,
    build_odd_cycle,
    optimize_gamma,
)


def _load_behavior(path: str, possibilistic: bool):
    raw = json.loads(Path(path).read_text())
    b = behavior_from_json_dict(raw, base_dir=Path(path).parent)
    if possibilistic and isinstance(b, Behavior):
        raise ValueError(f"{path}: --possibilistic given but the file carries probabilities")
    if not possibilistic and isinstance(b, PossibilisticBehavior):
        raise ValueError(f"{path}: file carries possible-lists; pass --possibilistic")
    return b


def _print_json(data) -> None:
    json.dump(data, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_check(args) -> int:
    b = _load_behavior(args.behavior, False)
    report = hierarchy(b, cap=args.cap, level=args.level)
    full = report.to_json_dict()
    keys = {
        "nd": ("nd",),
        "nc": ("nc",),
        "lc": ("lc", "witness"),
        "sc": ("sc", "support_size"),
        "all": tuple(full),
    }[args.level]
    out = {k: full[k] for k in keys}
    if args.level != "nd" and not full["nd"]:
        out = {"nd": False, **out}  # the gate failed; say so
    _print_json(out)
    return 0


def _cmd_pp(args) -> int:
    b = _load_behavior(args.behavior, args.possibilistic)
    try:
        found = detect_cycle_paradox(b)
    except NotCycle:
        found = detect_simple_scenario_paradox(b)
    if args.format == "json":
        _print_json(found.to_json_dict() if found is not None else None)
    else:
        if found is None:
            print("none")
        else:
            cert = getattr(found, "certificate", found)
            print(
                f"paradox at context {cert.base_context_index} "
                f"{cert.base_context}: outcome {cert.witness_pair} is possible "
                f"but no global assignment reaches it"
            )
            for step in cert.chain:
                print(
                    f"  context {step.context_index} {step.context}: "
                    f"reach {sorted(step.reachable_in)} -> {sorted(step.reachable_out)}"
                )
    return 0 if found is not None else 1


def _cmd_ineq(args) -> int:
    b = _load_behavior(args.behavior, False)
    _print_json(evaluate_all(b).to_json_dict())
    return 0


def _parse_floats(text: str, want: int, what: str) -> tuple[float, ...]:
    parts = tuple(float(x) for x in text.split(","))
    if len(parts) != want:
        raise ValueError(f"{what} needs {want} comma-separated numbers, got {len(parts)}")
    return parts


def _cmd_quantum(args) -> int:
    n = args.n
    if n % 2 == 0:
        if args.theta or args.eta or args.v3:
            raise ValueError("even n takes --alpha only")
        alpha = args.alpha if args.alpha is not None else math.pi / 8
        _, behavior = build_even_cycle(EvenCycleParams(n, alpha))
    else:
        if args.alpha is not None:
            raise ValueError("odd n takes --theta/--eta/--v3, not --alpha")
        want = (n - 3) // 2
        thetas = (
            _parse_floats(args.theta, want, "--theta")
            if args.theta
            else (math.pi / 4,) * want
        )
        eta = _parse_floats(args.eta, 3, "--eta") if args.eta else (1.0, 1.0, 1.0)
        v3 = _parse_floats(args.v3, 3, "--v3") if args.v3 else (1.0, 1.0, 0.0)
        _, behavior = build_odd_cycle(OddCycleParams(n, eta, v3, thetas))
    witness_cell = ("1", "1") if n % 2 == 0 else ("0", "1")
    witness = float(behavior.probability(0, witness_cell))
    payload = behavior_to_json_dict(behavior)
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
        _print_json({"written": args.out, "n": n, "witness": witness})
    else:
        _print_json(payload)
    return 0


def _cmd_gamma(args) -> int:
    result = optimize_gamma(args.n, restarts=args.restarts, tol=args.tol, seed=args.seed)
    _print_json(result.to_json_dict())
    return 0


def _cmd_bundle(args) -> int:
    b = _load_behavior(args.behavior, args.possibilistic)
    diagram = build_bundle(b, cap=args.cap)
    if args.format == "dot":
        sys.stdout.write(diagram.to_dot())
    else:
        _print_json(diagram.to_json_dict())
    return 0


def _cmd_fixtures(args) -> int:
    payload = behavior_to_json_dict(fixture(args.name))
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
        _print_json({"written": args.out, "name": args.name})
    else:
        _print_json(payload)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctx", description="Decide the contextuality hierarchy of measurement behaviors."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify a behavior (nd / nc / lc / sc)")
    p.add_argument("--behavior", required=True, help="behavior JSON file")
    p.add_argument("--level", choices=("nd", "nc", "lc", "sc", "all"), default="all")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap (default CTX_CAP or 2^24)")
    p.set_defaults(func=_cmd_check)

    pp = sub.add_parser("pp", help="possibilistic paradoxes")
    ppsub = pp.add_subparsers(dest="pp_command", required=True)
    p = ppsub.add_parser("find", help="search for a paradox certificate")
    p.add_argument("--behavior", required=True)
    p.add_argument("--possibilistic", action="store_true", help="input carries possible-lists")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_pp)

    p = sub.add_parser("ineq", help="maximize the cycle correlator inequality family")
    p.add_argument("--behavior", required=True)
    p.set_defaults(func=_cmd_ineq)

    q = sub.add_parser("quantum", help="quantum cycle constructions")
    qsub = q.add_subparsers(dest="quantum_command", required=True)
    p = qsub.add_parser("ncycle", help="build the n-cycle behavior")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=None, help="Schmidt angle (even n)")
    p.add_argument("--theta", default=None, help="comma-separated rotation angles (odd n)")
    p.add_argument("--eta", default=None, help="state vector x,y,z (odd n)")
    p.add_argument("--v3", default=None, help="seed vector x,y,z (odd n)")
    p.add_argument("--out", default=None, help="write behavior JSON here")
    p.set_defaults(func=_cmd_quantum)

    p = sub.add_parser("gamma", help="maximize the paradox probability over parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_gamma)

    p = sub.add_parser("bundle", help="export the support as a bundle diagram")
    p.add_argument("--behavior", required=True)
    p.add_argument("--possibilistic", action="store_true")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=_cmd_bundle)

    p = sub.add_parser("fixtures", help="emit a named example behavior")
    p.add_argument("--name", required=True, choices=sorted(FIXTURES))
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fixtures)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad flags; map to the invalid-input code
        return 3 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except EnumerationCapExceeded as e:
        print(f"ctx: {e}", file=sys.stderr)
        return 2
    except (ContextualityError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"ctx: {e}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))
