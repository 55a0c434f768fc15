"""Command-line front door.

Subcommands: distance, swap-test, conditional-test, inverse-test,
production-line, clifford-test, find-error, fidelity-bound.  Reports
are emitted as JSON (--json) or a short text summary; either way the
seed and every analytic probability used for sampling are included,
so results are auditable and byte-reproducible for a fixed config.

Exit codes: 0 = verdict equal (or bound holds), 1 = verdict different
(or bound violated), 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .circuit_format import emit_circuit, load_circuit
from .cliffordtest import (
    CliffordBlackBox,
    entanglement_fidelity_clifford,
    equivalence_verdict,
    find_error,
    one_qubit_clifford_circuits,
)
from .clifford import random_clifford_circuit, tableau_equal, tableau_from_circuit
from .core import DEFAULT_QUBIT_CAP, Circuit, Gate, GateKind, circuit_unitary
from .errors import CandidateNotFound, QverifyError
from .metrics import detection_probabilities, one_gate_pair, verify_theorem1, worst_distance
from .pipeline import FactoryModel, simulate_production
from .protocols import (
    ALL_CAPABILITIES,
    BlackBoxUnitary,
    run_conditional_test,
    run_inverse_test,
    run_swap_test,
)
from .seeding import rng_from_seed

# Circuits whose average distance falls below this are reported equal;
# sqrt amplifies rounding in |trace overlap| ~ 1 - 1e-13 to ~1e-6.
EQUALITY_TOL = 1e-5


@dataclass
class RunConfig:
    """Everything one invocation needs; mirrored into the report."""

    command: str
    u_path: str | None = None
    ut_path: str | None = None
    seed: int = 0
    shots: int = 1000
    runs: int = 60
    delta: float = 1e-4
    eps: float = 0.5
    k: int = 1
    cap: int = DEFAULT_QUBIT_CAP
    json_output: bool = False
    fault_prob: float = 0.1
    batch: int = 11
    batches: int = 1000
    depth: int = 1
    runs_per_candidate: int = 40
    n: int = 1
    exhaustive: bool = False


def parse_circuit_file(path: str) -> Circuit:
    """Load a circuit file; ParseError carries the offending line."""
    return load_circuit(path)


def _base_report(config: RunConfig) -> dict:
    return {
        "report_version": 1,
        "tool": "qverify",
        "version": __version__,
        "command": config.command,
        "seed": config.seed,
    }


def _protocol_report(outcome) -> dict:
    return {
        "protocol": outcome.protocol,
        "shots": outcome.shots,
        "ones_observed": outcome.ones_observed,
        "analytic_p": outcome.analytic_p,
        "verdict": outcome.verdict,
    }


def _cmd_distance(config: RunConfig) -> tuple[int, dict]:
    u = circuit_unitary(parse_circuit_file(config.u_path), cap=config.cap)
    ut = circuit_unitary(parse_circuit_file(config.ut_path), cap=config.cap)
    report = detection_probabilities(u, ut, cap=config.cap)
    lhs, rhs, holds = verify_theorem1(u, ut, cap=config.cap)
    verdict = "equal" if report.avg_distance <= EQUALITY_TOL else "different"
    out = _base_report(config)
    out.update(
        {
            "n": u.n_qubits,
            "trace_overlap": {"re": report.trace_overlap.real, "im": report.trace_overlap.imag},
            "avg_distance": report.avg_distance,
            "worst_distance": report.worst_distance,
            "ent_fidelity": report.ent_fidelity,
            "p_swap": report.p_swap,
            "p_conditional": report.p_conditional,
            "theorem1": {"lhs": lhs, "rhs": rhs, "holds": holds},
            "verdict": verdict,
        }
    )
    return (0 if verdict == "equal" else 1), out


def _cmd_protocol(config: RunConfig) -> tuple[int, dict]:
    u_circ = parse_circuit_file(config.u_path)
    ut_circ = parse_circuit_file(config.ut_path)
    if config.command == "swap-test":
        u = BlackBoxUnitary(u_circ)
        ut = BlackBoxUnitary(ut_circ)
        outcome = run_swap_test(u, ut, config.shots, config.seed, cap=config.cap)
    elif config.command == "conditional-test":
        u = BlackBoxUnitary(u_circ, ALL_CAPABILITIES)
        ut = BlackBoxUnitary(ut_circ, ALL_CAPABILITIES)
        outcome = run_conditional_test(u, ut, config.shots, config.seed, cap=config.cap)
    else:
        ut = BlackBoxUnitary(ut_circ)
        outcome = run_inverse_test(u_circ, ut, config.shots, config.seed, cap=config.cap)
    out = _base_report(config)
    out.update(_protocol_report(outcome))
    return (0 if outcome.verdict == "equal" else 1), out


_FAULT_ALPHABET = (
    GateKind.X,
    GateKind.Y,
    GateKind.Z,
    GateKind.H,
    GateKind.S,
    GateKind.SDG,
    GateKind.T,
    GateKind.I,
)

# CNOT with the roles of its two listed targets exchanged, expressed in
# the original target order (replacements must keep that order).
_REVERSED_CNOT = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)


def _fault_options(ideal: Circuit, eps: float, cap: int) -> list[tuple[int, Gate]]:
    """All single-gate replacements at worst-case distance >= eps."""
    ideal_u = circuit_unitary(ideal, cap=cap)
    options = []
    for pos, g in enumerate(ideal.gates):
        if g.kind is GateKind.CNOT:
            alternatives = [Gate(GateKind.CUSTOM, g.targets, _REVERSED_CNOT)]
        elif g.kind is GateKind.CUSTOM:
            continue
        else:
            alternatives = [Gate(k, g.targets) for k in _FAULT_ALPHABET if k is not g.kind]
        for alt in alternatives:
            faulty = one_gate_pair(ideal, pos, alt)[1]
            if worst_distance(ideal_u, circuit_unitary(faulty, cap=cap), cap=cap) >= eps - 1e-9:
                options.append((pos, alt))
    return options


def _cmd_production_line(config: RunConfig) -> tuple[int, dict]:
    ideal = parse_circuit_file(config.u_path)
    options = _fault_options(ideal, config.eps, config.cap)
    if not options:
        raise QverifyError(
            f"no single-gate replacement of the ideal circuit reaches eps={config.eps}"
        )

    def sampler(rng: np.random.Generator) -> Circuit:
        pos, alt = options[rng.integers(0, len(options))]
        return one_gate_pair(ideal, pos, alt)[1]

    factory = FactoryModel(ideal, config.fault_prob, sampler, config.eps, cap=config.cap)
    summary = simulate_production(
        factory, config.batch, config.batches, config.delta, config.seed
    )
    out = _base_report(config)
    out.update(
        {
            "pre_rate": summary.pre_rate,
            "post_rate": summary.post_rate,
            "tests_per_batch": summary.tests_per_batch,
            "batches": summary.batches,
            "kept_total": summary.kept_total,
            "discarded_total": summary.discarded_total,
            "overfull_rate": summary.overfull_rate,
            "bound": summary.bound,
            "fault_options": len(options),
        }
    )
    return 0, out


def _run_to_dict(run) -> dict:
    return {
        "pauli": str(run.pauli),
        "conjugated": str(run.conjugated),
        "eigenvalue": run.eigenvalue,
        "outcome": run.outcome,
    }


def _cmd_clifford_test(config: RunConfig) -> tuple[int, dict]:
    u = parse_circuit_file(config.u_path)
    ut = CliffordBlackBox(parse_circuit_file(config.ut_path))
    report = equivalence_verdict(u, ut, config.runs, config.seed)
    out = _base_report(config)
    out.update(
        {
            "runs": [_run_to_dict(r) for r in report.runs],
            "rejections": sum(r.rejected for r in report.runs),
            "per_run_detection_estimate": report.per_run_detection_estimate,
            "verdict": report.verdict,
        }
    )
    return (0 if report.verdict == "equal" else 1), out


def _cmd_find_error(config: RunConfig) -> tuple[int, dict]:
    u = parse_circuit_file(config.u_path)
    ut = CliffordBlackBox(parse_circuit_file(config.ut_path))
    out = _base_report(config)
    try:
        candidate = find_error(u, ut, config.depth, config.runs_per_candidate, config.seed)
    except CandidateNotFound as exc:
        out.update({"found": False, "detail": str(exc), "verdict": "different"})
        return 1, out
    same_as_u = tableau_equal(tableau_from_circuit(candidate), tableau_from_circuit(u))
    out.update(
        {
            "found": True,
            "candidate": emit_circuit(candidate),
            "candidate_equals_u": same_as_u,
            "verdict": "equal" if same_as_u else "different",
        }
    )
    return (0 if same_as_u else 1), out


def _cmd_fidelity_bound(config: RunConfig) -> tuple[int, dict]:
    pairs = 0
    max_fidelity = 0.0
    if config.exhaustive:
        if config.n != 1:
            raise QverifyError("--exhaustive supports --n 1 only")
        circuits = one_qubit_clifford_circuits()
        tableaux = [tableau_from_circuit(c) for c in circuits]
        for i, ti in enumerate(tableaux):
            for j, tj in enumerate(tableaux):
                if i == j:
                    continue
                pairs += 1
                max_fidelity = max(max_fidelity, entanglement_fidelity_clifford(ti, tj))
    else:
        for i in range(config.runs):
            rng = rng_from_seed(config.seed, i)
            a = tableau_from_circuit(random_clifford_circuit(config.n, 30, rng))
            b = tableau_from_circuit(random_clifford_circuit(config.n, 30, rng))
            if tableau_equal(a, b):
                continue
            pairs += 1
            max_fidelity = max(max_fidelity, entanglement_fidelity_clifford(a, b))
    holds = max_fidelity <= 0.5 + 1e-12
    out = _base_report(config)
    out.update(
        {
            "n": config.n,
            "pairs_checked": pairs,
            "max_fidelity": max_fidelity,
            "bound": 0.5,
            "bound_holds": holds,
        }
    )
    return (0 if holds else 1), out


_COMMANDS = {
    "distance": _cmd_distance,
    "swap-test": _cmd_protocol,
    "conditional-test": _cmd_protocol,
    "inverse-test": _cmd_protocol,
    "production-line": _cmd_production_line,
    "clifford-test": _cmd_clifford_test,
    "find-error": _cmd_find_error,
    "fidelity-bound": _cmd_fidelity_bound,
}


def dispatch(config: RunConfig) -> tuple[int, dict]:
    """Run one configured command; (exit_code, report)."""
    return _COMMANDS[config.command](config)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qverify", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, circuits=True):
        if circuits:
            p.add_argument("--u", required=True, help="circuit file for U")
            p.add_argument("--ut", required=True, help="circuit file for Ut")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--cap", type=int, default=DEFAULT_QUBIT_CAP)
        p.add_argument("--json", action="store_true")

    common(sub.add_parser("distance", help="exact distances and detection probabilities"))
    for name in ("swap-test", "conditional-test", "inverse-test"):
        p = sub.add_parser(name, help=f"sampled {name.replace('-', ' ')}")
        common(p)
        p.add_argument("--shots", type=int, default=1000)

    p = sub.add_parser("production-line", help="winnow a simulated production line")
    p.add_argument("--ideal", required=True, help="ideal circuit file")
    p.add_argument("--fault-prob", type=float, default=0.1)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--batch", type=int, default=11)
    p.add_argument("--batches", type=int, default=1000)
    p.add_argument("--delta", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_QUBIT_CAP)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("clifford-test", help="randomized Clifford equality test")
    common(p)
    p.add_argument("--runs", type=int, default=60)

    p = sub.add_parser("find-error", help="locate a gate-level difference")
    common(p)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--runs-per-candidate", type=int, default=40)

    p = sub.add_parser("fidelity-bound", help="check the Clifford fidelity bound")
    common(p, circuits=False)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--runs", type=int, default=200)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.seed is not None:
        seed = args.seed
    else:
        seed = int(os.environ.get("QVERIFY_SEED", "0"))
    config = RunConfig(command=args.command, seed=seed)
    for name in (
        "cap",
        "shots",
        "runs",
        "delta",
        "eps",
        "batch",
        "batches",
        "depth",
        "n",
        "exhaustive",
    ):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    config.json_output = args.json
    config.u_path = getattr(args, "u", None) or getattr(args, "ideal", None)
    config.ut_path = getattr(args, "ut", None)
    if hasattr(args, "fault_prob"):
        config.fault_prob = args.fault_prob
    if hasattr(args, "runs_per_candidate"):
        config.runs_per_candidate = args.runs_per_candidate
    return config


def _text_summary(report: dict) -> str:
    lines = [f"{report['command']} (seed {report['seed']})"]
    for key in sorted(report):
        if key in ("report_version", "tool", "version", "command", "seed", "runs"):
            continue
        lines.append(f"  {key}: {report[key]}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    config = _config_from_args(args)
    try:
        code, report = dispatch(config)
    except QverifyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.json_output:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_text_summary(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
