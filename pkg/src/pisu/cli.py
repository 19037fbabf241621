"""Command-line surface: deterministic, scriptable access to every module.

Exit codes: 0 success (or verification pass), 1 verification failure,
2 usage error.  The PISU_MAX_QUBITS environment variable overrides the
dense-matrix qubit cap (default 12).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import ansatz as ansatz_mod
from . import simulator, symmetry, synthesis
from .symmetry import TypeVector


def _json_out(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _cmd_dim(args) -> int:
    if args.table:
        print("n dim_pisu dim_su")
        for n, d_pi, d_su in symmetry.scaling_table(args.table):
            print(f"{n} {d_pi} {d_su}")
        return 0
    formula = symmetry.dim_pisu(args.qubits)
    enumerated = len(symmetry.enumerate_basis(args.qubits))
    print(f"formula: {formula}, enumerated: {enumerated}")
    return 0 if formula == enumerated else 1


def _cmd_basis(args) -> int:
    basis = symmetry.enumerate_basis(args.qubits)
    if args.format == "text":
        for idx, gen in enumerate(basis, start=1):
            orbit = " + ".join(s.paper_notation() for s in gen.orbit)
            print(f"{idx}: {gen.label} = {orbit}")
    else:
        payload = {
            "n": args.qubits,
            "generators": [
                {
                    "index": idx,
                    "label": gen.label,
                    "type": [
                        gen.type_vector.n_x,
                        gen.type_vector.n_y,
                        gen.type_vector.n_z,
                        gen.type_vector.n_i,
                    ],
                    "orbit": [s.letters for s in gen.orbit],
                }
                for idx, gen in enumerate(basis, start=1)
            ],
        }
        print(_json_out(payload))
    return 0


def _cmd_closure(args) -> int:
    report = symmetry.verify_closure(args.qubits, tol=args.tol)
    print(report.to_json())
    return 0 if report.passed else 1


def _parse_type(text: str, n: int) -> TypeVector:
    counts = {"x": 0, "y": 0, "z": 0}
    if text:
        for part in text.split(","):
            key, _, value = part.partition(":")
            key = key.strip().lower()
            if key not in counts or not value.strip().isdigit():
                raise ValueError(f"malformed type entry {part!r}; expected x:a,y:b,z:c")
            counts[key] += int(value)
    n_i = n - counts["x"] - counts["y"] - counts["z"]
    if n_i < 0:
        raise ValueError(f"letter counts exceed {n} qubits")
    tv = TypeVector(counts["x"], counts["y"], counts["z"], n_i)
    if tv.is_identity:
        raise ValueError("the all-identity type has no generator")
    return tv


def _parse_mode(text: str) -> synthesis.SynthesisPlan:
    if text == "exact":
        return synthesis.SynthesisPlan("exact-product")
    if text.startswith("trotter:"):
        return synthesis.SynthesisPlan("trotter", steps=int(text.split(":", 1)[1]))
    raise ValueError(f"unknown mode {text!r}; expected exact or trotter:<k>")


def _emit_circuit(c: synthesis.Circuit, fmt: str) -> None:
    if fmt == "qasm":
        sys.stdout.write(synthesis.circuit_to_qasm(c))
    else:
        print(synthesis.circuit_to_json(c))


def _cmd_synth(args) -> int:
    tv = _parse_type(args.type, args.qubits)
    gen = symmetry.SymmetrizedGenerator(tv, tv.label)
    plan = _parse_mode(args.mode)
    if args.pivot is not None:
        plan = synthesis.SynthesisPlan(plan.mode, plan.steps, args.pivot)
    circuit = synthesis.synth_generator(gen, args.theta, plan)
    _emit_circuit(circuit, args.out)
    return 0


def _load_circuit(path: str) -> synthesis.Circuit:
    text = Path(path).read_text()
    if path.endswith(".qasm"):
        return synthesis.circuit_from_qasm(text)
    return synthesis.circuit_from_json(text)


def _cmd_verify(args) -> int:
    circuit = _load_circuit(args.circuit)
    u = simulator.circuit_unitary(circuit)
    defect = symmetry.swap_invariance_defect(u, circuit.n)
    verdict = defect < args.tol
    print(
        _json_out(
            {
                "n": circuit.n,
                "max_defect": defect,
                "swap_invariant": verdict,
                "tol": args.tol,
            }
        )
    )
    return 0 if verdict else 1


def _cmd_ansatz(args) -> int:
    base = ansatz_mod.base_variational_circuit(args.qubits, seed=args.seed)
    choice = ansatz_mod.SymmetrizationChoice(args.choice, args.choice)
    rng = np.random.default_rng(args.seed + 1)
    if args.mode == "full":
        circuit = ansatz_mod.symmetrize_fully(
            base, choice=choice, angle=float(rng.uniform(0, 2 * np.pi))
        )
        u = simulator.circuit_unitary(circuit)
        defect = symmetry.swap_invariance_defect(u, circuit.n)
        report = {"mode": "full", "max_transposition_defect": defect, "invariant": defect < args.tol}
    elif args.mode.startswith("blocks:"):
        blocks = int(args.mode.split(":", 1)[1])
        circuit = ansatz_mod.symmetrize_by_extension(base, blocks, choice)
        bs = ansatz_mod.BlockStructure.for_extension(args.qubits, blocks)
        u = simulator.circuit_unitary(circuit)
        defects = []
        for a in range(1, blocks + 1):
            for b in range(a + 1, blocks + 1):
                s = np.eye(2**bs.n, dtype=complex)
                for i, j in bs.exchange_pairs(a, b):
                    s = s @ symmetry.swap_matrix(i, j, bs.n)
                defects.append(symmetry.invariance_defect(u, s))
        worst = max(defects)
        report = {
            "mode": "blocks",
            "blocks": blocks,
            "max_block_exchange_defect": worst,
            "invariant": worst < args.tol,
        }
    else:
        raise ValueError(f"unknown ansatz mode {args.mode!r}; expected blocks:<b> or full")

    if args.out == "qasm":
        sys.stdout.write(synthesis.circuit_to_qasm(circuit))
        print(f"// invariance: {_json_out(report)}")
    else:
        print(_json_out({"circuit": json.loads(synthesis.circuit_to_json(circuit)), "invariance": report}))
    return 0 if report["invariant"] else 1


def _cmd_count_cnots(args) -> int:
    total = 0
    for gen in symmetry.enumerate_basis(args.qubits):
        if synthesis.commuting_orbit(gen):
            circuit = synthesis.synth_generator(gen, 0.0, synthesis.SynthesisPlan("exact-product"))
            suffix = ""
        else:
            circuit = synthesis.synth_generator(
                gen, 0.0, synthesis.SynthesisPlan("trotter", steps=1)
            )
            suffix = " (per product-formula step)"
        count = synthesis.cnot_count(circuit)
        total += count
        print(f"{gen.label}: {count}{suffix}")
    print(f"total: {total}")
    print(f"naive budget: {synthesis.naive_cnot_budget(args.qubits)}")
    return 0


def _cmd_export(args) -> int:
    circuit = _load_circuit(args.circuit)
    _emit_circuit(circuit, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pisu",
        description="Permutation-invariant quantum circuit toolkit.",
        epilog="PISU_MAX_QUBITS overrides the dense-matrix qubit cap (default 12).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="dimension formula vs. enumerated basis size")
    p.add_argument("--qubits", type=int, default=2)
    p.add_argument("--table", type=int, metavar="N", help="print the scaling table for n=1..N")
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("basis", help="enumerate the symmetrized-string basis")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("closure", help="verify Lie closure by exhaustive brackets")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("synth", help="synthesize a generator exponential")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--type", required=True, help="letter counts, e.g. x:1,y:1 (rest identity)")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--mode", default="exact", help="exact or trotter:<k>")
    p.add_argument("--pivot", type=int)
    p.add_argument("--out", choices=("qasm", "json"), default="qasm")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("verify", help="check SWAP invariance of a circuit file")
    p.add_argument("--circuit", required=True, help="path to a .json or .qasm circuit")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("ansatz", help="symmetrize the base variational circuit")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--mode", required=True, help="blocks:<b> or full")
    p.add_argument("--choice", choices=("tie", "couple"), default="tie")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", choices=("qasm", "json"), default="json")
    p.set_defaults(func=_cmd_ansatz)

    p = sub.add_parser("count-cnots", help="actual CNOT counts vs. the naive formula")
    p.add_argument("--qubits", type=int, required=True)
    p.set_defaults(func=_cmd_count_cnots)

    p = sub.add_parser("export", help="convert a circuit file between formats")
    p.add_argument("--circuit", required=True)
    p.add_argument("--out", choices=("qasm", "json"), default="qasm")
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
