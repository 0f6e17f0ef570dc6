"""Command line entry point: ``qentropy {grover,qft,qpe,custom} ...``.

Exit codes: 0 success, 2 configuration error, 3 integrity failure (SA or SSA
violated), 4 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .algorithms import (
    DEFAULT_GROVER_ITERATIONS,
    DEFAULT_GROVER_RUNS,
    GroverSpec,
    QftSpec,
    QpeSpec,
    entangled_eigenvector,
    entangled_phase_unitary,
    phase_unitary,
)
from .inequalities import CONVENTIONS, TOL_FAIL, IntegrityError
from .runner import RunConfig, emit_csv, execute, load_circuit
from .state import PureState

EXIT_CONFIG, EXIT_INTEGRITY, EXIT_IO = 2, 3, 4

_DEFAULT_GOALS = {m + 1: goal for m, goal in DEFAULT_GROVER_RUNS}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="random Haar input state from this seed")
    common.add_argument("--input-file", type=Path, help="input amplitudes, 're im' per line")
    common.add_argument("--out", type=Path,
                        help="CSV path; the manifest goes next to it (default: CSV to stdout)")
    common.add_argument("--emit-vectors", type=Path, help="write per-step entropy vectors as JSON")
    common.add_argument("--tol-fail", type=float, default=TOL_FAIL)
    common.add_argument("--convention", choices=CONVENTIONS, default="proper",
                        help="partition enumeration convention")
    common.add_argument("--max-qubits", type=int, default=8)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="qentropy", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="algorithm", required=True)

    g = sub.add_parser("grover", parents=[common], help="Grover search")
    g.add_argument("--qubits", type=int, help="total qubits incl. the ancilla")
    g.add_argument("--goal", help="goal bitstring (default by qubit count: 1101, 11010, 110101)")
    g.add_argument("--iterations", type=int, default=DEFAULT_GROVER_ITERATIONS)

    q = sub.add_parser("qft", parents=[common], help="quantum Fourier transform")
    q.add_argument("--qubits", type=int, required=True)
    q.add_argument("--inverse", action="store_true")

    e = sub.add_parser("qpe", parents=[common], help="quantum phase estimation")
    e.add_argument("--precision-qubits", type=int, required=True)
    e.add_argument("--phase", type=float, default=0.125, help="eigenphase in turns")
    e.add_argument("--entangled", action="store_true",
                   help="two-qubit U with eigenvector (|01>+|10>)/sqrt2 instead of diag(1, e^{2 pi i phase})")

    c = sub.add_parser("custom", parents=[common], help="gate-list file")
    c.add_argument("gate_file", type=Path)
    c.add_argument("--qubits", type=int, required=True)
    return p


def _config(args) -> RunConfig:
    if args.algorithm == "grover":
        goal = args.goal
        if goal is None:
            if args.qubits not in _DEFAULT_GOALS:
                raise ValueError("--goal is required unless --qubits is 5, 6 or 7")
            goal = _DEFAULT_GOALS[args.qubits]
        if args.qubits is not None and args.qubits != len(goal) + 1:
            raise ValueError(f"goal {goal} implies {len(goal) + 1} qubits, not {args.qubits}")
        spec = GroverSpec(len(goal), goal, args.iterations)
    elif args.algorithm == "qft":
        spec = QftSpec(args.qubits, args.inverse)
    elif args.algorithm == "qpe":
        if args.entangled:
            spec = QpeSpec(args.precision_qubits, entangled_phase_unitary(args.phase),
                           entangled_eigenvector())
        else:
            spec = QpeSpec(args.precision_qubits, phase_unitary(args.phase), PureState.from_bitstring("1"))
    else:
        spec = load_circuit(args.gate_file, args.qubits)

    if args.seed is not None and args.input_file is not None:
        raise ValueError("--seed and --input-file are mutually exclusive")
    source = "random" if args.seed is not None else "file" if args.input_file else "zeros"
    return RunConfig(
        algorithm=args.algorithm, spec=spec, input_source=source, seed=args.seed,
        input_file=args.input_file, tol_fail=args.tol_fail, convention=args.convention,
        max_qubits=args.max_qubits, out=args.out, emit_vectors=args.emit_vectors,
    )


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _config(args)
        reports, _ = execute(config)
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if config.out is None:
        sys.stdout.write(emit_csv(reports))
    return 0


if __name__ == "__main__":
    sys.exit(main())
