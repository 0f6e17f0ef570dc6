"""Run orchestration: build a circuit, evolve it, analyze every step, emit files."""
from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from . import __version__
from .algorithms import (
    GroverSpec,
    QftSpec,
    QpeSpec,
    build_grover,
    build_qft,
    build_qpe,
    qpe_input,
)
from .circuits import Circuit, Step, StepTrace, condense
from .entropy import TRUNCATION_EPS, entropy_vector
from .gates import (
    Gate,
    apply,
    controlled_phase,
    controlled_unitary_power,
    multi_controlled_x,
    multi_controlled_z,
    standard_gate,
)
from .inequalities import CONVENTIONS, INEQUALITIES, TOL_FAIL, StepReport, analyze_step
from .linalg import EIG_TOL, HERMITIAN_TOL
from .state import PureState

log = logging.getLogger(__name__)

ALGORITHMS = ("grover", "qft", "qpe", "custom")
INPUT_SOURCES = ("zeros", "random", "file")
STAT_COLUMNS = ("check_count", "min_sat", "mean_sat", "failure_ratio", "mean_failure_sat")
CSV_COLUMNS = (
    ("step_index", "step_kind", "gate_label")
    + tuple(f"{ineq}_{col}" for ineq in INEQUALITIES for col in STAT_COLUMNS)
    + ("entropy_norm",)
)
CONVENTION_NOTES = {
    "proper": "every nonempty subsystem, partitions into exactly k nonempty blocks",
    "padded": "every subsystem incl. the empty one, partitions into at most k nonempty "
              "blocks padded with empty blocks (degenerate checks never fail)",
}


@dataclass
class RunConfig:
    algorithm: str
    spec: Union[GroverSpec, QftSpec, QpeSpec, Circuit]
    input_source: str = "zeros"
    seed: Optional[int] = None
    input_file: Optional[Path] = None
    tol_fail: float = TOL_FAIL
    convention: str = "proper"
    max_qubits: int = 8
    out: Optional[Path] = None
    emit_vectors: Optional[Path] = None

    def __post_init__(self):
        expected = {"grover": GroverSpec, "qft": QftSpec, "qpe": QpeSpec, "custom": Circuit}
        if self.algorithm not in expected:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if not isinstance(self.spec, expected[self.algorithm]):
            raise ValueError(f"{self.algorithm} run needs a {expected[self.algorithm].__name__}")
        if self.input_source not in INPUT_SOURCES:
            raise ValueError(f"unknown input source {self.input_source!r}")
        if self.input_source == "random" and self.seed is None:
            raise ValueError("random input needs a seed")
        if self.input_source == "file" and self.input_file is None:
            raise ValueError("file input needs an input file")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")
        if self.tol_fail < 0:
            raise ValueError("tol_fail must be nonnegative")

    def describe(self) -> dict:
        spec = self.spec
        if isinstance(spec, QpeSpec):
            params = {"precision_qubits": spec.precision_qubits, "target_qubits": spec.target_qubits,
                      "phase": spec.phase}
        elif isinstance(spec, Circuit):
            params = {"num_qubits": spec.num_qubits, "gates": len(spec.gates)}
        else:
            params = asdict(spec)
        return {
            "algorithm": self.algorithm,
            "parameters": params,
            "input_source": self.input_source,
            "seed": self.seed,
            "input_file": None if self.input_file is None else str(self.input_file),
            "convention": self.convention,
            "max_qubits": self.max_qubits,
        }


@dataclass
class RunManifest:
    config: dict
    version: str
    num_qubits: int
    steps: int
    check_counts: dict[str, list[int]]
    wall_clock_s: list[float]
    tolerances: dict[str, float]
    conventions: dict[str, str]
    extras: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def build_circuit(config: RunConfig) -> Circuit:
    spec = config.spec
    if isinstance(spec, GroverSpec):
        return build_grover(spec)
    if isinstance(spec, QftSpec):
        return build_qft(spec)
    if isinstance(spec, QpeSpec):
        return build_qpe(spec)
    return spec


def initial_state(config: RunConfig, num_qubits: int) -> PureState:
    if config.input_source == "random":
        return PureState.random(num_qubits, np.random.default_rng(config.seed))
    if config.input_source == "file":
        psi = load_amplitudes(config.input_file)
        if psi.num_qubits != num_qubits:
            raise ValueError(f"{config.input_file}: {psi.num_qubits}-qubit state for a "
                             f"{num_qubits}-qubit circuit")
        return psi
    if isinstance(config.spec, QpeSpec):
        return qpe_input(config.spec)
    return PureState.zeros(num_qubits)


def analyze_circuit(
    circuit: Circuit,
    psi: PureState,
    tol_fail: float = TOL_FAIL,
    convention: str = "proper",
) -> tuple[list[StepTrace], list[StepReport], list[float]]:
    """Traces and reports for the input (step 0) and after every condensed step."""
    steps = [Step("input", (), 0, 0)] + condense(circuit)
    traces, reports, clock = [], [], []
    for i, step in enumerate(steps):
        t0 = time.perf_counter()
        for g in step.gates:
            psi = apply(g, psi)
        ev = entropy_vector(psi)
        report = analyze_step(ev, tol_fail, convention, i, step.kind, step.label)
        clock.append(time.perf_counter() - t0)
        traces.append(StepTrace(step, psi, ev))
        reports.append(report)
        log.debug("step %d (%s): %.3fs", i, step.kind, clock[-1])
    return traces, reports, clock


def execute(config: RunConfig, traces_out: Optional[list] = None) -> tuple[list[StepReport], RunManifest]:
    """Run one configured job and write its CSV, manifest and optional entropy dump.

    Pass a list as ``traces_out`` to also receive the per-step traces.
    """
    circuit = build_circuit(config)
    if circuit.num_qubits > config.max_qubits:
        raise ValueError(f"{circuit.num_qubits} qubits exceeds the max_qubits guard "
                         f"({config.max_qubits})")
    psi = initial_state(config, circuit.num_qubits)
    traces, reports, clock = analyze_circuit(circuit, psi, config.tol_fail, config.convention)
    if traces_out is not None:
        traces_out.extend(traces)

    manifest = RunManifest(
        config=config.describe(),
        version=__version__,
        num_qubits=circuit.num_qubits,
        steps=len(reports),
        check_counts={name: [r[name].check_count for r in reports] for name in INEQUALITIES},
        wall_clock_s=clock,
        tolerances={"tol_fail": config.tol_fail, "hermitian": HERMITIAN_TOL,
                    "eigen_offdiagonal": EIG_TOL, "eigenvalue_truncation": TRUNCATION_EPS},
        conventions={
            "enumeration": config.convention,
            "enumeration_description": CONVENTION_NOTES[config.convention],
            "failure_ratio": "failures / total checks",
            "failure_threshold": "saturation < -tol_fail",
            "subsystem_order": "ascending bitmask (bit i = qubit i)",
            "block_order": "ascending lowest qubit, empty blocks last",
            "qubit_order": "qubit 0 is the most significant basis bit",
            "role_expansion": "SA, MMI symmetric; SSA x3 (B distinguished); Ingleton x6 ({A,B} pair)",
        },
        extras={k: v for k, v in circuit.metadata.items() if k != "builder"},
    )
    if config.out is not None:
        out = Path(config.out)
        emit_csv(reports, out)
        out.with_suffix(".manifest.json").write_text(manifest.to_json() + "\n")
    if config.emit_vectors is not None:
        emit_entropy_vectors(traces, config.emit_vectors)
    return reports, manifest


# -- serialization ------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{float(x) + 0.0:.12g}"


def csv_rows(reports: list[StepReport]) -> list[list[str]]:
    rows = []
    for r in reports:
        row = [str(r.step_index), r.step_kind, r.gate_label]
        for name in INEQUALITIES:
            s = r[name]
            row += [str(s.check_count), _fmt(s.min_saturation), _fmt(s.mean_saturation),
                    _fmt(s.failure_ratio), _fmt(s.mean_failure_saturation)]
        row.append(_fmt(r.entropy_norm))
        rows.append(row)
    return rows


def emit_csv(reports: list[StepReport], path=None) -> str:
    """Write the per-step table (header always present); returns the text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(csv_rows(reports))
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


def entropy_vectors_json(traces: list[StepTrace]) -> dict:
    steps = []
    for i, tr in enumerate(traces):
        ev = tr.entropy_vector_after if tr.entropy_vector_after is not None else entropy_vector(tr.state_after)
        steps.append({
            "step_index": i,
            "entropies": {str(m): float(_fmt(s)) for m, s in ev.as_dict().items()},
        })
    n = traces[0].state_after.num_qubits if traces else 0
    return {"num_qubits": n, "key": "subset bitmask, bit i = qubit i", "steps": steps}


def emit_entropy_vectors(traces: list[StepTrace], path) -> None:
    Path(path).write_text(json.dumps(entropy_vectors_json(traces), indent=1) + "\n")


# -- input files --------------------------------------------------------------

def _complex_rows(path) -> np.ndarray:
    data = np.loadtxt(path, ndmin=2, comments="#")
    if data.shape[1] % 2:
        raise ValueError(f"{path}: expected (re, im) pairs, got {data.shape[1]} columns")
    return data[:, 0::2] + 1j * data[:, 1::2]


def load_amplitudes(path) -> PureState:
    """``re im`` per line, one line per basis state (qubit 0 most significant).

    The vector is normalized on load.
    """
    amps = _complex_rows(path)
    if amps.shape[1] != 1:
        raise ValueError(f"{path}: amplitude file must have exactly two columns")
    return PureState.normalized(amps[:, 0])


def save_amplitudes(psi: PureState, path) -> None:
    with open(path, "w", newline="") as fh:
        for a in psi.amplitudes:
            fh.write(f"{a.real:.17g} {a.imag:.17g}\n")


def load_matrix(path) -> np.ndarray:
    """One matrix row per line, as ``re im`` pairs."""
    m = _complex_rows(path)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{path}: matrix is {m.shape[0]}x{m.shape[1]}, not square")
    return m


def _ints(tokens) -> list[int]:
    return [int(t) for t in tokens]


def parse_gate_line(line: str, base_dir: Path = Path(".")) -> Gate:
    tok = line.split()
    op = tok[0].upper()
    if op in ("H", "X", "Z"):
        if len(tok) != 2:
            raise ValueError(f"{op} takes one qubit")
        return standard_gate(op, int(tok[1]))
    if op in ("CPSIX", "C0Z"):
        if "->" not in tok:
            raise ValueError(f"{op} needs '-> target'")
        arrow = tok.index("->")
        if op == "CPSIX":
            goal, controls = tok[1], _ints(tok[2:arrow])
        else:
            goal, controls = None, _ints(tok[1:arrow])
        target = _ints(tok[arrow + 1:])
        if len(target) != 1:
            raise ValueError(f"{op} has exactly one target")
        if op == "CPSIX":
            if len(controls) != len(goal):
                raise ValueError(f"goal {goal} needs {len(goal)} controls")
            return multi_controlled_x(goal, controls + target)
        return multi_controlled_z(len(controls), controls + target)
    if op == "CRK":
        # CRK k ctrl c tgt t
        if len(tok) != 6 or tok[2] != "ctrl" or tok[4] != "tgt":
            raise ValueError("expected 'CRK k ctrl c tgt t'")
        return controlled_phase(int(tok[1]), int(tok[3]), int(tok[5]))
    if op == "CU":
        # CU file.mat pow p ctrl c tgt t1 t2 ...
        if len(tok) < 8 or tok[2] != "pow" or tok[4] != "ctrl" or tok[6] != "tgt":
            raise ValueError("expected 'CU file pow p ctrl c tgt t...'")
        u = load_matrix(base_dir / tok[1])
        return controlled_unitary_power(u, int(tok[3]), int(tok[5]), _ints(tok[7:]))
    raise ValueError(f"unknown gate {tok[0]!r}")


def load_circuit(path, num_qubits: int) -> Circuit:
    """Parse a line-oriented gate file; ``#`` starts a comment."""
    path = Path(path)
    c = Circuit(num_qubits, metadata={"builder": "custom", "source": str(path)})
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            c.append(parse_gate_line(line, path.parent))
        except (ValueError, IndexError) as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return c
