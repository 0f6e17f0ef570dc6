"""Circuits as ordered gate lists, condensed into entanglement-relevant steps.

Only multi-qubit gates can change an entropy vector, so the time axis used
throughout the package is the condensed step: a maximal run of consecutive
single-qubit gates, or one multi-qubit gate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .gates import Gate, apply
from .state import PureState

SINGLE_QUBIT_LAYER = "single_qubit_layer"
MULTI_QUBIT_GATE = "multi_qubit_gate"


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate) -> None:
        if max(gate.targets) >= self.num_qubits:
            raise ValueError(f"{gate.describe()} outside a {self.num_qubits}-qubit circuit")

    def append(self, gate: Gate) -> "Circuit":
        self._check(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class Step:
    kind: str
    gates: tuple[Gate, ...]
    depth_index: int
    start: int  # position of the first gate in the circuit's gate list

    @property
    def stop(self) -> int:
        return self.start + len(self.gates)

    @property
    def label(self) -> str:
        return " ".join(g.describe() for g in self.gates)


@dataclass
class StepTrace:
    step: Step
    state_after: PureState
    entropy_vector_after: Optional[Any] = None


def condense(circuit: Circuit) -> list[Step]:
    steps: list[Step] = []
    run: list[Gate] = []
    run_start = 0

    def flush():
        if run:
            steps.append(Step(SINGLE_QUBIT_LAYER, tuple(run), len(steps), run_start))
            run.clear()

    for i, g in enumerate(circuit.gates):
        if g.single_qubit:
            if not run:
                run_start = i
            run.append(g)
        else:
            flush()
            steps.append(Step(MULTI_QUBIT_GATE, (g,), len(steps), i))
    flush()
    return steps


def run(circuit: Circuit, psi: PureState) -> list[StepTrace]:
    """Evolve ``psi`` step by step; one trace per condensed step."""
    if psi.num_qubits != circuit.num_qubits:
        raise ValueError(f"{psi.num_qubits}-qubit input for a {circuit.num_qubits}-qubit circuit")
    traces = []
    for step in condense(circuit):
        for g in step.gates:
            psi = apply(g, psi)
        traces.append(StepTrace(step, psi))
    return traces


def final_state(circuit: Circuit, psi: PureState) -> PureState:
    """Gate-by-gate application without condensation."""
    for g in circuit.gates:
        psi = apply(g, psi)
    return psi
