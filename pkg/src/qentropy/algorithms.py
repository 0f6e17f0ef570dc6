"""Builders for the Grover, QFT and phase-estimation circuits.

The Grover circuit is the diagrammed variant: the ancilla is prepared with
X (not H), the oracle is a multi-controlled X onto it, and the diffusion is
H-layer, C_{0..0}Z onto the ancilla, H-layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuits import Circuit
from .gates import (
    controlled_phase,
    controlled_unitary_power,
    multi_controlled_x,
    multi_controlled_z,
    standard_gate,
)
from .linalg import as_matrix, is_unitary
from .state import PureState

# (search qubits, goal) for the 5, 6 and 7 qubit runs
DEFAULT_GROVER_RUNS = ((4, "1101"), (5, "11010"), (6, "110101"))
DEFAULT_GROVER_ITERATIONS = 16


@dataclass(frozen=True)
class GroverSpec:
    search_qubits: int
    goal: str
    iterations: int = DEFAULT_GROVER_ITERATIONS

    def __post_init__(self):
        if len(self.goal) != self.search_qubits:
            raise ValueError(f"goal {self.goal!r} does not have {self.search_qubits} bits")
        if set(self.goal) - {"0", "1"}:
            raise ValueError(f"goal {self.goal!r} is not a bitstring")
        if self.iterations < 1:
            raise ValueError("need at least one Grover iteration")

    @property
    def num_qubits(self) -> int:
        return self.search_qubits + 1


@dataclass(frozen=True)
class QftSpec:
    num_qubits: int
    inverse: bool = False

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("QFT needs at least one qubit")


@dataclass(frozen=True)
class QpeSpec:
    precision_qubits: int
    unitary: np.ndarray
    eigenvector: PureState

    def __post_init__(self):
        u = as_matrix(self.unitary)
        if self.precision_qubits < 1:
            raise ValueError("need at least one precision qubit")
        if not is_unitary(u):
            raise ValueError("QPE unitary is not unitary")
        v = self.eigenvector.amplitudes
        if u.shape[0] != v.size:
            raise ValueError(f"unitary of dimension {u.shape[0]} vs eigenvector of length {v.size}")
        uv = u @ v
        if np.linalg.norm(uv - np.vdot(v, uv) * v) > 1e-8:
            raise ValueError("eigenvector is not an eigenvector of the unitary")
        object.__setattr__(self, "unitary", u)

    @property
    def target_qubits(self) -> int:
        return self.eigenvector.num_qubits

    @property
    def num_qubits(self) -> int:
        return self.precision_qubits + self.target_qubits

    @property
    def phase(self) -> float:
        """Eigenphase as a fraction of a turn, in [0, 1)."""
        v = self.eigenvector.amplitudes
        return float(np.angle(np.vdot(v, self.unitary @ v)) / (2 * np.pi)) % 1.0


# -- Grover -------------------------------------------------------------------

def build_grover(spec: GroverSpec) -> Circuit:
    m = spec.search_qubits
    anc = m
    search = list(range(m))
    everything = search + [anc]
    c = Circuit(spec.num_qubits, metadata={"builder": "grover", "search_qubits": m,
                                           "goal": spec.goal, "iterations": spec.iterations})
    c.extend(standard_gate("H", q) for q in search)
    c.append(standard_gate("X", anc))
    oracle = multi_controlled_x(spec.goal, everything)
    diffusion = multi_controlled_z(m, everything)
    for _ in range(spec.iterations):
        c.append(oracle)
        c.extend(standard_gate("H", q) for q in search)
        c.append(diffusion)
        c.extend(standard_gate("H", q) for q in search)
    return c


def goal_probability(psi: PureState, goal: str) -> float:
    """Probability that the leading ``len(goal)`` qubits read ``goal``."""
    m = len(goal)
    probs = np.abs(psi.amplitudes.reshape(1 << m, -1)) ** 2
    return float(probs[int(goal, 2)].sum())


def textbook_grover_probability(search_qubits: int, k) -> np.ndarray:
    """sin^2((2k+1) theta), theta = arcsin(2^{-m/2}), for the phase-oracle variant."""
    theta = math.asin(2 ** (-search_qubits / 2))
    return np.sin((2 * np.asarray(k) + 1) * theta) ** 2


def grover_rotation_angle(search_qubits: int) -> float:
    """Per-iteration angle delta of the X-ancilla circuit: cos(delta) = 1 - 2^{-m}."""
    return math.acos(1.0 - 2.0 ** (-search_qubits))


def grover_goal_probability(search_qubits: int, k) -> np.ndarray:
    """Exact goal probability after ``k`` iterations of :func:`build_grover`.

    The evolution stays in span{|goal>|1>, |rest>|1>, |goal>|0>}, where one
    iteration is a rotation by pi - delta about a vector orthogonal to the
    initial state. Solving gives::

        P(k) = (1 - b^2 cos((2k+1) delta)) / (1 + b^2),   b^2 = 1 - 2^{-m}

    so the goal probability has period pi / delta iterations.
    """
    b2 = 1.0 - 2.0 ** (-search_qubits)
    delta = grover_rotation_angle(search_qubits)
    return (1.0 - b2 * np.cos((2 * np.asarray(k) + 1) * delta)) / (1.0 + b2)


# -- QFT ----------------------------------------------------------------------

def qft_gates(num_qubits: int, qubits=None):
    """Gate list of the swap-free QFT; ``qubits[i]`` plays the role of wire i."""
    wires = list(range(num_qubits)) if qubits is None else list(qubits)
    gates = []
    for i in range(num_qubits):
        gates.append(standard_gate("H", wires[i]))
        for k in range(2, num_qubits - i + 1):
            gates.append(controlled_phase(k, control=wires[i + k - 1], target=wires[i]))
    return gates


def build_qft(spec: QftSpec) -> Circuit:
    gates = qft_gates(spec.num_qubits)
    if spec.inverse:
        gates = [g.adjoint() for g in reversed(gates)]
    return Circuit(spec.num_qubits, gates,
                   metadata={"builder": "qft", "num_qubits": spec.num_qubits, "inverse": spec.inverse})


def bit_reversal(num_qubits: int) -> np.ndarray:
    idx = np.arange(1 << num_qubits)
    rev = np.zeros_like(idx)
    for b in range(num_qubits):
        rev |= ((idx >> b) & 1) << (num_qubits - 1 - b)
    return rev


def dft_matrix(num_qubits: int) -> np.ndarray:
    d = 1 << num_qubits
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


# -- phase estimation ---------------------------------------------------------

def phase_unitary(phase: float) -> np.ndarray:
    """diag(1, e^{2 pi i phase}); |1> is the eigenvector with the phase."""
    return np.diag([1.0, np.exp(2j * np.pi * phase)])


def entangled_eigenvector() -> PureState:
    return PureState.normalized([0, 1, 1, 0])


def entangled_phase_unitary(phase: float) -> np.ndarray:
    """Two-qubit unitary with (|01> + |10>)/sqrt(2) as eigenvector of phase ``phase``.

    The eigenvector gets e^{2 pi i phase}; its orthogonal complement is left
    untouched.
    """
    v = entangled_eigenvector().amplitudes
    return np.eye(4) + (np.exp(2j * np.pi * phase) - 1) * np.outer(v, v.conj())


def build_qpe(spec: QpeSpec) -> Circuit:
    """Phase estimation with ``t`` precision qubits on top of the eigenvector register.

    Precision qubit ``t-1-j`` controls U^{2^j}. The inverse QFT is the adjoint
    of the swap-free QFT wired bottom-up on the precision register, so for an
    exact phase k/2^t the register ends in the basis state whose bits are k
    written least-significant first (see :func:`qpe_readout`).
    """
    t, m = spec.precision_qubits, spec.target_qubits
    target = tuple(range(t, t + m))
    c = Circuit(t + m, metadata={"builder": "qpe", "precision_qubits": t,
                                 "target_qubits": m, "phase": spec.phase})
    c.extend(standard_gate("H", q) for q in range(t))
    for j in range(t):
        c.append(controlled_unitary_power(spec.unitary, 2**j, control=t - 1 - j, targets=target))
    c.metadata["inverse_qft_start"] = len(c.gates)
    fwd = qft_gates(t, qubits=list(reversed(range(t))))
    c.extend(g.adjoint() for g in reversed(fwd))
    return c


def qpe_input(spec: QpeSpec) -> PureState:
    return PureState.zeros(spec.precision_qubits).tensor(spec.eigenvector)


def qpe_readout(psi: PureState, precision_qubits: int) -> tuple[int, float]:
    """Most likely phase numerator k and its probability."""
    probs = np.abs(psi.amplitudes.reshape(1 << precision_qubits, -1)) ** 2
    marg = probs.sum(axis=1)
    idx = int(np.argmax(marg))
    k = int(bit_reversal(precision_qubits)[idx])
    return k, float(marg[idx])
