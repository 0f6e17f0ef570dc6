"""Gate sets for the three circuits and statevector gate application.

Multi-controlled gates are kept whole (no decomposition into a universal
set). A gate's matrix acts on ``targets`` in the order listed, with the first
target as the most significant qubit of the gate's own basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .linalg import as_matrix, is_unitary
from .state import PureState

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

_STANDARD = {"H": H, "X": X, "Z": Z}


@dataclass(frozen=True)
class Gate:
    label: str
    matrix: np.ndarray
    targets: tuple[int, ...]

    def __post_init__(self):
        m = as_matrix(self.matrix)
        targets = tuple(int(t) for t in self.targets)
        if m.shape != (1 << len(targets),) * 2:
            raise ValueError(f"{self.label}: matrix {m.shape} does not match {len(targets)} targets")
        if len(set(targets)) != len(targets):
            raise ValueError(f"{self.label}: duplicate target qubits {targets}")
        if min(targets, default=0) < 0:
            raise ValueError(f"{self.label}: negative qubit index in {targets}")
        if not is_unitary(m):
            raise ValueError(f"{self.label}: matrix is not unitary")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "targets", targets)

    @property
    def arity(self) -> int:
        return len(self.targets)

    @property
    def single_qubit(self) -> bool:
        return self.arity == 1

    def on(self, *targets: int) -> "Gate":
        """Same operator placed on other register qubits."""
        return Gate(self.label, self.matrix, targets)

    def adjoint(self) -> "Gate":
        adj = self.matrix.conj().T
        if np.allclose(adj, self.matrix, atol=1e-12, rtol=0):
            return self
        label = self.label[:-1] if self.label.endswith("^") else self.label + "^"
        return Gate(label, adj, self.targets)

    def describe(self) -> str:
        return f"{self.label}@{'-'.join(map(str, self.targets))}"


def _targets(targets: Optional[Sequence[int]], arity: int) -> tuple[int, ...]:
    if targets is None:
        return tuple(range(arity))
    if len(targets) != arity:
        raise ValueError(f"expected {arity} target qubits, got {len(targets)}")
    return tuple(targets)


def standard_gate(name: str, qubit: int = 0) -> Gate:
    try:
        m = _STANDARD[name.upper()]
    except KeyError:
        raise ValueError(f"unknown gate {name!r}; expected one of {sorted(_STANDARD)}") from None
    return Gate(name.upper(), m, (qubit,))


def controlled_phase(k: int, control: int = 0, target: int = 1) -> Gate:
    """CR_k = diag(1, 1, 1, exp(2 pi i / 2^k)) on (control, target)."""
    if k < 1:
        raise ValueError(f"CR_k needs k >= 1, got {k}")
    m = np.diag([1, 1, 1, np.exp(2j * np.pi / 2**k)])
    return Gate(f"CRk({k})", m, (control, target))


def multi_controlled_x(goal: str, targets: Optional[Sequence[int]] = None) -> Gate:
    """Flip the last target iff the leading targets read ``goal``.

    1-bits are closed controls and 0-bits open controls, i.e.
    ``|goal><goal| (x) X + sum_{j != goal} |j><j| (x) I``.
    """
    if not goal or set(goal) - {"0", "1"}:
        raise ValueError(f"goal must be a nonempty bitstring, got {goal!r}")
    dim = 1 << (len(goal) + 1)
    m = np.eye(dim, dtype=complex)
    g = int(goal, 2)
    m[[2 * g, 2 * g + 1]] = m[[2 * g + 1, 2 * g]]
    return Gate(f"CpsiX({goal})", m, _targets(targets, len(goal) + 1))


def multi_controlled_z(n_controls: int, targets: Optional[Sequence[int]] = None) -> Gate:
    """Z on the last target iff every control is |0> (open controls)."""
    if n_controls < 1:
        raise ValueError("need at least one control")
    m = np.eye(1 << (n_controls + 1), dtype=complex)
    m[1, 1] = -1
    return Gate("C0Z", m, _targets(targets, n_controls + 1))


def controlled_unitary_power(
    u, power: int, control: int = 0, targets: Optional[Sequence[int]] = None
) -> Gate:
    """Block-diagonal ``[I, u^power]`` with ``control`` as the leading qubit."""
    u = as_matrix(u)
    if not is_unitary(u):
        raise ValueError("controlled_unitary_power needs a unitary u")
    if power < 1 or power & (power - 1):
        raise ValueError(f"power must be a power of two, got {power}")
    m_qubits = u.shape[0].bit_length() - 1
    if 1 << m_qubits != u.shape[0]:
        raise ValueError(f"u has dimension {u.shape[0]}, not a power of two")
    up = np.linalg.matrix_power(u, power)
    d = u.shape[0]
    m = np.eye(2 * d, dtype=complex)
    m[d:, d:] = up
    tg = _targets(targets, m_qubits) if targets is not None else tuple(range(1, m_qubits + 1))
    return Gate(f"CU({power})", m, (control,) + tuple(tg))


def apply(gate: Gate, psi: PureState) -> PureState:
    """Apply ``gate`` at its target qubits, identity elsewhere."""
    n = psi.num_qubits
    if max(gate.targets) >= n:
        raise ValueError(f"{gate.describe()} addresses qubits outside a {n}-qubit register")
    k = gate.arity
    t = psi.amplitudes.reshape((2,) * n)
    t = np.moveaxis(t, gate.targets, range(k))
    shape = t.shape
    t = (gate.matrix @ t.reshape(1 << k, -1)).reshape(shape)
    t = np.moveaxis(t, range(k), gate.targets)
    return PureState(t.reshape(-1))


def embed(gate: Gate, num_qubits: int) -> np.ndarray:
    """Full 2^N x 2^N operator of ``gate`` via a Kronecker product and a basis permutation."""
    if max(gate.targets) >= num_qubits:
        raise ValueError("gate addresses qubits outside the register")
    rest = [q for q in range(num_qubits) if q not in gate.targets]
    order = list(gate.targets) + rest
    full = np.kron(gate.matrix, np.eye(1 << len(rest)))
    # perm[x] = index of basis state x after moving the target qubits to the front
    dim = 1 << num_qubits
    perm = np.empty(dim, dtype=np.int64)
    for x in range(dim):
        bits = [(x >> (num_qubits - 1 - q)) & 1 for q in order]
        perm[x] = int("".join(map(str, bits)), 2)
    return full[np.ix_(perm, perm)]
