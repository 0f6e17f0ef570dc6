"""Pure states, density matrices and partial traces of qubit registers.

Qubit 0 is the most significant bit of a computational-basis label, so the
amplitude of ``|q0 q1 ... q_{N-1}>`` sits at index ``int("q0q1...", 2)``.
Subsystems are selected with integer bitmasks in which bit ``i`` marks
qubit ``i`` (note: mask bit order is independent of basis-label order).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .linalg import HERMITIAN_TOL, hermiticity_defect

NORM_TOL = 1e-10
TRACE_TOL = 1e-10


# -- qubit sets ---------------------------------------------------------------

def mask_of(qubits: Iterable[int]) -> int:
    m = 0
    for q in qubits:
        m |= 1 << q
    return m


def qubits_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask >> i:
        if mask >> i & 1:
            out.append(i)
        i += 1
    return tuple(out)


def complement(mask: int, num_qubits: int) -> int:
    return ((1 << num_qubits) - 1) & ~mask


def _check_mask(mask: int, num_qubits: int) -> None:
    if mask < 0 or mask >> num_qubits:
        raise ValueError(f"qubit set {mask:#b} outside register of {num_qubits} qubits")


# -- pure states --------------------------------------------------------------

@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        n = amps.size.bit_length() - 1
        if amps.size == 0 or 1 << n != amps.size:
            raise ValueError(f"amplitude count {amps.size} is not a power of two")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized (|psi|^2 = {norm!r})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amps / norm)

    @classmethod
    def zeros(cls, num_qubits: int) -> "PureState":
        return cls.from_bitstring("0" * num_qubits)

    @classmethod
    def from_bitstring(cls, bits: str) -> "PureState":
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"invalid bitstring {bits!r}")
        amps = np.zeros(1 << len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(amps)

    @classmethod
    def random(cls, num_qubits: int, rng: np.random.Generator) -> "PureState":
        """Haar-random state: i.i.d. standard complex Gaussians, normalized."""
        dim = 1 << num_qubits
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return cls.normalized(z)

    def tensor(self, other: "PureState") -> "PureState":
        return PureState.normalized(np.kron(self.amplitudes, other.amplitudes))

    def probability(self, index: int) -> float:
        return float(abs(self.amplitudes[index]) ** 2)

    def fidelity(self, other: "PureState") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


def bell_state() -> PureState:
    return PureState.normalized([1, 0, 0, 1])


def ghz_state(num_qubits: int) -> PureState:
    amps = np.zeros(1 << num_qubits, dtype=complex)
    amps[0] = amps[-1] = 1.0
    return PureState.normalized(amps)


# -- density matrices ---------------------------------------------------------

@dataclass(frozen=True)
class DensityMatrix:
    """Reduced state of the register qubits listed in ``labels``.

    ``labels`` are strictly increasing register indices; the matrix uses the
    same most-significant-first ordering among those qubits as the register.
    """

    matrix: np.ndarray
    labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        dim = m.shape[0]
        if m.ndim != 2 or m.shape != (dim, dim) or dim & (dim - 1):
            raise ValueError(f"density matrix must be 2^k square, got {m.shape}")
        k = dim.bit_length() - 1
        labels = tuple(self.labels) if self.labels else tuple(range(k))
        if len(labels) != k:
            raise ValueError(f"{len(labels)} labels for a {k}-qubit matrix")
        if any(b <= a for a, b in zip(labels, labels[1:])):
            raise ValueError(f"labels must be strictly increasing: {labels}")
        if hermiticity_defect(m) > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix has trace {tr!r}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", labels)

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    @property
    def mask(self) -> int:
        return mask_of(self.labels)


def density_of(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()), tuple(range(psi.num_qubits)))


def partial_trace(rho: DensityMatrix, traced: int | Sequence[int]) -> DensityMatrix:
    """Trace out the register qubits in ``traced`` (bitmask or index list).

    Works for any subset of ``rho.labels``; the traced qubits need not be
    contiguous or trailing.
    """
    traced_mask = traced if isinstance(traced, (int, np.integer)) else mask_of(traced)
    traced_mask = int(traced_mask)
    if traced_mask & ~rho.mask:
        raise ValueError(f"traced qubits {qubits_of(traced_mask & ~rho.mask)} not in {rho.labels}")
    keep = tuple(q for q in rho.labels if not traced_mask >> q & 1)
    if not keep:
        raise ValueError("cannot trace out every qubit")
    if len(keep) == len(rho.labels):
        return rho

    k = rho.num_qubits
    t = rho.matrix.reshape((2,) * (2 * k))
    # row axis i and column axis k + i share a subscript when qubit i is traced
    letters = [chr(ord("a") + i) for i in range(2 * k)]
    row, col, out_row, out_col = [], [], [], []
    for pos, q in enumerate(rho.labels):
        r, c = letters[pos], letters[k + pos]
        if traced_mask >> q & 1:
            row.append(r)
            col.append(r)
        else:
            row.append(r)
            col.append(c)
            out_row.append(r)
            out_col.append(c)
    spec = "".join(row + col) + "->" + "".join(out_row + out_col)
    dim = 1 << len(keep)
    reduced = np.einsum(spec, t).reshape(dim, dim)
    return DensityMatrix(reduced, keep)


def reduced_matrix(amplitudes: np.ndarray, num_qubits: int, keep: int) -> np.ndarray:
    """Reduced density matrix straight from amplitudes, as a bare array."""
    kept = [q for q in range(num_qubits) if keep >> q & 1]
    rest = [q for q in range(num_qubits) if not keep >> q & 1]
    t = amplitudes.reshape((2,) * num_qubits).transpose(kept + rest)
    m = t.reshape(1 << len(kept), -1)
    return m @ m.conj().T


def reduced_density(psi: PureState, keep: int | Sequence[int]) -> DensityMatrix:
    """Reduced state on ``keep`` without forming the 2^N x 2^N global matrix."""
    keep_mask = int(keep) if isinstance(keep, (int, np.integer)) else mask_of(keep)
    if keep_mask == 0:
        raise ValueError("keep set must be nonempty")
    _check_mask(keep_mask, psi.num_qubits)
    return DensityMatrix(reduced_matrix(psi.amplitudes, psi.num_qubits, keep_mask), qubits_of(keep_mask))
