"""Von Neumann entropies, entropy vectors and information quantities (bits)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import hermitian_eigenvalues
from .state import DensityMatrix, PureState, reduced_matrix

TRUNCATION_EPS = 1e-12


def entropy_from_eigenvalues(eigenvalues, eps: float = TRUNCATION_EPS) -> float:
    lam = np.asarray(eigenvalues, dtype=float)
    lam = np.where(lam < eps, 0.0, lam)
    total = lam.sum()
    if abs(total - 1.0) > eps and total > 0:
        lam = lam / total
    lam = lam[lam > 0]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def entropy_bits(rho, eps: float = TRUNCATION_EPS) -> float:
    """S(rho) = -tr(rho log2 rho), via eigenvalues with tiny ones dropped."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else rho
    return entropy_from_eigenvalues(hermitian_eigenvalues(m).eigenvalues, eps)


@dataclass(frozen=True)
class EntropyVector:
    """Entropies of every subset of an N-qubit register, indexed by bitmask.

    ``values[0]`` is the empty set and ``values[2**N - 1]`` the full register.
    """

    num_qubits: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (1 << self.num_qubits,):
            raise ValueError(f"expected {1 << self.num_qubits} entries, got {v.shape}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __getitem__(self, mask):
        return self.values[mask]

    @property
    def full_mask(self) -> int:
        return (1 << self.num_qubits) - 1

    def proper(self) -> np.ndarray:
        """Entries of the nonempty proper subsets, ascending bitmask."""
        return self.values[1:-1]

    def as_dict(self) -> dict[int, float]:
        return {m: float(self.values[m]) for m in range(1, 1 << self.num_qubits)}


def entropy_vector(psi: PureState, eps: float = TRUNCATION_EPS) -> EntropyVector:
    """Entropy of every subset; only subsets of size <= N/2 are diagonalized.

    Larger subsets take the value of their complement, which is exact for a
    pure global state.
    """
    n = psi.num_qubits
    full = (1 << n) - 1
    values = np.zeros(1 << n)
    for mask in range(1, full):
        size = bin(mask).count("1")
        comp = full ^ mask
        if size > n - size or (2 * size == n and mask > comp):
            continue
        s = entropy_bits(reduced_matrix(psi.amplitudes, n, mask), eps)
        values[mask] = values[comp] = s
    return EntropyVector(n, values)


def _disjoint(*blocks) -> None:
    for i, a in enumerate(blocks):
        if np.any(np.asarray(a) == 0):
            raise ValueError("subsystems must be nonempty")
        for b in blocks[i + 1:]:
            if np.any(np.bitwise_and(a, b)):
                raise ValueError("subsystems must be disjoint")


def mutual_information(ev: EntropyVector, a, b) -> float:
    _disjoint(a, b)
    return ev[a] + ev[b] - ev[a | b]


def conditional_mutual_information(ev: EntropyVector, a, b, c) -> float:
    """I(A:B|C) = S(AC) + S(BC) - S(ABC) - S(C)."""
    _disjoint(a, b, c)
    return ev[a | c] + ev[b | c] - ev[a | b | c] - ev[c]


def tripartite_information(ev: EntropyVector, a, b, c) -> float:
    """Returns -I3(A:B:C), the combination that is nonnegative for holographic states."""
    _disjoint(a, b, c)
    return (ev[a | b] + ev[b | c] + ev[a | c]
            - ev[a] - ev[b] - ev[c] - ev[a | b | c])


def norm2(ev: EntropyVector) -> float:
    return float(np.linalg.norm(ev.proper()))
