"""Dense complex matrix kernel.

Products and Kronecker products are thin checked wrappers over numpy. The
Hermitian eigensolver is a cyclic Jacobi iteration with complex Givens
rotations, so every entropy in the package comes from one self-contained
spectral routine.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

HERMITIAN_TOL = 1e-10
EIG_TOL = 1e-12
MAX_SWEEPS = 100


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def allclose(a, b, tol: float = 1e-10) -> bool:
    """Element-wise equality within an absolute tolerance."""
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return allclose(u @ u.conj().T, np.eye(u.shape[0]), tol)


def hermiticity_defect(m) -> float:
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        if self.eigenvectors is None:
            raise ValueError("spectrum was computed without eigenvectors")
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eigenvalues(
    m,
    vectors: bool = False,
    herm_tol: float = HERMITIAN_TOL,
    tol: float = EIG_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> Spectrum:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary and then applies the classical real Jacobi rotation, so
    the combined 2x2 transform on columns ``(p, q)`` is::

        [[c,              s            ],
         [-s e^{-i phi},  c e^{-i phi} ]]

    Sweeps continue until the Frobenius norm of the off-diagonal part drops
    below ``tol``. Eigenvalues are returned in descending order.
    """
    a = as_matrix(m).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"matrix must be square, got {a.shape}")
    defect = hermiticity_defect(a)
    if defect > herm_tol:
        raise NotHermitianError(f"max |m - m^dagger| = {defect:.3e} exceeds {herm_tol:.1e}")
    # symmetrize so rounding noise below herm_tol cannot bias the result
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex) if vectors else None

    sweeps = 0
    while _off_norm(a) >= tol:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {_off_norm(a):.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = a[:, [p, q]] @ rot
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = rot.conj().T @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[p, q] = a[q, p] = 0.0
                a[p, p], a[q, q] = a[p, p].real, a[q, q].real
                if v is not None:
                    vcols = v[:, [p, q]] @ rot
                    v[:, p], v[:, q] = vcols[:, 0], vcols[:, 1]

    evals = np.diag(a).real.copy()
    order = np.argsort(evals)[::-1]
    return Spectrum(
        eigenvalues=evals[order],
        eigenvectors=None if v is None else v[:, order],
        sweeps=sweeps,
    )
