"""Dense Hermitian eigensolver by cyclic Jacobi rotations."""

from __future__ import annotations

import numpy as np

from .errors import HermiticityError

HERMITIAN_RTOL = 1e-10


def hermiticity_defect(a: np.ndarray) -> float:
    """max |A - A^H| relative to max |A| (0 for the zero matrix)."""
    a = np.asarray(a)
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(a - a.conj().T)) / scale)


def check_hermitian(a: np.ndarray, rtol: float = HERMITIAN_RTOL) -> None:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise HermiticityError(f"expected a square matrix, got shape {a.shape}")
    defect = hermiticity_defect(a)
    if defect > rtol:
        raise HermiticityError(f"matrix is not Hermitian (relative defect {defect:.3e})")


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    app = a[p, p].real
    aqq = a[q, q].real
    tau = (aqq - app) / (2.0 * r)
    t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # Phase diag(1, conj(phase)) makes a[p, q] real; then a real rotation zeroes it.
    u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ u
    a[idx, :] = u.conj().T @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = app - t * r
    a[q, q] = aqq + t * r
    v[:, idx] = v[:, idx] @ u


def jacobi_eigh(
    a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    Sweeps over all off-diagonal pairs in row order until every off-diagonal
    magnitude is below ``tol * ||A||_F``. Returned eigenvector columns are in
    the same order as the eigenvalues.
    """
    a = np.array(a, dtype=complex)
    check_hermitian(a)
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    norm = np.linalg.norm(a)
    if n > 1 and norm > 0.0:
        threshold = tol * norm
        for _ in range(max_sweeps):
            off = np.abs(np.triu(a, 1))
            if off.max() < threshold:
                break
            # Pairs are fixed at sweep start; rotations only grow entries that
            # a later sweep will revisit.
            rows, cols = np.nonzero(off >= threshold)
            for p, q in zip(rows.tolist(), cols.tolist()):
                if abs(a[p, q]) >= threshold:
                    _rotate(a, v, p, q)
        else:
            raise ArithmeticError("Jacobi iteration did not converge")
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
