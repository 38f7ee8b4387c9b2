"""Dense complex linear algebra for small Hermitian systems.

Provides a deterministic cyclic-Jacobi eigensolver, spectral time
evolution, and matrix elements. Everything here is a pure function on
immutable values; nothing caches or mutates shared state, so concurrent
callers need no synchronization.

The solver is tuned for the tiny matrices this package cares about
(dim <= 8 in practice, usable up to a few dozen): one-sided accuracy
tricks and blocking would be noise at this size, while Jacobi gives
reproducible eigenvectors and near-machine orthogonality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import ConvergenceFailure, DimensionMismatch, NonHermitianInput

#: absolute tolerance on |H - H^dagger| entries and on diagonal imaginary parts
HERMITICITY_ATOL = 1e-13

#: convergence: off-diagonal Frobenius norm <= OFFDIAG_TOL * ||H||_F
OFFDIAG_TOL = 1e-14

#: hard cap on cyclic sweeps before giving up
MAX_SWEEPS = 100


def require_hermitian(matrix, atol: float = HERMITICITY_ATOL) -> NDArray[np.complex128]:
    """Validate and return ``matrix`` as a square complex Hermitian array.

    Raises NonHermitianInput if the matrix is not square, contains
    non-finite entries, or violates ``|m[i, j] - conj(m[j, i])| <= atol``
    (which also bounds diagonal imaginary parts).
    """
    m = np.array(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonHermitianInput(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise NonHermitianInput("matrix contains non-finite entries")
    asym = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if asym > atol:
        raise NonHermitianInput(
            f"matrix is not Hermitian: max |m - m^H| = {asym:.3e} > {atol:.1e}"
        )
    return m


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and unit eigenvectors of a Hermitian matrix.

    Column ``k`` of ``eigenvectors`` belongs to ``eigenvalues[k]``. Each
    column is phase-fixed so its largest-magnitude component is real and
    positive, which makes golden tests reproducible.
    """

    eigenvalues: NDArray[np.float64]
    eigenvectors: NDArray[np.complex128]

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def _order_and_fix_phase(w, v):
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    n = w.shape[0]
    # ties (exactly equal eigenvalues) ordered by dominant-component index
    i = 0
    while i < n:
        j = i + 1
        while j < n and w[j] == w[i]:
            j += 1
        if j - i > 1:
            dominant = [int(np.argmax(np.abs(v[:, k]))) for k in range(i, j)]
            v[:, i:j] = v[:, i + np.argsort(dominant, kind="stable")]
        i = j
    for k in range(n):
        lead = v[np.argmax(np.abs(v[:, k])), k]
        v[:, k] *= np.conj(lead) / abs(lead)
    return w, v


def eigendecompose(matrix) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps row-major over the strict upper triangle, annihilating each
    entry with a complex Givens rotation, until the off-diagonal
    Frobenius norm falls below ``OFFDIAG_TOL`` times the input norm.
    Deterministic: identical input bits give identical output bits.

    Raises NonHermitianInput for invalid input and ConvergenceFailure
    if MAX_SWEEPS sweeps do not converge (unreachable for sane sizes;
    Jacobi converges quadratically).
    """
    a = require_hermitian(matrix)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return SpectralDecomposition(np.zeros(n), v)

    for sweep in range(MAX_SWEEPS + 1):
        off2 = np.abs(a) ** 2
        np.fill_diagonal(off2, 0.0)
        if np.sqrt(off2.sum()) <= OFFDIAG_TOL * scale:
            break
        if sweep == MAX_SWEEPS:
            raise ConvergenceFailure(
                f"Jacobi did not converge within {MAX_SWEEPS} sweeps (dim {n})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue  # numerically zero; rotating would divide by ~0
                # dephase so the pivot is real, then a standard real rotation
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                phc = np.conj(phase)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * phc * col_q
                a[:, q] = s * col_p + c * phc * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v_p = v[:, p].copy()
                v_q = v[:, q].copy()
                v[:, p] = c * v_p - s * phc * v_q
                v[:, q] = s * v_p + c * phc * v_q

    w, v = _order_and_fix_phase(np.diag(a).real.copy(), v)
    return SpectralDecomposition(w, v)


def evolve(
    decomposition: SpectralDecomposition, psi0, t: float, hbar: float
) -> NDArray[np.complex128]:
    """Propagate a state under exp(-i H t / hbar) using the spectral form.

    Returns sum_k exp(-i lambda_k t / hbar) |v_k><v_k|psi0>. Unitary, so
    the input norm is preserved to roundoff.
    """
    psi = np.asarray(psi0, dtype=np.complex128)
    if psi.shape != (decomposition.dim,):
        raise DimensionMismatch(
            f"state has shape {psi.shape}, expected ({decomposition.dim},)"
        )
    if not hbar > 0.0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    vecs = decomposition.eigenvectors
    phases = np.exp(-1j * decomposition.eigenvalues * (t / hbar))
    return vecs @ (phases * (vecs.conj().T @ psi))


def matrix_element(bra, matrix, ket) -> complex:
    """Return <bra|matrix|ket> for a Hermitian operator.

    Conjugate-symmetric by construction: swapping bra and ket conjugates
    the result (up to roundoff).
    """
    m = require_hermitian(matrix)
    b = np.asarray(bra, dtype=np.complex128)
    k = np.asarray(ket, dtype=np.complex128)
    if b.shape != (m.shape[0],) or k.shape != (m.shape[0],):
        raise DimensionMismatch(
            f"bra {b.shape} / ket {k.shape} do not match operator dim {m.shape[0]}"
        )
    return complex(np.vdot(b, m @ k))
