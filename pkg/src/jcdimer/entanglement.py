"""Reduced density matrices, Wootters concurrence, von Neumann entropy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import build_sectors
from .dynamics import QUBIT_ORDER, PureState

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10

# sigma_y (x) sigma_y in the |ee>, |eg>, |ge>, |gg> basis (real entries).
_SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, trace-one, positive-semidefinite matrix."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Real eigenvalues with small negative roundoff clipped to zero."""
        return np.clip(np.linalg.eigvalsh(self.matrix), 0.0, None)


def _check_density(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {mat.shape}")
    if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
        raise ValueError("density matrix is not Hermitian within tolerance")
    if abs(np.trace(mat).real - 1.0) > TRACE_TOL or abs(np.trace(mat).imag) > TRACE_TOL:
        raise ValueError("density matrix trace deviates from 1 beyond tolerance")
    return mat


def reduce_to_qubits(state: PureState) -> DensityMatrix:
    """Two-qubit reduced density matrix, tracing out both field modes.

    Basis order |ee>, |eg>, |ge>, |gg>.  For a pair of qubit
    configurations the amplitudes at equal photon numbers (n1, n2) live in
    different sectors; thanks to the canonical layout they form aligned
    contiguous slices, so the trace is a sum of inner products over the
    shared photon total.
    """
    M = state.cutoff
    sectors = build_sectors(M)
    rho = np.zeros((4, 4), dtype=complex)
    for a, qa in enumerate(QUBIT_ORDER):
        ea = qa[0] + qa[1]
        for b, qb in enumerate(QUBIT_ORDER):
            if b < a:
                continue
            eb = qb[0] + qb[1]
            acc = 0.0 + 0.0j
            for photons in range(0, M + 1 - max(ea, eb)):
                Na, Nb = photons + ea, photons + eb
                sa = sectors[Na].blocks[qa][0]
                sb = sectors[Nb].blocks[qb][0]
                va = state.blocks[Na][sa : sa + photons + 1]
                vb = state.blocks[Nb][sb : sb + photons + 1]
                acc += np.vdot(vb, va)
            rho[a, b] = acc
            rho[b, a] = acc.conjugate()
    return DensityMatrix(matrix=rho)


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Returns max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) where the
    l_i are the decreasing eigenvalues of rho (sy x sy) rho* (sy x sy).
    The square roots are evaluated as the singular values of
    sqrt(rho) (sy x sy) conj(sqrt(rho)), which is algebraically identical
    and avoids the half-power precision loss of rooting near-zero
    eigenvalues.
    """
    mat = rho.matrix if isinstance(rho, DensityMatrix) else rho
    mat = _check_density(mat)
    if mat.shape != (4, 4):
        raise ValueError(f"concurrence is defined for 4x4 matrices, got {mat.shape}")
    evals, evecs = np.linalg.eigh(mat)
    root = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    kernel = root @ _SPIN_FLIP @ root.conj()
    sv = np.linalg.svd(kernel, compute_uv=False)
    return max(0.0, float(sv[0] - sv[1] - sv[2] - sv[3]))


def pure_concurrence(amps) -> float:
    """Concurrence 2 |a_ee a_gg - a_eg a_ge| of a pure two-qubit state."""
    a = np.asarray(amps, dtype=complex)
    return 2.0 * abs(a[0] * a[3] - a[1] * a[2])


def reduce_to_field1(grid: np.ndarray) -> DensityMatrix:
    """Reduced density matrix of mode 1 from a two-mode amplitude grid.

    ``grid[l, m]`` is the amplitude of |l>|m>; the partial trace over
    mode 2 is rho[l, l'] = sum_m grid[l, m] grid*[l', m].
    """
    grid = np.asarray(grid, dtype=complex)
    if grid.ndim != 2:
        raise ValueError(f"two-mode amplitude grid must be 2D, got shape {grid.shape}")
    return DensityMatrix(matrix=grid @ grid.conj().T)


def von_neumann_entropy(rho) -> float:
    """Entropy -sum p log2 p over the eigenvalues of a density matrix.

    Eigenvalues at or below 1e-12 contribute zero.  The result is in
    ebits and is not capped at 1.
    """
    mat = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    evals = np.linalg.eigvalsh(mat)
    evals = evals[evals > 1e-12]
    if not evals.size:
        return 0.0
    return max(0.0, float(-np.sum(evals * np.log2(evals))))
