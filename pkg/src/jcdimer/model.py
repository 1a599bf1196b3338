"""Interaction Hamiltonian per excitation sector and the dispersive oracle.

The full Hamiltonian contains local detuning terms for each mode,
excitation-conserving qubit-field couplings, and a photon-hopping term
between the modes.  Because total excitation is conserved, each sector is
assembled as an independent dense Hermitian block.  In the far
off-resonant regime the two-qubit dynamics reduces to an exchange
interaction whose closed form serves as an analytic cross-check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DispersiveRegimeError
from .hilbert import SectorBasis, truncation_bound

#: Dimensionless factor multiplying sqrt(n_bar + 1) * g / sqrt(2) below which
#: the dispersive closed form is refused.  The condition itself only states
#: "much greater"; 3 keeps the far off-resonant parameter sets valid while
#: rejecting the hopping-equals-detuning pole region.
DEFAULT_VALIDITY_THRESHOLD = 3.0


@dataclass(frozen=True)
class SystemParams:
    """Physical knobs of the two-site model.

    detuning and hopping are expressed in units of the qubit-field
    coupling; the coupling itself sets the global rate scale and defaults
    to 1.  ``cutoff`` is the total-excitation truncation and defaults to
    the bound implied by alpha.  Explicit cutoffs below the bound are
    permitted (small spaces are useful for brute-force cross-checks).
    """

    alpha: float
    detuning: float = 0.0
    hopping: float = 0.0
    g: float = 1.0
    cutoff: int | None = None

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"coherent amplitude must be non-negative, got {self.alpha}")
        if self.g <= 0:
            raise ValueError(f"coupling must be positive, got {self.g}")
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", truncation_bound(self.alpha))
        elif self.cutoff < 0:
            raise ValueError(f"cutoff must be non-negative, got {self.cutoff}")

    @property
    def n_bar(self) -> float:
        """Mean photon number per mode of the initial coherent states."""
        return self.alpha * self.alpha


@dataclass(frozen=True)
class SectorHamiltonian:
    """Dense Hermitian block of the interaction Hamiltonian for one sector."""

    N: int
    matrix: np.ndarray


def _sector_matrix(params: SystemParams, basis: SectorBasis) -> np.ndarray:
    """Real symmetric sector matrix (all couplings are real)."""
    N = basis.N
    g = params.g
    delta = params.detuning * g
    hop = params.hopping * g
    dim = basis.dim
    H = np.zeros((dim, dim))

    for (q1, q2), (start, length) in basis.blocks.items():
        photons = N - q1 - q2
        n1 = np.arange(length)
        rows = start + n1
        # Detuning acts on the photon numbers; n1 + n2 is constant per block.
        H[rows, rows] = delta * photons

        # Qubit 1 de-excitation: (1, q2, n1, n2) -> (0, q2, n1 + 1, n2).
        if q1 == 1:
            tgt = basis.blocks[(0, q2)][0] + n1 + 1
            val = g * np.sqrt(n1 + 1.0)
            H[rows, tgt] += val
            H[tgt, rows] += val

        # Qubit 2 de-excitation: (q1, 1, n1, n2) -> (q1, 0, n1, n2 + 1).
        if q2 == 1:
            tgt = basis.blocks[(q1, 0)][0] + n1
            val = g * np.sqrt(photons - n1 + 1.0)
            H[rows, tgt] += val
            H[tgt, rows] += val

        # Hopping: (n1, n2) -> (n1 - 1, n2 + 1) with sqrt(n1 (n2 + 1)).
        if hop != 0.0 and photons >= 1:
            m1 = np.arange(1, photons + 1)
            src = start + m1
            tgt = start + m1 - 1
            val = hop * np.sqrt(m1 * (photons - m1 + 1.0))
            H[src, tgt] += val
            H[tgt, src] += val

    return H


def build_sector_hamiltonian(params: SystemParams, basis: SectorBasis) -> SectorHamiltonian:
    """Assemble the interaction Hamiltonian restricted to one sector.

    All couplings conserve total excitation, so no matrix element leaves
    the sector.  Raises ConfigurationError when the sector lies outside
    the configured cutoff.
    """
    if basis.N > params.cutoff:
        raise ConfigurationError(
            f"sector {basis.N} exceeds the configured cutoff {params.cutoff}"
        )
    return SectorHamiltonian(N=basis.N, matrix=_sector_matrix(params, basis).astype(complex))


@dataclass(frozen=True)
class EffectiveModel:
    """Dispersive exchange model in the delocalized-mode picture.

    delta1p and delta2p are the detunings of the symmetric and
    antisymmetric mode combinations; lam is the induced qubit-qubit
    exchange rate.  validity_ratio records how far the construction sits
    inside the far off-resonant window.
    """

    delta1p: float
    delta2p: float
    lam: float
    validity_ratio: float
    forced: bool = field(default=False, compare=False)


def effective_model(
    params: SystemParams,
    threshold: float = DEFAULT_VALIDITY_THRESHOLD,
    force: bool = False,
) -> EffectiveModel:
    """Construct the dispersive exchange model, rejecting invalid regimes.

    The delocalized-mode detunings are detuning +- hopping (times g); the
    exchange rate is g^2/(2 delta1') - g^2/(2 delta2').  Construction
    fails at the pole (either detuning zero) and, unless forced, whenever
    min(|delta1'|, |delta2'|) < threshold * sqrt(n_bar + 1) * g / sqrt(2).
    """
    g = params.g
    d1 = (params.detuning + params.hopping) * g
    d2 = (params.detuning - params.hopping) * g
    scale = math.sqrt(params.n_bar + 1.0) * g / math.sqrt(2.0)
    if min(abs(d1), abs(d2)) == 0.0:
        raise DispersiveRegimeError(
            "effective exchange rate diverges when detuning equals +-hopping",
            validity_ratio=0.0,
        )
    ratio = min(abs(d1), abs(d2)) / scale
    forced = False
    if ratio < threshold:
        if not force:
            raise DispersiveRegimeError(
                f"far off-resonant condition violated: validity ratio {ratio:.3g} "
                f"below threshold {threshold:.3g}",
                validity_ratio=ratio,
            )
        warnings.warn(
            f"effective model forced outside its validity window (ratio {ratio:.3g})",
            stacklevel=2,
        )
        forced = True
    lam = g * g / (2.0 * d1) - g * g / (2.0 * d2)
    return EffectiveModel(delta1p=d1, delta2p=d2, lam=lam, validity_ratio=ratio, forced=forced)


def effective_eg_concurrence(model: EffectiveModel, t: float) -> float:
    """Concurrence of the closed-form exchange evolution started in |e g>.

    The state cos(lam t)|e g> - i sin(lam t)|g e> has concurrence
    |sin(2 lam t)|, independent of the field states.
    """
    return abs(math.sin(2.0 * model.lam * t))
