"""Truncated Hilbert space of two qubits and two bosonic modes.

The total excitation operator (qubit occupations plus photon numbers)
commutes with the interaction Hamiltonian, so the space splits into
sectors of fixed total excitation N.  This module enumerates those
sectors up to a cutoff, provides index maps, and tabulates coherent-state
amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

# Qubit configurations (q1, q2) in canonical order; 1 marks the excited state.
QUBIT_CONFIGS = ((0, 0), (0, 1), (1, 0), (1, 1))


class BasisState(NamedTuple):
    """Product state |q1, q2> |n1> |n2> with q in {0, 1} and n >= 0."""

    q1: int
    q2: int
    n1: int
    n2: int

    @property
    def excitation(self) -> int:
        return self.q1 + self.q2 + self.n1 + self.n2


@dataclass(frozen=True)
class SectorBasis:
    """Ordered basis of one total-excitation sector.

    States are sorted lexicographically by (q1, q2, n1); n2 is then fixed
    by the sector label.  ``blocks`` maps each qubit configuration to the
    (start, length) of its contiguous run of states, in which n1 ascends
    from 0.  That layout makes partial traces and postselection simple
    slice operations.
    """

    N: int
    states: tuple[BasisState, ...]
    index: dict
    blocks: dict

    @property
    def dim(self) -> int:
        return len(self.states)

    def block_slice(self, q1: int, q2: int) -> slice:
        start, length = self.blocks[(q1, q2)]
        return slice(start, start + length)


def sector_dimension(N: int) -> int:
    """Dimension of sector N: (N+1) + 2N + (N-1) terms, i.e. 4N for N >= 2."""
    if N < 0:
        raise ValueError(f"sector label must be non-negative, got {N}")
    return sum(N - q1 - q2 + 1 for q1, q2 in QUBIT_CONFIGS if N - q1 - q2 >= 0)


def truncation_bound(alpha: float) -> int:
    """Total-excitation cutoff for a per-mode coherent amplitude alpha.

    Returns ceil(10 + 2*alpha^2), which keeps the single-mode photon
    distribution's truncated tail below 1e-8.
    """
    if alpha < 0:
        raise ValueError(f"coherent amplitude must be non-negative, got {alpha}")
    return math.ceil(10 + 2 * alpha * alpha)


@lru_cache(maxsize=None)
def _sector(N: int) -> SectorBasis:
    states = []
    blocks = {}
    for q1, q2 in QUBIT_CONFIGS:
        photons = N - q1 - q2
        if photons < 0:
            continue
        blocks[(q1, q2)] = (len(states), photons + 1)
        for n1 in range(photons + 1):
            states.append(BasisState(q1, q2, n1, photons - n1))
    states = tuple(states)
    index = {state: i for i, state in enumerate(states)}
    return SectorBasis(N=N, states=states, index=index, blocks=blocks)


@lru_cache(maxsize=None)
def build_sectors(M: int) -> tuple[SectorBasis, ...]:
    """All sectors N = 0..M; every 4-tuple with total excitation <= M appears once."""
    if M < 0:
        raise ValueError(f"cutoff must be non-negative, got {M}")
    return tuple(_sector(N) for N in range(M + 1))


@dataclass(frozen=True)
class CoherentTable:
    """Fock amplitudes A_n = alpha^n e^(-alpha^2/2) / sqrt(n!) for n = 0..M."""

    alpha: float
    amps: np.ndarray

    @property
    def mass(self) -> float:
        """Probability retained by the truncation, sum of A_n^2."""
        return float(np.dot(self.amps, self.amps))

    def renormalized(self) -> np.ndarray:
        """Amplitudes rescaled to unit norm within the truncated space."""
        return self.amps / math.sqrt(self.mass)


def coherent_amplitudes(alpha: float, M: int) -> CoherentTable:
    """Tabulate coherent-state amplitudes up to Fock level M.

    Uses the multiplicative recurrence A_{n+1} = A_n * alpha / sqrt(n+1),
    which stays in floating-point range for cutoffs of several hundred
    where the factorial form would overflow.
    """
    if alpha < 0:
        raise ValueError(f"coherent amplitude must be non-negative, got {alpha}")
    if M < 0:
        raise ValueError(f"cutoff must be non-negative, got {M}")
    amps = np.zeros(M + 1)
    amps[0] = math.exp(-alpha * alpha / 2.0)
    for n in range(M):
        amps[n + 1] = amps[n] * alpha / math.sqrt(n + 1)
    return CoherentTable(alpha=alpha, amps=amps)
