"""Entanglement-reciprocation pipelines.

A maximally entangled qubit pair interacts with the two coherent fields;
conditioning on both qubits exiting in their ground states leaves the
fields in a pure entangled state.  A fresh ground-state pair can then
absorb that entanglement, optionally sharpened by projecting the fields
back onto coherent states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    QUBIT_ORDER,
    Propagator,
    PureState,
    _zero_blocks,
    build_propagator,
    evolve,
    prepare_initial,
)
from .entanglement import concurrence, reduce_to_field1, reduce_to_qubits, von_neumann_entropy
from .errors import PostselectionError, ProjectionError
from .hilbert import build_sectors, coherent_amplitudes
from .model import SystemParams

PROBABILITY_FLOOR = 1e-12


@dataclass(frozen=True)
class FieldState:
    """Normalized two-mode pure state left after ground-state postselection.

    ``grid[l, m]`` is the amplitude of |l>|m>; entries with l + m beyond
    the cutoff are identically zero.  norm_constant is the 1/sqrt(P)
    applied during normalization.
    """

    cutoff: int
    grid: np.ndarray
    norm_constant: float


@dataclass(frozen=True)
class ProtocolRecord:
    """Observables of one reciprocation time step.

    Undefined entries (a failed postselection or projection downstream)
    are None, never NaN.
    """

    t: float
    p: float
    epsilon: float | None = None
    c_retrieved: float | None = None
    c_projected: float | None = None
    p_projection: float | None = None
    norm_error: float = 0.0


def postselect_gg(state: PureState) -> tuple[FieldState, float]:
    """Condition on both qubits in their ground states.

    Collects the ground-ground amplitudes of every sector into a two-mode
    grid.  Returns the renormalized field state and the postselection
    probability (the grid's pre-normalization mass).  Raises
    PostselectionError when that probability falls below 1e-12.
    """
    M = state.cutoff
    sectors = build_sectors(M)
    grid = np.zeros((M + 1, M + 1), dtype=complex)
    for N in range(M + 1):
        start, length = sectors[N].blocks[(0, 0)]
        n1 = np.arange(length)
        grid[n1, N - n1] = state.blocks[N][start : start + length]
    prob = float(np.sum(np.abs(grid) ** 2))
    if prob < PROBABILITY_FLOOR:
        raise PostselectionError(
            f"ground-state postselection probability {prob:.3e} below "
            f"{PROBABILITY_FLOOR:.0e}",
            probability=prob,
        )
    norm_constant = 1.0 / math.sqrt(prob)
    return FieldState(cutoff=M, grid=grid * norm_constant, norm_constant=norm_constant), prob


def embed_field(field: FieldState) -> PureState:
    """|g g> times a two-mode field state, in the sector decomposition."""
    M = field.cutoff
    sectors = build_sectors(M)
    # Amplitudes with l + m beyond the cutoff cannot be represented.
    mass_outside = float(np.sum(np.abs(np.triu(field.grid[::-1], k=1)) ** 2))
    if mass_outside > 1e-9:
        raise ValueError(
            f"field grid carries mass {mass_outside:.3e} outside the "
            f"total-excitation cutoff {M}"
        )
    blocks = _zero_blocks(M)
    for N in range(M + 1):
        start, length = sectors[N].blocks[(0, 0)]
        n1 = np.arange(length)
        blocks[N][start : start + length] = field.grid[n1, N - n1]
    return PureState(cutoff=M, blocks=tuple(blocks))


def second_pair_state(
    field: FieldState,
    params: SystemParams,
    t_prime: float,
    prop: Propagator | None = None,
) -> PureState:
    """Joint state after a fresh ground-state pair interacts for t_prime."""
    if prop is None:
        prop = build_propagator(params)
    return evolve(embed_field(field), prop, t_prime)


def second_pair_evolution(field: FieldState, params: SystemParams, t_prime: float):
    """Reduced 4x4 density matrix of the second qubit pair after t_prime."""
    return reduce_to_qubits(second_pair_state(field, params, t_prime))


def project_coherent(joint_state: PureState, alpha: float) -> tuple[np.ndarray, float]:
    """Project both field modes onto the coherent state of amplitude alpha.

    The bra uses the truncated, renormalized amplitude table, consistent
    with state preparation.  Returns the renormalized 4-amplitude qubit
    state (order |ee>, |eg>, |ge>, |gg>) and the success probability.
    Raises ProjectionError below the probability floor.
    """
    M = joint_state.cutoff
    A = coherent_amplitudes(alpha, M).renormalized()
    sectors = build_sectors(M)
    amps = np.zeros(4, dtype=complex)
    for a, (q1, q2) in enumerate(QUBIT_ORDER):
        exc = q1 + q2
        acc = 0.0 + 0.0j
        for N in range(exc, M + 1):
            start, length = sectors[N].blocks[(q1, q2)]
            photons = N - exc
            n1 = np.arange(length)
            acc += np.dot(A[n1] * A[photons - n1], joint_state.blocks[N][start : start + length])
        amps[a] = acc
    prob = float(np.vdot(amps, amps).real)
    if prob < PROBABILITY_FLOOR:
        raise ProjectionError(
            f"coherent projection probability {prob:.3e} below {PROBABILITY_FLOOR:.0e}",
            probability=prob,
        )
    return amps / math.sqrt(prob), prob


def reciprocation_forward(params: SystemParams, t_grid) -> list[ProtocolRecord]:
    """Entanglement transfer into the fields along a time grid.

    Starts from the maximally entangled pair with coherent fields; for
    each time records the ground-state postselection probability and the
    entropy of field 1.  Times with a failed postselection keep their
    row, with the entropy marked undefined.
    """
    prop = build_propagator(params)
    initial = prepare_initial("bell_plus", params)
    records = []
    for t in np.asarray(t_grid, dtype=float):
        state = evolve(initial, prop, float(t))
        norm_error = abs(state.norm() - 1.0)
        try:
            field, prob = postselect_gg(state)
        except PostselectionError as exc:
            records.append(
                ProtocolRecord(t=float(t), p=0.0, epsilon=None, norm_error=norm_error)
            )
            continue
        eps = von_neumann_entropy(reduce_to_field1(field.grid))
        records.append(
            ProtocolRecord(t=float(t), p=prob, epsilon=eps, norm_error=norm_error)
        )
    return records


def reciprocation_full(
    params: SystemParams,
    t_grid,
    t_prime_grid=None,
) -> list[ProtocolRecord]:
    """Full reciprocation: transfer, retrieval, and coherent projection.

    By default the second interaction time equals the first; an explicit
    grid of equal length pairs with t_grid elementwise.  Rows with a
    failed postselection carry None for every downstream observable.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_prime_grid is None:
        t_prime_grid = t_grid
    else:
        t_prime_grid = np.asarray(t_prime_grid, dtype=float)
        if t_prime_grid.shape != t_grid.shape:
            raise ValueError("t_prime_grid must pair elementwise with t_grid")
    prop = build_propagator(params)
    initial = prepare_initial("bell_plus", params)
    records = []
    for t, t_prime in zip(t_grid, t_prime_grid):
        state = evolve(initial, prop, float(t))
        norm_error = abs(state.norm() - 1.0)
        try:
            field, prob = postselect_gg(state)
        except PostselectionError:
            records.append(
                ProtocolRecord(t=float(t), p=0.0, epsilon=None, norm_error=norm_error)
            )
            continue
        eps = von_neumann_entropy(reduce_to_field1(field.grid))
        joint = second_pair_state(field, params, float(t_prime), prop=prop)
        c_ret = concurrence(reduce_to_qubits(joint))
        try:
            projected, p_proj = project_coherent(joint, params.alpha)
            c_proj = concurrence(np.outer(projected, projected.conj()))
        except ProjectionError:
            c_proj, p_proj = None, None
        records.append(
            ProtocolRecord(
                t=float(t),
                p=prob,
                epsilon=eps,
                c_retrieved=c_ret,
                c_projected=c_proj,
                p_projection=p_proj,
                norm_error=norm_error,
            )
        )
    return records
