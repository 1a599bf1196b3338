import math

import numpy as np
import pytest

from jcdimer.hilbert import (
    BasisState,
    build_sectors,
    coherent_amplitudes,
    sector_dimension,
    truncation_bound,
)

from oracles import coherent_amp


def enumerate_tuples(cutoff):
    return {
        (q1, q2, n1, n2)
        for q1 in (0, 1)
        for q2 in (0, 1)
        for n1 in range(cutoff + 1)
        for n2 in range(cutoff + 1)
        if q1 + q2 + n1 + n2 <= cutoff
    }


def test_truncation_bound_examples():
    assert truncation_bound(0.0) == 10
    assert truncation_bound(10.0) == 210
    assert truncation_bound(1.0) == 12


def test_truncation_bound_rejects_negative():
    with pytest.raises(ValueError):
        truncation_bound(-0.5)


def test_truncation_bound_monotone():
    alphas = np.linspace(0.0, 12.0, 200)
    bounds = [truncation_bound(a) for a in alphas]
    assert all(b2 >= b1 for b1, b2 in zip(bounds, bounds[1:]))


def test_build_sectors_vacuum_only():
    sectors = build_sectors(0)
    assert len(sectors) == 1
    assert sectors[0].states == (BasisState(0, 0, 0, 0),)


def test_build_sectors_small_dimensions():
    assert [s.dim for s in build_sectors(1)] == [1, 4]
    sectors = build_sectors(3)
    assert sectors[3].dim == 12
    brute = sum(1 for t in enumerate_tuples(3) if sum(t) == 3)
    assert sectors[3].dim == brute


@pytest.mark.parametrize("cutoff", [0, 1, 2, 3, 5, 8, 12, 30])
def test_sector_partition_matches_enumeration(cutoff):
    sectors = build_sectors(cutoff)
    seen = []
    for sector in sectors:
        for state in sector.states:
            assert state.excitation == sector.N
            seen.append(tuple(state))
    assert len(seen) == len(set(seen))
    assert set(seen) == enumerate_tuples(cutoff)


def test_index_is_inverse_of_states():
    for sector in build_sectors(6):
        for i, state in enumerate(sector.states):
            assert sector.index[state] == i
        assert len(sector.index) == sector.dim


def test_dimension_closed_form():
    for N in range(2, 51):
        count = sum(
            1
            for q1 in (0, 1)
            for q2 in (0, 1)
            for n1 in range(N + 1)
            if N - q1 - q2 - n1 >= 0
        )
        assert sector_dimension(N) == count == 4 * N


def test_canonical_order_is_lexicographic_and_stable():
    sectors = build_sectors(7)
    for sector in sectors:
        keys = [(s.q1, s.q2, s.n1) for s in sector.states]
        assert keys == sorted(keys)
    again = build_sectors(7)
    assert all(a.states == b.states for a, b in zip(sectors, again))


def test_block_slices_tile_each_sector():
    for sector in build_sectors(9):
        covered = []
        for (q1, q2), (start, length) in sorted(sector.blocks.items()):
            covered.extend(range(start, start + length))
            for offset in range(length):
                state = sector.states[start + offset]
                assert (state.q1, state.q2) == (q1, q2)
                assert state.n1 == offset
        assert sorted(covered) == list(range(sector.dim))


def test_coherent_vacuum():
    table = coherent_amplitudes(0.0, 5)
    assert np.array_equal(table.amps, [1, 0, 0, 0, 0, 0])


def test_coherent_unit_alpha_values():
    table = coherent_amplitudes(1.0, 2)
    a0 = math.exp(-0.5)
    assert abs(table.amps[0] - a0) < 1e-12
    assert abs(table.amps[1] - a0) < 1e-12
    assert abs(table.amps[2] - a0 / math.sqrt(2)) < 1e-12


def test_coherent_leakage_large_alpha():
    table = coherent_amplitudes(10.0, 210)
    assert abs(1.0 - table.mass) < 1e-8
    direct = sum(coherent_amp(10.0, n) ** 2 for n in range(211))
    assert abs(table.mass - direct) < 1e-10


@pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 2.0, 3.0])
def test_coherent_recurrence_matches_factorial_form(alpha):
    table = coherent_amplitudes(alpha, 30)
    for n in range(31):
        exact = alpha**n * math.exp(-alpha * alpha / 2) / math.sqrt(math.factorial(n))
        assert abs(table.amps[n] - exact) <= 1e-12 * max(exact, 1e-300)


def test_coherent_leakage_bound_at_rule_cutoff():
    # The truncated mass deficit stays tiny at the rule cutoff.  1e-7 rather
    # than 1e-8: the bound peaks near alpha = 2 (about 5.2e-8).
    for alpha in np.linspace(0.0, 3.0, 13):
        table = coherent_amplitudes(float(alpha), truncation_bound(float(alpha)))
        assert 0.0 <= 1.0 - table.mass < 1e-7


def test_coherent_no_overflow_at_deep_cutoff():
    table = coherent_amplitudes(13.0, 400)
    assert np.all(np.isfinite(table.amps))
    assert abs(1.0 - table.mass) < 1e-8


def test_coherent_rejects_bad_input():
    with pytest.raises(ValueError):
        coherent_amplitudes(-1.0, 5)
    with pytest.raises(ValueError):
        coherent_amplitudes(1.0, -1)
