"""Two qubits in two coupled resonators with coherent fields.

Exact sector-decomposed dynamics of a pair of qubits interacting with
two photon-hopping bosonic modes, plus the entanglement measures and
postselection protocols built on top of it.
"""

from .errors import (
    ConfigurationError,
    DispersiveRegimeError,
    NumericalError,
    PostselectionError,
    ProjectionError,
    SimulationError,
)
from .hilbert import (
    BasisState,
    CoherentTable,
    SectorBasis,
    build_sectors,
    coherent_amplitudes,
    sector_dimension,
    truncation_bound,
)
from .model import (
    EffectiveModel,
    SectorHamiltonian,
    SystemParams,
    build_sector_hamiltonian,
    effective_eg_concurrence,
    effective_model,
)
from .dynamics import (
    Propagator,
    PureState,
    build_propagator,
    evolve,
    expectation_energy,
    prepare_initial,
)
from .entanglement import (
    DensityMatrix,
    concurrence,
    pure_concurrence,
    reduce_to_field1,
    reduce_to_qubits,
    von_neumann_entropy,
)
from .protocols import (
    FieldState,
    ProtocolRecord,
    postselect_gg,
    project_coherent,
    reciprocation_forward,
    reciprocation_full,
    second_pair_evolution,
    second_pair_state,
)
from .scenarios import Scenario, SweepSpec, bundled_scenarios

__version__ = "0.1.0"

__all__ = [
    "BasisState",
    "CoherentTable",
    "ConfigurationError",
    "DensityMatrix",
    "DispersiveRegimeError",
    "EffectiveModel",
    "FieldState",
    "NumericalError",
    "PostselectionError",
    "ProjectionError",
    "Propagator",
    "ProtocolRecord",
    "PureState",
    "Scenario",
    "SectorBasis",
    "SectorHamiltonian",
    "SimulationError",
    "SweepSpec",
    "SystemParams",
    "build_propagator",
    "build_sector_hamiltonian",
    "build_sectors",
    "bundled_scenarios",
    "coherent_amplitudes",
    "concurrence",
    "effective_eg_concurrence",
    "effective_model",
    "evolve",
    "expectation_energy",
    "postselect_gg",
    "prepare_initial",
    "project_coherent",
    "pure_concurrence",
    "reciprocation_forward",
    "reciprocation_full",
    "reduce_to_field1",
    "reduce_to_qubits",
    "second_pair_evolution",
    "second_pair_state",
    "sector_dimension",
    "truncation_bound",
    "von_neumann_entropy",
    "__version__",
]
