"""Exception types shared across the simulator."""


class SimulationError(Exception):
    """Base class for all simulator-specific failures."""


class ConfigurationError(SimulationError):
    """Inconsistent inputs: mismatched cutoffs, bad scenario files, invalid grids."""


class DispersiveRegimeError(SimulationError):
    """Effective-model construction outside its validity window (or at a pole)."""

    def __init__(self, message, validity_ratio=None):
        super().__init__(message)
        self.validity_ratio = validity_ratio


class NumericalError(SimulationError):
    """Linear-algebra failure; carries the sector label when available."""

    def __init__(self, message, sector=None):
        super().__init__(message)
        self.sector = sector


class PostselectionError(SimulationError):
    """Ground-state postselection has (numerically) zero probability."""

    def __init__(self, message, probability=0.0):
        super().__init__(message)
        self.probability = probability


class ProjectionError(SimulationError):
    """Coherent-state projection has (numerically) zero probability."""

    def __init__(self, message, probability=0.0):
        super().__init__(message)
        self.probability = probability
