"""Scenario definitions and the bundled figure-reproduction catalog."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .errors import ConfigurationError
from .hilbert import truncation_bound

PROTOCOLS = ("concurrence_series", "reciprocation_forward", "reciprocation_full")
SWEEPABLE = ("alpha", "delta_over_g", "j_over_g")

# Runs beyond these bounds take minutes rather than seconds and are gated
# behind --allow-expensive.
EXPENSIVE_ALPHA = 3.0
EXPENSIVE_CUTOFF = 60


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    min: float
    max: float
    n_points: int

    def __post_init__(self):
        if self.parameter not in SWEEPABLE:
            raise ConfigurationError(
                f"sweep parameter must be one of {SWEEPABLE}, got {self.parameter!r}"
            )
        if self.n_points < 1:
            raise ConfigurationError(f"sweep needs at least 1 point, got {self.n_points}")
        if self.max < self.min:
            raise ConfigurationError("sweep max must not be below min")
        if self.parameter == "alpha" and self.min < 0:
            raise ConfigurationError("alpha sweep must stay non-negative")

    def values(self) -> list[float]:
        if self.n_points == 1:
            return [self.min]
        step = (self.max - self.min) / (self.n_points - 1)
        return [self.min + i * step for i in range(self.n_points)]


@dataclass(frozen=True)
class Scenario:
    """One named experiment: parameters, grids, and output protocol."""

    name: str
    protocol: str
    alpha: float
    initial_qubits: object = "bell_plus"
    delta_over_g: float = 0.0
    j_over_g: float = 0.0
    t_max_over_pi: float = 10.0
    n_steps: int = 101
    sweep: SweepSpec | None = None
    truncation_override: int | None = None
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ConfigurationError(
                f"unknown protocol {self.protocol!r}; expected one of {PROTOCOLS}"
            )
        if self.n_steps < 2:
            raise ConfigurationError(f"n_steps must be at least 2, got {self.n_steps}")
        if self.alpha < 0:
            raise ConfigurationError("alpha must be non-negative")
        if self.t_max_over_pi <= 0:
            raise ConfigurationError("t_max_over_pi must be positive")
        if self.truncation_override is not None and self.truncation_override < 0:
            raise ConfigurationError("truncation_override must be non-negative")
        if self.protocol != "concurrence_series":
            if self.initial_qubits != "bell_plus":
                raise ConfigurationError(
                    "reciprocation protocols fix the initial pair to bell_plus"
                )
            if self.sweep is not None and self.sweep.parameter != "alpha":
                raise ConfigurationError(
                    "reciprocation CSV schemas support sweeps over alpha only"
                )

    def alpha_values(self) -> list[float]:
        if self.sweep is not None and self.sweep.parameter == "alpha":
            return self.sweep.values()
        return [self.alpha]

    def cutoff_for(self, alpha: float) -> int:
        """Effective truncation: the rule bound, never lowered by an override."""
        bound = truncation_bound(alpha)
        if self.truncation_override is None:
            return bound
        return max(bound, self.truncation_override)

    @property
    def expensive(self) -> bool:
        alphas = self.alpha_values()
        return max(alphas) > EXPENSIVE_ALPHA or max(
            self.cutoff_for(a) for a in alphas
        ) > EXPENSIVE_CUTOFF

    def config_hash(self) -> str:
        payload = {
            "name": self.name,
            "protocol": self.protocol,
            "initial_qubits": self.initial_qubits
            if isinstance(self.initial_qubits, str)
            else [[complex(a).real, complex(a).imag] for a in self.initial_qubits],
            "alpha": self.alpha,
            "delta_over_g": self.delta_over_g,
            "j_over_g": self.j_over_g,
            "t_max_over_pi": self.t_max_over_pi,
            "n_steps": self.n_steps,
            "sweep": None
            if self.sweep is None
            else [self.sweep.parameter, self.sweep.min, self.sweep.max, self.sweep.n_points],
            "truncation_override": self.truncation_override,
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


_SCENARIO_KEYS = {
    "name",
    "protocol",
    "initial_qubits",
    "alpha",
    "delta_over_g",
    "j_over_g",
    "t_max_over_pi",
    "n_steps",
    "sweep",
    "truncation_override",
    "description",
}
_SWEEP_KEYS = {"parameter", "min", "max", "n_points"}


def scenario_from_dict(raw: dict) -> Scenario:
    """Build a Scenario from a parsed config table, rejecting unknown keys."""
    if not isinstance(raw, dict):
        raise ConfigurationError(f"scenario entry must be a table, got {type(raw).__name__}")
    unknown = set(raw) - _SCENARIO_KEYS
    if unknown:
        raise ConfigurationError(f"unknown scenario keys: {sorted(unknown)}")
    for key in ("name", "protocol", "alpha"):
        if key not in raw:
            raise ConfigurationError(f"scenario is missing required key {key!r}")
    kwargs = dict(raw)
    sweep_raw = kwargs.pop("sweep", None)
    if sweep_raw is not None:
        if not isinstance(sweep_raw, dict):
            raise ConfigurationError("sweep must be a table")
        unknown = set(sweep_raw) - _SWEEP_KEYS
        if unknown:
            raise ConfigurationError(f"unknown sweep keys: {sorted(unknown)}")
        missing = _SWEEP_KEYS - set(sweep_raw)
        if missing:
            raise ConfigurationError(f"sweep is missing keys: {sorted(missing)}")
        kwargs["sweep"] = SweepSpec(
            parameter=sweep_raw["parameter"],
            min=float(sweep_raw["min"]),
            max=float(sweep_raw["max"]),
            n_points=int(sweep_raw["n_points"]),
        )
    initial = kwargs.get("initial_qubits", "bell_plus")
    if not isinstance(initial, str):
        try:
            amps = []
            for entry in initial:
                if isinstance(entry, (list, tuple)):
                    re, im = entry
                    amps.append(complex(float(re), float(im)))
                else:
                    amps.append(complex(float(entry), 0.0))
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"invalid initial_qubits: {exc}") from exc
        if len(amps) != 4:
            raise ConfigurationError("explicit initial_qubits needs 4 amplitudes")
        kwargs["initial_qubits"] = tuple(amps)
    try:
        return Scenario(**kwargs)
    except TypeError as exc:
        raise ConfigurationError(f"invalid scenario: {exc}") from exc


def _series(name, desc, initial, alpha, delta, j, t_max, sweep=None, n_steps=101, cutoff=None):
    return Scenario(
        name=name,
        protocol="concurrence_series",
        initial_qubits=initial,
        alpha=alpha,
        delta_over_g=delta,
        j_over_g=j,
        t_max_over_pi=t_max,
        n_steps=n_steps,
        sweep=sweep,
        truncation_override=cutoff,
        description=desc,
    )


def _recip(name, desc, protocol, delta, j, t_max, n_steps, alpha_max=2.0, n_alpha=41):
    return Scenario(
        name=name,
        protocol=protocol,
        initial_qubits="bell_plus",
        alpha=0.0,
        delta_over_g=delta,
        j_over_g=j,
        t_max_over_pi=t_max,
        n_steps=n_steps,
        sweep=SweepSpec(parameter="alpha", min=0.0, max=alpha_max, n_points=n_alpha),
        truncation_override=28,
        description=desc,
    )


def bundled_scenarios() -> list[Scenario]:
    """Figure-reproduction experiments, desk scale, in stable order."""
    j_sweep_10 = SweepSpec("j_over_g", 0.0, 10.0, 101)
    d_sweep_10 = SweepSpec("delta_over_g", 0.0, 10.0, 101)
    j_sweep_20 = SweepSpec("j_over_g", 0.0, 20.0, 101)
    d_sweep_20 = SweepSpec("delta_over_g", 0.0, 20.0, 101)
    alpha_lines = SweepSpec("alpha", 0.5, 2.0, 4)
    scenarios = [
        _series("fig2a", "C vs (gt, J), Δ=5g, α=1, initial eg",
                "eg", 1.0, 5.0, 1.0, 12.0, sweep=j_sweep_10, cutoff=15),
        _series("fig2b", "C vs (gt, Δ), J=5g, α=1, initial eg",
                "eg", 1.0, 0.0, 5.0, 12.0, sweep=d_sweep_10, cutoff=15),
        _series("fig3a", "C vs (gt, J), Δ=0, α=1, initial bell_plus",
                "bell_plus", 1.0, 0.0, 0.0, 10.0, sweep=j_sweep_10, cutoff=15),
        _series("fig3b", "C vs (gt, Δ), J=0, α=1, initial bell_plus",
                "bell_plus", 1.0, 0.0, 0.0, 10.0, sweep=d_sweep_10, cutoff=15),
        _series("fig4a", "C vs gt for α in {0.5, 1, 1.5, 2}, Δ=0, J=10g, initial eg",
                "eg", 1.0, 0.0, 10.0, 10.0, sweep=alpha_lines, cutoff=28),
        _series("fig4b", "C vs gt for α in {0.5, 1, 1.5, 2}, Δ=0, J=10g, initial bell_plus",
                "bell_plus", 1.0, 0.0, 10.0, 10.0, sweep=alpha_lines, cutoff=28),
        _series("fig5", "C vs gt, α=10, J=0, Δ in {0, 100g}, initial bell_plus (expensive)",
                "bell_plus", 10.0, 0.0, 0.0, 120.0,
                sweep=SweepSpec("delta_over_g", 0.0, 100.0, 2), n_steps=481),
        _series("fig6a", "C vs (gt, J), Δ=0.5g, α=1, initial ee",
                "ee", 1.0, 0.5, 0.0, 10.0, sweep=j_sweep_20, cutoff=15),
        _series("fig6b", "C vs (gt, J), Δ=5g, α=1, initial ee",
                "ee", 1.0, 5.0, 0.0, 10.0, sweep=j_sweep_20, cutoff=15),
        _series("fig6c", "C vs (gt, J), Δ=15g, α=1, initial ee",
                "ee", 1.0, 15.0, 0.0, 10.0, sweep=j_sweep_20, cutoff=15),
        _series("fig6d", "C vs (gt, Δ), J=0.5g, initial gg",
                "gg", 1.0, 0.0, 0.5, 10.0, sweep=d_sweep_20, cutoff=15),
        _series("fig6e", "C vs (gt, Δ), J=5g, initial gg",
                "gg", 1.0, 0.0, 5.0, 10.0, sweep=d_sweep_20, cutoff=15),
        _series("fig6f", "C vs (gt, Δ), J=15g, initial gg",
                "gg", 1.0, 0.0, 15.0, 10.0, sweep=d_sweep_20, cutoff=15),
        _recip("fig7a", "ε and P vs (gt, α), Δ=0, J=0.1g",
               "reciprocation_forward", 0.0, 0.1, 4.0, 101),
        _recip("fig7b", "ε and P vs (gt, α), Δ=0, J=g",
               "reciprocation_forward", 0.0, 1.0, 4.0, 101),
        _recip("fig7c", "ε and P vs (gt, α), Δ=0, J=10g",
               "reciprocation_forward", 0.0, 10.0, 4.0, 101),
        _recip("fig8a", "C_retrieved and C_projected vs (gt'=gt, α), Δ=0, J=0.1g",
               "reciprocation_full", 0.0, 0.1, 4.0, 81),
        _recip("fig8b", "C_retrieved and C_projected vs (gt'=gt, α), Δ=0, J=g",
               "reciprocation_full", 0.0, 1.0, 4.0, 81),
        _recip("fig8c", "C_retrieved and C_projected vs (gt'=gt, α), Δ=0, J=10g",
               "reciprocation_full", 0.0, 10.0, 4.0, 81),
        _recip("fig9a", "ε and P vs (gt, α), J=0, Δ=0.1g",
               "reciprocation_forward", 0.1, 0.0, 4.0, 101),
        _recip("fig9b", "ε and P vs (gt, α), J=0, Δ=g",
               "reciprocation_forward", 1.0, 0.0, 4.0, 101),
        _recip("fig9c", "ε and P vs (gt, α), J=0, Δ=10g",
               "reciprocation_forward", 10.0, 0.0, 4.0, 101),
        _recip("fig10a", "C_retrieved and C_projected vs (gt'=gt, α), J=0, Δ=0.1g",
               "reciprocation_full", 0.1, 0.0, 4.0, 81),
        _recip("fig10b", "C_retrieved and C_projected vs (gt'=gt, α), J=0, Δ=g",
               "reciprocation_full", 1.0, 0.0, 4.0, 81),
        _recip("fig10c", "C_retrieved and C_projected vs (gt'=gt, α), J=0, Δ=10g",
               "reciprocation_full", 10.0, 0.0, 4.0, 81),
    ]
    return scenarios
