"""Scenario-driven command line runner.

Executes named experiments (one per reproduced figure) or scenarios from
a TOML config, writing one CSV per scenario plus a JSON metadata sidecar.
Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .dynamics import SKIP_WEIGHT, build_propagator, evolve, prepare_initial
from .entanglement import concurrence, reduce_to_qubits
from .errors import ConfigurationError, SimulationError
from .model import SystemParams
from .protocols import reciprocation_forward, reciprocation_full
from .scenarios import Scenario, bundled_scenarios, scenario_from_dict

LEAKAGE_FLAG_THRESHOLD = 1e-6

_HEADERS = {
    "reciprocation_forward": ["gt_over_pi", "alpha", "P", "epsilon", "norm_error"],
    "reciprocation_full": [
        "gt_over_pi",
        "alpha",
        "P",
        "epsilon",
        "C_retrieved",
        "C_projected",
        "P_projection",
        "norm_error",
    ],
}


def _fmt(value) -> str:
    if value is None:
        return ""
    return f"{value:.12g}"


def _params_for(scenario: Scenario, alpha: float, delta: float, j: float) -> SystemParams:
    return SystemParams(
        alpha=alpha,
        detuning=delta,
        hopping=j,
        cutoff=scenario.cutoff_for(alpha),
    )


def _prep_meta(params: SystemParams):
    initial = prepare_initial("bell_plus", params)
    skipped = [int(n) for n, w in enumerate(initial.sector_weights()) if w <= SKIP_WEIGHT]
    return initial.leakage, skipped


def _series_task(scenario: Scenario, value):
    alpha, delta, j = scenario.alpha, scenario.delta_over_g, scenario.j_over_g
    if scenario.sweep is not None:
        if scenario.sweep.parameter == "alpha":
            alpha = value
        elif scenario.sweep.parameter == "delta_over_g":
            delta = value
        else:
            j = value
    params = _params_for(scenario, alpha, delta, j)
    prop = build_propagator(params)
    initial = prepare_initial(scenario.initial_qubits, params)
    xs = np.linspace(0.0, scenario.t_max_over_pi, scenario.n_steps)
    rows = []
    for x in xs:
        state = evolve(initial, prop, float(x) * math.pi)
        c = concurrence(reduce_to_qubits(state))
        row = [float(x)]
        if scenario.sweep is not None:
            row.append(value)
        row.extend([c, abs(state.norm() - 1.0)])
        rows.append(row)
    skipped = [int(n) for n, w in enumerate(initial.sector_weights()) if w <= SKIP_WEIGHT]
    return rows, {
        "truncation": params.cutoff,
        "leakage": initial.leakage,
        "skipped": skipped,
    }


def _recip_task(scenario: Scenario, value):
    alpha = value if scenario.sweep is not None else scenario.alpha
    params = _params_for(scenario, alpha, scenario.delta_over_g, scenario.j_over_g)
    xs = np.linspace(0.0, scenario.t_max_over_pi, scenario.n_steps)
    t_grid = xs * math.pi
    if scenario.protocol == "reciprocation_forward":
        records = reciprocation_forward(params, t_grid)
        rows = [
            [float(x), alpha, rec.p, rec.epsilon, rec.norm_error]
            for x, rec in zip(xs, records)
        ]
    else:
        records = reciprocation_full(params, t_grid)
        rows = [
            [
                float(x),
                alpha,
                rec.p,
                rec.epsilon,
                rec.c_retrieved,
                rec.c_projected,
                rec.p_projection,
                rec.norm_error,
            ]
            for x, rec in zip(xs, records)
        ]
    leakage, skipped = _prep_meta(params)
    return rows, {"truncation": params.cutoff, "leakage": leakage, "skipped": skipped}


def _header_for(scenario: Scenario) -> list[str]:
    if scenario.protocol == "concurrence_series":
        header = ["gt_over_pi"]
        if scenario.sweep is not None:
            header.append(scenario.sweep.parameter)
        header.extend(["concurrence", "norm_error"])
        return header
    return list(_HEADERS[scenario.protocol])


def run_scenario(scenario: Scenario, pool: ProcessPoolExecutor | None = None):
    """Execute one scenario; returns (header, rows, metadata).

    Sweep values are independent tasks; with a pool they run in worker
    processes (the per-point work is many small dense operations, which
    threads cannot parallelize), gathered in grid order either way.
    """
    start = time.perf_counter()
    values = scenario.sweep.values() if scenario.sweep is not None else [None]
    task = _series_task if scenario.protocol == "concurrence_series" else _recip_task
    if pool is None:
        results = [task(scenario, value) for value in values]
    else:
        results = list(pool.map(task, repeat(scenario), values))
    rows = [row for chunk, _ in results for row in chunk]
    metas = [meta for _, meta in results]
    leakage = max(meta["leakage"] for meta in metas)
    metadata = {
        "name": scenario.name,
        "protocol": scenario.protocol,
        "truncation_used": max(meta["truncation"] for meta in metas),
        "coherent_leakage_mass": leakage,
        "leakage_flagged": bool(leakage >= LEAKAGE_FLAG_THRESHOLD),
        "skipped_sectors": sorted({n for meta in metas for n in meta["skipped"]}),
        "wall_time_s": time.perf_counter() - start,
        "library_version": __version__,
        "config_hash": scenario.config_hash(),
        "expensive": scenario.expensive,
        "rows": len(rows),
        "skipped": False,
    }
    return _header_for(scenario), rows, metadata


def _write_csv(path: Path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _write_meta(path: Path, metadata):
    path.write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n")


def load_config(config_path) -> list[Scenario]:
    path = Path(config_path)
    if not path.is_file():
        raise ConfigurationError(f"config file not found: {path}")
    try:
        raw = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(f"config does not parse as TOML: {exc}") from exc
    entries = raw.get("scenario", [])
    if not isinstance(entries, list):
        raise ConfigurationError("expected an array of [[scenario]] tables")
    scenarios = [scenario_from_dict(entry) for entry in entries]
    if not scenarios:
        raise ConfigurationError("config defines no scenarios")
    names = [s.name for s in scenarios]
    if len(set(names)) != len(names):
        raise ConfigurationError("scenario names must be unique")
    return scenarios


def select_bundled(names) -> list[Scenario]:
    catalog = {s.name: s for s in bundled_scenarios()}
    missing = [n for n in names if n not in catalog]
    if missing:
        raise ConfigurationError(
            f"unknown bundled scenario(s) {missing}; use --list to see the catalog"
        )
    return [catalog[n] for n in names]


def list_scenarios() -> str:
    """One line per bundled figure-reproduction config, in stable order."""
    return "\n".join(f"{s.name}: {s.description}" for s in bundled_scenarios())


def run(
    config_path=None,
    output_dir=None,
    threads: int = 1,
    allow_expensive: bool = False,
    scenario_names=None,
) -> int:
    """Run scenarios from a config file or the bundled catalog.

    Writes <name>.csv and <name>.meta.json per scenario into output_dir.
    Expensive scenarios are skipped (with a metadata record) unless
    allow_expensive is set.
    """
    try:
        if config_path is not None and scenario_names:
            raise ConfigurationError("pass either a config file or bundled names, not both")
        if config_path is not None:
            scenarios = load_config(config_path)
        elif scenario_names:
            scenarios = select_bundled(scenario_names)
        else:
            raise ConfigurationError("nothing to run: pass --config or --scenario")
        if output_dir is None:
            raise ConfigurationError("an output directory is required")
        if threads < 1:
            raise ConfigurationError(f"threads must be positive, got {threads}")
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for scenario in scenarios:
            if scenario.expensive and not allow_expensive:
                print(
                    f"skipping expensive scenario {scenario.name} "
                    f"(rerun with --allow-expensive)",
                    file=sys.stderr,
                )
                _write_meta(
                    out / f"{scenario.name}.meta.json",
                    {
                        "name": scenario.name,
                        "skipped": True,
                        "expensive": True,
                        "library_version": __version__,
                        "config_hash": scenario.config_hash(),
                    },
                )
                continue
            try:
                header, rows, metadata = run_scenario(scenario, pool)
            except SimulationError as exc:
                sector = getattr(exc, "sector", None)
                context = f" (sector {sector})" if sector is not None else ""
                print(
                    f"numerical failure in scenario {scenario.name}{context}: {exc}",
                    file=sys.stderr,
                )
                return 3
            except Exception:
                print(
                    f"unexpected failure in scenario {scenario.name}:\n{traceback.format_exc()}",
                    file=sys.stderr,
                )
                return 3
            _write_csv(out / f"{scenario.name}.csv", header, rows)
            _write_meta(out / f"{scenario.name}.meta.json", metadata)
    finally:
        if pool is not None:
            pool.shutdown()
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="jcdimer",
        description="Two qubits in two photon-hopping resonators: scenario runner.",
    )
    parser.add_argument("--config", metavar="PATH", help="TOML file with [[scenario]] tables")
    parser.add_argument("--out", metavar="DIR", help="output directory for CSV and metadata")
    parser.add_argument("--threads", type=int, default=1, metavar="N")
    parser.add_argument(
        "--allow-expensive",
        action="store_true",
        help="run scenarios flagged as expensive (minutes of compute)",
    )
    parser.add_argument("--list", action="store_true", help="list bundled scenarios and exit")
    parser.add_argument(
        "--scenario",
        action="append",
        metavar="NAME",
        help="run a bundled scenario by name (repeatable)",
    )
    args = parser.parse_args(argv)
    if args.list:
        print(list_scenarios())
        return 0
    return run(
        config_path=args.config,
        output_dir=args.out,
        threads=args.threads,
        allow_expensive=args.allow_expensive,
        scenario_names=args.scenario,
    )


if __name__ == "__main__":
    sys.exit(main())
