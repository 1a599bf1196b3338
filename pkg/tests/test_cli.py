import json

import pytest

from jcdimer import cli
from jcdimer.errors import NumericalError
from jcdimer.scenarios import Scenario, SweepSpec, bundled_scenarios, scenario_from_dict
from jcdimer.errors import ConfigurationError

MINI_CONFIG = """
[[scenario]]
name = "series"
protocol = "concurrence_series"
initial_qubits = "eg"
alpha = 0.0
t_max_over_pi = 2.0
n_steps = 9

[scenario.sweep]
parameter = "j_over_g"
min = 0.0
max = 1.0
n_points = 3

[[scenario]]
name = "forward"
protocol = "reciprocation_forward"
alpha = 0.0
t_max_over_pi = 1.0
n_steps = 5

[[scenario]]
name = "full"
protocol = "reciprocation_full"
alpha = 0.0
j_over_g = 0.1
t_max_over_pi = 1.0
n_steps = 5
"""


def write_config(tmp_path, text=MINI_CONFIG):
    path = tmp_path / "config.toml"
    path.write_text(text)
    return path


def read_rows(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def test_run_writes_expected_csv_schemas(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "out"
    assert cli.run(config_path=config, output_dir=out) == 0

    header, rows = read_rows(out / "series.csv")
    assert header == ["gt_over_pi", "j_over_g", "concurrence", "norm_error"]
    assert len(rows) == 9 * 3

    header, rows = read_rows(out / "forward.csv")
    assert header == ["gt_over_pi", "alpha", "P", "epsilon", "norm_error"]
    assert len(rows) == 5

    header, rows = read_rows(out / "full.csv")
    assert header == [
        "gt_over_pi",
        "alpha",
        "P",
        "epsilon",
        "C_retrieved",
        "C_projected",
        "P_projection",
        "norm_error",
    ]
    meta = json.loads((out / "full.meta.json").read_text())
    assert meta["rows"] == 5
    assert meta["truncation_used"] == 10
    assert meta["leakage_flagged"] is False
    assert meta["skipped"] is False
    assert meta["library_version"]
    assert len(meta["config_hash"]) == 64


def test_failed_postselection_rows_have_null_markers(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "out"
    assert cli.run(config_path=config, output_dir=out) == 0
    header, rows = read_rows(out / "forward.csv")
    t0 = rows[0]
    assert float(t0[header.index("P")]) == 0.0
    assert t0[header.index("epsilon")] == ""


def test_norm_error_column_is_tiny(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "out"
    assert cli.run(config_path=config, output_dir=out) == 0
    for name in ("series", "forward", "full"):
        header, rows = read_rows(out / f"{name}.csv")
        idx = header.index("norm_error")
        assert max(float(row[idx]) for row in rows) <= 1e-9


def test_outputs_are_deterministic(tmp_path):
    config = write_config(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert cli.run(config_path=config, output_dir=out1, threads=1) == 0
    assert cli.run(config_path=config, output_dir=out2, threads=4) == 0
    for name in ("series", "forward", "full"):
        assert (out1 / f"{name}.csv").read_bytes() == (out2 / f"{name}.csv").read_bytes()


def test_run_exit_codes_for_bad_configs(tmp_path):
    out = tmp_path / "out"
    assert cli.run(config_path=tmp_path / "missing.toml", output_dir=out) == 2
    assert cli.run(config_path=write_config(tmp_path, "not toml ["), output_dir=out) == 2
    assert cli.run(config_path=write_config(tmp_path, ""), output_dir=out) == 2
    bad_key = MINI_CONFIG.replace('alpha = 0.0', 'alpha = 0.0\nbogus = 1', 1)
    assert cli.run(config_path=write_config(tmp_path, bad_key), output_dir=out) == 2
    assert cli.run(config_path=None, output_dir=out) == 2
    assert cli.run(config_path=write_config(tmp_path), output_dir=None) == 2
    assert (
        cli.run(config_path=write_config(tmp_path), output_dir=out, scenario_names=["fig2a"])
        == 2
    )
    assert cli.run(output_dir=out, scenario_names=["nope"]) == 2
    dup = MINI_CONFIG.replace('name = "forward"', 'name = "series"')
    assert cli.run(config_path=write_config(tmp_path, dup), output_dir=out) == 2


def test_numerical_failure_exit_code(tmp_path, monkeypatch):
    def boom(scenario, value):
        raise NumericalError("synthetic eigensolver failure", sector=3)

    monkeypatch.setattr(cli, "_series_task", boom)
    config = write_config(tmp_path)
    assert cli.run(config_path=config, output_dir=tmp_path / "out") == 3


def test_expensive_scenarios_are_gated(tmp_path):
    expensive = """
[[scenario]]
name = "hot"
protocol = "concurrence_series"
initial_qubits = "gg"
alpha = 3.5
t_max_over_pi = 0.5
n_steps = 2
"""
    config = write_config(tmp_path, expensive)
    out = tmp_path / "out"
    assert cli.run(config_path=config, output_dir=out) == 0
    assert not (out / "hot.csv").exists()
    meta = json.loads((out / "hot.meta.json").read_text())
    assert meta["skipped"] is True and meta["expensive"] is True

    out2 = tmp_path / "out2"
    assert cli.run(config_path=config, output_dir=out2, allow_expensive=True) == 0
    assert (out2 / "hot.csv").exists()
    meta = json.loads((out2 / "hot.meta.json").read_text())
    assert meta["skipped"] is False and meta["expensive"] is True


def test_leakage_flag_raised_at_tight_cutoff(tmp_path):
    # alpha = 2 at the rule cutoff 18 leaves ~1.6e-3 of the two-mode mass
    # beyond the truncation, which must flag the run.
    config = """
[[scenario]]
name = "leaky"
protocol = "reciprocation_forward"
alpha = 2.0
t_max_over_pi = 0.5
n_steps = 2
"""
    out = tmp_path / "out"
    assert cli.run(config_path=write_config(tmp_path, config), output_dir=out) == 0
    meta = json.loads((out / "leaky.meta.json").read_text())
    assert meta["truncation_used"] == 18
    assert meta["coherent_leakage_mass"] > 1e-6
    assert meta["leakage_flagged"] is True


def test_list_scenarios_content_and_stability():
    listing = cli.list_scenarios()
    assert "fig2a: C vs (gt, J), Δ=5g, α=1, initial eg" in listing
    assert "fig6d: C vs (gt, Δ), J=0.5g, initial gg" in listing
    assert listing == cli.list_scenarios()
    names = [line.split(":")[0] for line in listing.splitlines()]
    assert names == [s.name for s in bundled_scenarios()]
    assert len(names) == len(set(names)) == 25


def test_bundled_catalog_is_well_formed():
    for scenario in bundled_scenarios():
        assert scenario.n_steps >= 2
        assert scenario.description
        if scenario.sweep is not None:
            assert scenario.sweep.n_points >= 1
        if scenario.name == "fig5":
            assert scenario.expensive
        else:
            assert not scenario.expensive


def test_main_entrypoint_list_and_missing_args(capsys):
    assert cli.main(["--list"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("fig2a:")
    assert cli.main([]) == 2


def test_scenario_validation_errors():
    with pytest.raises(ConfigurationError):
        Scenario(name="x", protocol="bogus", alpha=0.0)
    with pytest.raises(ConfigurationError):
        Scenario(name="x", protocol="concurrence_series", alpha=0.0, n_steps=1)
    with pytest.raises(ConfigurationError):
        Scenario(name="x", protocol="reciprocation_forward", alpha=0.0, initial_qubits="eg")
    with pytest.raises(ConfigurationError):
        Scenario(
            name="x",
            protocol="reciprocation_full",
            alpha=0.0,
            sweep=SweepSpec("j_over_g", 0.0, 1.0, 3),
        )
    with pytest.raises(ConfigurationError):
        SweepSpec("nope", 0.0, 1.0, 3)
    with pytest.raises(ConfigurationError):
        scenario_from_dict({"name": "x"})
    with pytest.raises(ConfigurationError):
        scenario_from_dict(
            {"name": "x", "protocol": "concurrence_series", "alpha": 0.0, "sweep": {"parameter": "alpha"}}
        )


def test_scenario_explicit_amplitudes_roundtrip(tmp_path):
    config = """
[[scenario]]
name = "explicit"
protocol = "concurrence_series"
initial_qubits = [[0.0, 0.0], [0.7071067811865476, 0.0], [0.0, 0.7071067811865476], [0.0, 0.0]]
alpha = 0.0
t_max_over_pi = 1.0
n_steps = 3
"""
    out = tmp_path / "out"
    assert cli.run(config_path=write_config(tmp_path, config), output_dir=out) == 0
    header, rows = read_rows(out / "explicit.csv")
    assert header == ["gt_over_pi", "concurrence", "norm_error"]
    # (|eg> + i|ge>)/sqrt(2) is maximally entangled at t = 0.
    assert float(rows[0][1]) == pytest.approx(1.0, abs=1e-9)


def test_cutoff_for_never_drops_below_rule():
    scenario = Scenario(
        name="x",
        protocol="concurrence_series",
        alpha=1.0,
        truncation_override=15,
    )
    assert scenario.cutoff_for(1.0) == 15
    assert scenario.cutoff_for(2.0) == 18
    no_override = Scenario(name="y", protocol="concurrence_series", alpha=1.0)
    assert no_override.cutoff_for(1.0) == 12
