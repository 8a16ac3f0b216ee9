"""Integration tests for the command-line entry point."""

import json
import os
from dataclasses import replace
from pathlib import Path
from unittest import mock

import numpy as np
import pytest

from nonlocal_grayscott.app import build_parser, output_directory, run_cli
from nonlocal_grayscott.config.config import Configuration
from nonlocal_grayscott.config.presets import get_preset
from nonlocal_grayscott.config.run_config import RunConfig
from nonlocal_grayscott.experiments.runner import run_experiment

GRID_M = 32


def small_tree(**overrides):
    """A free-boundary pulse on [-4, 4] that runs in well under a second."""
    tree = {
        "kind": "simulate",
        "solver": "quadrature",
        "kernel": {"family": "exponential", "sigma": 2.0},
        "grid": {"half_width": 4.0, "M": GRID_M},
        "boundary": {
            "u": {"type": "free", "q": 2.0, "u_ref": 1.0},
            "v": {"type": "free", "q": 2.0, "u_ref": 0.0},
        },
        "params": {"d_u": 1.0, "d_v": 0.01, "A": 0.01, "B": 0.1},
        "stepper": {"dt": 0.01, "nmax": 20, "tol": 1e-8},
        "outputs": {"checkpoint_every": 5, "plot_script": True},
    }
    tree.update(overrides)
    return tree


@pytest.fixture
def write_config(tmp_path):
    """Write a configuration tree to a file and return its path."""

    def write(tree):
        path = tmp_path / "run.json"
        path.write_text(json.dumps(tree, indent=2))
        return str(path)

    return write


class TestRunCli:
    """Test exit codes and artifacts of run_cli."""

    @pytest.mark.asyncio
    async def test_list_presets(self, capsys):
        """Test that the preset names are printed."""
        assert await run_cli(["--list-presets"]) == 0
        names = capsys.readouterr().out.split()
        assert "mms-convergence" in names
        assert "pulse-alg-neumann-a039" in names
        assert {"table1-mms", "appendix-convergence"} <= set(names)

    @pytest.mark.asyncio
    async def test_seed_check(self):
        """Test that the invariant suite passes."""
        assert await run_cli(["--seed-check"]) == 0

    @pytest.mark.asyncio
    async def test_invalid_log_level(self):
        """Test that an unknown log level is rejected."""
        assert await run_cli(["--log-level", "LOUD", "--list-presets"]) == 2

    @pytest.mark.asyncio
    async def test_missing_source(self, tmp_path):
        """Test that a run needs --config or --preset."""
        assert await run_cli(["--out", str(tmp_path)]) == 2

    @pytest.mark.asyncio
    async def test_invalid_config(self, write_config, tmp_path):
        """Test that a misspelt key exits with the configuration code."""
        path = write_config(small_tree(kernel={"family": "exponential", "sigmaa": 2.0}))
        assert await run_cli(["--config", path, "--out", str(tmp_path / "out")]) == 2

    @pytest.mark.asyncio
    async def test_unknown_preset(self, tmp_path):
        """Test that an unknown preset exits with the configuration code."""
        assert await run_cli(["--preset", "nope", "--out", str(tmp_path)]) == 2

    @pytest.mark.asyncio
    async def test_simulate(self, write_config, tmp_path):
        """Test a short simulation and its artifacts."""
        out = tmp_path / "out"
        assert await run_cli(["--config", write_config(small_tree()), "--out", str(out)]) == 0

        profile = np.loadtxt(out / "profile.csv", delimiter=",", skiprows=1)
        history = np.loadtxt(out / "history.csv", delimiter=",", skiprows=1, ndmin=2)
        assert profile.shape == (GRID_M + 1, 3)
        assert np.all(np.isfinite(profile))
        assert history.shape[1] == 3
        assert (out / "plot.gp").exists()

    @pytest.mark.asyncio
    async def test_divergence(self, write_config, tmp_path):
        """Test that a blow-up exits with the divergence code and keeps a checkpoint."""
        tree = small_tree(stepper={"dt": 50.0, "nmax": 1000, "tol": 1e-8})
        out = tmp_path / "out"

        with np.errstate(all="ignore"):
            code = await run_cli(["--config", write_config(tree), "--out", str(out)])

        assert code == 3
        checkpoint = np.loadtxt(out / "checkpoint.csv", delimiter=",", skiprows=1)
        assert checkpoint.shape == (GRID_M + 1, 3)
        assert np.all(np.isfinite(checkpoint))

    @pytest.mark.asyncio
    async def test_determinant_on_stored_profile(self, write_config, tmp_path):
        """Test evaluating the determinant on a profile from a previous run."""
        sim_out = tmp_path / "sim"
        assert await run_cli(["--config", write_config(small_tree()), "--out", str(sim_out)]) == 0

        tree = small_tree(
            kind="determinant", determinant={"profile": str(sim_out / "profile.csv")}
        )
        det_out = tmp_path / "det"
        assert await run_cli(["--config", write_config(tree), "--out", str(det_out)]) == 0

        det = np.loadtxt(det_out / "determinant.csv", delimiter=",", skiprows=1)
        assert det.shape == (GRID_M + 1, 2)


class TestCompare:
    """Test concurrent comparison legs."""

    @pytest.mark.asyncio
    async def test_legs_run_concurrently(self, tmp_path):
        """Test that each leg writes its profile and the table collects them."""
        tree = small_tree(
            kind="compare",
            compare={
                "legs": {
                    "narrow": {"grid": {"half_width": 4.0, "M": 32}},
                    "wide": {"grid": {"half_width": 6.0, "M": 48}},
                }
            },
        )
        outcome = await run_experiment(RunConfig.from_dict(tree), tmp_path)

        assert set(outcome.summary["legs"]) == {"narrow", "wide"}
        assert outcome.summary["legs"]["wide"]["half_width"] == 6.0
        assert (tmp_path / "narrow" / "profile.csv").exists()
        assert (tmp_path / "wide" / "profile.csv").exists()
        assert (tmp_path / "comparison.csv").exists()


class TestOutputDirectory:
    """Test the output directory precedence."""

    def test_flag_wins(self):
        """Test that --out overrides everything."""
        args = build_parser().parse_args(["--preset", "mms-convergence", "--out", "x"])
        config = get_preset("mms-convergence")
        assert output_directory(args, config, Configuration()) == Path("x")

    def test_environment_per_preset(self):
        """Test that presets get their own directory under NLGS_OUTPUT_DIR."""
        with mock.patch.dict(os.environ, {"NLGS_OUTPUT_DIR": "/tmp/nlgs"}):
            env = Configuration()
        args = build_parser().parse_args(["--preset", "mms-convergence"])
        config = get_preset("mms-convergence")

        assert output_directory(args, config, env) == Path("/tmp/nlgs/mms-convergence")

    def test_configured_directory(self):
        """Test that the configured directory beats the environment and takes no suffix."""
        with mock.patch.dict(os.environ, {"NLGS_OUTPUT_DIR": "/tmp/nlgs"}):
            env = Configuration()
        args = build_parser().parse_args(["--preset", "mms-convergence"])
        config = get_preset("mms-convergence")
        config = replace(config, outputs=replace(config.outputs, directory="runs/mms"))

        assert output_directory(args, config, env) == Path("runs/mms")


class TestDeterminant:
    """Test the determinant experiment on hand-written profiles."""

    @pytest.mark.asyncio
    async def test_homogeneous_rows(self, tmp_path):
        """Test that (1, 0) rows give (d_u + ε²A)(d_v + ε²B) with ε = 1/σ."""
        profile = tmp_path / "profile.csv"
        x = np.linspace(-1.0, 1.0, 5)
        np.savetxt(
            profile,
            np.column_stack([x, np.ones(5), np.zeros(5)]),
            delimiter=",",
            header="x,u,v",
            comments="",
        )
        tree = small_tree(kind="determinant", determinant={"profile": str(profile)})

        outcome = await run_experiment(RunConfig.from_dict(tree), tmp_path / "det")

        eps2 = 0.25
        expected = (1.0 + eps2 * 0.01) * (0.01 + eps2 * 0.1)
        det = np.loadtxt(tmp_path / "det" / "determinant.csv", delimiter=",", skiprows=1)
        np.testing.assert_allclose(det[:, 1], expected, rtol=1e-14)
        assert outcome.summary["epsilon"] == pytest.approx(0.5)
