"""CSV artifacts and gnuplot scripts."""

import csv
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from nonlocal_grayscott.analysis.errors import REPORT_COLUMNS, ConvergenceReport
from nonlocal_grayscott.config.settings import (
    CHECKPOINT_FILE,
    COMPARISON_FILE,
    CSV_FLOAT_FORMAT,
    DETERMINANT_FILE,
    HISTORY_FILE,
    PLOT_SCRIPT_FILE,
    PROFILE_FILE,
    REPORT_FILE,
)
from nonlocal_grayscott.errors import ConfigurationError
from nonlocal_grayscott.timestepper.stepper import Checkpoint

COMPARISON_COLUMNS = (
    "leg",
    "half_width",
    "M",
    "max_value",
    "max_location",
    "plateau_width",
    "boundary_value",
    "oscillation_count",
    "steps",
    "reason",
)


def ensure_directory(directory: Path) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def _savetxt(path: Path, columns: Sequence[np.ndarray], header: str, fmt: Any) -> Path:
    np.savetxt(
        path,
        np.column_stack(columns),
        fmt=fmt,
        delimiter=",",
        header=header,
        comments="",
        newline="\n",
    )
    logging.info(f"Wrote {path}")
    return path


def write_profile(directory: Path, x: np.ndarray, u: np.ndarray, v: np.ndarray) -> Path:
    return _savetxt(directory / PROFILE_FILE, (x, u, v), "x,u,v", CSV_FLOAT_FORMAT)


def write_history(directory: Path, history: np.ndarray) -> Path:
    history = np.asarray(history, dtype=float).reshape(-1, 3)
    return _savetxt(
        directory / HISTORY_FILE,
        (history[:, 0], history[:, 1], history[:, 2]),
        "step,t,max_update",
        ["%d", CSV_FLOAT_FORMAT, CSV_FLOAT_FORMAT],
    )


def write_checkpoint(directory: Path, x: np.ndarray, checkpoint: Checkpoint) -> Path:
    """Write the last finite state kept before a divergence."""
    state = checkpoint.state
    path = _savetxt(directory / CHECKPOINT_FILE, (x, state.u, state.v), "x,u,v", CSV_FLOAT_FORMAT)
    logging.info(f"Checkpoint is from step {checkpoint.step}, t={state.t:.6g}")
    return path


def write_determinant(directory: Path, x: np.ndarray, det: np.ndarray) -> Path:
    return _savetxt(directory / DETERMINANT_FILE, (x, det), "x,det", CSV_FLOAT_FORMAT)


def _write_rows(path: Path, header: Sequence[str], rows: List[List[str]]) -> Path:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    logging.info(f"Wrote {path}")
    return path


def write_report(directory: Path, report: ConvergenceReport) -> Path:
    return _write_rows(directory / REPORT_FILE, REPORT_COLUMNS, report.csv_rows())


def write_comparison(directory: Path, rows: List[Dict[str, Any]]) -> Path:
    def fmt(value: Any) -> str:
        return CSV_FLOAT_FORMAT % value if isinstance(value, float) else str(value)

    body = [[fmt(row[column]) for column in COMPARISON_COLUMNS] for row in rows]
    return _write_rows(directory / COMPARISON_FILE, COMPARISON_COLUMNS, body)


def read_profile(path: Path) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read an (x, u, v) profile CSV.

    Raises:
        ConfigurationError: If the file is missing or malformed
    """
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as e:
        raise ConfigurationError(
            f"cannot read profile {path}: {e}", key_path="determinant.profile"
        ) from None
    if data.shape[1] != 3:
        raise ConfigurationError(
            f"profile {path} must have columns x,u,v", key_path="determinant.profile"
        )
    return data[:, 0], data[:, 1], data[:, 2]


_PROFILE_PLOT = """\
set datafile separator ","
set xlabel "x"
set multiplot layout 2,1
set title "Pulse profile"
plot "{profile}" skip 1 using 1:2 with lines title "u", \\
     "{profile}" skip 1 using 1:3 with lines title "v"
set title "Pulse profile (zoom)"
set xrange [{zoom_lo}:{zoom_hi}]
plot "{profile}" skip 1 using 1:2 with lines title "u", \\
     "{profile}" skip 1 using 1:3 with lines title "v"
unset multiplot
"""

_REPORT_PLOT = """\
set datafile separator ","
set logscale xy
set xlabel "h"
set ylabel "{norm} error"
set key top left
plot "{report}" skip 1 using 2:4 with linespoints title "u", \\
     "{report}" skip 1 using 2:5 with linespoints title "v"
"""

_COMPARE_PLOT = """\
set datafile separator ","
set xlabel "x"
set ylabel "v"
plot {curves}
"""

_DETERMINANT_PLOT = """\
set datafile separator ","
set xlabel "x"
set ylabel "det a(u,v;eps)"
set xzeroaxis
plot "{determinant}" skip 1 using 1:2 with lines title "determinant"
"""


def write_plot_script(directory: Path, kind: str, **context: Any) -> Path:
    """Write a standalone gnuplot script for the artifacts of one experiment kind."""
    if kind == "simulate":
        half = float(context.get("zoom", 5.0))
        text = _PROFILE_PLOT.format(profile=PROFILE_FILE, zoom_lo=-half, zoom_hi=half)
    elif kind in ("mms", "pulse-convergence"):
        text = _REPORT_PLOT.format(report=REPORT_FILE, norm=context.get("norm", "L2"))
    elif kind == "compare":
        curves = ", \\\n     ".join(
            f'"{leg}/{PROFILE_FILE}" skip 1 using 1:3 with lines title "{leg}"'
            for leg in context["legs"]
        )
        text = _COMPARE_PLOT.format(curves=curves)
    else:
        text = _DETERMINANT_PLOT.format(determinant=DETERMINANT_FILE)
    path = directory / PLOT_SCRIPT_FILE
    path.write_text(text)
    logging.info(f"Wrote {path}")
    return path
