"""Experiments, configuration, rendering, verification and the CLI."""

from .config import ExperimentSpec, Grid, SystemSpec, default_spec, parse_config
from .experiments import (CdfResult, Table, run_asymptotics, run_cdf_experiment, run_iota_sweep,
                          run_unquantized_cdf)
from .render import Axes, render_csv, render_svg
from .verify import run_verify

__all__ = [
    "Axes",
    "CdfResult",
    "ExperimentSpec",
    "Grid",
    "SystemSpec",
    "Table",
    "default_spec",
    "parse_config",
    "render_csv",
    "render_svg",
    "run_asymptotics",
    "run_cdf_experiment",
    "run_iota_sweep",
    "run_unquantized_cdf",
    "run_verify",
]
