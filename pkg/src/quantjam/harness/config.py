"""Experiment descriptions and their JSON configuration format.

A config is a JSON object::

    {"kind": "cdf",
     "system": {"B": 16, "U": 2, "I": 1, "rho_db": 60, "n0_db": -30},
     "model": "rayleigh",
     "bits_list": [1, 2, 3, 4, 5]}

Only ``kind`` is required. Unknown keys are rejected at every level.
"""

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..bounds import F_VARIANTS, SINR_VARIANTS, SystemConfig
from ..channels import CHANNEL_TAGS, ChannelModel
from ..exceptions import ConfigError

__all__ = ["KINDS", "Grid", "SystemSpec", "ExperimentSpec", "parse_config", "default_spec"]

KINDS = ("iota_sweep", "cdf", "unquantized_cdf", "asymptotics")
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class Grid:
    """Inclusive arithmetic grid ``start, start + step, ..., <= stop``."""

    start: float
    stop: float
    step: float

    def points(self):
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        # rounding keeps printed grid values free of accumulated drift
        return np.round(self.start + self.step * np.arange(max(n, 0)), 10)


@dataclass(frozen=True)
class SystemSpec:
    B: int = 16
    U: int = 2
    I: int = 1
    rho_db: float = 60.0
    n0_db: float = -30.0

    def config(self, M, rho_db=None):
        return SystemConfig.from_db(self.B, self.U, self.I,
                                    self.rho_db if rho_db is None else rho_db, self.n0_db, M)


_DEFAULT_BITS = {
    "iota_sweep": tuple(range(1, 13)),
    "cdf": (1, 2, 3, 4, 5),
    "unquantized_cdf": (1,),
    "asymptotics": (1,),
}
_DEFAULT_GRID = {
    "iota_sweep": Grid(0.0, 120.0, 0.2),
    "asymptotics": Grid(60.0, 200.0, 10.0),
}
_DEFAULT_MODEL = {"asymptotics": "los_ula"}


@dataclass(frozen=True)
class ExperimentSpec:
    kind: str
    system: SystemSpec = field(default_factory=SystemSpec)
    model: ChannelModel = field(default_factory=ChannelModel)
    bits_list: tuple = (1,)
    trials: int = 10_000
    seed: int = 1
    grid: Grid = field(default_factory=lambda: Grid(0.0, 120.0, 0.2))
    sinr_variant: str = "general"
    f_variant: str = "exact"
    exponents: tuple = (0.4, 0.5)

    def with_overrides(self, **kwargs):
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def default_spec(kind):
    """Spec with every field at its default for ``kind``."""
    if kind not in KINDS:
        raise ConfigError(f"must be one of {', '.join(KINDS)}", "kind")
    return ExperimentSpec(
        kind=kind,
        model=ChannelModel(_DEFAULT_MODEL.get(kind, "rayleigh")),
        bits_list=_DEFAULT_BITS[kind],
        grid=_DEFAULT_GRID.get(kind, Grid(0.0, 120.0, 0.2)),
    )


def _reject_unknown(obj, allowed, where):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ConfigError(f"unknown key(s) {', '.join(extra)}", where)


def _int(value, name, lo=None, hi=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError("must be an integer", name)
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        raise ConfigError(f"must lie in [{lo}, {hi if hi is not None else 'inf'}]", name)
    return value


def _real(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError("must be a finite number", name)
    return float(value)


def _choice(value, name, options):
    if value not in options:
        raise ConfigError(f"must be one of {', '.join(options)}", name)
    return value


def _parse_system(obj):
    if not isinstance(obj, dict):
        raise ConfigError("must be an object", "system")
    _reject_unknown(obj, ("B", "U", "I", "rho_db", "n0_db"), "system")
    base = SystemSpec()
    sys = SystemSpec(
        B=_int(obj.get("B", base.B), "system.B", 1, 64),
        U=_int(obj.get("U", base.U), "system.U", 1, 64),
        I=_int(obj.get("I", base.I), "system.I", 0, 64),
        rho_db=_real(obj.get("rho_db", base.rho_db), "system.rho_db"),
        n0_db=_real(obj.get("n0_db", base.n0_db), "system.n0_db"),
    )
    return sys


def _parse_model(obj):
    if isinstance(obj, str):
        return ChannelModel(_choice(obj, "model", CHANNEL_TAGS))
    if not isinstance(obj, dict):
        raise ConfigError("must be a string or an object", "model")
    _reject_unknown(obj, ("tag", "sector_deg"), "model")
    if "tag" not in obj:
        raise ConfigError("missing required key", "model.tag")
    tag = _choice(obj["tag"], "model.tag", CHANNEL_TAGS)
    sector = _real(obj.get("sector_deg", 120.0), "model.sector_deg")
    if not 0 < sector <= 180:
        raise ConfigError("must lie in (0, 180]", "model.sector_deg")
    return ChannelModel(tag, math.radians(sector) / 2.0)


def _parse_grid(obj):
    if not isinstance(obj, dict):
        raise ConfigError("must be an object", "grid")
    _reject_unknown(obj, ("start", "stop", "step"), "grid")
    for key in ("start", "stop", "step"):
        if key not in obj:
            raise ConfigError("missing required key", f"grid.{key}")
    grid = Grid(_real(obj["start"], "grid.start"), _real(obj["stop"], "grid.stop"),
                _real(obj["step"], "grid.step"))
    if grid.step <= 0:
        raise ConfigError("must be positive", "grid.step")
    if grid.stop < grid.start:
        raise ConfigError("must not be below grid.start", "grid.stop")
    return grid


_TOP_KEYS = ("kind", "system", "model", "bits_list", "trials", "seed", "grid",
             "sinr_variant", "f_variant", "exponents")


def parse_config(text):
    """Parse and validate a UTF-8 JSON experiment config into an :class:`ExperimentSpec`."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ConfigError(f"not valid UTF-8 at byte {exc.start}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ConfigError("top level must be a JSON object")
    _reject_unknown(obj, _TOP_KEYS, "config")
    if "kind" not in obj:
        raise ConfigError("missing required key", "kind")
    spec = default_spec(_choice(obj["kind"], "kind", KINDS))
    updates = {}
    if "system" in obj:
        updates["system"] = _parse_system(obj["system"])
    if "model" in obj:
        updates["model"] = _parse_model(obj["model"])
    if "bits_list" in obj:
        bits = obj["bits_list"]
        if not isinstance(bits, list) or not bits:
            raise ConfigError("must be a non-empty list", "bits_list")
        updates["bits_list"] = tuple(_int(b, f"bits_list[{i}]", 1, 40) for i, b in enumerate(bits))
    if "trials" in obj:
        updates["trials"] = _int(obj["trials"], "trials", 1)
    if "seed" in obj:
        updates["seed"] = _int(obj["seed"], "seed", 0, _U64)
    if "grid" in obj:
        updates["grid"] = _parse_grid(obj["grid"])
    if "sinr_variant" in obj:
        updates["sinr_variant"] = _choice(obj["sinr_variant"], "sinr_variant", SINR_VARIANTS)
    if "f_variant" in obj:
        updates["f_variant"] = _choice(obj["f_variant"], "f_variant", F_VARIANTS)
    if "exponents" in obj:
        exps = obj["exponents"]
        if not isinstance(exps, list):
            raise ConfigError("must be a list", "exponents")
        updates["exponents"] = tuple(_real(e, f"exponents[{i}]") for i, e in enumerate(exps))
        if any(e <= 0 for e in updates["exponents"]):
            raise ConfigError("must be positive", "exponents")
    spec = replace(spec, **updates)
    if spec.kind == "unquantized_cdf" and spec.system.I >= spec.system.B:
        raise ConfigError("must be smaller than system.B", "system.I")
    return spec
