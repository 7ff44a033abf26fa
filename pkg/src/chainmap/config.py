"""Job configuration files (YAML).

A flat mapping::

    family: hard-cutoff        # exp-cutoff, log-discretised, linear-discretised,
                               # tabulated, gapped, point-masses
    alpha: 0.1
    s: 1.0
    omega_c: 1.0
    chain_length: 50
    engine: auto               # stieltjes, lanczos, closed-form
    tolerance: 1.0e-12
    output: chain.csv
    format: csv                # or json; defaults to the output suffix

``delta`` and ``n_modes`` belong to the discretised families,
``table_path`` (relative to the config file) to ``tabulated``,
``points: [[omega, weight], ...]`` to ``point-masses`` and
``segments: [{family, ..., lo, hi}, ...]`` to ``gapped``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import yaml

from chainmap.errors import ChainmapError, ConfigError
from chainmap.measures import (
    Gapped,
    LinearDiscretised,
    LogDiscretised,
    PointMasses,
    PowerLawExpCutoff,
    PowerLawHardCutoff,
    SpectralDensity,
    Tabulated,
)

ENGINES = ("auto", "stieltjes", "lanczos", "closed-form")
FORMATS = ("csv", "json")

_FAMILIES = {
    "hard-cutoff": "hard-cutoff",
    "jacobi": "hard-cutoff",
    "exp-cutoff": "exp-cutoff",
    "laguerre": "exp-cutoff",
    "log-discretised": "log-discretised",
    "littleq": "log-discretised",
    "linear-discretised": "linear-discretised",
    "hahn": "linear-discretised",
    "tabulated": "tabulated",
    "gapped": "gapped",
    "point-masses": "point-masses",
}

_DENSITY_KEYS = {"family", "alpha", "s", "omega_c", "delta", "n_modes", "table_path", "segments", "points"}
_JOB_KEYS = {"chain_length", "engine", "tolerance", "output", "format", "statistics"}


@dataclass(frozen=True)
class JobConfig:
    density: SpectralDensity
    chain_length: int = 50
    engine: str = "auto"
    tolerance: float = 1e-12
    output: Optional[Path] = None
    format: str = "csv"
    statistics: str = "boson"

    def __post_init__(self):
        if int(self.chain_length) != self.chain_length or self.chain_length < 1:
            raise ConfigError(f"chain_length must be a positive integer, got {self.chain_length}")
        if self.engine not in ENGINES:
            raise ConfigError(f"engine must be one of {', '.join(ENGINES)}, got {self.engine!r}")
        if not (0 < self.tolerance <= 1e-2):
            raise ConfigError(f"tolerance must lie in (0, 1e-2], got {self.tolerance}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.statistics not in ("boson", "fermion"):
            raise ConfigError(f"statistics must be boson or fermion, got {self.statistics!r}")


def _num(d: dict, key: str, default=None) -> float:
    if key not in d:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    v = d[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key} must be a number, got {v!r}")
    return float(v)


def parse_density(d: dict, base: Path = Path(".")) -> SpectralDensity:
    if not isinstance(d, dict):
        raise ConfigError("density description must be a mapping")
    unknown = set(d) - _DENSITY_KEYS - {"lo", "hi"}
    if unknown:
        raise ConfigError(f"unknown density key(s): {', '.join(sorted(unknown))}")
    fam = _FAMILIES.get(str(d.get("family", "")).lower())
    if fam is None:
        raise ConfigError(f"unknown or missing family {d.get('family')!r}; choose from {', '.join(sorted(set(_FAMILIES.values())))}")
    try:
        if fam in ("hard-cutoff", "exp-cutoff", "log-discretised", "linear-discretised"):
            args = (_num(d, "alpha"), _num(d, "s"), _num(d, "omega_c", 1.0))
            if fam == "hard-cutoff":
                return PowerLawHardCutoff(*args)
            if fam == "exp-cutoff":
                return PowerLawExpCutoff(*args)
            if fam == "log-discretised":
                return LogDiscretised(*args, _num(d, "delta"))
            n_modes = _num(d, "n_modes")
            if n_modes != int(n_modes):
                raise ConfigError(f"n_modes must be an integer, got {n_modes}")
            return LinearDiscretised(*args, int(n_modes))
        if fam == "tabulated":
            if "table_path" not in d:
                raise ConfigError("tabulated density needs table_path")
            path = Path(d["table_path"])
            if not path.is_absolute():
                path = base / path
            if not path.is_file():
                raise ConfigError(f"table file {path} not found")
            return Tabulated.from_file(path)
        if fam == "point-masses":
            pts = d.get("points")
            if not isinstance(pts, list) or not all(isinstance(p, (list, tuple)) and len(p) == 2 for p in pts):
                raise ConfigError("points must be a list of [omega, weight] pairs")
            return PointMasses(tuple((float(o), float(w)) for o, w in pts))
        segs = d.get("segments")
        if not isinstance(segs, list) or not segs:
            raise ConfigError("gapped density needs a non-empty list of segments")
        parts = []
        for seg in segs:
            if not isinstance(seg, dict):
                raise ConfigError("each segment must be a mapping")
            inner = {k: v for k, v in seg.items() if k not in ("lo", "hi")}
            parts.append((parse_density(inner, base), _num(seg, "lo"), _num(seg, "hi")))
        return Gapped(tuple(parts))
    except ConfigError:
        raise
    except (ChainmapError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def parse_config(data: dict, base: Path = Path(".")) -> JobConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping")
    unknown = set(data) - _DENSITY_KEYS - _JOB_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    density = parse_density({k: v for k, v in data.items() if k in _DENSITY_KEYS}, base)
    out = data.get("output")
    output = None if out is None else Path(str(out))
    fmt = data.get("format")
    if fmt is None:
        fmt = "json" if output is not None and output.suffix.lower() == ".json" else "csv"
    length = data.get("chain_length", 50)
    if isinstance(length, bool) or not isinstance(length, (int, float)):
        raise ConfigError(f"chain_length must be an integer, got {length!r}")
    return JobConfig(
        density=density,
        chain_length=int(length) if length == int(length) else length,
        engine=str(data.get("engine", "auto")),
        tolerance=_num(data, "tolerance", 1e-12),
        output=output,
        format=str(fmt),
        statistics=str(data.get("statistics", "boson")),
    )


def load_config(path) -> JobConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return parse_config(data, path.parent)
