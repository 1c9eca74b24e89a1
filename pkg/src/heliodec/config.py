"""
Flat JSON configuration files with unit-suffixed keys.

Every key is optional; missing keys take the reference values below.
Unknown keys are rejected, as are values of the wrong JSON type.

    {"mass_amu": 1e6, "temperature_mK": 3, "include_rotational": false}
"""

from __future__ import annotations

import json
import math
import re
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import ConfigError, DomainError
from .experiment import ExperimentConfig
from .materials import HeliumMedium, Nanoparticle
from .quantities import (
    Quantity,
    amu,
    g_per_cm3,
    m_per_s,
    mK,
    nm,
    per_cm3,
)

__all__ = [
    "DEFAULTS",
    "AXIS_UNITS",
    "AXIS_COLUMNS",
    "config_from_mapping",
    "config_to_mapping",
    "load_config",
    "parse_axis",
]

DEFAULTS: dict[str, Any] = {
    "mass_amu": 1e6,
    "density_g_cm3": 1.0,
    "coherence_length_nm": 300.0,
    "temperature_mK": 1.0,
    "x3": 1e-15,
    "epsilon": 0.0,
    "internal_sound_speed_m_s": 1e3,
    "v_s_m_s": 238.0,
    "rho_he_g_cm3": 0.145,
    "n4_per_cm3": 2e22,
    "m3_eff_ratio": 2.34,
    "margin_k": 1.0,
    "v_crit_m_s": 50.0,
    "elastic_prefactor": 1.0,
    "include_rotational": True,
}

# sweep axis -> (config key, unit the axis values are given in)
AXIS_UNITS: dict[str, tuple[str, Quantity | None]] = {
    "mass": ("mass_amu", amu),
    "density": ("density_g_cm3", g_per_cm3),
    "separation": ("coherence_length_nm", nm),
    "temperature": ("temperature_mK", mK),
    "x3": ("x3", None),
    "epsilon": ("epsilon", None),
}
AXIS_COLUMNS = [key for key, _ in AXIS_UNITS.values()]


def _number(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key {key!r}: expected a number, got {json.dumps(value)}")
    v = float(value)
    if not math.isfinite(v):
        raise ConfigError(f"key {key!r}: value must be finite")
    return v


def config_from_mapping(doc: Mapping[str, Any]) -> ExperimentConfig:
    """Build an :class:`ExperimentConfig` from a flat key/value mapping."""
    if not isinstance(doc, Mapping):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(doc) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    v = dict(DEFAULTS)
    v.update(doc)
    rot = v["include_rotational"]
    if not isinstance(rot, bool):
        raise ConfigError(f"key 'include_rotational': expected true/false, got {json.dumps(rot)}")
    num = {k: _number(k, x) for k, x in v.items() if k != "include_rotational"}

    try:
        particle = Nanoparticle(
            M=num["mass_amu"] * amu,
            rho=num["density_g_cm3"] * g_per_cm3,
            c_int=num["internal_sound_speed_m_s"] * m_per_s,
            epsilon=num["epsilon"],
        )
        medium = HeliumMedium(
            T=num["temperature_mK"] * mK,
            v_s=num["v_s_m_s"] * m_per_s,
            rho_He=num["rho_he_g_cm3"] * g_per_cm3,
            n4=num["n4_per_cm3"] * per_cm3,
            m3_eff_ratio=num["m3_eff_ratio"],
            X3=num["x3"],
        )
        return ExperimentConfig(
            particle=particle,
            medium=medium,
            D=num["coherence_length_nm"] * nm,
            margin_k=num["margin_k"],
            v_crit=num["v_crit_m_s"] * m_per_s,
            include_rotational=rot,
            elastic_prefactor=num["elastic_prefactor"],
        )
    except DomainError as exc:
        raise ConfigError(f"invalid config value: {exc}") from exc


def config_to_mapping(cfg: ExperimentConfig) -> dict[str, Any]:
    """Inverse of :func:`config_from_mapping`, in the file's units."""
    p, med = cfg.particle, cfg.medium
    return {
        "mass_amu": p.M.to(amu),
        "density_g_cm3": p.rho.to(g_per_cm3),
        "coherence_length_nm": cfg.D.to(nm),
        "temperature_mK": med.T.to(mK),
        "x3": med.X3,
        "epsilon": p.epsilon,
        "internal_sound_speed_m_s": p.c_int.to(m_per_s),
        "v_s_m_s": med.v_s.to(m_per_s),
        "rho_he_g_cm3": med.rho_He.to(g_per_cm3),
        "n4_per_cm3": med.n4.to(per_cm3),
        "m3_eff_ratio": med.m3_eff_ratio,
        "margin_k": cfg.margin_k,
        "v_crit_m_s": cfg.v_crit.to(m_per_s),
        "elastic_prefactor": cfg.elastic_prefactor,
        "include_rotational": cfg.include_rotational,
    }


def load_config(path: str | Path | None) -> ExperimentConfig:
    """Read a config file; ``None`` or an empty file gives all defaults."""
    if path is None:
        return config_from_mapping({})
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    if not text.strip():
        return config_from_mapping({})
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return config_from_mapping(doc)


_AXIS_RE = re.compile(r"^(?P<name>[a-z0-9]+)=(?P<start>[^:]+):(?P<stop>[^:]+):(?P<count>\d+):(?P<scale>log|lin)$")


def parse_axis(spec: str) -> tuple[str, list]:
    """
    Parse ``name=start:stop:count:log|lin`` into sweep-axis values.

    Values are in the config file's units (amu, g/cm3, nm, mK) and are
    returned as quantities ready for :class:`heliodec.analysis.SweepGrid`.
    """
    m = _AXIS_RE.match(spec.strip())
    if not m:
        raise ConfigError(f"bad axis spec {spec!r}; expected name=start:stop:count:log|lin")
    name = m["name"]
    if name not in AXIS_UNITS:
        raise ConfigError(f"unknown axis {name!r}; expected one of {', '.join(AXIS_UNITS)}")
    try:
        start, stop = float(m["start"]), float(m["stop"])
    except ValueError:
        raise ConfigError(f"axis {name!r}: start/stop must be numbers") from None
    count = int(m["count"])
    if count < 1:
        raise ConfigError(f"axis {name!r}: count must be >= 1")
    if not (start > 0 and stop > 0 and math.isfinite(start) and math.isfinite(stop)):
        raise ConfigError(f"axis {name!r}: start and stop must be finite and > 0")
    if count > 1 and start == stop:
        raise ConfigError(f"axis {name!r}: start == stop with count > 1")
    if m["scale"] == "log":
        raw = np.geomspace(start, stop, count)
    else:
        raw = np.linspace(start, stop, count)
    raw[0] = start
    raw[-1] = stop if count > 1 else start
    unit = AXIS_UNITS[name][1]
    values = [float(x) * unit if unit is not None else float(x) for x in raw]
    return name, values
