"""Loading systems, biclosed sets and run configurations from JSON/YAML.

All validation errors of one configuration are collected and raised together
as a single :class:`ConfigError`.  The schema is documented in ``SCHEMA.md``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .biclosed import (
    BiclosedSet,
    Complement,
    DoubleTwist,
    ExplicitOnBall,
    HalfSpace,
    InversionSet,
    all_reflections,
    empty_set,
)
from .coxeter import ConfigError, CoxeterSystem, preset

__all__ = [
    "FORMATS",
    "RunConfig",
    "load_file",
    "system_from_config",
    "biclosed_from_config",
    "parse_biclosed_spec",
    "system_label",
]

FORMATS = ("json", "csv", "text", "dot")


def load_file(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        if path.suffix.lower() == ".json":
            return json.loads(text)
        return yaml.safe_load(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None


def system_from_config(cfg: Any) -> CoxeterSystem:
    """``"A2"`` or ``{"preset": ...}`` or ``{"coxeter_matrix": ..., "cartan": ..., "names": ...}``."""
    if isinstance(cfg, str):
        return preset(cfg)
    if not isinstance(cfg, dict):
        raise ConfigError("system must be a preset name or a mapping")
    if "preset" in cfg:
        extra = set(cfg) - {"preset"}
        if extra:
            raise ConfigError(f"preset system does not take keys {sorted(extra)}")
        return preset(cfg["preset"])
    if "coxeter_matrix" not in cfg:
        raise ConfigError("system needs 'preset' or 'coxeter_matrix'")
    unknown = set(cfg) - {"coxeter_matrix", "cartan", "names"}
    if unknown:
        raise ConfigError(f"unknown system keys {sorted(unknown)}")
    return CoxeterSystem(cfg["coxeter_matrix"], cfg.get("cartan"), cfg.get("names"))


def _element(system: CoxeterSystem, text) -> Any:
    if not isinstance(text, str):
        raise ConfigError(f"element must be a word string, got {text!r}")
    try:
        return system.element(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def biclosed_from_config(system: CoxeterSystem, cfg: Any) -> BiclosedSet:
    if isinstance(cfg, str):
        return parse_biclosed_spec(system, cfg)
    if not isinstance(cfg, dict) or "type" not in cfg:
        raise ConfigError(f"biclosed set must be a mapping with 'type', got {cfg!r}")
    kind = cfg["type"]
    if kind == "empty":
        return empty_set(system)
    if kind == "all":
        return all_reflections(system)
    if kind == "inversion":
        return InversionSet(_element(system, cfg.get("element")))
    if kind == "complement":
        return Complement(biclosed_from_config(system, cfg.get("of")))
    if kind == "double_twist":
        return DoubleTwist(biclosed_from_config(system, cfg.get("inner")), _element(system, cfg.get("element")))
    if kind == "halfspace":
        if "covector" in cfg:
            try:
                return HalfSpace(system, list(cfg["covector"]))
            except (ValueError, ZeroDivisionError) as exc:
                raise ConfigError(f"bad covector {cfg['covector']!r}: {exc}") from None
        if "spanning" in cfg and "positive" in cfg:
            return HalfSpace.through(system, cfg["spanning"], cfg["positive"])
        raise ConfigError("halfspace needs 'covector' or 'spanning' plus 'positive'")
    if kind == "explicit":
        if "depth" not in cfg:
            raise ConfigError("explicit biclosed set needs a certified 'depth'")
        return ExplicitOnBall(system, cfg.get("roots", []), cfg["depth"])
    raise ConfigError(f"unknown biclosed set type {kind!r}")


def parse_biclosed_spec(system: CoxeterSystem, text: str) -> BiclosedSet:
    """Shorthands: ``empty``, ``all``, ``N:st``, ``co-N:st``, ``half:1,-1``, or inline JSON."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return biclosed_from_config(system, json.loads(text))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad inline biclosed JSON: {exc}") from None
    if text == "empty":
        return empty_set(system)
    if text == "all":
        return all_reflections(system)
    head, _, rest = text.partition(":")
    if head == "N":
        return InversionSet(_element(system, rest))
    if head == "co-N":
        return Complement(InversionSet(_element(system, rest)))
    if head == "half":
        try:
            return HalfSpace(system, [x.strip() for x in rest.split(",")])
        except ValueError as exc:
            raise ConfigError(f"bad half-space covector {rest!r}: {exc}") from None
    raise ConfigError(f"cannot parse biclosed set {text!r}")


def system_label(system: CoxeterSystem) -> str:
    from .coxeter import PRESETS

    for name in PRESETS:
        if preset(name) == system:
            return name
    rows = ";".join(",".join("inf" if x == 0 else str(x) for x in row) for row in system.coxeter_matrix)
    return f"M[{rows}]"


@dataclass
class RunConfig:
    system: CoxeterSystem
    radius: int | None = None
    biclosed: dict[str, BiclosedSet] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)
    format: str = "text"
    output: str | None = None

    @classmethod
    def build(cls, file_data: dict | None, overrides: dict[str, Any]) -> "RunConfig":
        """Merge a config mapping with flag overrides (non-None flags win) and validate everything."""
        data = dict(file_data or {})
        for k, v in overrides.items():
            if v is not None:
                data[k] = v
        errors: list[str] = []
        known = {"system", "radius", "biclosed", "format", "output", "params", "sweep"}
        for k in sorted(set(data) - known):
            errors.append(f"unknown config key {k!r}")
        system = None
        if "system" not in data:
            errors.append("no system given (use --system or a config file with 'system')")
        else:
            try:
                system = system_from_config(data["system"])
            except ConfigError as exc:
                errors.extend(exc.errors)
        radius = data.get("radius")
        if radius is not None and (not isinstance(radius, int) or isinstance(radius, bool) or radius < 0):
            errors.append(f"radius must be a nonnegative integer, got {radius!r}")
        fmt = data.get("format", "text")
        if fmt not in FORMATS:
            errors.append(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")
        sets: dict[str, BiclosedSet] = {}
        raw_sets = data.get("biclosed") or {}
        if isinstance(raw_sets, list):
            raw_sets = {f"A{i}": v for i, v in enumerate(raw_sets)}
        elif not isinstance(raw_sets, dict):
            errors.append("'biclosed' must be a mapping or a list")
            raw_sets = {}
        if system is not None:
            for name, spec in raw_sets.items():
                try:
                    sets[name] = biclosed_from_config(system, spec)
                except ConfigError as exc:
                    errors.extend(f"biclosed {name!r}: {e}" for e in exc.errors)
                except ValueError as exc:
                    errors.append(f"biclosed {name!r}: {exc}")
        params = dict(data.get("params") or {})
        if "sweep" in data:
            params["sweep"] = data["sweep"]
        if errors:
            raise ConfigError(errors)
        return cls(system, radius, sets, params, fmt, data.get("output"))
