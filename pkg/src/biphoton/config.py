"""Flat ``key = "value"`` config files with unit suffixes, and the built-in figure presets."""
from __future__ import annotations

import math
import re
from pathlib import Path

from .errors import ConfigParseError, InvalidConfigError
from .geometry import ExperimentConfig

LENGTH_UNITS = {"um": 1.0, "mm": 1e3}
ANGLE_UNITS = {"deg": math.pi / 180}

LENGTH_KEYS = ("R", "L", "w0", "w1", "wg", "lambda_p")
KEYS = LENGTH_KEYS + ("phi", "n_p")
REQUIRED = ("R", "L", "w0", "w1", "wg")

_LINE = re.compile(r'^(?P<key>[^\s=#]+)\s*=\s*(?P<value>.*?)\s*$')
_QUOTED = re.compile(r'^"(?P<body>[^"]*)"\s*(#.*)?$')
_QUANTITY = re.compile(r'^\s*(?P<num>[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)\s*(?P<unit>[A-Za-z]*)\s*$')

PRESETS = {
    "fig2": """\
# OAM weight versus emission angle
R = "400um"
L = "2mm"
w0 = "100um"
w1 = "100um"
wg = "500um"
phi = "0deg"
""",
    "fig3": """\
# OAM weight versus cloud length (sweep L at several angles)
R = "400um"
L = "2mm"
w0 = "100um"
w1 = "100um"
wg = "500um"
phi = "90deg"
""",
    "fig4": """\
# Schmidt number versus emission angle
R = "1000um"
L = "200um"
w0 = "500um"
w1 = "100um"
wg = "500um"
phi = "0deg"
""",
}


def parse_quantity(text: str, units: dict[str, float], default_unit: str | None = None) -> float:
    """Parse e.g. ``"2mm"`` into the canonical unit. ``units`` maps suffix -> factor."""
    m = _QUANTITY.match(text)
    if not m:
        raise ValueError(f"cannot parse quantity {text!r}")
    unit = m.group("unit") or default_unit
    if unit is None:
        raise ValueError(f"missing unit in {text!r} (expected one of {', '.join(units)})")
    if unit not in units:
        raise ValueError(f"unknown unit {unit!r} in {text!r} (expected one of {', '.join(units)})")
    return float(m.group("num")) * units[unit]


def parse_length(text: str) -> float:
    return parse_quantity(text, LENGTH_UNITS)


def parse_angle(text: str) -> float:
    return parse_quantity(text, ANGLE_UNITS)


def parse_config_text(text: str, source: str | None = None) -> ExperimentConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LINE.match(raw)
        if not m:
            raise ConfigParseError('expected `key = "value"`', lineno, len(raw) - len(raw.lstrip()) + 1, source)
        key = m.group("key")
        key_col = m.start("key") + 1
        val_col = m.start("value") + 1
        if key not in KEYS:
            raise ConfigParseError(f"unknown key {key!r}", lineno, key_col, source)
        if key in values:
            raise ConfigParseError(f"duplicate key {key!r}", lineno, key_col, source)
        q = _QUOTED.match(m.group("value"))
        if not q:
            raise ConfigParseError(f"value for {key!r} must be a double-quoted string", lineno, val_col, source)
        body = q.group("body")
        try:
            if key in LENGTH_KEYS:
                values[key] = parse_length(body)
            elif key == "phi":
                values[key] = parse_angle(body)
            else:
                values[key] = parse_quantity(body, {"": 1.0}, default_unit="")
        except ValueError as exc:
            raise ConfigParseError(str(exc), lineno, val_col + 1, source) from None

    missing = [k for k in REQUIRED if k not in values]
    if missing:
        raise InvalidConfigError(f"missing required key(s): {', '.join(missing)}")
    return ExperimentConfig(**values)


def parse_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigParseError(f"cannot read config: {exc.strerror or exc}", path=str(path)) from None
    return parse_config_text(text, source=str(path))


def load_config(spec: str) -> ExperimentConfig:
    """A config file path, or the name of a built-in preset if no such file exists."""
    path = Path(spec)
    if not path.exists() and spec in PRESETS:
        return parse_config_text(PRESETS[spec], source=f"preset:{spec}")
    return parse_config(path)


def format_config(config: ExperimentConfig) -> str:
    return "".join([
        *(f'{key} = "{getattr(config, key):.12g}um"\n' for key in LENGTH_KEYS),
        f'phi = "{math.degrees(config.phi):.12g}deg"\n',
        f'n_p = "{config.n_p:.12g}"\n',
    ])
