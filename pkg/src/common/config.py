"""CLI configuration: presets, key=value files and flag overrides."""

import json
import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from src.common.errors import UsageError

logger = logging.getLogger(__name__)

PRESETS_PATH = Path("config/presets.json")

# config-file / preset keys -> CliConfig fields
KEY_ALIASES = {
    "type": "type_spec",
    "type_spec": "type_spec",
    "p": "p",
    "I": "levi",
    "i": "levi",
    "levi": "levi",
    "format": "output_format",
    "output_format": "output_format",
    "box": "box",
    "max_d": "max_d",
    "seed": "seed",
    "samples": "samples",
    "rank_cap": "rank_cap",
    "history": "history_file",
    "history_file": "history_file",
}

OUTPUT_FORMATS = ("text", "json")


@dataclass(frozen=True)
class CliConfig:
    type_spec: Optional[str] = None
    p: Optional[int] = None
    levi: str = ""
    output_format: str = "text"
    box: int = 20
    max_d: int = 3
    seed: int = 0
    samples: int = 200
    rank_cap: int = 8
    history_file: Optional[str] = None

    def require(self) -> "CliConfig":
        """Ensure the fields every subcommand needs are present."""
        if not self.type_spec:
            raise UsageError("missing --type (or type= in a config file / preset)")
        if self.p is None:
            raise UsageError("missing --p (or p= in a config file / preset)")
        return self


_INT_FIELDS = {"p", "box", "max_d", "seed", "samples", "rank_cap"}


def _coerce(field_name: str, value: Any) -> Any:
    if value is None:
        return None
    if field_name in _INT_FIELDS:
        try:
            return int(value)
        except (TypeError, ValueError):
            raise UsageError(f"{field_name} must be an integer, got {value!r}")
    if field_name == "output_format" and value not in OUTPUT_FORMATS:
        raise UsageError(f"format must be one of {', '.join(OUTPUT_FORMATS)}, got {value!r}")
    return str(value)


def normalise(values: Mapping[str, Any], source: str) -> Dict[str, Any]:
    """Map raw keys onto CliConfig fields, rejecting unknown keys."""
    out = {}
    for key, value in values.items():
        if key.startswith("_"):
            continue
        name = KEY_ALIASES.get(key)
        if name is None:
            raise UsageError(f"unknown setting {key!r} in {source}")
        out[name] = _coerce(name, value)
    return out


def load_presets(path: Optional[Path] = None) -> Dict[str, Dict[str, Any]]:
    """Load named presets; a missing or broken file means no presets."""
    path = path or PRESETS_PATH
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f).get("presets", {})
    except FileNotFoundError:
        logger.warning(f"Presets not found: {path}, using none")
        return {}
    except json.JSONDecodeError as e:
        logger.error(f"Invalid presets JSON: {e}")
        return {}


def read_config_file(path: Path) -> Dict[str, str]:
    """Parse a key=value file; '#' starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read config file {path}: {e}")
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    return values


def resolve_config(
    preset: Optional[str] = None,
    config_path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    presets_path: Optional[Path] = None,
) -> CliConfig:
    """Layer preset < config file < flags (None flags are ignored)."""
    cfg = CliConfig()
    if preset:
        presets = load_presets(presets_path)
        if preset not in presets:
            raise UsageError(f"unknown preset {preset!r}; known: {', '.join(sorted(presets)) or 'none'}")
        cfg = replace(cfg, **normalise(presets[preset], f"preset {preset}"))
    if config_path:
        cfg = replace(cfg, **normalise(read_config_file(config_path), str(config_path)))
    if overrides:
        known = {f.name for f in fields(CliConfig)}
        flags = {k: _coerce(k, v) for k, v in overrides.items() if v is not None and k in known}
        cfg = replace(cfg, **flags)
    return cfg
