"""Scatterer description files

Scatterers are described in TOML (or JSON with the same schema, see
README). Bundled presets live in the presets/ directory of the package.
"""

import json
import tomllib
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .geometry.structures import Scatterer, scatterer_from_dict

PRESET_SUFFIX = ".toml"


def read_document(path: str | Path) -> dict:
    """Parse a TOML or JSON file into a mapping (format from the suffix)"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    suffix = path.suffix.lower()
    try:
        if suffix == ".json":
            data = json.loads(text)
        elif suffix == ".toml":
            data = tomllib.loads(text)
        else:
            raise ConfigError(f"{path}: expected a .toml or .json file")
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping")
    return data


def load_scatterer(path: str | Path) -> Scatterer:
    """Load a scatterer from a file path or a bundled preset name"""
    path = Path(path)
    if not path.exists() and path.suffix == "" and path.name in list_presets():
        return load_preset(path.name)
    data = read_document(path)
    return scatterer_from_dict(data.get("scatterer", data))


def save_scatterer(scatterer: Scatterer, path: str | Path) -> Path:
    """Write the JSON description of a scatterer"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(scatterer.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def list_presets() -> list[str]:
    """Names of the bundled scatterer presets"""
    root = resources.files("conductive_corner_lab") / "presets"
    return sorted(p.name[: -len(PRESET_SUFFIX)] for p in root.iterdir() if p.name.endswith(PRESET_SUFFIX))


def load_preset(name: str) -> Scatterer:
    """Load a bundled preset by name (e.g. "irrational_triangle")"""
    if name not in list_presets():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(list_presets())}")
    resource = resources.files("conductive_corner_lab") / "presets" / f"{name}{PRESET_SUFFIX}"
    try:
        data = tomllib.loads(resource.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"preset {name} is malformed: {e}") from e
    return scatterer_from_dict(data)
