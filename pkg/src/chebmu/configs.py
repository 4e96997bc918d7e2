"""JSON config loading for fields and extensions, plus the bundled configs.

A config argument is resolved as a filesystem path first; if nothing is
there, it falls back to the bundled data (by name, with or without the
.json suffix), so `--field gaussian` works out of the box.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .galois import RelativeExtension
from .numberfield import FieldInvariants, NumberFieldSpec


def _bundled(kind: str, name: str) -> str | None:
    base = name if name.endswith(".json") else f"{name}.json"
    ref = resources.files("chebmu").joinpath("data", kind, base)
    if ref.is_file():
        return ref.read_text()
    return None


def bundled_names(kind: str) -> list[str]:
    ref = resources.files("chebmu").joinpath("data", kind)
    return sorted(p.name[:-5] for p in ref.iterdir() if p.name.endswith(".json"))


def _read(kind: str, path_or_name: str) -> dict:
    p = Path(path_or_name)
    if p.is_file():
        text = p.read_text()
    else:
        text = _bundled(kind, path_or_name)
        if text is None:
            raise ConfigError(
                f"{path_or_name!r} is neither a file nor a bundled {kind[:-1]} "
                f"config (bundled: {', '.join(bundled_names(kind))})")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path_or_name}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path_or_name}: expected a JSON object")
    return data


def load_field(path_or_name: str) -> NumberFieldSpec:
    data = _read("fields", path_or_name)
    try:
        name = data["name"]
        min_poly = data["min_poly"]
        monogenic = data.get("monogenic", False)
        inv = None
        if "invariants" in data and data["invariants"] is not None:
            d = data["invariants"]
            inv = FieldInvariants(r1=int(d["r1"]), r2=int(d["r2"]),
                                  h=int(d["h"]), reg=float(d["reg"]),
                                  w=int(d["w"]), disc=int(d["disc"]))
        return NumberFieldSpec.create(name, min_poly, monogenic=monogenic,
                                      invariants=inv)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path_or_name}: {exc}") from exc


def load_extension(path_or_name: str) -> RelativeExtension:
    data = _read("extensions", path_or_name)
    try:
        classes = []
        for entry in data["classes"]:
            num, den = entry["weight"]
            classes.append((str(entry["label"]), entry["pattern"],
                            Fraction(int(num), int(den))))
        return RelativeExtension.create(
            g=data["g"], group_order=int(data["group_order"]), classes=classes)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path_or_name}: {exc}") from exc
