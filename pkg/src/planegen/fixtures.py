"""Frozen face lists and graphs shipped with the package.

Files live in the package's data directory; setting PLANEGEN_SEED_DIR makes
files found there take precedence.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .core_geometry import Face, Pattern, face

ENV_VAR = "PLANEGEN_SEED_DIR"


def _read(name: str) -> str:
    override = os.environ.get(ENV_VAR)
    if override:
        path = Path(override) / name
        if path.is_file():
            return path.read_text()
    return resources.files("planegen").joinpath("data", name).read_text()


@lru_cache(maxsize=None)
def _load_cached(name: str, override: str | None) -> dict:
    return json.loads(_read(name))


def load(name: str) -> dict:
    return _load_cached(name, os.environ.get(ENV_VAR))


def faces_from_list(items) -> Pattern:
    return Pattern(face(x, t) for x, t in items)


def named_face(item: dict) -> Face:
    return face(item["x"], item["t"])


def brun_seeds() -> dict[str, Pattern]:
    data = load("minimal_annuli.json")["brun"]
    return {k: faces_from_list(v) for k, v in data.items()}


def jp_seeds() -> dict[str, Pattern]:
    data = load("minimal_annuli.json")["jp"]
    return {k: faces_from_list(v) for k, v in data.items()}


def brun_w_annuli() -> dict[str, Pattern]:
    return {k: faces_from_list(v) for k, v in load("brun_w_annuli.json")["W"].items()}


def seed(name: str) -> Pattern:
    """'U', 'V1'/'V2' (Brun seeds), 'VJ1'..'VJ4' (Jacobi-Perron seeds) or 'W1'..'W4'."""
    from .core_geometry import U

    if name == "U":
        return U
    if name.startswith("VJ"):
        table = jp_seeds()
        key = "V" + name[2:]
    elif name.startswith("W"):
        table, key = brun_w_annuli(), name
    else:
        table, key = brun_seeds(), name
    if key not in table:
        raise KeyError(f"unknown seed {name!r}")
    return table[key]
