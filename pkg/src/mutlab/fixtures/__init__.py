"""Shipped example quivers and triangulations."""

import json
from importlib import resources

from ..quiver import Quiver
from ..surface import Triangulation

__all__ = ["fixture_names", "load_fixture"]


def fixture_names():
    files = resources.files(__name__).iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".json"))


def load_fixture(name):
    """Return ``(quiver, triangulation_or_None)`` for a shipped fixture."""
    path = resources.files(__name__) / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
    data = json.loads(path.read_text())
    tri = data.get("triangulation")
    return Quiver.from_dict(data["quiver"]), (Triangulation.from_dict(tri) if tri else None)
