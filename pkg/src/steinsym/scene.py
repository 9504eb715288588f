"""Scene JSON: reading and writing planar sets, and the built-in corpus.

A scene file is ``{"set": SET, ...}`` with ``SET`` one of

    {"type": "polygon", "vertices": [[x, y], ...]}
    {"type": "disk", "center": [x, y], "radius": r}
    {"type": "circle", "center": [x, y], "radius": r}
    {"type": "segment", "p": [x, y], "q": [x, y]}
    {"type": "union", "parts": [SET, ...]}

Optional keys: ``name``, ``description``, ``inner`` (a second SET, used as the
comparison set of the ``theorem2`` check) and ``corollary1`` (``w0``, ``phi``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import geometry as geo
from .errors import InputError


def _point(value, what):
    try:
        x, y = value
        return complex(float(x), float(y))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what} must be a pair of numbers, got {value!r}") from exc


def _number(value, what):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{what} must be a number, got {value!r}")
    return float(value)


def set_from_json(obj):
    """Build a (not yet validated) planar set from its JSON object."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError("set must be an object with a 'type' key")
    kind = obj["type"]
    try:
        if kind == "polygon":
            return geo.Polygon(tuple(_point(v, "vertex") for v in obj["vertices"]))
        if kind == "disk":
            return geo.Disk(_point(obj["center"], "center"), _number(obj["radius"], "radius"))
        if kind == "circle":
            return geo.Circle(_point(obj["center"], "center"), _number(obj["radius"], "radius"))
        if kind == "segment":
            return geo.Segment(_point(obj["p"], "p"), _point(obj["q"], "q"))
        if kind == "union":
            return geo.ConnectedUnion(tuple(set_from_json(p) for p in obj["parts"]))
    except KeyError as exc:
        raise InputError(f"{kind} is missing the key {exc.args[0]!r}") from exc
    raise InputError(f"unknown set type {kind!r}")


def _pair(z):
    return [float(z.real), float(z.imag)]


def set_to_json(s):
    if isinstance(s, geo.Polygon):
        return {"type": "polygon", "vertices": [_pair(v) for v in s.vertices]}
    if isinstance(s, geo.Disk):
        return {"type": "disk", "center": _pair(s.center), "radius": s.radius}
    if isinstance(s, geo.Circle):
        return {"type": "circle", "center": _pair(s.center), "radius": s.radius}
    if isinstance(s, geo.Segment):
        return {"type": "segment", "p": _pair(s.p), "q": _pair(s.q)}
    if isinstance(s, geo.ConnectedUnion):
        return {"type": "union", "parts": [set_to_json(p) for p in s.parts]}
    raise TypeError(f"not a planar set: {s!r}")


@dataclass(frozen=True)
class Scene:
    name: str
    set: object
    inner: object = None
    corollary1: dict = field(default_factory=dict)
    description: str = ""

    def to_json(self):
        out = {"name": self.name, "set": set_to_json(self.set)}
        if self.description:
            out["description"] = self.description
        if self.inner is not None:
            out["inner"] = set_to_json(self.inner)
        if self.corollary1:
            out["corollary1"] = {"w0": _pair(self.corollary1["w0"]), "phi": self.corollary1["phi"]}
        return out


def scene_from_json(obj, default_name="scene"):
    if not isinstance(obj, dict) or "set" not in obj:
        raise InputError("scene must be an object with a 'set' key")
    inner = set_from_json(obj["inner"]) if obj.get("inner") is not None else None
    cor = {}
    if "corollary1" in obj:
        c = obj["corollary1"]
        cor = {"w0": _point(c.get("w0", [0, 0]), "w0"), "phi": _number(c.get("phi", 0.0), "phi")}
    return Scene(
        name=str(obj.get("name", default_name)),
        set=set_from_json(obj["set"]),
        inner=inner,
        corollary1=cor,
        description=str(obj.get("description", "")),
    )


def load_scene(path):
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    return scene_from_json(obj, default_name=path.stem)


def dump_scene(scene):
    return json.dumps(scene.to_json(), indent=2, sort_keys=True)


def corpus_dir():
    return resources.files("steinsym") / "data" / "corpus"


def load_corpus(directory=None):
    """Built-in scenes (or every ``*.json`` in ``directory``), ordered by file name."""
    base = corpus_dir() if directory is None else Path(directory)
    files = sorted((p for p in base.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)
    return [scene_from_json(json.loads(p.read_text()), default_name=Path(p.name).stem) for p in files]


def corpus_scene(name):
    for scene in load_corpus():
        if scene.name == name:
            return scene
    raise KeyError(name)
