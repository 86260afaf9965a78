"""Surface JSON: strict schema, load and dump.

Rationals are strings ``"p/q"``; unknown fields are errors.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

import jsonschema

from .exact import fmt
from .surface import IntersectionLattice, LogDelPezzo, PointOnCurve, QuotientSingularity, validate

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"}
_COMBO = {"type": "object", "additionalProperties": RATIONAL}

SURFACE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": ["name", "curves", "gram", "boundary", "polarization", "points"],
    "properties": {
        "name": {"type": "string"},
        "curves": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name"],
                "properties": {"name": {"type": "string", "minLength": 1}},
            },
        },
        "gram": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        "boundary": _COMBO,
        "polarization": _COMBO,
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "host"],
                "properties": {
                    "name": {"type": "string"},
                    "host": {"type": "string"},
                    "sing": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["r", "a", "b"],
                        "properties": {k: {"type": "integer"} for k in ("r", "a", "b")},
                    },
                    "boundary_local": RATIONAL,
                    "negative_support": _COMBO,
                },
            },
        },
    },
}


class SurfaceFormatError(ValueError):
    """Schema or model violation; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def surface_from_dict(data: Any) -> LogDelPezzo:
    validator = jsonschema.Draft202012Validator(SURFACE_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise SurfaceFormatError(_path(e.absolute_path), e.message)

    names = [c["name"] for c in data["curves"]]
    gram = data["gram"]
    if len(gram) != len(names) or any(len(row) != len(names) for row in gram):
        raise SurfaceFormatError("$.gram", f"expected a {len(names)}x{len(names)} matrix")
    lat = IntersectionLattice(tuple(names), tuple(tuple(Fraction(v) for v in row) for row in gram))

    def combo(key: str, obj: dict, where: str) -> dict[str, Fraction]:
        for nm in obj:
            if nm not in names:
                raise SurfaceFormatError(f"{where}.{nm}", f"unknown curve {nm!r}")
        return {nm: Fraction(v) for nm, v in obj.items()}

    points = []
    for i, p in enumerate(data["points"]):
        where = f"$.points[{i}]"
        if p["host"] not in names:
            raise SurfaceFormatError(f"{where}.host", f"unknown curve {p['host']!r}")
        s = p.get("sing", {"r": 1, "a": 1, "b": 1})
        points.append(PointOnCurve(
            p["name"], p["host"], QuotientSingularity(s["r"], s["a"], s["b"]),
            Fraction(p.get("boundary_local", "0")),
            combo("negative_support", p.get("negative_support", {}), f"{where}.negative_support"),
        ))
    surface = LogDelPezzo(
        data["name"], lat,
        lat.divisor(combo("boundary", data["boundary"], "$.boundary")),
        lat.divisor(combo("polarization", data["polarization"], "$.polarization")),
        tuple(points),
    )
    problems = validate(surface)
    if problems:
        raise SurfaceFormatError("$", "; ".join(problems))
    return surface


def surface_to_dict(surface: LogDelPezzo) -> dict[str, Any]:
    lat = surface.lattice
    return {
        "name": surface.name,
        "curves": [{"name": nm} for nm in lat.names],
        "gram": [[fmt(v) for v in row] for row in lat.gram],
        "boundary": {k: fmt(v) for k, v in lat.as_dict(surface.boundary).items()},
        "polarization": {k: fmt(v) for k, v in lat.as_dict(surface.polarization).items()},
        "points": [
            {
                "name": p.name,
                "host": p.host,
                "sing": {"r": p.sing.r, "a": p.sing.a, "b": p.sing.b},
                "boundary_local": fmt(p.boundary_local),
                "negative_support": {k: fmt(v) for k, v in p.negative_support.items()},
            }
            for p in surface.points
        ],
    }


def dumps_surface(surface: LogDelPezzo) -> str:
    return json.dumps(surface_to_dict(surface), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_surface(path: Union[str, Path]) -> LogDelPezzo:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SurfaceFormatError("$", f"invalid JSON: {e}") from None
    return surface_from_dict(data)


def dump_surface(surface: LogDelPezzo, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_surface(surface))
