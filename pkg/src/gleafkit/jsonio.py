"""JSON reading and writing for simplices, sections, maps and covers.

Rationals are written as strings (``"3/2"``, ``"inf"``); nothing is ever
converted through a float.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

from .errors import ValidationError
from .finset import FinMap, ordered
from .simplex import MonotoneMap

SIMPLEX_INSTANCES = ("nerve", "spans", "metric", "probability")
SECTION_INSTANCES = ("metric", "probability", "relational", "topology")


def load(source: str) -> Any:
    """Parse JSON from a file path, ``-`` for standard input, or an inline JSON text."""
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            text = Path(source).read_text()
        except OSError as e:
            raise ValidationError(f"cannot read {source}: {e.strerror}") from None
    try:
        return json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as e:
        raise ValidationError(f"malformed JSON in {source}: {e}") from None


def _no_float(text: str):
    raise ValidationError(f"floating-point literal {text} rejected; write rationals as strings")


def dumps(data: Any, compact: bool = False) -> str:
    if compact:
        return json.dumps(data, separators=(",", ":"))
    return json.dumps(data, indent=2)


def parse_value(instance: str, data: dict):
    """A simplex or section of the named instance."""
    if not isinstance(data, dict):
        raise ValidationError("expected a JSON object")
    try:
        if instance == "nerve":
            from .nerve import NervePath
            return NervePath.from_json(data)
        if instance == "spans":
            from .spans import NSpan
            return NSpan.from_json(data)
        if instance == "metric":
            from .metric import FiniteMetric
            return FiniteMetric.from_json(data)
        if instance == "probability":
            from .probability import Dist
            return Dist.from_json(data)
        if instance == "relational":
            from .relational import Relation
            return Relation.from_json(data)
        if instance == "topology":
            from .topology import FinTopology
            return FinTopology.from_json(data)
    except (KeyError, TypeError, AttributeError) as e:
        raise ValidationError(f"malformed {instance} value: {e!r}") from None
    raise ValidationError(f"unknown instance {instance!r}")


def parse_map(data: Any, codomain: tuple | None = None):
    """A monotone map ``{"dom", "cod", "values"}``, a function
    ``{"domain", "codomain", "images"}``, or a plain ``{point: image}`` object
    (keys are matched against ``codomain`` by their string form)."""
    if not isinstance(data, dict):
        raise ValidationError("a map must be a JSON object")
    if {"dom", "cod", "values"} <= set(data):
        return MonotoneMap.from_json(data)
    if {"domain", "codomain", "images"} <= set(data):
        return FinMap(tuple(data["domain"]), tuple(data["codomain"]), tuple(data["images"]))
    if codomain is None:
        raise ValidationError("a point mapping needs the target's points")
    by_str = {str(p): p for p in codomain}
    mapping = {}
    for x, y in data.items():
        if str(y) not in by_str:
            raise ValidationError(f"image {y!r} is not a point of the target")
        mapping[by_str.get(x, x)] = by_str[str(y)]
    return FinMap.from_mapping(mapping, codomain)


def parse_cover(data: Any, a_points: tuple, b_points: tuple):
    """Inclusions of ``A`` and ``B`` into ``C`` (default: their union)."""
    from .gleaf import FinSetBicovering

    c = ordered(set(a_points) | set(b_points))
    if data is not None:
        if not isinstance(data, dict) or "C" not in data:
            raise ValidationError('cover must look like {"C": [...]}')
        by_str = {str(p): p for p in c}
        c = ordered(by_str.get(str(p), p) for p in data["C"])
    if not (set(a_points) | set(b_points)) == set(c):
        raise ValidationError("A and B must cover C")
    return FinSetBicovering.of_subsets(a_points, b_points, c)
