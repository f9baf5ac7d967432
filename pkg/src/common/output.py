"""Canonical JSON and plain-text rendering of results."""

import json
from enum import Enum
from fractions import Fraction
from typing import Any


def to_jsonable(obj: Any) -> Any:
    """Convert results (dataclasses with to_dict, tuples, Fractions) to JSON types."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(x) for x in obj]
        return sorted(items) if isinstance(obj, (set, frozenset)) else items
    return obj


def dumps_canonical(obj: Any) -> str:
    """Byte-stable JSON: sorted keys, no whitespace."""
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def format_weight(weight: Any) -> str:
    return ",".join(str(x) for x in weight)


def render(obj: Any, output_format: str = "text") -> str:
    """Render a result for stdout."""
    if output_format == "json":
        return dumps_canonical(obj)
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if hasattr(obj, "to_dict") and type(obj).__str__ is object.__str__:
        return render(obj.to_dict())
    if isinstance(obj, tuple) and all(isinstance(x, int) for x in obj):
        return format_weight(obj)
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {render(v)}" for k, v in obj.items())
    if isinstance(obj, list):
        return "\n".join(render(x) for x in obj)
    return str(obj)
