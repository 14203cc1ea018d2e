"""Response formatting utilities.

Reports must be byte-identical across runs, so serialization is centralized
here: sorted keys, fixed indentation, rationals as ``[num, den]`` pairs and
floats printed with 17 significant digits.
"""

import json
import math
import re
from dataclasses import asdict, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

import numpy as np

from marked_lattices.constants import FLOAT_FORMAT

_PLACEHOLDER = "@@float:{}@@"
_PLACEHOLDER_RE = re.compile(r'"@@float:(\d+)@@"')


def to_jsonable(obj: Any, _floats: list[float] | None = None) -> Any:
    """Convert report values into JSON-ready primitives.

    Floats are swapped for placeholders collected in ``_floats`` so that
    :func:`dump_report` can print them with a fixed format.
    """
    floats = _floats if _floats is not None else []
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, int | np.integer):
        return int(obj)
    if isinstance(obj, float | np.floating):
        value = float(obj)
        if not math.isfinite(value):
            return None
        floats.append(value)
        return _PLACEHOLDER.format(len(floats) - 1)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x, floats) for x in obj.tolist()]
    if hasattr(obj, "to_document"):
        return to_jsonable(obj.to_document(), floats)
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj), floats)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, floats) for k, v in obj.items()}
    if isinstance(obj, list | tuple):
        return [to_jsonable(x, floats) for x in obj]
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dump_report(obj: Any) -> str:
    """Serialize a report deterministically."""
    floats: list[float] = []
    data = to_jsonable(obj, floats)
    text = json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
    text = _PLACEHOLDER_RE.sub(lambda m: format(floats[int(m.group(1))], FLOAT_FORMAT), text)
    return text + "\n"


def safe_json_dumps(obj: Any) -> str:
    """Serialize a report, falling back to a structured error on failure.

    Returns:
        JSON string or a JSON error message if serialization fails
    """
    try:
        return dump_report(obj)
    except (TypeError, ValueError) as e:
        error_response = {
            "status": "error",
            "message": "JSON serialization error",
            "error": str(e),
            "type": type(e).__name__,
        }
        return json.dumps(error_response, indent=2, sort_keys=True) + "\n"
