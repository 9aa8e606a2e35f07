"""JSON/text rendering of reports. Rationals become strings, never floats."""

from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction

from .chow import BundleData, ChowClass
from .lattice import DivisorClass, SurfaceModel


def rat(x) -> str:
    return str(Fraction(x))


def jsonable(obj, model: SurfaceModel = None):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, float):
        raise TypeError("floating-point value in a report")
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, DivisorClass):
        return [rat(c) for c in obj.coeffs]
    if isinstance(obj, ChowClass):
        return obj.format(model.basis if model is not None else None)
    if isinstance(obj, SurfaceModel):
        return model_summary(obj)
    if isinstance(obj, BundleData):
        return {"rank": obj.rank, "c1": jsonable(obj.c1), "c2": rat(obj.c2)}
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name), model)
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v, model) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, model) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def model_summary(model: SurfaceModel) -> dict:
    return {
        "name": model.name,
        "rank": model.rank,
        "gram": [[rat(v) for v in row] for row in model.gram],
        "canonical": jsonable(model.canonical),
        "ample_gens": [jsonable(a) for a in model.ample_gens],
        "char_p": model.char_p,
        "basis": list(model.basis),
        "KS2": rat(model.KS2),
        "params": jsonable(model.params),
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def to_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(to_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(to_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(doc))
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)
