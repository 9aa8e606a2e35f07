"""Bundled surface models and the JSON model loader."""

from __future__ import annotations

import json
import os
from pathlib import Path

from .errors import InvalidInput
from .lattice import SurfaceModel

PRESET_ENV = "FANOFORGE_PRESET_DIR"
_FAMILIES = ("ample-K", "raynaud")


def preset_dir() -> Path:
    override = os.environ.get(PRESET_ENV)
    if override:
        return Path(override)
    return Path(__file__).with_name("presets")


def p2_model() -> SurfaceModel:
    return SurfaceModel("p2", 1, [[1]], [-3], [[1]], char_p=0, basis=["h"])


def _square_split(k: int):
    """Write ``k = s^2 * g`` with ``g`` square-free."""
    s = 1
    g = k
    f = 2
    while f * f <= g:
        while g % (f * f) == 0:
            g //= f * f
            s *= f
        f += 1
    return s, g


def ample_k_model(ks2, char_p: int = 0, name: str = "ample-K") -> SurfaceModel:
    """Rank-one model with ample canonical class of self-intersection ``ks2``.

    The generator ``A`` is normalized so that ``K = s*A`` and ``A^2 = g``
    where ``ks2 = s^2 g`` with ``g`` square-free; ``ks2 = 9`` gives the
    familiar ``A^2 = 1, K = 3A``.
    """
    if ks2 is None:
        raise InvalidInput(f"{name} model needs KS2 (K_S^2) in params or --ks2")
    if isinstance(ks2, bool) or int(ks2) != ks2 or int(ks2) < 1:
        raise InvalidInput(f"KS2 must be a positive integer, got {ks2!r}")
    s, g = _square_split(int(ks2))
    return SurfaceModel(name, 1, [[g]], [s], [[1]], char_p=char_p,
                        params={"KS2": int(ks2)})


def raynaud_model(ks2, char_p: int = 3) -> SurfaceModel:
    # K_S^2 of the Raynaud surface is a required input; no default is guessed.
    if char_p == 0:
        raise InvalidInput("raynaud model needs a characteristic p >= 3")
    return ample_k_model(ks2, char_p=char_p, name="raynaud")


def model_from_dict(doc: dict, ks2=None, char_p=None) -> SurfaceModel:
    """Build a model from its JSON document.

    Documents naming the ``ample-K`` or ``raynaud`` family (through
    ``preset`` or ``name``) may omit the lattice fields; they are generated
    from ``params.KS2``, which ``ks2`` overrides.
    """
    if not isinstance(doc, dict):
        raise InvalidInput("surface document must be a JSON object")
    params = dict(doc.get("params") or {})
    if ks2 is not None:
        params["KS2"] = ks2
    family = doc.get("preset", doc.get("name"))
    p = doc.get("char_p", 0) if char_p is None else char_p
    if family in _FAMILIES and "gram" not in doc:
        if family == "raynaud":
            return raynaud_model(params.get("KS2"), char_p=p or 3)
        return ample_k_model(params.get("KS2"), char_p=p)
    if family == "p2" and "gram" not in doc:
        return p2_model()
    try:
        return SurfaceModel(
            doc["name"], doc["rank"], doc["gram"], doc["canonical"],
            doc["ample_gens"], char_p=p, basis=doc.get("basis"), params=params)
    except KeyError as exc:
        raise InvalidInput(f"surface document missing field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise InvalidInput(f"malformed surface document: {exc}") from None


def load_model(source: str, ks2=None, char_p=None) -> SurfaceModel:
    """Load a model from a path, a preset file name, or a bare preset name."""
    candidates = [Path(source)]
    base = Path(source).name
    candidates.append(preset_dir() / base)
    if not base.endswith(".json"):
        candidates.append(preset_dir() / f"{base}.json")
    for path in candidates:
        if path.is_file():
            try:
                doc = json.loads(path.read_text())
            except json.JSONDecodeError as exc:
                raise InvalidInput(f"{path}: invalid JSON ({exc})") from None
            return model_from_dict(doc, ks2=ks2, char_p=char_p)
    raise InvalidInput(f"no surface model found for {source!r}")
