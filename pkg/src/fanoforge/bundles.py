"""Rank-2 bundles presented as extensions 0 -> L -> E -> L' (x) I_Z -> 0.

The zero-dimensional subscheme Z only enters through its length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import BundleData
from .errors import Infeasible, InvalidInput
from .lattice import DivisorClass, SurfaceModel, h0_vanishes, intersect


@dataclass(frozen=True)
class ExtensionData:
    L: DivisorClass
    Lp: DivisorClass
    lenZ: int

    def __post_init__(self):
        if int(self.lenZ) != self.lenZ or self.lenZ < 0:
            raise InvalidInput(f"length of Z must be a non-negative integer, got {self.lenZ}")
        object.__setattr__(self, "lenZ", int(self.lenZ))
        if self.L.rank != self.Lp.rank:
            raise InvalidInput("L and L' have different ranks")


def _check_model(model: SurfaceModel, ext: ExtensionData):
    if ext.L.rank != model.rank:
        raise InvalidInput("extension data does not match the model's rank")


def whitney_chern(model: SurfaceModel, ext: ExtensionData) -> BundleData:
    """c1 = L + L', c2 = L.L' + len(Z)."""
    _check_model(model, ext)
    return BundleData(model, ext.L + ext.Lp, intersect(model, ext.L, ext.Lp) + ext.lenZ)


def section_zero_locus_length(model: SurfaceModel, E: BundleData) -> int:
    """Length of the zero scheme of a section with isolated zeros.

    A section gives the extension with L = O_S, so Whitney forces the length
    to equal c2(E).
    """
    c2 = Fraction(E.c2)
    if c2.denominator != 1:
        raise InvalidInput(f"c2 = {c2} is not an integer")
    if c2 < 0:
        raise Infeasible(f"c2 = {c2} < 0: no section with isolated zeros")
    return int(c2)


def ext_space_dim(ext: ExtensionData) -> int:
    """Dimension of the projective space of extension classes, P(O_Z)."""
    if ext.lenZ < 1:
        raise Infeasible("Z is empty: there is no nontrivial extension")
    return ext.lenZ - 1


def locally_free_check(model: SurfaceModel, ext: ExtensionData) -> bool:
    """Certify H^2(S, L'^{-1} (x) L) = 0, which makes the extension locally free.

    False means inconclusive.
    """
    _check_model(model, ext)
    return h0_vanishes(model, ext.L - ext.Lp)
