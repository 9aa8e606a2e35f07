"""Numerical curve bookkeeping in characteristic p.

Everything here is degree arithmetic on one-pointed curves: genus from the
canonical degree, Riemann-Roch outside the window where h^0 depends on
more than the degree, and the inequality behind the Frobenius-kernel
witness ``(df) >= p D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import AmbiguousRange, Inconsistent, Infeasible, InvalidInput
from .lattice import is_prime


@dataclass(frozen=True)
class OnePointDivisor:
    """``mult * (inf)``."""

    mult: int

    @property
    def degree(self) -> int:
        return self.mult

    def __str__(self):
        return f"{self.mult}*(inf)"


@dataclass(frozen=True)
class CurveModel:
    genus: int
    char_p: int
    place_name: str = "inf"
    params: dict = field(default_factory=dict, compare=False, hash=False)
    canonical: Optional[OnePointDivisor] = None

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidInput("genus must be non-negative")
        if self.canonical is not None and self.canonical.degree != 2 * self.genus - 2:
            raise Inconsistent(
                f"canonical divisor of degree {self.canonical.degree} on a genus-{self.genus} curve")


@dataclass(frozen=True)
class KernelBound:
    h1: int
    D_ample: bool
    meets_paper_bound: bool
    genus: int
    D: OnePointDivisor
    note: str = ("h1 is the ambient h^1(C, -D) containing Ker F^*; "
                 "how tightly it bounds the kernel is not determined here")


def _odd_prime(p: int, what: str = "p"):
    if not (p >= 3 and is_prime(p)):
        raise InvalidInput(f"{what} must be an odd prime, got {p}")


def tate_genus(p: int) -> int:
    """Genus of y^2 = x^p - a, i.e. (p - 1)/2."""
    _odd_prime(p)
    return (p - 1) // 2


def raynaud_canonical(p: int, e: int):
    """Canonical divisor ``(dz) = pe(pe-3)(inf)`` of P(y^p) - y = z^(pe-1), and the genus."""
    _odd_prime(p)
    if e < 1:
        raise InvalidInput("e must be >= 1")
    pe = p * e
    if pe <= 3:
        raise Infeasible(f"pe = {pe}: canonical degree pe(pe-3) is not positive")
    deg = pe * (pe - 3)
    return OnePointDivisor(deg), deg // 2 + 1


def raynaud_curve(p: int, e: int) -> CurveModel:
    dz, g = raynaud_canonical(p, e)
    return CurveModel(genus=g, char_p=p, params={"p": p, "e": e}, canonical=dz)


def riemann_roch(g: int, deg: int):
    """``(h0, h1)`` of a one-point divisor of degree ``deg`` on a genus-``g`` curve.

    Degree 0 is the trivial divisor and degree 2g-2 is the canonical class;
    for 0 < deg < 2g-2 the answer depends on the divisor and AmbiguousRange
    is raised.
    """
    if g < 0:
        raise InvalidInput("genus must be non-negative")
    if deg < 0:
        return 0, g - 1 - deg
    if deg == 0:
        return 1, g
    if deg > 2 * g - 2:
        return deg - g + 1, 0
    if deg == 2 * g - 2:
        return g, 1
    raise AmbiguousRange(
        f"h0 of a degree-{deg} divisor on a genus-{g} curve is not determined by the degree")


def kernel_dim_lower_bound(p: int, e: int) -> KernelBound:
    """h^1(C, -D) for D = (pe-3)(inf) on the Raynaud curve, against the bound 2."""
    _, g = raynaud_canonical(p, e)
    D = OnePointDivisor(p * e - 3)
    _, h1 = riemann_roch(g, -D.mult)
    return KernelBound(h1=h1, D_ample=D.mult > 0, meets_paper_bound=h1 >= 2, genus=g, D=D)


def kernel_witness_check(p: int, dfDeg: int, D: OnePointDivisor,
                         val_table: Mapping[str, int], genus: Optional[int] = None) -> bool:
    """Check ``(y^p dz) >= p D`` at the point at infinity.

    ``dfDeg`` is the coefficient of (dz) at infinity (its whole degree, the
    divisor being one-pointed); ``val_table['y']`` is the valuation of y at
    infinity. The valuation is an input: nothing here computes it.
    """
    _odd_prime(p)
    if genus is not None:
        if dfDeg != 2 * genus - 2:
            raise Inconsistent(f"deg(dz) = {dfDeg} but 2g - 2 = {2 * genus - 2}")
    elif dfDeg < -2 or dfDeg % 2:
        raise Inconsistent(f"deg(dz) = {dfDeg} is not 2g - 2 for any genus")
    if "y" not in val_table or val_table["y"] is None:
        raise InvalidInput("val_table needs the valuation of y at infinity")
    return p * int(val_table["y"]) + dfDeg >= p * D.mult
