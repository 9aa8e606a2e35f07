"""Chow ring of a P^1-bundle W = P(E) over a surface model.

Classes are kept in the normal form

    a0 + pi^*a1 + h1*H + a2*pt + H*pi^*h2 + a3*H*pt

where ``a1``/``h2`` are divisor classes on S and everything else is a
rational number (products of two divisors collapse to their pairing).
``H^2`` is eliminated with the relation of the chosen convention:

* ``GEOMETRIC``:    H^2 = H*c1 - c2  (quotient convention)
* ``PAPER_FORMAL``: H^2 = -H*c1 - c2 (relation ``H^2 + H c1 + c2 = 0``)

Degrees of top-dimensional monomials follow the same split. Under
``PAPER_FORMAL`` the value of ``deg H^3`` is postulated as ``-c1^2 - c2``
rather than derived from the relation, so the degree functional is defined
on unreduced expansions (:class:`Expansion`) and does not factor through
the normal form when an ``H^3`` monomial is present. Under ``GEOMETRIC``
the two routes always agree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput
from .lattice import DivisorClass, SurfaceModel, format_linear, intersect


class ConventionMode(enum.Enum):
    GEOMETRIC = "geom"
    PAPER_FORMAL = "paper"

    @property
    def sign(self) -> int:
        """Coefficient of ``H*c1`` in the reduced form of ``H^2``."""
        return 1 if self is ConventionMode.GEOMETRIC else -1

    @classmethod
    def parse(cls, text) -> "ConventionMode":
        if isinstance(text, cls):
            return text
        key = str(text).lower().replace("-", "_")
        aliases = {"geom": cls.GEOMETRIC, "geometric": cls.GEOMETRIC,
                   "paper": cls.PAPER_FORMAL, "paper_formal": cls.PAPER_FORMAL}
        if key not in aliases:
            raise InvalidInput(f"unknown convention mode {text!r}")
        return aliases[key]


GEOMETRIC = ConventionMode.GEOMETRIC
PAPER_FORMAL = ConventionMode.PAPER_FORMAL
BOTH_MODES = (PAPER_FORMAL, GEOMETRIC)


@dataclass(frozen=True)
class BundleData:
    """Chern data of a rank-2 bundle on ``model``; ``c2`` is a degree."""

    model: SurfaceModel
    c1: DivisorClass
    c2: Fraction
    rank: int = 2

    def __post_init__(self):
        if self.rank != 2:
            raise InvalidInput("only rank-2 bundles are supported")
        if not isinstance(self.c1, DivisorClass) or self.c1.rank != self.model.rank:
            raise InvalidInput("c1 must be a divisor class of the model's rank")
        object.__setattr__(self, "c2", Fraction(self.c2))

    @property
    def c1sq(self) -> Fraction:
        return intersect(self.model, self.c1, self.c1)


@dataclass(frozen=True)
class ChowClass:
    a0: Fraction
    a1: DivisorClass
    h1: Fraction
    a2: Fraction
    h2: DivisorClass
    a3: Fraction

    def __post_init__(self):
        for f in ("a0", "h1", "a2", "a3"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))
        if self.a1.rank != self.h2.rank:
            raise InvalidInput("divisor parts of different ranks")

    @property
    def rank(self) -> int:
        return self.a1.rank

    @classmethod
    def zero(cls, rank: int) -> "ChowClass":
        z = DivisorClass.zero(rank)
        return cls(0, z, 0, 0, z, 0)

    def _check(self, other):
        if not isinstance(other, ChowClass):
            return False
        if other.rank != self.rank:
            raise InvalidInput("classes live over different surface models")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return ChowClass(self.a0 + other.a0, self.a1 + other.a1, self.h1 + other.h1,
                         self.a2 + other.a2, self.h2 + other.h2, self.a3 + other.a3)

    def __neg__(self):
        return ChowClass(-self.a0, -self.a1, -self.h1, -self.a2, -self.h2, -self.a3)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "ChowClass":
        s = Fraction(s)
        return ChowClass(s * self.a0, s * self.a1, s * self.h1, s * self.a2,
                         s * self.h2, s * self.a3)

    def __mul__(self, s):
        # scalar multiplication only; ring products need a bundle and a mode
        if isinstance(s, (int, Fraction)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return (not self.a0 and self.a1.is_zero() and not self.h1 and not self.a2
                and self.h2.is_zero() and not self.a3)

    def degree_part(self, k: int) -> "ChowClass":
        z = ChowClass.zero(self.rank)
        zd = z.a1
        if k == 0:
            return ChowClass(self.a0, zd, 0, 0, zd, 0)
        if k == 1:
            return ChowClass(0, self.a1, self.h1, 0, zd, 0)
        if k == 2:
            return ChowClass(0, zd, 0, self.a2, self.h2, 0)
        if k == 3:
            return ChowClass(0, zd, 0, 0, zd, self.a3)
        return z

    def format(self, basis=None) -> str:
        if basis is None:
            basis = ("A",) if self.rank == 1 else tuple(f"e{i + 1}" for i in range(self.rank))
        terms = [(self.a0, "")]
        terms += list(zip(self.a1.coeffs, basis))
        terms += [(self.h1, "H"), (self.a2, "pt")]
        out = format_linear(terms)
        if not self.h2.is_zero():
            inner = format_linear(list(zip(self.h2.coeffs, basis)))
            out = f"H*({inner})" if out == "0" else f"{out} + H*({inner})"
        if self.a3:
            tail = format_linear([(self.a3, "H*pt")])
            if out == "0":
                out = tail
            elif tail.startswith("-"):
                out = f"{out} - {tail[1:]}"
            else:
                out = f"{out} + {tail}"
        return out

    def __str__(self):
        return self.format()


# -- constructors ---------------------------------------------------------

def one(model: SurfaceModel) -> ChowClass:
    z = model.zero()
    return ChowClass(1, z, 0, 0, z, 0)


def hyperplane(model: SurfaceModel) -> ChowClass:
    z = model.zero()
    return ChowClass(0, z, 1, 0, z, 0)


def point(model: SurfaceModel) -> ChowClass:
    z = model.zero()
    return ChowClass(0, z, 0, 1, z, 0)


def pullback(model: SurfaceModel, x: DivisorClass) -> ChowClass:
    z = model.zero()
    if x.rank != model.rank:
        raise InvalidInput("divisor rank does not match the model")
    return ChowClass(0, x, 0, 0, z, 0)


# -- unreduced expansions -------------------------------------------------

# An expansion is a dict keyed by (H-power k, surface degree j) with k+j <= 3
# and j <= 2; values are Fractions for j in {0, 2} and DivisorClass for j = 1.

class Expansion:
    """Element of the free algebra A*(S)[H] truncated above degree 3.

    Nothing is reduced here; :func:`normalize` applies the Hirsch relation
    and :func:`integrate` applies a convention's degree functional.
    """

    __slots__ = ("model", "terms")

    def __init__(self, model: SurfaceModel, terms=None):
        self.model = model
        self.terms = {}
        for key, v in (terms or {}).items():
            if not _is_zero_value(v):
                self.terms[key] = v

    @classmethod
    def lift(cls, model: SurfaceModel, x: ChowClass) -> "Expansion":
        if x.rank != model.rank:
            raise InvalidInput("class does not live over this model")
        return cls(model, {(0, 0): x.a0, (0, 1): x.a1, (1, 0): x.h1,
                           (0, 2): x.a2, (1, 1): x.h2, (1, 2): x.a3})

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for key, v in other.terms.items():
            terms[key] = terms[key] + v if key in terms else v
        return Expansion(self.model, terms)

    def __neg__(self):
        return Expansion(self.model, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            return Expansion(self.model, {k: s * v for k, v in self.terms.items()})
        return free_product(self, self._coerce(other))[0]

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidInput("negative powers are not defined")
        out = Expansion.lift(self.model, one(self.model))
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, other) -> "Expansion":
        if isinstance(other, ChowClass):
            return Expansion.lift(self.model, other)
        if isinstance(other, Expansion):
            if other.model.rank != self.model.rank:
                raise InvalidInput("expansions over different surface models")
            return other
        raise InvalidInput(f"cannot combine an expansion with {type(other).__name__}")

    def __repr__(self):
        return f"Expansion({self.terms!r})"


def _is_zero_value(v) -> bool:
    return v.is_zero() if isinstance(v, DivisorClass) else v == 0


def _surface_product(model, j1, v1, j2, v2):
    if j1 == 0:
        return v1 * v2
    if j2 == 0:
        return v2 * v1
    # j1 == j2 == 1 is the only remaining case with j1 + j2 <= 2
    return intersect(model, v1, v2)


def free_product(x: Expansion, y: Expansion):
    """Product in the free truncated algebra.

    Returns ``(product, overflow)`` where ``overflow`` reports that a
    nonzero term of total degree above 3 was discarded.
    """
    model = x.model
    out = {}
    overflow = False
    for (k1, j1), v1 in x.terms.items():
        for (k2, j2), v2 in y.terms.items():
            k, j = k1 + k2, j1 + j2
            if k + j > 3:
                overflow = True
                continue
            if j > 2:
                continue  # A^3(S) = 0
            v = _surface_product(model, j1, v1, j2, v2)
            out[(k, j)] = out[(k, j)] + v if (k, j) in out else v
    return Expansion(model, out), overflow


def normalize(E: BundleData, x: Expansion, mode: ConventionMode) -> ChowClass:
    """Reduce an expansion to normal form with the mode's Hirsch relation."""
    model = E.model
    if x.model.rank != model.rank:
        raise InvalidInput("expansion and bundle live over different models")
    s = mode.sign
    z = model.zero()
    t = x.terms
    a0 = t.get((0, 0), Fraction(0))
    a1 = t.get((0, 1), z)
    h1 = t.get((1, 0), Fraction(0))
    a2 = t.get((0, 2), Fraction(0))
    h2 = t.get((1, 1), z)
    a3 = t.get((1, 2), Fraction(0))
    q = t.get((2, 0), Fraction(0))
    if q:
        # q*H^2 = q*(s*H*c1 - c2)
        h2 = h2 + (q * s) * E.c1
        a2 = a2 - q * E.c2
    r = t.get((2, 1))
    if r is not None:
        # H^2 * alpha = (s*H*c1 - c2) * alpha = s (c1.alpha) H*pt
        a3 += s * intersect(model, E.c1, r)
    c = t.get((3, 0), Fraction(0))
    if c:
        # H^3 = H*(s*H*c1 - c2) = s*H^2*c1 - H*c2 = c1^2 - c2 in either mode
        a3 += c * (E.c1sq - E.c2)
    return ChowClass(a0, a1, h1, a2, h2, a3)


def hirsch_reduced_square(E: BundleData, mode: ConventionMode) -> ChowClass:
    """Normal form of ``H^2`` under the mode's relation."""
    z = E.model.zero()
    return ChowClass(0, z, 0, -E.c2, mode.sign * E.c1, 0)


def multiply(E: BundleData, x: ChowClass, y: ChowClass, mode: ConventionMode) -> ChowClass:
    if x.rank != E.model.rank or y.rank != E.model.rank:
        raise InvalidInput("classes do not live over the bundle's surface model")
    fx = Expansion.lift(E.model, x)
    fy = Expansion.lift(E.model, y)
    return normalize(E, free_product(fx, fy)[0], mode)


def power(E: BundleData, x: ChowClass, k: int, mode: ConventionMode) -> ChowClass:
    out = one(E.model)
    for _ in range(k):
        out = multiply(E, out, x, mode)
    return out


def top_degree_rules(E: BundleData, mode: ConventionMode):
    """``(deg H^3, c1-coefficient for deg H^2.alpha)`` under ``mode``."""
    if mode is GEOMETRIC:
        return E.c1sq - E.c2, Fraction(1)
    return -E.c1sq - E.c2, Fraction(-1)


def integrate(E: BundleData, x, mode: ConventionMode) -> Fraction:
    """Degree of the top-dimensional part of ``x``.

    A :class:`ChowClass` is already reduced, so its degree is ``a3``. An
    :class:`Expansion` is integrated monomial by monomial with the mode's
    rules: ``deg H*pt = 1``, ``deg H^2.alpha = +-c1.alpha`` and
    ``deg H^3 = c1^2 - c2`` (geometric) or ``-c1^2 - c2`` (paper-formal).
    """
    if isinstance(x, ChowClass):
        if x.rank != E.model.rank:
            raise InvalidInput("class does not live over the bundle's surface model")
        return x.a3
    if not isinstance(x, Expansion):
        raise InvalidInput(f"cannot integrate a {type(x).__name__}")
    h3, sgn = top_degree_rules(E, mode)
    t = x.terms
    total = t.get((1, 2), Fraction(0))
    r = t.get((2, 1))
    if r is not None:
        total += sgn * intersect(E.model, E.c1, r)
    total += t.get((3, 0), Fraction(0)) * h3
    return total


def canonical_class(model: SurfaceModel, E: BundleData) -> ChowClass:
    """``K_W = -2H + pi^*(K_S + c1)``."""
    if E.rank != 2:
        raise InvalidInput("canonical_class supports rank 2 only")
    return hyperplane(model).scale(-2) + pullback(model, model.canonical + E.c1)


def anticanonical_cube(model: SurfaceModel, E: BundleData, mode: ConventionMode) -> Fraction:
    """``(-K_W)^3`` by expanding the cube and integrating monomials."""
    m = Expansion.lift(model, -canonical_class(model, E))
    return integrate(E, m * m * m, mode)


def closed_degree_formula(KS2, c1sq, KSc1, c2, mode: ConventionMode) -> Fraction:
    KS2, c1sq, KSc1, c2 = (Fraction(v) for v in (KS2, c1sq, KSc1, c2))
    if mode is PAPER_FORMAL:
        return 6 * KS2 + 10 * c1sq + 24 * KSc1 - 8 * c2
    return 6 * KS2 + 2 * c1sq - 8 * c2


def closed_degree(model: SurfaceModel, E: BundleData, mode: ConventionMode) -> Fraction:
    """Closed formula evaluated on the lattice invariants of ``(model, E)``."""
    K = model.canonical
    return closed_degree_formula(intersect(model, K, K), E.c1sq,
                                 intersect(model, K, E.c1), E.c2, mode)
