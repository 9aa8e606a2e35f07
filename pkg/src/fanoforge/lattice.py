"""Picard-lattice arithmetic for numerical surface models.

A surface is represented only through its Neron-Severi lattice: a Gram
matrix for the intersection pairing, the canonical class, and a list of
classes declared ample. All arithmetic is over ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInput


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class DivisorClass:
    """A rational vector in the basis of some surface model."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls, rank: int) -> "DivisorClass":
        return cls([0] * rank)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.rank != self.rank:
            raise InvalidInput(f"rank mismatch: {self.rank} vs {other.rank}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return DivisorClass(-a for a in self.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, DivisorClass):
            return NotImplemented
        s = Fraction(scalar)
        return DivisorClass(s * a for a in self.coeffs)

    __rmul__ = __mul__

    def __repr__(self):
        return "DivisorClass([" + ", ".join(str(c) for c in self.coeffs) + "])"


@dataclass(frozen=True)
class SurfaceModel:
    """Numerical avatar of a smooth projective surface.

    ``basis`` names the lattice generators for parsing and printing; it
    defaults to ``A`` for rank one and ``e1 .. e<rank>`` otherwise.
    ``params`` keeps free configuration values (for instance ``KS2`` for
    the Raynaud preset) so that reports can echo them.
    """

    name: str
    rank: int
    gram: tuple
    canonical: DivisorClass
    ample_gens: tuple
    char_p: int = 0
    basis: tuple = ()
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def __init__(self, name, rank, gram, canonical, ample_gens, char_p=0,
                 basis=None, params=None):
        rank = int(rank)
        if rank < 1:
            raise InvalidInput("rank must be positive")
        gram = tuple(tuple(Fraction(v) for v in row) for row in gram)
        if len(gram) != rank or any(len(row) != rank for row in gram):
            raise InvalidInput(f"gram must be {rank}x{rank}")
        if not _is_symmetric(gram):
            raise InvalidInput("gram matrix is not symmetric")
        canonical = _as_divisor(canonical, rank)
        ample_gens = tuple(_as_divisor(a, rank) for a in ample_gens)
        if not ample_gens:
            raise InvalidInput("at least one ample generator is required")
        if char_p != 0 and not (char_p >= 3 and is_prime(char_p)):
            raise InvalidInput(f"char_p must be 0 or a prime >= 3, got {char_p}")
        if basis is None:
            basis = ("A",) if rank == 1 else tuple(f"e{i + 1}" for i in range(rank))
        basis = tuple(basis)
        if len(basis) != rank or len(set(basis)) != rank:
            raise InvalidInput("basis names must be distinct, one per generator")
        for b in basis:
            if b in RESERVED_NAMES or not b.isidentifier():
                raise InvalidInput(f"invalid basis name {b!r}")
        setattr_ = object.__setattr__
        setattr_(self, "name", str(name))
        setattr_(self, "rank", rank)
        setattr_(self, "gram", gram)
        setattr_(self, "canonical", canonical)
        setattr_(self, "ample_gens", ample_gens)
        setattr_(self, "char_p", int(char_p))
        setattr_(self, "basis", basis)
        setattr_(self, "params", dict(params or {}))

        if inertia(gram) != (1, rank - 1, 0):
            raise InvalidInput(
                f"gram has inertia {inertia(gram)}, expected (1, {rank - 1}, 0)")
        for i, a in enumerate(ample_gens):
            for b in ample_gens[i:]:
                if intersect(self, a, b) <= 0:
                    raise InvalidInput("declared ample generators must pair positively")

    @property
    def K(self) -> DivisorClass:
        return self.canonical

    @property
    def KS2(self) -> Fraction:
        return intersect(self, self.canonical, self.canonical)

    def divisor(self, *coeffs) -> DivisorClass:
        return _as_divisor(coeffs, self.rank)

    def generator(self, i: int) -> DivisorClass:
        return DivisorClass(1 if j == i else 0 for j in range(self.rank))

    def zero(self) -> DivisorClass:
        return DivisorClass.zero(self.rank)

    def format_divisor(self, x: DivisorClass) -> str:
        return format_linear([(c, name) for c, name in zip(x.coeffs, self.basis)])


RESERVED_NAMES = frozenset({"H", "pt", "K"})


def _is_symmetric(gram) -> bool:
    n = len(gram)
    return all(gram[i][j] == gram[j][i] for i in range(n) for j in range(n))


def _as_divisor(x, rank: int) -> DivisorClass:
    d = x if isinstance(x, DivisorClass) else DivisorClass(x)
    if d.rank != rank:
        raise InvalidInput(f"vector of length {d.rank} for a rank-{rank} model")
    return d


def format_linear(terms: Sequence) -> str:
    """Render ``[(coeff, symbol), ...]`` as ``3*A - 1/2*B``; ``0`` when empty."""
    out = []
    for c, sym in terms:
        c = Fraction(c)
        if c == 0:
            continue
        mag = abs(c)
        body = sym if mag == 1 and sym else (f"{mag}*{sym}" if sym else str(mag))
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out) if out else "0"


def intersect(model: SurfaceModel, x: DivisorClass, y: DivisorClass) -> Fraction:
    """Intersection number ``x . y`` under the model's Gram matrix."""
    if not isinstance(x, DivisorClass) or not isinstance(y, DivisorClass):
        raise InvalidInput("intersect expects DivisorClass arguments")
    if x.rank != model.rank or y.rank != model.rank:
        raise InvalidInput(
            f"vectors of length {x.rank}, {y.rank} for a rank-{model.rank} model")
    g = model.gram
    total = Fraction(0)
    for i, xi in enumerate(x.coeffs):
        if xi:
            row = g[i]
            total += xi * sum((row[j] * yj for j, yj in enumerate(y.coeffs) if yj),
                              Fraction(0))
    return total


def is_positive_on_ample(model: SurfaceModel, x: DivisorClass) -> bool:
    """True iff ``x`` pairs positively with every ample generator and ``x^2 > 0``."""
    if intersect(model, x, x) <= 0:
        return False
    return all(intersect(model, x, a) > 0 for a in model.ample_gens)


def h0_vanishes(model: SurfaceModel, x: DivisorClass) -> bool:
    """Certify ``H^2(S, O(x)) = 0``.

    By Serre duality this is ``H^0(K_S - x) = 0``, which holds as soon as
    ``K_S - x`` is negative on some ample class. A False result means the
    test was inconclusive, not that the group is nonzero.
    """
    dual = model.canonical - x
    return any(intersect(model, dual, a) < 0 for a in model.ample_gens)


def inertia(gram) -> tuple:
    """Exact ``(n_pos, n_neg, n_zero)`` of a symmetric rational matrix.

    Congruence diagonalization: Sylvester's law of inertia makes the sign
    count of the pivots an invariant.
    """
    a = [[Fraction(v) for v in row] for row in gram]
    if not _is_symmetric(a):
        raise InvalidInput("matrix is not symmetric")
    pos = neg = zero = 0
    while a:
        m = len(a)
        piv = next((i for i in range(m) if a[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(m) for j in range(i + 1, m)
                        if a[i][j] != 0), None)
            if off is None:
                zero += m
                break
            i, j = off
            # row_i += row_j, col_i += col_j; new a[i][i] = 2 a[i][j] != 0
            for k in range(m):
                a[i][k] += a[j][k]
            for k in range(m):
                a[k][i] += a[k][j]
            piv = i
        a[0], a[piv] = a[piv], a[0]
        for row in a:
            row[0], row[piv] = row[piv], row[0]
        p = a[0][0]
        if p > 0:
            pos += 1
        else:
            neg += 1
        a = [[a[i][j] - a[i][0] * a[0][j] / p for j in range(1, m)]
             for i in range(1, m)]
    return pos, neg, zero


def hodge_index_check(model_or_gram) -> bool:
    """True iff the intersection form has exactly one positive eigenvalue."""
    gram = model_or_gram.gram if isinstance(model_or_gram, SurfaceModel) else model_or_gram
    return inertia(gram)[0] == 1
