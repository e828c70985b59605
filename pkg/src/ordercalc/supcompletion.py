"""Extended positive elements ([0, inf]-valued coordinates) over the finite model.

An extended positive u splits as u = u_F + u_inf with u_F ∧ u_inf = 0, where
u_inf collects the infinite coordinates and u_F the finite ones.  The three
bands {0 < u < inf}, {u = inf}, {u = 0} partition the coordinates.  Extended
multiplication uses the 0 * inf = 0 convention and the generalized inverse
swaps 0 and inf while taking reciprocals in between; applying it twice is the
identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import (
    Band,
    Model,
    ModelMismatchError,
    NegativeInputError,
    RealElement,
)

INF = math.inf


@dataclass(frozen=True)
class ExtendedPositive:
    """Positive element with coordinates in [0, inf] (finite model only)."""

    model: Model
    coords: tuple

    def __post_init__(self):
        if not self.model.is_finite:
            raise ModelMismatchError("extended elements live in the finite model")
        vals = []
        for i, v in enumerate(self.coords):
            if isinstance(v, complex):
                raise TypeError("extended element cannot hold complex coordinates")
            v = float(v)
            if v < 0 or math.isnan(v):
                raise NegativeInputError(i, f"coordinate {i} is not in [0, inf]")
            vals.append(v)
        if len(vals) != self.model.size:
            raise ValueError(f"expected {self.model.size} coordinates, got {len(vals)}")
        object.__setattr__(self, "coords", tuple(vals))

    @staticmethod
    def finite(values) -> "ExtendedPositive":
        values = tuple(values)
        return ExtendedPositive(Model.finite(len(values)), values)

    @staticmethod
    def from_real(x: RealElement) -> "ExtendedPositive":
        return ExtendedPositive(x.model, x.prefix)

    @staticmethod
    def constant(model: Model, value) -> "ExtendedPositive":
        return ExtendedPositive(model, (value,) * model.size)

    def coord(self, i: int) -> float:
        return self.coords[i]

    def _zip(self, other: "ExtendedPositive", fn) -> "ExtendedPositive":
        if self.model != other.model:
            raise ModelMismatchError(f"{self.model} vs {other.model}")
        return ExtendedPositive(self.model, tuple(fn(a, b) for a, b in zip(self.coords, other.coords)))

    def __add__(self, other):
        if not isinstance(other, ExtendedPositive):
            return NotImplemented
        return self._zip(other, lambda a, b: a + b)

    def __rmul__(self, scalar):
        if isinstance(scalar, complex) or not isinstance(scalar, (int, float)):
            return NotImplemented
        if scalar < 0:
            raise NegativeInputError(0, "scalar must be positive")
        # 0 * inf = 0 so that scaling never leaves [0, inf].
        return ExtendedPositive(self.model, tuple(0.0 if scalar == 0 else scalar * v
                                                  for v in self.coords))

    def sup(self, other: "ExtendedPositive") -> "ExtendedPositive":
        return self._zip(other, max)

    def inf(self, other: "ExtendedPositive") -> "ExtendedPositive":
        return self._zip(other, min)

    def leq(self, other: "ExtendedPositive") -> bool:
        if self.model != other.model:
            raise ModelMismatchError(f"{self.model} vs {other.model}")
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def truncate(self, n: float) -> "ExtendedPositive":
        """u ∧ n*e; the increasing truncation sequence recovering u."""
        return ExtendedPositive(self.model, tuple(min(v, float(n)) for v in self.coords))

    @property
    def is_finite_everywhere(self) -> bool:
        return all(not math.isinf(v) for v in self.coords)

    def as_real(self) -> RealElement:
        if not self.is_finite_everywhere:
            raise ValueError("element has an infinite coordinate")
        return RealElement(self.model, self.coords, None)


@dataclass(frozen=True)
class ThreePartDecomposition:
    """Partition of the coordinates by the value of u: finite / infinite / zero."""

    finite_band: Band
    infinite_band: Band
    disjoint_band: Band

    def __post_init__(self):
        model = self.finite_band.model
        f, i, d = self.finite_band.indices, self.infinite_band.indices, self.disjoint_band.indices
        if f & i or f & d or i & d or (f | i | d) != frozenset(range(model.size)):
            raise ValueError("bands do not partition the coordinates")


def infinite_part(u: ExtendedPositive) -> ExtendedPositive:
    """u_inf = inf_n u/n: infinite where u is infinite, zero elsewhere."""
    return ExtendedPositive(u.model, tuple(INF if math.isinf(v) else 0.0 for v in u.coords))


def finite_part(u: ExtendedPositive) -> RealElement:
    """u_F = sup{x - x ∧ u_inf : 0 <= x <= u in F}: u where finite, else 0."""
    return RealElement(u.model, tuple(0.0 if math.isinf(v) else v for v in u.coords), None)


def band_projection_from(u: ExtendedPositive) -> Band:
    """Band generated by u: P_u x = sup_n (x ∧ n u) keeps the support of u."""
    return Band(u.model, frozenset(i for i, v in enumerate(u.coords) if v > 0))


def project_positive(u: ExtendedPositive, x: RealElement) -> RealElement:
    """P_u applied to x (extended to signed x through x = x^+ - x^-)."""
    return band_projection_from(u).project(x)


def extend_projection(band: Band, y: ExtendedPositive) -> ExtendedPositive:
    """The sup-extension of a band projection: coordinate mask, inf preserved."""
    if band.model != y.model:
        raise ModelMismatchError("band and element models differ")
    return ExtendedPositive(y.model, tuple(v if band.contains(i) else 0.0
                                           for i, v in enumerate(y.coords)))


def three_part_decompose(u: ExtendedPositive) -> ThreePartDecomposition:
    finite = frozenset(i for i, v in enumerate(u.coords) if 0 < v < INF)
    infinite = frozenset(i for i, v in enumerate(u.coords) if math.isinf(v))
    zero = frozenset(i for i, v in enumerate(u.coords) if v == 0)
    return ThreePartDecomposition(Band(u.model, finite), Band(u.model, infinite),
                                  Band(u.model, zero))


def ext_mul(x: ExtendedPositive, y: ExtendedPositive) -> ExtendedPositive:
    """Extended product sup{v w : v <= x, w <= y finite}; hence 0 * inf = 0."""
    def mul(a: float, b: float) -> float:
        if a == 0 or b == 0:
            return 0.0
        return a * b

    return x._zip(y, mul)


def generalized_inverse(x: ExtendedPositive) -> ExtendedPositive:
    """Reciprocal coordinatewise with 0 and inf swapped; an involution."""
    def inv(v: float) -> float:
        if v == 0:
            return INF
        if math.isinf(v):
            return 0.0
        return 1.0 / v

    return ExtendedPositive(x.model, tuple(inv(v) for v in x.coords))
