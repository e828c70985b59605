"""Coordinatewise vector-lattice algebra with a complex modulus.

Two models are supported: tuples of fixed length n (model ``finite(n)``) and
eventually constant sequences stored as a finite prefix plus a constant tail
(model ``sequence()``).  Elements are immutable; every operation returns a
new element in canonical form.  In the sequence model the canonical form
absorbs trailing prefix entries that equal the tail value, which makes
structural equality decidable.

The modulus of a complex element is taken coordinatewise
(|x + iy| = sqrt(x^2 + y^2)); ``modulus_square_mean`` computes the same
quantity as a supremum of cos(t)x + sin(t)y over a uniform angle grid and is
monotone along grid refinements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from . import _kernels


class OrderCalcError(Exception):
    """Base class for the package's domain errors."""


class ModelMismatchError(OrderCalcError):
    """Operands live in different models."""


class NotInvertibleError(OrderCalcError):
    """Element has a zero coordinate; carries a witness index."""

    def __init__(self, witness: int, message: str | None = None):
        self.witness = witness
        super().__init__(message or f"zero coordinate at index {witness}")


class NegativeInputError(OrderCalcError):
    """A positivity requirement failed; carries a witness index."""

    def __init__(self, witness: int, message: str | None = None):
        self.witness = witness
        super().__init__(message or f"negative coordinate at index {witness}")


class InvalidRadiusError(OrderCalcError):
    """Open disks need a radius that dominates a positive invertible element."""


@dataclass(frozen=True)
class Model:
    """Coordinate model: ``size`` is the dimension, or None for sequences."""

    size: Optional[int]

    @staticmethod
    def finite(n: int) -> "Model":
        if n < 1:
            raise ValueError("finite model needs at least one coordinate")
        return Model(n)

    @staticmethod
    def sequence() -> "Model":
        return Model(None)

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def __repr__(self) -> str:
        return f"Model.finite({self.size})" if self.is_finite else "Model.sequence()"


def _canonical(model: Model, prefix: tuple, tail):
    if model.is_finite:
        if tail is not None:
            raise ValueError("finite model takes no tail value")
        if len(prefix) != model.size:
            raise ValueError(f"expected {model.size} coordinates, got {len(prefix)}")
        return prefix, None
    if tail is None:
        raise ValueError("sequence model needs a tail value")
    k = len(prefix)
    while k > 0 and prefix[k - 1] == tail:
        k -= 1
    return prefix[:k], tail


def _as_float(v) -> float:
    if isinstance(v, complex):
        raise TypeError("real element cannot hold complex coordinates")
    return float(v)


@dataclass(frozen=True)
class _Element:
    model: Model
    prefix: tuple
    tail: object

    def coord(self, i: int):
        """Coordinate i (0-based); beyond the prefix this is the tail."""
        if i < len(self.prefix):
            return self.prefix[i]
        if self.model.is_finite:
            raise IndexError(i)
        return self.tail

    def _span(self, other: "_Element") -> int:
        if self.model != other.model:
            raise ModelMismatchError(f"{self.model} vs {other.model}")
        if self.model.is_finite:
            return self.model.size
        return max(len(self.prefix), len(other.prefix))

    def _map(self, fn: Callable):
        cls = type(self)
        prefix = tuple(fn(v) for v in self.prefix)
        tail = None if self.tail is None else fn(self.tail)
        return cls(self.model, prefix, tail)

    def _zip(self, other: "_Element", fn: Callable):
        n = self._span(other)
        cls = type(self)
        prefix = tuple(fn(self.coord(i), other.coord(i)) for i in range(n))
        tail = None if self.model.is_finite else fn(self.tail, other.tail)
        return cls(self.model, prefix, tail)

    def coords_list(self, n: int | None = None) -> list:
        """First n coordinates (n defaults to the dimension / prefix length)."""
        if n is None:
            n = self.model.size if self.model.is_finite else len(self.prefix)
        return [self.coord(i) for i in range(n)]

    def support(self) -> "Band":
        """Band of the element: the index set where it is nonzero."""
        nz = frozenset(i for i, v in enumerate(self.prefix) if v != 0)
        if self.model.is_finite:
            return Band(self.model, nz)
        if self.tail == 0:
            return Band(self.model, nz)
        zeros = frozenset(i for i, v in enumerate(self.prefix) if v == 0)
        return Band(self.model, zeros, cofinite=True)

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self._map(lambda a: -a)

    def __mul__(self, other):
        if isinstance(other, type(self)):
            return self._zip(other, lambda a, b: a * b)
        return NotImplemented


@dataclass(frozen=True)
class RealElement(_Element):
    """Element with real coordinates; carries the lattice structure."""

    def __post_init__(self):
        prefix = tuple(_as_float(v) for v in self.prefix)
        tail = None if self.tail is None else _as_float(self.tail)
        prefix, tail = _canonical(self.model, prefix, tail)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail", tail)

    @staticmethod
    def finite(values) -> "RealElement":
        values = tuple(values)
        return RealElement(Model.finite(len(values)), values, None)

    @staticmethod
    def seq(prefix, tail) -> "RealElement":
        return RealElement(Model.sequence(), tuple(prefix), tail)

    @staticmethod
    def constant(model: Model, value) -> "RealElement":
        if model.is_finite:
            return RealElement(model, (value,) * model.size, None)
        return RealElement(model, (), value)

    def __rmul__(self, scalar):
        if isinstance(scalar, complex) or not isinstance(scalar, (int, float)):
            return NotImplemented
        return self._map(lambda a: scalar * a)

    def sup(self, other: "RealElement") -> "RealElement":
        return self._zip(other, max)

    def inf(self, other: "RealElement") -> "RealElement":
        return self._zip(other, min)

    def pos_part(self) -> "RealElement":
        return self._map(lambda a: a if a > 0 else 0.0)

    def neg_part(self) -> "RealElement":
        return self._map(lambda a: -a if a < 0 else 0.0)

    def __abs__(self) -> "RealElement":
        return self._map(abs)

    def leq(self, other: "RealElement") -> bool:
        n = self._span(other)
        if any(self.coord(i) > other.coord(i) for i in range(n)):
            return False
        return self.model.is_finite or self.tail <= other.tail

    @property
    def is_positive(self) -> bool:
        if any(v < 0 for v in self.prefix):
            return False
        return self.model.is_finite or self.tail >= 0

    def as_complex(self) -> "ComplexElement":
        return ComplexElement(self.model, self.prefix, self.tail)


def _as_complex(v) -> complex:
    return complex(v)


@dataclass(frozen=True)
class ComplexElement(_Element):
    """Element with complex coordinates; the algebra the calculus runs in."""

    def __post_init__(self):
        prefix = tuple(_as_complex(v) for v in self.prefix)
        tail = None if self.tail is None else _as_complex(self.tail)
        prefix, tail = _canonical(self.model, prefix, tail)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail", tail)

    @staticmethod
    def finite(values) -> "ComplexElement":
        values = tuple(values)
        return ComplexElement(Model.finite(len(values)), values, None)

    @staticmethod
    def seq(prefix, tail) -> "ComplexElement":
        return ComplexElement(Model.sequence(), tuple(prefix), tail)

    @staticmethod
    def constant(model: Model, value) -> "ComplexElement":
        if model.is_finite:
            return ComplexElement(model, (value,) * model.size, None)
        return ComplexElement(model, (), value)

    def __rmul__(self, scalar):
        if not isinstance(scalar, (int, float, complex)):
            return NotImplemented
        return self._map(lambda a: scalar * a)

    def scale(self, scalar: complex) -> "ComplexElement":
        return self._map(lambda a: scalar * a)

    def conjugate(self) -> "ComplexElement":
        return self._map(lambda a: a.conjugate())

    def real_part(self) -> "RealElement":
        return RealElement(self.model, tuple(v.real for v in self.prefix),
                           None if self.tail is None else self.tail.real)

    def imag_part(self) -> "RealElement":
        return RealElement(self.model, tuple(v.imag for v in self.prefix),
                           None if self.tail is None else self.tail.imag)

    def modulus(self) -> "RealElement":
        return RealElement(self.model, tuple(abs(v) for v in self.prefix),
                           None if self.tail is None else abs(self.tail))

    def __abs__(self) -> "RealElement":
        return self.modulus()


Element = Union[RealElement, ComplexElement]


def unit(model: Model) -> RealElement:
    """The multiplicative identity e (all coordinates 1)."""
    return RealElement.constant(model, 1.0)


def zero(model: Model) -> RealElement:
    return RealElement.constant(model, 0.0)


def modulus_closed(z: ComplexElement) -> RealElement:
    """Coordinatewise |x + iy| = sqrt(x^2 + y^2)."""
    return z.modulus()


def modulus_square_mean(x: RealElement, y: RealElement,
                        grid_points: int = 4096) -> RealElement:
    """sup over the uniform angle grid of cos(t)*x + sin(t)*y.

    The grid always contains t = 0.  Along grid refinements (doubling) the
    result is monotone nondecreasing and converges to sqrt(x^2 + y^2) with a
    gap of order 1/grid_points^2.
    """
    if grid_points < 1:
        raise ValueError("grid_points must be at least 1")
    n = x._span(y)
    xs = np.array([x.coord(i) for i in range(n)], dtype=np.float64)
    ys = np.array([y.coord(i) for i in range(n)], dtype=np.float64)
    if not x.model.is_finite:
        xs = np.append(xs, x.tail)
        ys = np.append(ys, y.tail)
    vals = _kernels.square_mean_max(xs, ys, grid_points)
    if x.model.is_finite:
        return RealElement(x.model, tuple(vals), None)
    return RealElement(x.model, tuple(vals[:-1]), float(vals[-1]))


def phi_mul(z: Element, w: Element) -> Element:
    """Coordinatewise product; the algebra multiplication."""
    if type(z) is not type(w):
        raise TypeError("phi_mul needs two elements of the same kind")
    return z * w


def zero_coordinate(z: Element) -> Optional[int]:
    """Index of a zero coordinate, or None when the element is invertible.

    In the sequence model a zero tail is witnessed by the first index past
    the stored prefix.
    """
    for i, v in enumerate(z.prefix):
        if v == 0:
            return i
    if not z.model.is_finite and z.tail == 0:
        return len(z.prefix)
    return None


def is_invertible(z: Element) -> bool:
    return zero_coordinate(z) is None


def inverse(z: Element) -> Element:
    """Coordinatewise reciprocal; raises NotInvertibleError with a witness."""
    w = zero_coordinate(z)
    if w is not None:
        raise NotInvertibleError(w)
    return z._map(lambda a: 1 / a)


def pseudo_inverse(z: Element) -> Element:
    """Reciprocal on the support, zero on the complement (z* with z z* z = z)."""
    return z._map(lambda a: 1 / a if a != 0 else a * 0)


def strictly_dominates(a: RealElement, b: RealElement) -> bool:
    """True when b << a, i.e. a - b is positive and invertible."""
    d = a - b
    return d.is_positive and is_invertible(d)


def nth_root(x: RealElement, n: int) -> RealElement:
    """Coordinatewise positive n-th root of a positive element."""
    if n < 1:
        raise ValueError("root order must be at least 1")
    for i, v in enumerate(x.prefix):
        if v < 0:
            raise NegativeInputError(i)
    if not x.model.is_finite and x.tail < 0:
        raise NegativeInputError(len(x.prefix))
    return x._map(lambda a: a ** (1.0 / n))


@dataclass(frozen=True)
class Band:
    """Support set of coordinates.

    Finite model: ``indices`` is the support.  Sequence model: the support is
    ``indices`` itself (cofinite=False) or its complement (cofinite=True).
    """

    model: Model
    indices: frozenset
    cofinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(self.indices))
        if self.model.is_finite:
            if self.cofinite:
                raise ValueError("cofinite descriptor applies to sequences only")
            if any(i < 0 or i >= self.model.size for i in self.indices):
                raise ValueError("band index out of range")
        elif any(i < 0 for i in self.indices):
            raise ValueError("band index out of range")

    @staticmethod
    def of(element: Element) -> "Band":
        return element.support()

    @staticmethod
    def full(model: Model) -> "Band":
        if model.is_finite:
            return Band(model, frozenset(range(model.size)))
        return Band(model, frozenset(), cofinite=True)

    @staticmethod
    def empty(model: Model) -> "Band":
        return Band(model, frozenset())

    def contains(self, i: int) -> bool:
        if self.model.is_finite and (i < 0 or i >= self.model.size):
            raise IndexError(i)
        return (i in self.indices) != self.cofinite

    def complement(self) -> "Band":
        if self.model.is_finite:
            return Band(self.model, frozenset(range(self.model.size)) - self.indices)
        return Band(self.model, self.indices, cofinite=not self.cofinite)

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.indices

    def project(self, element: Element) -> Element:
        """Band projection: keep coordinates in the band, zero the rest."""
        if element.model != self.model:
            raise ModelMismatchError("band and element models differ")
        if self.model.is_finite:
            prefix = tuple(v if self.contains(i) else v * 0
                           for i, v in enumerate(element.prefix))
            return type(element)(self.model, prefix, None)
        top = max(self.indices) + 1 if self.indices else 0
        n = max(len(element.prefix), top)
        prefix = tuple(element.coord(i) if self.contains(i) else element.coord(i) * 0
                       for i in range(n))
        tail = element.tail if self.cofinite else element.tail * 0
        return type(element)(self.model, prefix, tail)


@dataclass(frozen=True)
class OrderDisk:
    """Disk {z : |z - center| <= radius} (closed) or with << (open).

    The radius is a RealElement, or an ExtendedPositive in the finite model
    (coordinates in [0, inf]).  An open disk requires the radius to dominate
    a positive invertible element.
    """

    center: ComplexElement
    radius: object
    is_open: bool

    def __post_init__(self):
        r = self.radius
        if isinstance(r, RealElement):
            if r.model != self.center.model:
                raise ModelMismatchError("center and radius models differ")
            if not r.is_positive:
                raise InvalidRadiusError("radius must be positive")
            if self.is_open and not is_invertible(r):
                raise InvalidRadiusError(
                    f"open disk radius has a zero coordinate at index {zero_coordinate(r)}")
        else:
            coords = getattr(r, "coords", None)
            if coords is None:
                raise TypeError("radius must be a RealElement or an ExtendedPositive")
            if not self.center.model.is_finite or r.model != self.center.model:
                raise ModelMismatchError("extended radii live in the finite model")
            if self.is_open and any(v <= 0 for v in coords):
                raise InvalidRadiusError("open disk radius has a zero coordinate")


def disk_membership(z: ComplexElement, disk: OrderDisk) -> bool:
    """Membership test per the disk kind.

    Closed: |z - c| <= r coordinatewise, with an infinite radius coordinate
    always satisfied and a zero one forcing z = c there.  Open: strict
    domination on the finite-radius coordinates, free on the infinite ones.
    """
    if z.model != disk.center.model:
        raise ModelMismatchError("point and disk models differ")
    d = (z - disk.center).modulus()
    r = disk.radius
    if isinstance(r, RealElement):
        if disk.is_open:
            return strictly_dominates(r, d)
        return d.leq(r)
    for i, rv in enumerate(r.coords):
        if math.isinf(rv):
            continue
        dv = d.coord(i)
        if disk.is_open:
            if not dv < rv:
                return False
        elif not dv <= rv:
            return False
    return True
