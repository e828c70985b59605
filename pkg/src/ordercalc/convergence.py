"""Order convergence certificates and power-series radii.

Coefficient families are given per coordinate by a closed form with known
n-th-root asymptotics: p(n) * ratio^n, p(n) / (n+shift)!, or
p(n) * (n+shift)!, optionally preceded by a finite table of explicit values.
This makes the coordinatewise limsup of |a_n|^(1/n) exact (ratio, 0, or inf)
and keeps the class closed under the derivative map a_n -> (n+1) a_{n+1}.

The radius report inverts that limsup through the generalized inverse and
carries the three band identities tying the limsup's parts to the radius's
parts.  Membership of a radius in the convergence region is a three-valued
verdict: the sufficient criterion (limsup * r strictly dominated by e) yields
IN with a verified uniform tail bound, the failure of the necessary criterion
(limsup * r <= e) yields OUT with a non-vanishing term witness, and the gap
in between is reported as BOUNDARY.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .lattice import (
    Model,
    ModelMismatchError,
    OrderCalcError,
    RealElement,
    pseudo_inverse,
)
from .supcompletion import (
    ExtendedPositive,
    ThreePartDecomposition,
    finite_part,
    generalized_inverse,
    infinite_part,
    three_part_decompose,
)

INF = math.inf

DEFAULT_MAX_TERMS = 10_000
DEFAULT_TAIL_TOL = 1e-9

# Growth guard for limsup estimation.
UNBOUNDED_GUARD = 1e300


class DepthTooSmallError(OrderCalcError):
    """check_depth does not reach the certificate's largest threshold."""


class UnboundedError(OrderCalcError):
    """A sequence coordinate crossed the growth guard."""

    def __init__(self, coordinate: int, index: int):
        self.coordinate = coordinate
        self.index = index
        super().__init__(f"coordinate {coordinate} exceeds {UNBOUNDED_GUARD:g} at n={index}")


# ---------------------------------------------------------------------------
# polynomial helpers (coefficient tuples over n, lowest degree first)

def _poly_val(poly, n):
    acc = np.zeros_like(np.asarray(n, dtype=np.float64))
    for c in reversed(poly):
        acc = acc * n + c
    return acc


def _poly_shift(poly):
    """q with q(n) = p(n+1)."""
    out = [0.0] * len(poly)
    for i, c in enumerate(poly):
        for j in range(i + 1):
            out[j] += c * math.comb(i, j)
    return tuple(out)


def _poly_mul_np1(poly):
    """q with q(n) = (n+1) * p(n)."""
    out = [0.0] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i] += c
        out[i + 1] += c
    return tuple(out)


def _poly_scale(poly, s):
    return tuple(s * c for c in poly)


def _poly_is_zero(poly):
    return all(c == 0 for c in poly)


# lazily grown cache of log(n!)
_LOG_FACT = np.zeros(1)


def _log_factorials(up_to: int) -> np.ndarray:
    global _LOG_FACT
    if len(_LOG_FACT) <= up_to:
        n = len(_LOG_FACT)
        grown = np.concatenate([_LOG_FACT, np.zeros(up_to + 1 - n)])
        for k in range(n, up_to + 1):
            grown[k] = grown[k - 1] + math.log(k)
        _LOG_FACT = grown
    return _LOG_FACT


# n! as floats; entries past 170 saturate to inf
_FLOAT_FACT = np.ones(1)


def _float_factorials(up_to: int) -> np.ndarray:
    global _FLOAT_FACT
    if len(_FLOAT_FACT) <= up_to:
        n = len(_FLOAT_FACT)
        grown = np.concatenate([_FLOAT_FACT, np.zeros(up_to + 1 - n)])
        for k in range(n, up_to + 1):
            grown[k] = grown[k - 1] * k if k <= 170 else INF
        _FLOAT_FACT = grown
    return _FLOAT_FACT


GEOMETRIC = "geometric"
INV_FACTORIAL = "inv_factorial"
FACTORIAL = "factorial"

_BASES = (GEOMETRIC, INV_FACTORIAL, FACTORIAL)


@dataclass(frozen=True)
class CoordinateSeries:
    """One coordinate's coefficient sequence a_n.

    a_n = table[n] for n < len(table); beyond the table,
    a_n = poly(n) * ratio^n            (geometric base)
    a_n = poly(n) / (n + shift)!       (inv_factorial base)
    a_n = poly(n) * (n + shift)!       (factorial base)
    """

    base: str
    ratio: float = 1.0
    shift: int = 0
    poly: tuple = (1.0,)
    table: tuple = ()

    def __post_init__(self):
        if self.base not in _BASES:
            raise ValueError(f"unknown base {self.base!r}")
        if self.ratio < 0:
            raise ValueError("ratio must be nonnegative")
        if self.shift < 0:
            raise ValueError("factorial shift must be nonnegative")
        if not self.poly:
            raise ValueError("polynomial factor must have at least one coefficient")
        object.__setattr__(self, "poly", tuple(float(c) for c in self.poly))
        object.__setattr__(self, "table", tuple(float(v) for v in self.table))

    @staticmethod
    def geometric(ratio: float, scale: float = 1.0) -> "CoordinateSeries":
        return CoordinateSeries(GEOMETRIC, ratio=float(ratio), poly=(scale,))

    @staticmethod
    def poly_geometric(degree: int, ratio: float) -> "CoordinateSeries":
        """a_n = (n+1)^degree * ratio^n."""
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        poly = tuple(float(math.comb(degree, j)) for j in range(degree + 1))
        return CoordinateSeries(GEOMETRIC, ratio=float(ratio), poly=poly)

    @staticmethod
    def inverse_factorial() -> "CoordinateSeries":
        return CoordinateSeries(INV_FACTORIAL)

    @staticmethod
    def factorial() -> "CoordinateSeries":
        return CoordinateSeries(FACTORIAL)

    def with_table(self, values) -> "CoordinateSeries":
        return CoordinateSeries(self.base, self.ratio, self.shift, self.poly,
                                tuple(values))

    def root_limsup_value(self) -> float:
        """Exact limsup of |a_n|^(1/n); finite tables do not affect it."""
        if _poly_is_zero(self.poly):
            return 0.0
        if self.base == GEOMETRIC:
            return self.ratio
        return 0.0 if self.base == INV_FACTORIAL else INF

    def derivative(self) -> "CoordinateSeries":
        """The coordinate of (n+1) a_{n+1}; same n-th-root asymptotics."""
        poly = _poly_mul_np1(_poly_shift(self.poly))
        if self.base == GEOMETRIC:
            out = CoordinateSeries(GEOMETRIC, ratio=self.ratio,
                                   poly=_poly_scale(poly, self.ratio))
        else:
            out = CoordinateSeries(self.base, shift=self.shift + 1, poly=poly)
        if self.table:
            new_table = tuple((n + 1) * self.table[n + 1]
                              for n in range(len(self.table) - 1))
            out = out.with_table(new_table)
        return out

    def log_abs_terms(self, n: np.ndarray) -> np.ndarray:
        """log |a_n| (-inf at zeros), safe against overflow."""
        n = np.asarray(n, dtype=np.int64)
        pv = _poly_val(self.poly, n.astype(np.float64))
        with np.errstate(divide="ignore"):
            out = np.where(pv == 0, -INF, np.log(np.abs(np.where(pv == 0, 1.0, pv))))
        if self.base == GEOMETRIC:
            if self.ratio == 0:
                out = np.where(n == 0, out, -INF)
            else:
                out = out + n * math.log(self.ratio)
        else:
            lf = _log_factorials(int(n.max()) + self.shift)[n + self.shift]
            out = out - lf if self.base == INV_FACTORIAL else out + lf
        if self.table:
            mask = n < len(self.table)
            if mask.any():
                tv = np.abs(np.array([self.table[i] for i in n[mask]]))
                with np.errstate(divide="ignore"):
                    out[mask] = np.where(tv == 0, -INF, np.log(np.where(tv == 0, 1.0, tv)))
        return out

    def sign_terms(self, n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=np.int64)
        out = np.sign(_poly_val(self.poly, n.astype(np.float64)))
        if self.table:
            mask = n < len(self.table)
            if mask.any():
                out[mask] = np.sign(np.array([self.table[i] for i in n[mask]]))
        return out

    def terms(self, n: np.ndarray) -> np.ndarray:
        """Signed coefficient values; saturates to +-inf on overflow."""
        n = np.asarray(n, dtype=np.int64)
        pv = _poly_val(self.poly, n.astype(np.float64))
        with np.errstate(over="ignore"):
            if self.base == GEOMETRIC:
                raw = pv * np.power(self.ratio, n.astype(np.float64))
            else:
                f = _float_factorials(int(n.max()) + self.shift)[n + self.shift]
                raw = pv / f if self.base == INV_FACTORIAL else pv * f
        out = np.where(pv == 0, 0.0, raw)
        if self.table:
            mask = n < len(self.table)
            if mask.any():
                out[mask] = np.array([self.table[i] for i in n[mask]])
        return out

    def term(self, n: int) -> float:
        return float(self.terms(np.array([n]))[0])


@dataclass(frozen=True)
class CoefficientFamily:
    """Per-coordinate coefficient sequences over a finite model."""

    model: Model
    coordinates: tuple

    def __post_init__(self):
        if not self.model.is_finite:
            raise ModelMismatchError("coefficient families live in the finite model")
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        if len(self.coordinates) != self.model.size:
            raise ValueError(f"expected {self.model.size} coordinates")
        for c in self.coordinates:
            if not isinstance(c, CoordinateSeries):
                raise TypeError("coordinates must be CoordinateSeries")

    @staticmethod
    def of(coordinates) -> "CoefficientFamily":
        coordinates = tuple(coordinates)
        return CoefficientFamily(Model.finite(len(coordinates)), coordinates)

    def coefficient(self, n: int) -> RealElement:
        return RealElement(self.model, tuple(c.term(n) for c in self.coordinates), None)

    def coefficient_matrix(self, terms: int) -> np.ndarray:
        n = np.arange(terms)
        return np.column_stack([c.terms(n) for c in self.coordinates])

    def derivative(self) -> "CoefficientFamily":
        return CoefficientFamily(self.model, tuple(c.derivative() for c in self.coordinates))


def root_limsup(fam: CoefficientFamily) -> ExtendedPositive:
    """Coordinatewise limsup |a_n|^(1/n), exact from the closed forms."""
    return ExtendedPositive(fam.model, tuple(c.root_limsup_value() for c in fam.coordinates))


@dataclass(frozen=True)
class RadiusReport:
    """Radius of convergence data: rho is the generalized inverse of L."""

    L: ExtendedPositive
    rho: ExtendedPositive
    rho_finite: RealElement
    rho_infinite: ExtendedPositive
    L_parts: ThreePartDecomposition
    rho_parts: ThreePartDecomposition
    identities: dict

    def identities_hold(self) -> bool:
        return all(self.identities.values())

    def to_text(self) -> str:
        from .parsing import format_extended, format_real

        lines = [
            f"L={format_extended(self.L)}",
            f"rho={format_extended(self.rho)}",
            f"rho_F={format_real(self.rho_finite)}",
            f"rho_inf={format_extended(self.rho_infinite)}",
            f"band_L_finite={_fmt_set(self.L_parts.finite_band.indices)}",
            f"band_L_infinite={_fmt_set(self.L_parts.infinite_band.indices)}",
            f"band_L_zero={_fmt_set(self.L_parts.disjoint_band.indices)}",
            f"band_rho_finite={_fmt_set(self.rho_parts.finite_band.indices)}",
            f"band_rho_infinite={_fmt_set(self.rho_parts.infinite_band.indices)}",
            f"band_rho_zero={_fmt_set(self.rho_parts.disjoint_band.indices)}",
        ]
        for name, ok in self.identities.items():
            lines.append(f"identity_{name}={'true' if ok else 'false'}")
        return "\n".join(lines)


def _fmt_set(indices) -> str:
    return "{" + ",".join(str(i) for i in sorted(indices)) + "}"


def cauchy_hadamard(fam: CoefficientFamily) -> RadiusReport:
    """Radius report: rho = generalized_inverse(L) plus the band identities.

    The identities: the zero band of L is the infinite band of rho, the
    infinite band of L is the zero band of rho, and the pseudo-reciprocal of
    L's finite part is rho's finite part.
    """
    L = root_limsup(fam)
    rho = generalized_inverse(L)
    rho_f = finite_part(rho)
    rho_i = infinite_part(rho)
    L_parts = three_part_decompose(L)
    rho_parts = three_part_decompose(rho)
    identities = {
        "L_zero_band_is_rho_infinite_band":
            L_parts.disjoint_band.indices == rho_parts.infinite_band.indices,
        "L_infinite_band_is_rho_zero_band":
            L_parts.infinite_band.indices == rho_parts.disjoint_band.indices,
        "L_finite_part_star_is_rho_finite_part":
            pseudo_inverse(finite_part(L)) == rho_f,
    }
    return RadiusReport(L, rho, rho_f, rho_i, L_parts, rho_parts, identities)


# ---------------------------------------------------------------------------
# membership of a radius in the convergence region

@dataclass(frozen=True)
class OutWitness:
    coordinate: int
    index: int
    term: float
    log10_term: float


@dataclass(frozen=True)
class CoordinateTail:
    cutoff: Optional[int]
    bound: Optional[float]
    verified: bool


@dataclass(frozen=True)
class SpectrumVerdict:
    membership: str  # "IN" | "OUT" | "BOUNDARY"
    q: tuple  # coordinatewise limsup * r under the 0 * inf = 0 rule
    cutoff: Optional[int] = None
    tail_bound: Optional[float] = None
    tail_verified: bool = False
    coordinate_tails: tuple = ()
    witness: Optional[OutWitness] = None
    boundary_coordinates: tuple = ()


def _ext_scalar_mul(a: float, b: float) -> float:
    if a == 0 or b == 0:
        return 0.0
    return a * b


def _log_terms_at_radius(series: CoordinateSeries, n: np.ndarray, r: float) -> np.ndarray:
    """log(|a_n| * r^n); r = 0 contributes only the n = 0 term."""
    lt = series.log_abs_terms(n)
    if r == 0:
        return np.where(n == 0, lt, -INF)
    return lt + n * math.log(r)


def coordinate_tail(series: CoordinateSeries, r: float, tol: float,
                    max_terms: int = DEFAULT_MAX_TERMS) -> CoordinateTail:
    """Smallest cutoff k with sum_{n>k} |a_n| r^n provably below tol.

    Requires limsup |a_n|^(1/n) * r < 1.  The tail beyond the scanned range
    is bounded by a geometric majorant taken from the observed term ratios.
    """
    if r == 0 or _poly_is_zero(series.poly):
        k = len(series.table)
        if r == 0:
            k = min(k, 1)
        return CoordinateTail(max(k - 1, 0), 0.0, True)
    size = max(256, 2 * len(series.table) + 16)
    while True:
        n = np.arange(size)
        lt = _log_terms_at_radius(series, n, r)
        with np.errstate(over="ignore"):
            t = np.exp(lt)
        if np.isinf(t).any():
            return CoordinateTail(None, None, False)
        window = slice(max(len(series.table), size - 64), size)
        tw = t[window]
        if (tw == 0).all():
            ratio = 0.0
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = tw[1:] / tw[:-1]
            ratios = np.nan_to_num(ratios, nan=0.0, posinf=INF)
            ratio = float(ratios.max()) if len(ratios) else 0.0
        if ratio < 1.0 - 1e-12:
            remainder = float(t[-1]) * ratio / (1.0 - ratio) if ratio > 0 else 0.0
            suffix = np.concatenate([np.cumsum(t[::-1])[::-1][1:], [0.0]]) + remainder
            hits = np.nonzero(suffix <= tol)[0]
            if len(hits):
                k = int(hits[0])
                return CoordinateTail(k, float(suffix[k]), True)
        if size >= max_terms:
            return CoordinateTail(None, None, False)
        size = min(2 * size, max_terms)


def _divergence_witness(series: CoordinateSeries, coordinate: int, r: float,
                        limit: int = 1_000_000) -> OutWitness:
    """An index past the table where |a_n| r^n exceeds 1 (terms do not vanish)."""
    size = 64
    start = len(series.table)
    while size <= limit:
        n = np.arange(start, start + size)
        lt = _log_terms_at_radius(series, n, r)
        hits = np.nonzero(lt > 0)[0]
        if len(hits):
            i = int(n[hits[0]])
            log_term = float(lt[hits[0]])
            with np.errstate(over="ignore"):
                value = float(np.exp(log_term))
            return OutWitness(coordinate, i, value, log_term / math.log(10))
        start += size
        size *= 2
    raise OrderCalcError("no divergence witness found within the scan limit")


def spectrum_membership(fam: CoefficientFamily, c, r: RealElement,
                        tail_tolerance: float = DEFAULT_TAIL_TOL,
                        max_terms: int = DEFAULT_MAX_TERMS) -> SpectrumVerdict:
    """Three-valued membership of the radius r in the convergence region.

    IN when limsup * r is strictly dominated by e (every coordinate < 1);
    the uniform tail bound sum_{n>k} |a_n| r^n < tail_tolerance is then
    verified and the cutoff k reported.  OUT when some coordinate has
    limsup * r > 1, witnessed by a term that fails to vanish.  BOUNDARY
    when the two criteria leave the gap (equality somewhere, no excess).

    The center c participates only through model validation; membership is
    translation invariant.
    """
    if c is not None and c.model != fam.model:
        raise ModelMismatchError("center and family models differ")
    if r.model != fam.model:
        raise ModelMismatchError("radius and family models differ")
    if not r.is_positive:
        raise ValueError("radius must be positive")
    L = root_limsup(fam)
    q = tuple(_ext_scalar_mul(lv, rv) for lv, rv in zip(L.coords, r.prefix))
    over = [k for k, qv in enumerate(q) if qv > 1]
    if over:
        k = over[0]
        witness = _divergence_witness(fam.coordinates[k], k, r.coord(k))
        return SpectrumVerdict("OUT", q, witness=witness)
    boundary = tuple(k for k, qv in enumerate(q) if qv == 1)
    if boundary:
        return SpectrumVerdict("BOUNDARY", q, boundary_coordinates=boundary)
    tails = tuple(coordinate_tail(series, r.coord(k), tail_tolerance, max_terms)
                  for k, series in enumerate(fam.coordinates))
    verified = all(t.verified for t in tails)
    cutoff = max((t.cutoff for t in tails if t.cutoff is not None), default=0)
    bound = max((t.bound for t in tails if t.bound is not None), default=0.0)
    return SpectrumVerdict("IN", q, cutoff=cutoff, tail_bound=bound,
                           tail_verified=verified, coordinate_tails=tails)


# ---------------------------------------------------------------------------
# order-convergence certificates

@dataclass(frozen=True)
class ConvergenceCertificate:
    """Closed-form regulator q_m (nonincreasing, vanishing) with thresholds N(m).

    The declared closed forms are the contract; verification checks the
    regulator's monotonicity on the declared levels and the eventual bound
    |z_n - z| <= q_m for n in [N(m), check_depth].
    """

    regulator: Callable[[int], RealElement]
    threshold: Callable[[int], int]
    levels: int

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError("certificate needs at least one level")


@dataclass(frozen=True)
class CertificateViolation:
    level: int
    index: int
    coordinate: int


@dataclass(frozen=True)
class CertificateVerdict:
    confirmed: bool
    violation: Optional[CertificateViolation]
    pairs_checked: int


def _first_leq_failure(d: RealElement, bound: RealElement) -> Optional[int]:
    n = d._span(bound)
    for i in range(n):
        if d.coord(i) > bound.coord(i):
            return i
    if not d.model.is_finite and d.tail > bound.tail:
        return n
    return None


def verify_certificate(seq: Callable, limit, certificate: ConvergenceCertificate,
                       check_depth: int) -> CertificateVerdict:
    """Check |seq(n) - limit| <= q_m for all n in [N(m), check_depth], all levels."""
    regs = [certificate.regulator(m) for m in range(certificate.levels)]
    for m, qm in enumerate(regs):
        if not qm.is_positive:
            raise ValueError(f"regulator is not positive at level {m}")
        if m and not regs[m].leq(regs[m - 1]):
            raise ValueError(f"regulator is not nonincreasing at level {m}")
    thresholds = [certificate.threshold(m) for m in range(certificate.levels)]
    if check_depth < max(thresholds):
        raise DepthTooSmallError(
            f"check_depth {check_depth} below largest threshold {max(thresholds)}")
    diffs = {}
    pairs = 0
    for m, qm in enumerate(regs):
        for n in range(thresholds[m], check_depth + 1):
            if n not in diffs:
                diffs[n] = (seq(n) - limit).modulus()
            pairs += 1
            bad = _first_leq_failure(diffs[n], qm)
            if bad is not None:
                return CertificateVerdict(False, CertificateViolation(m, n, bad), pairs)
    return CertificateVerdict(True, None, pairs)


def limsup_bounded(seq: Callable, depth: int, return_delta: bool = False):
    """Numeric coordinatewise limsup estimate over [0, depth).

    Uses the supremum over the trailing half window; the delta against the
    previous quarter window is the reported stability gap.  Raises
    UnboundedError when a coordinate crosses the growth guard.
    """
    if depth < 4:
        raise ValueError("depth must be at least 4")
    values = []
    for n in range(depth):
        v = seq(n)
        for i, x in enumerate(v.prefix):
            if abs(x) > UNBOUNDED_GUARD:
                raise UnboundedError(i, n)
        if not v.model.is_finite and abs(v.tail) > UNBOUNDED_GUARD:
            raise UnboundedError(len(v.prefix), n)
        values.append(v)

    def window_sup(lo: int, hi: int) -> RealElement:
        acc = values[lo]
        for v in values[lo + 1:hi]:
            acc = acc.sup(v)
        return acc

    estimate = window_sup(depth // 2, depth)
    if not return_delta:
        return estimate
    previous = window_sup(depth // 4, depth // 2)
    return estimate, abs(estimate - previous)
