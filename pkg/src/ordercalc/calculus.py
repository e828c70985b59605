"""Order derivatives of algebra-valued expressions and power series.

Expressions are trees over one variable with constants from the algebra,
sums, scalar multiples, products, integer powers, and inversion.  The
symbolic derivative follows the product, power, and inversion rules
(inversion differentiates to -g^{-2} g').  A derivative claim is checked
numerically through difference quotients along shrinking steps
h_k = direction * r / 2^k: the ratios |f(c+h_k) - f(c) - h_k f'(c)| / |h_k|
must decrease coordinatewise and the final residual must drop below the
tolerance.

Power series are differentiated termwise (a_n -> (n+1) a_{n+1}), which
preserves the radius report exactly; the series check additionally verifies
the quadratic majorant sum k(k-1) |a_k| r^{k-2} converges at the working
radius before trusting the quotient test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

import numpy as np

from . import _kernels
from .convergence import (
    CoefficientFamily,
    CoordinateSeries,
    cauchy_hadamard,
    coordinate_tail,
    spectrum_membership,
    DEFAULT_MAX_TERMS,
    _log_terms_at_radius,
)
from .lattice import (
    ComplexElement,
    Model,
    ModelMismatchError,
    OrderCalcError,
    OrderDisk,
    RealElement,
    inverse,
    unit,
    zero_coordinate,
)

EPS = 2.220446049250313e-16


class OutsideDomainError(OrderCalcError):
    """An Inv subterm was evaluated at a non-invertible point."""

    def __init__(self, subterm: "Expr", coordinate: int):
        self.subterm = subterm
        self.coordinate = coordinate
        super().__init__(
            f"inversion of {to_text(subterm)} has a zero coordinate at index {coordinate}")


class OutsideOpenDiskError(OrderCalcError):
    """The evaluation point is not strictly inside the convergence disk."""

    def __init__(self, coordinate: int, message: str | None = None):
        self.coordinate = coordinate
        super().__init__(message or
                         f"point is not strictly inside the disk at coordinate {coordinate}")


# ---------------------------------------------------------------------------
# expression trees

class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, _coerce(other))

    def __radd__(self, other):
        return Add(_coerce(other), self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return ScalarMul(complex(other), self)
        return Mul(self, _coerce(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return ScalarMul(complex(other), self)
        return Mul(_coerce(other), self)

    def __sub__(self, other):
        return Add(self, ScalarMul(-1 + 0j, _coerce(other)))

    def __neg__(self):
        return ScalarMul(-1 + 0j, self)

    def __pow__(self, n):
        return IntPow(self, n)


def _coerce(v) -> "Expr":
    if isinstance(v, Expr):
        return v
    if isinstance(v, ComplexElement):
        return Const(v)
    if isinstance(v, (int, float, complex)):
        return ScalarMul(complex(v), One())
    raise TypeError(f"cannot use {type(v).__name__} in an expression")


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class One(Expr):
    """The multiplicative identity e of whatever model the argument lives in."""


@dataclass(frozen=True)
class Const(Expr):
    value: ComplexElement


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class ScalarMul(Expr):
    scalar: complex
    arg: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Inv(Expr):
    arg: Expr


@dataclass(frozen=True)
class IntPow(Expr):
    arg: Expr
    power: int

    def __post_init__(self):
        if self.power < 0:
            raise ValueError("integer power must be nonnegative; use Inv for negatives")


VAR = Var()
ONE = One()
ZERO = ScalarMul(0j, ONE)


def _fmt_scalar(s: complex) -> str:
    if s.imag == 0:
        v = s.real
        return str(int(v)) if v == int(v) else repr(v)
    from .parsing import format_complex_scalar

    return "(" + format_complex_scalar(s) + ")"


def to_text(e: Expr) -> str:
    """Readable form using the expression syntax the parser accepts."""
    if isinstance(e, Var):
        return "z"
    if isinstance(e, One):
        return "1"
    if isinstance(e, Const):
        from .parsing import format_complex_element

        return format_complex_element(e.value)
    if isinstance(e, Add):
        return f"{to_text(e.left)} + {to_text(e.right)}"
    if isinstance(e, ScalarMul):
        return f"{_fmt_scalar(e.scalar)}*{_wrap(e.arg)}"
    if isinstance(e, Mul):
        return f"{_wrap(e.left)}*{_wrap(e.right)}"
    if isinstance(e, Inv):
        return f"inv({to_text(e.arg)})"
    if isinstance(e, IntPow):
        return f"{_wrap(e.arg)}^{e.power}"
    raise TypeError(f"not an expression: {e!r}")


def _wrap(e: Expr) -> str:
    if isinstance(e, (Var, One, Const, Inv, IntPow)):
        return to_text(e)
    return "(" + to_text(e) + ")"


def evaluate(e: Expr, z: ComplexElement) -> ComplexElement:
    """Evaluate at z; inversion outside its domain raises OutsideDomainError."""
    if isinstance(e, Var):
        return z
    if isinstance(e, One):
        return unit(z.model).as_complex()
    if isinstance(e, Const):
        if e.value.model != z.model:
            raise ModelMismatchError("constant and point models differ")
        return e.value
    if isinstance(e, Add):
        return evaluate(e.left, z) + evaluate(e.right, z)
    if isinstance(e, ScalarMul):
        return evaluate(e.arg, z).scale(e.scalar)
    if isinstance(e, Mul):
        return evaluate(e.left, z) * evaluate(e.right, z)
    if isinstance(e, Inv):
        v = evaluate(e.arg, z)
        w = zero_coordinate(v)
        if w is not None:
            raise OutsideDomainError(e, w)
        return inverse(v)
    if isinstance(e, IntPow):
        v = evaluate(e.arg, z)
        acc = unit(z.model).as_complex()
        for _ in range(e.power):
            acc = acc * v
        return acc
    raise TypeError(f"not an expression: {e!r}")


def domain_contains(e: Expr, z: ComplexElement) -> bool:
    try:
        evaluate(e, z)
        return True
    except OutsideDomainError:
        return False


def _is_zero(e: Expr) -> bool:
    return isinstance(e, ScalarMul) and e.scalar == 0


def _is_one(e: Expr) -> bool:
    return isinstance(e, One) or (isinstance(e, ScalarMul) and e.scalar == 1
                                  and isinstance(e.arg, One))


def _add(a: Expr, b: Expr) -> Expr:
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    return Add(a, b)


def _smul(s: complex, e: Expr) -> Expr:
    if s == 0 or _is_zero(e):
        return ZERO
    if s == 1:
        return e
    if isinstance(e, ScalarMul):
        return ScalarMul(s * e.scalar, e.arg)
    return ScalarMul(s, e)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_zero(a) or _is_zero(b):
        return ZERO
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    if isinstance(a, ScalarMul):
        return _smul(a.scalar, _mul(a.arg, b))
    if isinstance(b, ScalarMul):
        return _smul(b.scalar, _mul(a, b.arg))
    return Mul(a, b)


def _pow(e: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return e
    return IntPow(e, n)


def symbolic_derivative(e: Expr) -> Expr:
    """Structural derivative; inversion maps to -(arg)^{-2} * (arg)'.

    The result only inverts subterms the input already inverts, so its
    domain contains the input's domain.
    """
    if isinstance(e, Var):
        return ONE
    if isinstance(e, (One, Const)):
        return ZERO
    if isinstance(e, Add):
        return _add(symbolic_derivative(e.left), symbolic_derivative(e.right))
    if isinstance(e, ScalarMul):
        return _smul(e.scalar, symbolic_derivative(e.arg))
    if isinstance(e, Mul):
        return _add(_mul(symbolic_derivative(e.left), e.right),
                    _mul(e.left, symbolic_derivative(e.right)))
    if isinstance(e, Inv):
        return _smul(-1 + 0j, _mul(IntPow(Inv(e.arg), 2), symbolic_derivative(e.arg)))
    if isinstance(e, IntPow):
        if e.power == 0:
            return ZERO
        if e.power == 1:
            return symbolic_derivative(e.arg)
        return _smul(complex(e.power),
                     _mul(_pow(e.arg, e.power - 1), symbolic_derivative(e.arg)))
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# difference-quotient verification

DIRECTIONS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class DerivativeCheckReport:
    point: ComplexElement
    direction: RealElement
    residual_ratios: tuple
    final_residual: RealElement
    verdict: str
    failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def _monotone_failure(ratios, floors) -> Optional[str]:
    """First material increase of the ratio sequence after the first two steps.

    An increase is excused when the later ratio sits inside the floating
    noise floor (roundoff of the function values divided by |h|).
    """
    for k in range(2, len(ratios)):
        prev, cur, floor = ratios[k - 1], ratios[k], floors[k]
        n = prev._span(cur)
        coords = range(n + (0 if prev.model.is_finite else 1))
        for i in coords:
            p = prev.coord(i) if i < n else prev.tail
            c = cur.coord(i) if i < n else cur.tail
            f = floor.coord(i) if i < n else floor.tail
            if c > p * (1 + 1e-9) + 1e-15 and c > 4 * f:
                return f"ratio increases at step {k}, coordinate {i}"
    return None


def _check_steps(eval_at: Callable, c: ComplexElement, fc: ComplexElement,
                 fpc: ComplexElement, r: RealElement, depth: int, tol: float,
                 directions, extra_floor: float = 0.0):
    """Shared quotient loop; returns (ratios, floors, final_residual)."""
    rc = r.as_complex()
    inv_model_unit = unit(r.model)
    ratios = []
    floors = []
    final_residual = None
    fpc_abs = fpc.modulus()
    fc_abs = fc.modulus()
    for k in range(depth):
        scale = 2.0 ** (-k)
        habs = scale * r
        habs_inv = inverse(habs)
        worst_ratio = None
        worst_scale = fc_abs
        worst_residual = None
        for lam in directions:
            h = rc.scale(lam * scale)
            fz = eval_at(c + h)
            residual = (fz - fc - h * fpc).modulus()
            ratio = residual * habs_inv
            worst_ratio = ratio if worst_ratio is None else worst_ratio.sup(ratio)
            worst_scale = worst_scale.sup(fz.modulus())
            worst_residual = (residual if worst_residual is None
                              else worst_residual.sup(residual))
        scale_el = worst_scale + habs * fpc_abs
        floor = (64 * EPS) * scale_el + extra_floor * inv_model_unit
        floors.append(floor * habs_inv)
        ratios.append(worst_ratio)
        final_residual = worst_residual
    return ratios, floors, final_residual


def _residual_over(residual: RealElement, tol: float) -> Optional[int]:
    n = len(residual.prefix)
    for i in range(n):
        if residual.prefix[i] > tol:
            return i
    if not residual.model.is_finite and residual.tail > tol:
        return n
    return None


def difference_quotient_check(f: Expr, c: ComplexElement, r: RealElement,
                              depth: int = 20, tol: float = 1e-8,
                              directions: Iterable[complex] = DIRECTIONS
                              ) -> DerivativeCheckReport:
    """Check the symbolic derivative of f at c through shrinking quotients.

    Steps h_k = direction * r / 2^k for each direction; the point and every
    c + h_k must lie in dom(f).  PASS requires the worst-direction ratios
    |f(c+h_k) - f(c) - h_k f'(c)| / |h_k| to be coordinatewise nonincreasing
    after the first two steps (up to the floating noise floor) and the final
    residual to be below tol.
    """
    if depth < 3:
        raise ValueError("depth must be at least 3")
    directions = tuple(directions)
    fprime = symbolic_derivative(f)
    fc = evaluate(f, c)
    fpc = evaluate(fprime, c)
    ratios, floors, final_residual = _check_steps(
        lambda z: evaluate(f, z), c, fc, fpc, r, depth, tol, directions)
    failure = _monotone_failure(ratios, floors)
    if failure is None:
        bad = _residual_over(final_residual, tol)
        if bad is not None:
            failure = (f"final residual {final_residual.coord(bad):.3e} above "
                       f"tolerance at coordinate {bad}")
    verdict = "PASS" if failure is None else "FAIL"
    return DerivativeCheckReport(c, r, tuple(ratios), final_residual, verdict, failure)


# ---------------------------------------------------------------------------
# power series evaluation and termwise differentiation

def _eval_column_log(series: CoordinateSeries, w: complex, cutoff: int) -> complex:
    """Log-space evaluation of one coordinate, for out-of-range magnitudes."""
    n = np.arange(cutoff + 1)
    if w == 0:
        return complex(series.term(0))
    lt = _log_terms_at_radius(series, n, abs(w))
    sg = series.sign_terms(n)
    phase = np.exp(1j * np.angle(w) * n)
    with np.errstate(over="ignore"):
        vals = sg * np.exp(lt) * phase
    return complex(vals.sum())


def evaluate_series(fam: CoefficientFamily, c: ComplexElement, z: ComplexElement,
                    tail_tolerance: float = 1e-13,
                    max_terms: int = DEFAULT_MAX_TERMS):
    """Truncated series value at z with the truncation tail below tolerance.

    Requires limsup |a_n|^(1/n) * |z - c| < 1 on every coordinate; raises
    OutsideOpenDiskError otherwise.  Returns (value, cutoff).
    """
    if c.model != fam.model or z.model != fam.model:
        raise ModelMismatchError("series, center, and point models differ")
    w = [(z.coord(i) - c.coord(i)) for i in range(fam.model.size)]
    cutoffs = []
    for k, series in enumerate(fam.coordinates):
        q = series.root_limsup_value() * abs(w[k]) if abs(w[k]) else 0.0
        if not q < 1:
            raise OutsideOpenDiskError(k)
        tail = coordinate_tail(series, abs(w[k]), tail_tolerance, max_terms)
        if not tail.verified:
            raise OrderCalcError(
                f"tail bound not reached within {max_terms} terms at coordinate {k}")
        cutoffs.append(tail.cutoff)
    terms = max(cutoffs) + 1
    matrix = fam.coefficient_matrix(terms)
    for k, cut in enumerate(cutoffs):
        matrix[cut + 1:, k] = 0.0
    if np.isfinite(matrix).all():
        vals = _kernels.series_eval(matrix.astype(np.complex128),
                                    np.array(w, dtype=np.complex128))
        vals = [complex(v) for v in vals]
    else:
        vals = [_eval_column_log(series, w[k], cutoffs[k])
                for k, series in enumerate(fam.coordinates)]
    return ComplexElement(fam.model, tuple(vals), None), terms - 1


def series_derivative(fam: CoefficientFamily,
                      c: ComplexElement | None = None) -> CoefficientFamily:
    """Termwise derivative b_n = (n+1) a_{n+1}; the radius report is unchanged.

    The center is accepted for interface symmetry and only model-checked.
    """
    if c is not None and c.model != fam.model:
        raise ModelMismatchError("center and family models differ")
    return fam.derivative()


def abs_series_sum(series: CoordinateSeries, r: float, tol: float = 1e-12,
                   max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Upper bound for sum_n |a_n| r^n, within tol of the true value."""
    tail = coordinate_tail(series, r, tol, max_terms)
    if not tail.verified:
        raise OrderCalcError("absolute series sum did not stabilize")
    n = np.arange(tail.cutoff + 1)
    with np.errstate(over="ignore"):
        partial = float(np.exp(_log_terms_at_radius(series, n, r)).sum())
    return partial + tail.bound


@dataclass(frozen=True)
class SeriesDerivativeReport:
    point: ComplexElement
    f_value: ComplexElement
    derivative_value: ComplexElement
    residual_ratios: tuple
    final_residual: RealElement
    quadratic_bound: RealElement
    verdict: str
    failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


def series_derivative_check(fam: CoefficientFamily, c: ComplexElement,
                            z0: ComplexElement, depth: int = 20,
                            tol: float = 1e-8,
                            eval_tolerance: float = 1e-13) -> SeriesDerivativeReport:
    """Difference-quotient check of the termwise derivative at z0.

    z0 must be strictly inside the open disk of the radius report.  The
    quadratic majorant sum_k |a_k| k(k-1) r^{k-2} is verified to converge at
    the working radius (the twice-differentiated family at that radius),
    which is what bounds the quotient residuals.
    """
    report = cauchy_hadamard(fam)
    rho = report.rho.coords
    d = (z0 - c).modulus()
    step = []
    for k, rho_k in enumerate(rho):
        dk = d.coord(k)
        if math.isinf(rho_k):
            step.append(max(1.0, dk))
        elif not dk < rho_k:
            raise OutsideOpenDiskError(k)
        else:
            step.append(0.5 * (rho_k - dk))
    r_step = RealElement(fam.model, tuple(step), None)
    r_path = d + r_step
    g = fam.derivative()
    g2 = g.derivative()
    quad_verdict = spectrum_membership(g2, c, r_path)
    if quad_verdict.membership != "IN" or not quad_verdict.tail_verified:
        raise OrderCalcError("quadratic coefficient bound does not converge "
                             "at the working radius")
    quad_bound = RealElement(fam.model, tuple(
        abs_series_sum(series, r_path.coord(k))
        for k, series in enumerate(g2.coordinates)), None)

    fc, _ = evaluate_series(fam, c, z0, eval_tolerance)
    gz, _ = evaluate_series(g, c, z0, eval_tolerance)
    ratios, floors, final_residual = _check_steps(
        lambda z: evaluate_series(fam, c, z, eval_tolerance)[0],
        z0, fc, gz, r_step, depth, tol, DIRECTIONS, extra_floor=4 * eval_tolerance)
    failure = _monotone_failure(ratios, floors)
    if failure is None:
        bad = _residual_over(final_residual, tol)
        if bad is not None:
            failure = (f"final residual {final_residual.coord(bad):.3e} above "
                       f"tolerance at coordinate {bad}")
    verdict = "PASS" if failure is None else "FAIL"
    return SeriesDerivativeReport(z0, fc, gz, tuple(ratios), final_residual,
                                  quad_bound, verdict, failure)


# ---------------------------------------------------------------------------
# holomorphy sampling

@dataclass(frozen=True)
class SampleOutcome:
    point: ComplexElement
    verdict: str
    failure: Optional[str]


@dataclass(frozen=True)
class HolomorphyReport:
    subject: str
    region: OrderDisk
    seed: int
    samples: tuple
    verdict: str

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"


# span used for sampling along coordinates whose radius is infinite
_INF_SPAN = 10.0


def holomorphy_report(subject: Union[Expr, CoefficientFamily], region: OrderDisk,
                      sample_count: int = 25, depth: int = 20, tol: float = 1e-8,
                      seed: int = 0) -> HolomorphyReport:
    """Derivative checks at seeded pseudo-random points of an open disk.

    For an expression the region must sit inside its domain (domain errors
    propagate).  For a coefficient family the region's center must be the
    series center and the samples run the termwise-derivative check.
    """
    if not region.is_open:
        raise ValueError("holomorphy sampling needs an open region")
    center = region.center
    if not center.model.is_finite:
        raise ModelMismatchError("sampling is defined for the finite model")
    is_series = isinstance(subject, CoefficientFamily)
    if is_series and subject.model != center.model:
        raise ModelMismatchError("family and region models differ")
    radius = region.radius
    if isinstance(radius, RealElement):
        spans = [radius.coord(i) for i in range(center.model.size)]
    else:
        spans = [(_INF_SPAN if math.isinf(v) else v) for v in radius.coords]
    rng = np.random.default_rng(seed)
    outcomes = []
    all_pass = True
    for _ in range(sample_count):
        mags = rng.uniform(0.0, 0.85, len(spans))
        args = rng.uniform(0.0, 2.0 * math.pi, len(spans))
        w = [m * s * complex(math.cos(a), math.sin(a))
             for m, s, a in zip(mags, spans, args)]
        z = center + ComplexElement(center.model, tuple(w), None)
        local = RealElement(center.model,
                            tuple(0.5 * (s - abs(wk)) for s, wk in zip(spans, w)),
                            None)
        if is_series:
            rep = series_derivative_check(subject, center, z, depth, tol)
        else:
            rep = difference_quotient_check(subject, z, local, depth, tol)
        outcomes.append(SampleOutcome(z, rep.verdict, rep.failure))
        all_pass = all_pass and rep.passed
    name = "series" if is_series else to_text(subject)
    return HolomorphyReport(name, region, seed, tuple(outcomes),
                            "PASS" if all_pass else "FAIL")


# ---------------------------------------------------------------------------
# super-differentiability witness checks

@dataclass(frozen=True)
class SupportViolation:
    witness_index: int
    coordinate: int
    residual_value: float


@dataclass(frozen=True)
class SuperCheckReport:
    verdict: str  # "REFUTED" | "CONSISTENT"
    violations: tuple
    max_support_ratio: float


def super_order_check(f: Union[Expr, Callable], c: ComplexElement,
                      derivative_value: ComplexElement,
                      witnesses: Iterable[ComplexElement]) -> SuperCheckReport:
    """Test a derivative claim against witness steps of arbitrary support.

    Super order differentiability requires |f(c+h) - f(c) - h d| <= |h| q
    with one regulator for every step sequence.  Whenever a residual is
    nonzero at a coordinate where |h| vanishes, no positive regulator can
    absorb it (|h| q also vanishes there), so the claim is refuted exactly.
    """
    fn = (lambda z: evaluate(f, z)) if isinstance(f, Expr) else f
    fc = fn(c)
    violations = []
    max_ratio = 0.0
    for idx, h in enumerate(witnesses):
        residual = (fn(c + h) - fc - h * derivative_value).modulus()
        habs = h.modulus()
        n = residual._span(habs)
        pairs = [(i, residual.coord(i), habs.coord(i)) for i in range(n)]
        if not residual.model.is_finite:
            pairs.append((n, residual.tail, habs.tail))
        for i, rv, hv in pairs:
            if hv == 0:
                if rv > 0:
                    violations.append(SupportViolation(idx, i, rv))
                    break
            elif rv / hv > max_ratio:
                max_ratio = rv / hv
    verdict = "REFUTED" if violations else "CONSISTENT"
    return SuperCheckReport(verdict, tuple(violations), max_ratio)
