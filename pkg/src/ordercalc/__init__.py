"""Coordinatewise complex calculus with order-based error control.

The package works over two concrete coordinate models: C^n and the
eventually constant complex sequences.  Moduli, bands, and disks live in
``lattice``; the [0, inf] extension with its three-part split in
``supcompletion``; radius-of-convergence reports and convergence
certificates in ``convergence``; derivative checks, series evaluation, and
holomorphy sampling in ``calculus``.  ``counterexamples`` reproduces the
boundary phenomena that separate this setting from the scalar one.
"""

from ._kernels import BACKEND
from .lattice import (
    Band,
    ComplexElement,
    InvalidRadiusError,
    Model,
    ModelMismatchError,
    NegativeInputError,
    NotInvertibleError,
    OrderCalcError,
    OrderDisk,
    RealElement,
    disk_membership,
    inverse,
    is_invertible,
    modulus_closed,
    modulus_square_mean,
    nth_root,
    phi_mul,
    pseudo_inverse,
    strictly_dominates,
    unit,
    zero,
    zero_coordinate,
)
from .supcompletion import (
    ExtendedPositive,
    ThreePartDecomposition,
    band_projection_from,
    ext_mul,
    extend_projection,
    finite_part,
    generalized_inverse,
    infinite_part,
    project_positive,
    three_part_decompose,
)
from .convergence import (
    CoefficientFamily,
    ConvergenceCertificate,
    CoordinateSeries,
    RadiusReport,
    SpectrumVerdict,
    cauchy_hadamard,
    coordinate_tail,
    limsup_bounded,
    root_limsup,
    spectrum_membership,
    verify_certificate,
)
from .calculus import (
    Const,
    Expr,
    Inv,
    ONE,
    OutsideDomainError,
    OutsideOpenDiskError,
    VAR,
    difference_quotient_check,
    evaluate,
    evaluate_series,
    holomorphy_report,
    series_derivative,
    series_derivative_check,
    super_order_check,
    symbolic_derivative,
    to_text,
)
from .parsing import (
    ParseError,
    format_complex_element,
    format_complex_scalar,
    format_extended,
    format_real,
    parse_complex_element,
    parse_complex_scalar,
    parse_expression,
    parse_extended_element,
    parse_family,
    parse_real_element,
)
from .counterexamples import REGISTRY as COUNTEREXAMPLES, run_all

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Band",
    "CoefficientFamily",
    "ComplexElement",
    "Const",
    "ConvergenceCertificate",
    "CoordinateSeries",
    "COUNTEREXAMPLES",
    "difference_quotient_check",
    "disk_membership",
    "evaluate",
    "evaluate_series",
    "Expr",
    "ExtendedPositive",
    "ext_mul",
    "extend_projection",
    "band_projection_from",
    "cauchy_hadamard",
    "coordinate_tail",
    "finite_part",
    "format_complex_element",
    "format_complex_scalar",
    "format_extended",
    "format_real",
    "generalized_inverse",
    "holomorphy_report",
    "infinite_part",
    "InvalidRadiusError",
    "Inv",
    "inverse",
    "is_invertible",
    "limsup_bounded",
    "Model",
    "ModelMismatchError",
    "modulus_closed",
    "modulus_square_mean",
    "NegativeInputError",
    "NotInvertibleError",
    "nth_root",
    "ONE",
    "OrderCalcError",
    "OrderDisk",
    "OutsideDomainError",
    "OutsideOpenDiskError",
    "ParseError",
    "parse_complex_element",
    "parse_complex_scalar",
    "parse_expression",
    "parse_extended_element",
    "parse_family",
    "parse_real_element",
    "phi_mul",
    "project_positive",
    "pseudo_inverse",
    "RadiusReport",
    "RealElement",
    "root_limsup",
    "run_all",
    "series_derivative",
    "series_derivative_check",
    "SpectrumVerdict",
    "spectrum_membership",
    "strictly_dominates",
    "super_order_check",
    "symbolic_derivative",
    "ThreePartDecomposition",
    "three_part_decompose",
    "to_text",
    "unit",
    "VAR",
    "verify_certificate",
    "zero",
    "zero_coordinate",
]
