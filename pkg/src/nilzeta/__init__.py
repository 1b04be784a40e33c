"""nilzeta: exact operator calculus and spectral-zeta pole analysis.

The package computes, for a two-parameter family of nilpotent Lie algebras:

* exact structure constants, nilpotency data, and the isotropic radical;
* ordered-monomial (PBW-style) arithmetic in the enveloping algebra with an
  exact representation onto polynomial differential operators;
* the kernel ideal of that representation: generators, degree slices,
  canonical forms, and filtration orders, all in exact Gaussian-rational
  arithmetic;
* reduction operators with exact rational eigen-relations, degreewise
  annihilation/descent products, Taylor-style commutation coefficients, the
  continuation-driving rational polynomial, and the resulting candidate pole
  lattice of the spectral zeta function;
* numeric verification: Hermite-basis Galerkin spectra with
  doubling-certified convergence, growth-law fits of the convergence
  abscissa, residues via an independent Hurwitz-zeta oracle, and truncated
  zeta values with explicit tail bounds.
"""

from .core import (
    AlgebraSpec,
    JacobiError,
    SpecError,
    algebra_spec,
    basis,
    bracket,
    index_set,
    isotropic_subalgebra,
    jacobi_check,
    load_spec,
    nilpotency_class,
    structure_constants,
    validate_spec,
)
from .expr import ExpressionError, format_element, parse_expression
from .ideal import (
    DegreeSlice,
    build_slice,
    canonical_form,
    filtration_min_degree,
    gamma_generators,
    generators,
    is_member,
    star_generators,
)
from .reduction import (
    PoleEntry,
    PoleLattice,
    RationalPolynomial,
    ReductionChoice,
    b_polynomial,
    g_ab,
    g_s,
    h_ab,
    h_s,
    lagrange_identity_check,
    physical_abscissa,
    pole_lattice,
    reduction_data,
    t_s,
    taylor_coeffs,
    taylor_residual,
)
from .scalars import RATIONAL_BACKEND, GaussianRational
from .spectral import (
    SpectralEstimate,
    abscissa_and_residue,
    eigenvalues,
    hermite_matrix,
    hurwitz_zeta,
    zeta_value,
)
from .uea import (
    Monomial,
    UEAElement,
    commutator,
    gamma_apply,
    monomial_compare,
    normal_product,
    y_star,
)
from .weyl import (
    WeylOperator,
    ad_power,
    commutator_power_check,
    delta1,
    rho,
    weyl_product,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "DegreeSlice",
    "ExpressionError",
    "GaussianRational",
    "JacobiError",
    "Monomial",
    "PoleEntry",
    "PoleLattice",
    "RATIONAL_BACKEND",
    "RationalPolynomial",
    "ReductionChoice",
    "SpecError",
    "SpectralEstimate",
    "UEAElement",
    "WeylOperator",
    "abscissa_and_residue",
    "ad_power",
    "algebra_spec",
    "b_polynomial",
    "basis",
    "bracket",
    "build_slice",
    "canonical_form",
    "commutator",
    "commutator_power_check",
    "delta1",
    "eigenvalues",
    "filtration_min_degree",
    "format_element",
    "g_ab",
    "g_s",
    "gamma_apply",
    "gamma_generators",
    "generators",
    "h_ab",
    "h_s",
    "hermite_matrix",
    "hurwitz_zeta",
    "index_set",
    "is_member",
    "isotropic_subalgebra",
    "jacobi_check",
    "lagrange_identity_check",
    "load_spec",
    "monomial_compare",
    "nilpotency_class",
    "normal_product",
    "parse_expression",
    "physical_abscissa",
    "pole_lattice",
    "reduction_data",
    "rho",
    "star_generators",
    "structure_constants",
    "t_s",
    "taylor_coeffs",
    "taylor_residual",
    "validate_spec",
    "weyl_product",
    "y_star",
    "zeta_value",
]
