"""The two-sided kernel ideal of the representation and its degree slices.

Membership in the ideal is decidable exactly: an element lies in the ideal
iff its image under :func:`~nilzeta.weyl.rho` is the zero operator.  The
degree-slice machinery classifies ordered monomials by a single ascending
sweep: each monomial's image is reduced against the images of the smaller
monomials already processed; a vanishing residual marks a *dependent*
monomial (its coset has a representative on earlier monomials), a surviving
residual contributes a new pivot and marks an *independent* monomial.

The classification yields, per degree,

* the dependent monomials ``T`` and independent monomials ``O``,
* a triangular basis of the ideal's slice (one element per dependent
  monomial, with unit leading coefficient and reduced tail),
* the canonical-form map sending any element to its unique representative
  supported on independent monomials.

Two distinguished generator families are provided; their images vanish
identically, which the verification suite checks exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .core import AlgebraSpec, index_set
from .indices import MultiIndex, mi_abs, mi_factorial
from .linalg import reduce_against, vec_add_scaled, vec_scale
from .scalars import ONE, ZERO, i_power
from .uea import (
    Monomial,
    UEAElement,
    gamma_apply,
    monomial_degree,
    monomial_key,
    pure_y,
    slice_monomials,
    y_star,
)
from .weyl import WeylOperator, rho, weyl_key

DEFAULT_SLICE_CAP = 6


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def star_generator(spec: AlgebraSpec, beta: MultiIndex) -> UEAElement:
    """The element Y_*^beta - beta! * Y^beta.

    Degenerate cases: beta a unit index gives the zero element; beta = 0
    gives i - Y^0.
    """
    return y_star(spec, beta) - pure_y(spec, beta).scale(mi_factorial(beta))


def star_generators(spec: AlgebraSpec) -> list[UEAElement]:
    """One star generator per index-set element, ascending lex."""
    return [star_generator(spec, beta) for beta in index_set(spec)]


def gamma_generators(spec: AlgebraSpec) -> list[UEAElement]:
    """The corrected-generator family: Y^0 - i, then gamma_apply for |beta| >= 2."""
    zero_mi = (0,) * spec.n
    first = pure_y(spec, zero_mi) - UEAElement.one(spec).scale(i_power(1))
    rest = [
        gamma_apply(spec, beta) for beta in index_set(spec) if mi_abs(beta) >= 2
    ]
    return [first] + rest


def generators(spec: AlgebraSpec) -> tuple[list[UEAElement], list[UEAElement]]:
    """Both generator families (star family, gamma family)."""
    return star_generators(spec), gamma_generators(spec)


def is_member(spec: AlgebraSpec, u: UEAElement) -> bool:
    """Exact ideal membership: the representation image vanishes."""
    return rho(spec, u).is_zero()


# ---------------------------------------------------------------------------
# Degree slices
# ---------------------------------------------------------------------------


class _PivotRow(NamedTuple):
    row: dict  # normalized image, unit coefficient at its leading key
    preimage: dict  # Monomial -> GaussianRational with rho(preimage) == row
    odeg: int  # degree of the monomial that created the pivot


class _SliceState:
    """Incremental sweep state for one algebra (cached module-wide)."""

    def __init__(self, spec: AlgebraSpec) -> None:
        self.spec = spec
        self.processed_degree = -1
        self.pivots: dict = {}
        self.canonical: dict = {}  # dependent Monomial -> dict[Monomial, GR]
        self.t_by_degree: dict = {}
        self.o_by_degree: dict = {}

    def advance(self, degree: int) -> None:
        spec = self.spec
        while self.processed_degree < degree:
            d = self.processed_degree + 1
            t_list: list[Monomial] = []
            o_list: list[Monomial] = []
            for mono in slice_monomials(spec, d):
                image = rho(spec, UEAElement.monomial(spec, mono))
                residual, used = reduce_against(image.terms, self._rows(), weyl_key)
                combo: dict = {}
                for lead_key, coeff in used.items():
                    vec_add_scaled(combo, self.pivots[lead_key].preimage, coeff)
                if not residual:
                    self.canonical[mono] = combo
                    t_list.append(mono)
                else:
                    lead = max(residual, key=weyl_key)
                    c = residual[lead]
                    inv = c.inverse()
                    row = vec_scale(residual, inv)
                    pre = {mono: ONE}
                    vec_add_scaled(pre, combo, -ONE)
                    pre = vec_scale(pre, inv)
                    self.pivots[lead] = _PivotRow(row, pre, d)
                    o_list.append(mono)
            self.t_by_degree[d] = tuple(t_list)
            self.o_by_degree[d] = tuple(o_list)
            self.processed_degree = d

    def _rows(self) -> dict:
        return {k: p.row for k, p in self.pivots.items()}

    def rows_up_to(self, odeg: int) -> dict:
        return {k: p.row for k, p in self.pivots.items() if p.odeg <= odeg}


_STATES: dict = {}


def _state(spec: AlgebraSpec) -> _SliceState:
    st = _STATES.get(spec)
    if st is None:
        st = _SliceState(spec)
        _STATES[spec] = st
    return st


@dataclass(frozen=True)
class DegreeSlice:
    """Classification of the exact-degree-d monomials of one algebra.

    ``dependent`` monomials admit smaller-monomial representatives modulo the
    ideal; ``independent`` monomials are a basis of the image slice.
    ``kernel`` is a triangular basis of the ideal's degree-d slice: one
    element per dependent monomial, unit leading coefficient, tail supported
    on independent monomials.
    """

    spec: AlgebraSpec
    degree: int
    monomials: tuple
    dependent: tuple
    independent: tuple
    kernel: tuple

    @property
    def dimension(self) -> int:
        """Dimension of the ideal's slice at this degree."""
        return len(self.dependent)


def build_slice(spec: AlgebraSpec, degree: int) -> DegreeSlice:
    """Classify the degree-d monomials (results cached incrementally)."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    st = _state(spec)
    st.advance(degree)
    monos = tuple(slice_monomials(spec, degree))
    t = st.t_by_degree[degree]
    o = st.o_by_degree[degree]
    kernel = tuple(
        UEAElement(spec, {m: ONE}) - UEAElement(spec, st.canonical[m]) for m in t
    )
    return DegreeSlice(spec, degree, monos, t, o, kernel)


def canonical_form(spec: AlgebraSpec, u: UEAElement) -> UEAElement:
    """The unique representative of u's coset supported on independent monomials.

    Exact projection along the ideal; idempotent, and the zero element is
    returned exactly when u lies in the ideal.
    """
    if u.is_zero():
        return u
    st = _state(spec)
    st.advance(u.degree())
    out: dict = {}
    for mono, coeff in u.terms.items():
        rep = st.canonical.get(mono)
        if rep is None:
            new = out.get(mono, ZERO) + coeff
            if new.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = new
        else:
            vec_add_scaled(out, rep, coeff)
    return UEAElement(spec, out)


def dependent_monomials(spec: AlgebraSpec, degree: int) -> tuple:
    return build_slice(spec, degree).dependent


def independent_monomials(spec: AlgebraSpec, degree: int) -> tuple:
    return build_slice(spec, degree).independent


def filtration_min_degree(
    spec: AlgebraSpec, w: WeylOperator, cap: int = DEFAULT_SLICE_CAP
) -> int | None:
    """Least q with w in the image of the degree-<=q filtration level, or None.

    The pivot rows created by monomials of degree <= q span exactly the image
    of the span of those monomials, so membership at level q is a reduction
    against the odeg-filtered pivot set.  ``None`` means "not attained by
    degree cap"; raise ``cap`` to search further.
    """
    if w.is_zero():
        return 0
    st = _state(spec)
    st.advance(cap)
    for q in range(cap + 1):
        residual, _ = reduce_against(w.terms, st.rows_up_to(q), weyl_key)
        if not residual:
            return q
    return None


def kernel_slice_dimension(spec: AlgebraSpec, degree: int) -> int:
    return build_slice(spec, degree).dimension


# ---------------------------------------------------------------------------
# Spans generated by explicit generator sets (used by the verification suite)
# ---------------------------------------------------------------------------


def generated_span_leading(
    spec: AlgebraSpec,
    gens: Sequence[UEAElement],
    degree: int,
    margin: int | None = None,
) -> tuple[int, frozenset]:
    """Dimension and leading-monomial set of the generated ideal's degree cut.

    Spans all products m1 * g * m2 (ordered monomials m1, m2; g in ``gens``)
    of total degree <= degree + margin, row-reduces them in the graded order,
    and keeps the triangular rows whose leading monomial has degree <= degree:
    for a graded order those rows are exactly a basis of the intersection
    of the span with U_degree.
    The margin matters: a generator's top-degree part may cancel in a
    combination, leaving an element of lower degree than any single product
    (the correction-operator generators carry a Y^0 factor one degree above
    the star generators they recombine into, iterated along a block); the
    default margin max(2, max(alpha)) is sufficient for both families.
    Returns (dimension, frozenset of leading monomials of the kept rows).
    """
    from .uea import monomials_up_to

    budget = degree + (max(2, max(spec.alpha)) if margin is None else margin)
    pivots: dict = {}
    for g in gens:
        if g.is_zero():
            continue
        gdeg = g.degree()
        if gdeg > budget:
            continue
        room = budget - gdeg
        for m1 in monomials_up_to(spec, room):
            d1 = monomial_degree(m1)
            lhs = UEAElement.monomial(spec, m1) * g
            for m2 in monomials_up_to(spec, room - d1):
                prod = lhs * UEAElement.monomial(spec, m2)
                if prod.is_zero():
                    continue
                residual, _ = reduce_against(prod.terms, pivots, monomial_key)
                if residual:
                    lead = max(residual, key=monomial_key)
                    pivots[lead] = vec_scale(residual, residual[lead].inverse())
    kept = frozenset(m for m in pivots if monomial_degree(m) <= degree)
    return len(kept), kept


def leading_monomial_divides(m1: Monomial, m2: Monomial) -> bool:
    """Componentwise divisibility of ordered monomials (x and y exponents)."""
    return all(a <= b for a, b in zip(m1.x, m2.x)) and all(
        a <= b for a, b in zip(m1.y, m2.y)
    )
