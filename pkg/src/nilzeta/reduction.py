"""Reduction operators, Taylor-style commutation coefficients, and the pole lattice.

Three layers live here.

1.  First-order reduction operators on the enveloping algebra, built from the
    rescaled partners ``Yhat^{delta_k} = -i Y^{delta_k}`` (whose images pair
    canonically with the images of the ``X_k``: ``[p_k, q_k] = 1``):

        g_ab(T) = sum_k a_k X_k [T, Yhat_k] + b_k [X_k, T] Yhat_k
        h_ab(T) = sum_k a_k [X_k T, Yhat_k] + b_k [X_k, T Yhat_k]

    For an independent ordered monomial T of degree s there is a constructive
    choice of one generator position per partition block and a weight vector
    b such that g with all-ones a satisfies an eigen-relation modulo the
    kernel ideal; h differs from g by (|a| + |b|) times the identity.

2.  Degree-indexed annihilation/descent products ``h_s`` (enveloping side)
    and ``t_s`` (operator side): products of first-order factors, one per
    choice of block positions and per-block orders, each shifted by an exact
    rational constant.  ``h_s`` kills every degree-s monomial modulo the
    kernel ideal; ``t_s`` lowers the image filtration degree.

3.  The exact rational polynomial ``b_polynomial`` whose roots drive the
    meromorphic continuation, the resulting half-integer pole lattice, and
    the finite interpolation identity used to recombine shifted values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iter_product
from typing import Sequence, Union

from .core import AlgebraSpec, block_box, y_position
from .indices import mi_delta
from .scalars import (
    ONE,
    GaussianRational,
    Rat,
    RationalLike,
    ScalarLike,
    as_rational,
    format_rational,
    rat_ceil,
)
from .uea import Monomial, UEAElement, commutator, monomial_degree, pure_y
from .weyl import WeylOperator, ad_power, p_op, q_op, weyl_commutator, weyl_product


class ReductionChoiceError(ValueError):
    """Raised when no valid block position exists for the eigen-relation."""


# ---------------------------------------------------------------------------
# First-order operators on the enveloping algebra
# ---------------------------------------------------------------------------


def hat_y(spec: AlgebraSpec, k: int) -> UEAElement:
    """The rescaled degree-one partner -i * Y^{delta_k}."""
    return pure_y(spec, mi_delta(spec.n, k)).scale(GaussianRational(0, -1))


def _coerce_vector(spec: AlgebraSpec, v: Sequence[ScalarLike]) -> list[GaussianRational]:
    if len(v) != spec.n:
        raise ValueError(f"weight vector must have length {spec.n}")
    return [GaussianRational.coerce(c) for c in v]


def g_ab(
    spec: AlgebraSpec, a: Sequence[ScalarLike], b: Sequence[ScalarLike], t: UEAElement
) -> UEAElement:
    """sum_k a_k X_k [t, Yhat_k] + b_k [X_k, t] Yhat_k."""
    av, bv = _coerce_vector(spec, a), _coerce_vector(spec, b)
    out = UEAElement.zero(spec)
    for k in range(spec.n):
        yh = hat_y(spec, k)
        xk = UEAElement.x_gen(spec, k)
        if not av[k].is_zero():
            out = out + (xk * commutator(t, yh)).scale(av[k])
        if not bv[k].is_zero():
            out = out + (commutator(xk, t) * yh).scale(bv[k])
    return out


def h_ab(
    spec: AlgebraSpec, a: Sequence[ScalarLike], b: Sequence[ScalarLike], t: UEAElement
) -> UEAElement:
    """sum_k a_k [X_k t, Yhat_k] + b_k [X_k, t Yhat_k]."""
    av, bv = _coerce_vector(spec, a), _coerce_vector(spec, b)
    out = UEAElement.zero(spec)
    for k in range(spec.n):
        yh = hat_y(spec, k)
        xk = UEAElement.x_gen(spec, k)
        if not av[k].is_zero():
            out = out + commutator(xk * t, yh).scale(av[k])
        if not bv[k].is_zero():
            out = out + commutator(xk, t * yh).scale(bv[k])
    return out


# ---------------------------------------------------------------------------
# Constructive eigen-relation data for independent monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionChoice:
    """Per-block data realizing the eigen-relation for one monomial.

    ``i_tuple`` holds one 0-based generator position per block; ``r_tuple``
    the per-block order; ``a``/``b`` the weight vectors (a is all ones);
    ``eigenvalue`` the exact rational constant c with
    ``g_ab(a, b, T) == c * T`` modulo the kernel ideal.
    """

    i_tuple: tuple[int, ...]
    r_tuple: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple
    eigenvalue: object  # backend rational


def reduction_data(spec: AlgebraSpec, mono: Monomial) -> ReductionChoice:
    """Choose block positions and orders for an ordered monomial.

    Per block: if the monomial involves that block's Y's, take the lex-least
    involved index beta and the least position with beta positive for which
    the exact block identity

        sum_{beta' in block} q_{beta'} beta'_i == alpha_i (Q_block - 1) + beta_i

    holds (Q_block = total Y count on the block); otherwise (no Y's from the
    block) take the block's least position with the full order alpha.
    """
    pos_of = y_position(spec)
    i_list: list[int] = []
    r_list: list[int] = []
    for j, block in enumerate(spec.partition):
        bbox = block_box(spec, j)
        zero_mi = (0,) * spec.n
        involved = [
            beta
            for beta in bbox
            if beta != zero_mi and mono.y[pos_of[beta]] > 0
        ]
        if not involved:
            i_list.append(block[0])
            r_list.append(spec.alpha[block[0]])
            continue
        beta = min(involved)
        q_total = sum(mono.y[pos_of[b]] for b in bbox if b != zero_mi)
        chosen = None
        for i in block:
            if beta[i] == 0:
                continue
            weighted = sum(mono.y[pos_of[b]] * b[i] for b in bbox if b != zero_mi)
            if weighted == spec.alpha[i] * (q_total - 1) + beta[i]:
                chosen = i
                break
        if chosen is None:
            raise ReductionChoiceError(
                f"no block position validates the eigen-relation for {mono} "
                f"on block {tuple(k + 1 for k in block)}"
            )
        i_list.append(chosen)
        r_list.append(beta[chosen])
    b_vec = [Rat(0)] * spec.n
    for i in i_list:
        b_vec[i] = b_vec[i] + Rat(1) / Rat(spec.alpha[i])
    s = monomial_degree(mono)
    eig = Rat(s)
    for i, r in zip(i_list, r_list):
        eig = eig + Rat(r) / Rat(spec.alpha[i]) - 1
    return ReductionChoice(
        tuple(i_list), tuple(r_list), (1,) * spec.n, tuple(b_vec), eig
    )


# ---------------------------------------------------------------------------
# Annihilation / descent products
# ---------------------------------------------------------------------------


def reduction_factors(spec: AlgebraSpec) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (i-tuple, r-tuple) factor labels in lexicographic order.

    i-tuples run over the product of the partition blocks (one position per
    block); r-tuples over the per-position order ranges 1..alpha_i.
    """
    out = []
    for i_tuple in iter_product(*spec.partition):
        for r_tuple in iter_product(*(range(1, spec.alpha[i] + 1) for i in i_tuple)):
            out.append((i_tuple, r_tuple))
    return out


def _factor_b_vector(spec: AlgebraSpec, i_tuple: tuple[int, ...]) -> list:
    b_vec = [Rat(0)] * spec.n
    for i in i_tuple:
        b_vec[i] = b_vec[i] + Rat(1) / Rat(spec.alpha[i])
    return b_vec


def _h_constant(spec: AlgebraSpec, s: int, i_tuple, r_tuple) -> "Rat":
    c = Rat(s + spec.n - spec.p)
    for i, r in zip(i_tuple, r_tuple):
        c = c + Rat(r + 1) / Rat(spec.alpha[i])
    return c


def _g_constant(spec: AlgebraSpec, s: int, i_tuple, r_tuple) -> "Rat":
    c = Rat(s - spec.p)
    for i, r in zip(i_tuple, r_tuple):
        c = c + Rat(r) / Rat(spec.alpha[i])
    return c


def h_s(spec: AlgebraSpec, s: int, u: UEAElement) -> UEAElement:
    """Product of shifted h-factors at degree s (first factor applied first).

    Annihilates every degree-s monomial modulo the kernel ideal and maps the
    degree-<=s filtration level into (degree-<=(s-1) level) + ideal.
    """
    ones = (1,) * spec.n
    out = u
    for i_tuple, r_tuple in reduction_factors(spec):
        c = _h_constant(spec, s, i_tuple, r_tuple)
        out = h_ab(spec, ones, _factor_b_vector(spec, i_tuple), out) - out.scale(c)
    return out


def g_s(spec: AlgebraSpec, s: int, u: UEAElement) -> UEAElement:
    """Product of shifted g-factors at degree s (first factor applied first)."""
    ones = (1,) * spec.n
    out = u
    for i_tuple, r_tuple in reduction_factors(spec):
        c = _g_constant(spec, s, i_tuple, r_tuple)
        out = g_ab(spec, ones, _factor_b_vector(spec, i_tuple), out) - out.scale(c)
    return out


def _t_factor(
    spec: AlgebraSpec, a: Sequence[GaussianRational], b: Sequence[GaussianRational], w: WeylOperator
) -> WeylOperator:
    """Operator-side mirror of h_ab: sum_k a_k [P_k w, Q_k] + b_k [P_k, w Q_k]."""
    n = spec.n
    out = WeylOperator.zero(n)
    for k in range(n):
        pk, qk = p_op(n, k), q_op(n, k)
        if not a[k].is_zero():
            out = out + weyl_commutator(weyl_product(pk, w), qk).scale(a[k])
        if not b[k].is_zero():
            out = out + weyl_commutator(pk, weyl_product(w, qk)).scale(b[k])
    return out


def t_s(spec: AlgebraSpec, s: int, w: WeylOperator) -> WeylOperator:
    """Operator-side descent product; intertwines with h_s through the representation."""
    ones_gr = [ONE] * spec.n
    out = w
    for i_tuple, r_tuple in reduction_factors(spec):
        c = _h_constant(spec, s, i_tuple, r_tuple)
        b_vec = [GaussianRational(x) for x in _factor_b_vector(spec, i_tuple)]
        out = _t_factor(spec, ones_gr, b_vec, out) - out.scale(GaussianRational(c))
    return out


# ---------------------------------------------------------------------------
# Taylor-style commutation coefficients
# ---------------------------------------------------------------------------


def taylor_h_ab(
    n: int, a: Sequence[ScalarLike], b: Sequence[ScalarLike], w: WeylOperator
) -> WeylOperator:
    """sum_i a_i [-Q_i, P_i w] + b_i [P_i, Q_i w] (coefficient operators on the left)."""
    av = [GaussianRational.coerce(c) for c in a]
    bv = [GaussianRational.coerce(c) for c in b]
    out = WeylOperator.zero(n)
    for i in range(n):
        pi, qi = p_op(n, i), q_op(n, i)
        if not av[i].is_zero():
            out = out + weyl_commutator(-qi, weyl_product(pi, w)).scale(av[i])
        if not bv[i].is_zero():
            out = out + weyl_commutator(pi, weyl_product(qi, w)).scale(bv[i])
    return out


def taylor_a_op(
    n: int,
    a: Sequence[ScalarLike],
    b: Sequence[ScalarLike],
    delta: WeylOperator,
    k: int,
    x: WeylOperator,
) -> WeylOperator:
    """sum_i a_i P_i x ad^k(Q_i) - b_i Q_i x ad^k(P_i), with ad = [delta, .]."""
    av = [GaussianRational.coerce(c) for c in a]
    bv = [GaussianRational.coerce(c) for c in b]
    out = WeylOperator.zero(n)
    for i in range(n):
        pi, qi = p_op(n, i), q_op(n, i)
        if not av[i].is_zero():
            out = out + weyl_product(weyl_product(pi, x), ad_power(delta, qi, k)).scale(av[i])
        if not bv[i].is_zero():
            out = out - weyl_product(weyl_product(qi, x), ad_power(delta, pi, k)).scale(bv[i])
    return out


PairList = Sequence[tuple[Sequence[ScalarLike], Sequence[ScalarLike]]]


def taylor_coeffs(
    delta: WeylOperator, pairs: PairList, x: WeylOperator, k_max: int
) -> list[WeylOperator]:
    """Coefficients C_0..C_{k_max} of the iterated commutation expansion.

    ``pairs`` lists the (a, b) weight pairs, first-applied first.  For one
    pair, C_0 is the Taylor-style h operator and C_k the k-th correction; each
    further pair wraps the previous coefficients through the recursion

        C_k^{new} = h(C_k) + sum_{t<k} C(k,t) a-op^{(k-t)}(C_t).
    """
    if not pairs:
        raise ValueError("pairs must be nonempty")
    n = delta.n
    a0, b0 = pairs[0]
    coeffs = [taylor_h_ab(n, a0, b0, x)] + [
        taylor_a_op(n, a0, b0, delta, k, x) for k in range(1, k_max + 1)
    ]
    for a, b in pairs[1:]:
        new = []
        for k in range(k_max + 1):
            c = taylor_h_ab(n, a, b, coeffs[k])
            for t in range(k):
                c = c + taylor_a_op(n, a, b, delta, k - t, coeffs[t]).scale(
                    math.comb(k, t)
                )
            new.append(c)
        coeffs = new
    return coeffs


def taylor_residual(
    delta: WeylOperator, pairs: PairList, x: WeylOperator, i: int
) -> WeylOperator:
    """Residual of the integer-exponent expansion (zero certifies exactness).

    Compares the composed h operators applied to x * delta^i against
    sum_k C(i,k) C_k delta^{i-k}.
    """
    n = delta.n
    lhs = weyl_product(x, delta ** i)
    for a, b in pairs:
        lhs = taylor_h_ab(n, a, b, lhs)
    coeffs = taylor_coeffs(delta, pairs, x, i)
    rhs = WeylOperator.zero(n)
    for k in range(i + 1):
        rhs = rhs + weyl_product(coeffs[k], delta ** (i - k)).scale(math.comb(i, k))
    return lhs - rhs


# ---------------------------------------------------------------------------
# Exact rational polynomials
# ---------------------------------------------------------------------------


class RationalPolynomial:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RationalLike]) -> None:
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: RationalLike) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Sequence[RationalLike], leading: RationalLike = 1) -> "RationalPolynomial":
        out = cls([leading])
        for r in roots:
            out = out * cls([-as_rational(r), 1])
        return out

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return RationalPolynomial(out)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial([-c for c in self.coeffs])

    def __mul__(self, other: Union["RationalPolynomial", int]) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            if self.is_zero() or other.is_zero():
                return RationalPolynomial([])
            out = [Rat(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return RationalPolynomial(out)
        return self.scale(other)

    def scale(self, c: RationalLike) -> "RationalPolynomial":
        c = as_rational(c)
        return RationalPolynomial([c * a for a in self.coeffs])

    def __call__(self, z: RationalLike) -> "Rat":
        z = as_rational(z)
        acc = Rat(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def compose_affine(self, r: RationalLike, q: RationalLike) -> "RationalPolynomial":
        """The polynomial z -> self(r*z + q)."""
        inner = RationalPolynomial([q, r])
        acc = RationalPolynomial([])
        for c in reversed(self.coeffs):
            acc = acc * inner + RationalPolynomial([c])
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "RationalPolynomial(0)"
        body = " + ".join(
            f"{format_rational(c)}*z^{k}" if k else format_rational(c)
            for k, c in enumerate(self.coeffs)
        )
        return f"RationalPolynomial({body})"


def b_polynomial(spec: AlgebraSpec) -> RationalPolynomial:
    """The continuation-driving polynomial: one linear factor per reduction factor.

    Each (i-tuple, r-tuple) contributes (p - n - sum_j (r_j+1)/alpha_{i_j} - z).
    Its roots, shifted by the half-integer lattice, locate the pole candidates.
    """
    out = RationalPolynomial([1])
    for i_tuple, r_tuple in reduction_factors(spec):
        c = Rat(spec.p - spec.n)
        for i, r in zip(i_tuple, r_tuple):
            c = c - Rat(r + 1) / Rat(spec.alpha[i])
        out = out * RationalPolynomial([c, -1])
    return out


def b_roots(spec: AlgebraSpec) -> list:
    """Roots of b_polynomial with multiplicity, one per reduction factor."""
    roots = []
    for i_tuple, r_tuple in reduction_factors(spec):
        c = Rat(spec.p - spec.n)
        for i, r in zip(i_tuple, r_tuple):
            c = c - Rat(r + 1) / Rat(spec.alpha[i])
        roots.append(c)
    return roots


# ---------------------------------------------------------------------------
# Pole lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoleEntry:
    """One candidate pole: exact location, multiplicity, contributing labels.

    ``witnesses`` holds (i_tuple, r_tuple, l) triples with 1-based positions.
    """

    omega: object  # backend rational
    multiplicity: int
    witnesses: tuple

    def omega_str(self) -> str:
        return format_rational(self.omega)


@dataclass(frozen=True)
class PoleLattice:
    """All candidate poles for given twist degree q, start weight s0, and l cap."""

    spec: AlgebraSpec
    q: int
    s0: object  # backend rational
    l_max: int
    entries: tuple

    def rightmost(self) -> "PoleEntry":
        if not self.entries:
            raise ValueError("empty lattice")
        return self.entries[-1]

    def omegas(self) -> list:
        return [e.omega for e in self.entries]


def pole_lattice(
    spec: AlgebraSpec, q: int = 0, s0: RationalLike = 0, l_max: int = 6
) -> PoleLattice:
    """Candidate poles omega = (p - n - q - sum_j (r_j+1)/alpha_{i_j} + l) / 2.

    For each reduction factor, l runs from the exact ceiling of
    sum (r_j+1)/alpha_{i_j} + n - p - s0 up to l_max.  Entries are grouped by
    exact location and sorted ascending; multiplicity counts witnesses.
    """
    s0 = as_rational(s0)
    buckets: dict = {}
    for i_tuple, r_tuple in reduction_factors(spec):
        shift = Rat(0)
        for i, r in zip(i_tuple, r_tuple):
            shift = shift + Rat(r + 1) / Rat(spec.alpha[i])
        l_min = rat_ceil(shift + spec.n - spec.p - s0)
        for l in range(l_min, l_max + 1):
            omega = (Rat(spec.p - spec.n - q) - shift + l) / 2
            witness = (
                tuple(i + 1 for i in i_tuple),
                r_tuple,
                l,
            )
            buckets.setdefault(omega, []).append(witness)
    entries = tuple(
        PoleEntry(omega, len(ws), tuple(ws)) for omega, ws in sorted(buckets.items())
    )
    return PoleLattice(spec, q, s0, l_max, entries)


def generic_pole_lattice(
    roots: Sequence[RationalLike], q_x: RationalLike, r: int, p: int, l_max: int
) -> list:
    """Candidate poles produced by iterating an r-step shift from given roots.

    For each root a of the driving polynomial the candidates are
    z = (a - q_x + l)/r with integer l = 0..l_max, returned deduplicated and
    ascending.  ``p`` is the factor count (validated non-negative; the
    specialized :func:`pole_lattice` carries the multiplicity bookkeeping).
    """
    if r <= 0 or p < 0:
        raise ValueError("r must be positive and p non-negative")
    q_x = as_rational(q_x)
    out = set()
    for root in roots:
        a = as_rational(root)
        for l in range(0, l_max + 1):
            out.add((a - q_x + l) / r)
    return sorted(out)


def physical_abscissa(spec: AlgebraSpec, q: int = 0):
    """The predicted convergence abscissa: the l = 0, maximal-order lattice point.

    Per block the order r equals the full alpha at the chosen position; the
    position is chosen to maximize the result.  For a twist of degree q the
    whole lattice shifts left by q/2.
    """
    best = None
    for i_tuple in iter_product(*spec.partition):
        val = Rat(spec.p - spec.n - q) / 2
        for i in i_tuple:
            val = val - Rat(spec.alpha[i] + 1) / Rat(2 * spec.alpha[i])
        if best is None or val > best:
            best = val
    return best


# ---------------------------------------------------------------------------
# Interpolation identity
# ---------------------------------------------------------------------------


def lagrange_identity_check(
    b: RationalPolynomial, r: RationalLike, q: RationalLike, n_shift: int
) -> None:
    """Exact check of the finite interpolation identity.

    With nodes 0..n_shift+p-1 (p = max(deg b, 1)) and Lagrange basis L_i,
    verifies sum_i b(r*i + q) L_i(z) == b(r*z + q) as polynomials.  Raises
    ValueError when the node count cannot support deg b, RuntimeError on a
    failed identity (which would indicate an arithmetic bug).
    """
    if b.is_zero():
        return
    p = max(b.degree(), 1)
    node_count = n_shift + p
    if node_count - 1 < b.degree():
        raise ValueError(
            f"node count {node_count} cannot interpolate degree {b.degree()}; "
            f"increase the shift count"
        )
    r, q = as_rational(r), as_rational(q)
    nodes = list(range(node_count))
    lhs = RationalPolynomial([])
    for i in nodes:
        li = RationalPolynomial([1])
        denom = Rat(1)
        for j in nodes:
            if j == i:
                continue
            li = li * RationalPolynomial([-j, 1])
            denom = denom * (Rat(i) - Rat(j))
        value = b(r * Rat(i) + q)
        lhs = lhs + li.scale(value / denom)
    rhs = b.compose_affine(r, q)
    if lhs != rhs:
        raise RuntimeError("interpolation identity failed; arithmetic bug")
