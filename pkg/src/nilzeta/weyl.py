"""Polynomial differential operators with exact coefficients.

A Weyl operator in ``n`` variables is a finite combination of normally
ordered monomials ``x^a d^b`` (all multiplication operators left of all
derivatives), with Gaussian-rational coefficients.  Products are rewritten
with the Leibniz rule

    d^b x^a = sum over nu <= min(a, b) of C(b, nu) * a!/(a-nu)! * x^{a-nu} d^{b-nu}.

The module also hosts the defining representation of the enveloping algebra:

    rho(X_k)    = -d_k,
    rho(Y^beta) = i (-1)^{|beta|} x^beta / beta!,

a homomorphism onto polynomial differential operators, and the shifted
Laplace-type operator ``delta1`` built from the quadratic Casimir-style sum.
"""

from __future__ import annotations

from typing import Mapping, Union

from .core import AlgebraSpec, index_set
from .indices import (
    MultiIndex,
    box,
    mi_abs,
    mi_add,
    mi_binomial,
    mi_delta,
    mi_factorial,
    mi_falling,
    mi_sub,
)
from .scalars import ONE, ZERO, GaussianRational, ScalarLike, i_power
from .uea import UEAElement

# A Weyl monomial is (a, b): multiply by x^a, then differentiate d^b.
WeylMonomial = tuple[MultiIndex, MultiIndex]


def weyl_key(mono: WeylMonomial):
    """Order key used for pivoting: total order first, then (a, b) lex."""
    a, b = mono
    return (mi_abs(a) + mi_abs(b), a, b)


class WeylOperator:
    """A normally ordered polynomial differential operator.

    Treated as an immutable value.  ``terms`` maps ``(a, b)`` exponent pairs
    to nonzero Gaussian-rational coefficients.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None) -> None:
        self.n = n
        clean: dict = {}
        if terms:
            for mono, coeff in terms.items():
                c = GaussianRational.coerce(coeff)
                if not c.is_zero():
                    clean[mono] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "WeylOperator":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "WeylOperator":
        z = (0,) * n
        return cls(n, {(z, z): ONE})

    @classmethod
    def x_op(cls, n: int, k: int) -> "WeylOperator":
        z = (0,) * n
        return cls(n, {(mi_delta(n, k), z): ONE})

    @classmethod
    def d_op(cls, n: int, k: int) -> "WeylOperator":
        z = (0,) * n
        return cls(n, {(z, mi_delta(n, k)): ONE})

    @classmethod
    def monomial(
        cls, n: int, a: MultiIndex, b: MultiIndex, coeff: ScalarLike = 1
    ) -> "WeylOperator":
        return cls(n, {(tuple(a), tuple(b)): GaussianRational.coerce(coeff)})

    # -- structure -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        """Max of |a| + |b| over the support; -1 for the zero operator."""
        if not self.terms:
            return -1
        return max(mi_abs(a) + mi_abs(b) for a, b in self.terms)

    def diff_order(self) -> int:
        """Max of |b| over the support; -1 for the zero operator."""
        if not self.terms:
            return -1
        return max(mi_abs(b) for _, b in self.terms)

    def coefficient(self, a: MultiIndex, b: MultiIndex) -> GaussianRational:
        return self.terms.get((tuple(a), tuple(b)), ZERO)

    def sorted_terms(self) -> list[tuple[WeylMonomial, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda kv: weyl_key(kv[0]))

    # -- arithmetic -----------------------------------------------------------
    def _require_same_n(self, other: "WeylOperator") -> None:
        if self.n != other.n:
            raise ValueError("operators act on different variable counts")

    def __add__(self, other: "WeylOperator") -> "WeylOperator":
        self._require_same_n(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono, ZERO) + coeff
            if new.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = new
        return WeylOperator(self.n, out)

    def __sub__(self, other: "WeylOperator") -> "WeylOperator":
        return self + (-other)

    def __neg__(self) -> "WeylOperator":
        return WeylOperator(self.n, {m: -c for m, c in self.terms.items()})

    def scale(self, coeff: ScalarLike) -> "WeylOperator":
        c = GaussianRational.coerce(coeff)
        if c.is_zero():
            return WeylOperator.zero(self.n)
        return WeylOperator(self.n, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: Union["WeylOperator", ScalarLike]) -> "WeylOperator":
        if isinstance(other, WeylOperator):
            return weyl_product(self, other)
        return self.scale(other)

    def __rmul__(self, other: ScalarLike) -> "WeylOperator":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "WeylOperator":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative int")
        result = WeylOperator.one(self.n)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = weyl_product(result, base)
            base = weyl_product(base, base)
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "<WeylOperator 0>"
        return f"<WeylOperator {format_weyl(self)}>"


def format_weyl(w: WeylOperator) -> str:
    """Readable rendering, e.g. ``2 + x1^2 - d1^2``."""
    if w.is_zero():
        return "0"
    parts = []
    for (a, b), coeff in w.sorted_terms():
        factors = []
        for k, e in enumerate(a):
            if e:
                factors.append(f"x{k + 1}" + (f"^{e}" if e > 1 else ""))
        for k, e in enumerate(b):
            if e:
                factors.append(f"d{k + 1}" + (f"^{e}" if e > 1 else ""))
        body = "*".join(factors)
        cs = str(coeff)
        if body:
            piece = body if cs == "1" else (f"-{body}" if cs == "-1" else f"{cs}*{body}")
        else:
            piece = cs
        parts.append(piece)
    out = parts[0]
    for piece in parts[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

_LEIBNIZ_CACHE: dict = {}


def _leibniz(b: MultiIndex, a: MultiIndex) -> tuple[tuple[MultiIndex, MultiIndex, int], ...]:
    """Normal form of d^b x^a as tuples (x-exponent, d-exponent, int weight)."""
    key = (b, a)
    cached = _LEIBNIZ_CACHE.get(key)
    if cached is not None:
        return cached
    cap = tuple(min(e, f) for e, f in zip(b, a))
    out = []
    for nu in box(cap):
        weight = mi_binomial(b, nu) * mi_falling(a, nu)
        if weight:
            out.append((mi_sub(a, nu), mi_sub(b, nu), weight))
    result = tuple(out)
    _LEIBNIZ_CACHE[key] = result
    return result


def weyl_product(u: WeylOperator, v: WeylOperator) -> WeylOperator:
    """Composition u then-acting-after v, i.e. (u*v)(f) = u(v(f))."""
    u._require_same_n(v)
    out: dict[WeylMonomial, GaussianRational] = {}
    for (a1, b1), c1 in u.terms.items():
        for (a2, b2), c2 in v.terms.items():
            c = c1 * c2
            if not any(b1) or not any(a2):
                mono = (mi_add(a1, a2), mi_add(b1, b2))
                new = out.get(mono, ZERO) + c
                if new.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = new
                continue
            for mid_a, mid_b, weight in _leibniz(b1, a2):
                mono = (mi_add(a1, mid_a), mi_add(mid_b, b2))
                new = out.get(mono, ZERO) + c * weight
                if new.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = new
    return WeylOperator(u.n, out)


def weyl_commutator(u: WeylOperator, v: WeylOperator) -> WeylOperator:
    return weyl_product(u, v) - weyl_product(v, u)


# ---------------------------------------------------------------------------
# The representation
# ---------------------------------------------------------------------------


def rho_y_scalar(spec: AlgebraSpec, beta: MultiIndex) -> GaussianRational:
    """The scalar i (-1)^{|beta|} / beta! multiplying x^beta in rho(Y^beta)."""
    sign = -1 if mi_abs(beta) % 2 else 1
    return i_power(1) * GaussianRational(f"{sign}/{mi_factorial(beta)}")


def rho(spec: AlgebraSpec, u: UEAElement) -> WeylOperator:
    """The defining representation: an exact algebra homomorphism.

    On an ordered monomial X^p Y^q the image is
    ``(-1)^{|p|} * prod_beta (i (-1)^{|beta|} / beta!)^{q_beta} * d^p o x^{gamma}``
    with ``gamma = sum q_beta * beta``, normally ordered by the Leibniz rule.
    """
    if u.spec != spec:
        raise ValueError("element belongs to a different algebra")
    n = spec.n
    idx = index_set(spec)
    out = WeylOperator.zero(n)
    zero_mi = (0,) * n
    for mono, coeff in u.terms.items():
        p, q = mono.x, mono.y
        scalar = GaussianRational(-1 if mi_abs(p) % 2 else 1) * coeff
        gamma = zero_mi
        for pos, mult in enumerate(q):
            if mult:
                beta = idx[pos]
                scalar = scalar * rho_y_scalar(spec, beta) ** mult
                gamma = mi_add(gamma, tuple(e * mult for e in beta))
        term = weyl_product(
            WeylOperator.monomial(n, zero_mi, p), WeylOperator.monomial(n, gamma, zero_mi)
        ).scale(scalar)
        out = out + term
    return out


def p_op(n: int, k: int) -> WeylOperator:
    """The momentum-side canonical operator -d_k (the image of X_{k+1})."""
    return -WeylOperator.d_op(n, k)


def q_op(n: int, k: int) -> WeylOperator:
    """The position-side canonical operator -x_k (the image of -i * Y^{delta_k}).

    With this rescaled partner, [p_op, q_op] = 1 exactly.
    """
    return -WeylOperator.x_op(n, k)


def laplace_element(spec: AlgebraSpec) -> UEAElement:
    """The negated quadratic sum -(sum X_k^2 + sum_beta (Y^beta)^2)."""
    total = UEAElement.zero(spec)
    for k in range(spec.n):
        xk = UEAElement.x_gen(spec, k)
        total = total + xk * xk
    for beta in index_set(spec):
        yb = UEAElement.y_gen(spec, beta)
        total = total + yb * yb
    return -total


def delta1(spec: AlgebraSpec) -> WeylOperator:
    """rho(1 + laplace_element): a Schroedinger-type operator.

    Closed form: 2 - sum_k d_k^2 + sum_{beta != 0} x^{2 beta} / (beta!)^2,
    where the constant 2 collects rho(1) = 1 and the beta = 0 square.
    """
    return rho(spec, UEAElement.one(spec) + laplace_element(spec))


# ---------------------------------------------------------------------------
# Iterated commutators
# ---------------------------------------------------------------------------


def ad_power(d: WeylOperator, x: WeylOperator, k: int) -> WeylOperator:
    """The k-fold iterated commutator [d, [d, .. [d, x]..]] (k >= 0)."""
    out = x
    for _ in range(k):
        out = weyl_commutator(d, out)
    return out


def commutator_power_check(d: WeylOperator, x: WeylOperator, i: int) -> WeylOperator:
    """Residual of the exact power-commutation identity.

    Returns [d^i, x] - sum_{k=1..i} C(i,k) ad_power(d,x,k) d^{i-k}; the zero
    operator certifies the identity.
    """
    import math

    lhs = weyl_commutator(d ** i, x)
    rhs = WeylOperator.zero(d.n)
    for k in range(1, i + 1):
        rhs = rhs + (ad_power(d, x, k) * (d ** (i - k))).scale(math.comb(i, k))
    return lhs - rhs
