"""Exact arithmetic in the universal enveloping algebra.

Elements are finite Gaussian-rational combinations of ordered monomials
``X^p Y^q`` (all X factors left of all Y factors; the Y factors commute with
each other, the X factors commute with each other).  Products are rewritten
to this normal form with the single relation family

    Y^beta X_k = X_k Y^beta - Y^{beta - delta_k}   (when beta_k >= 1),

extended as a derivation over Y-products.  The push-through of a Y-monomial
past an X-monomial is memoized per algebra.

Monomial order
--------------
Total degree first; ties are broken by scanning the exponent vector over the
variable sequence ``X_1, .., X_n, Y^beta (beta ascending lex)`` and declaring
the monomial with the *larger* exponent at the first differing position the
*smaller* one.  Equivalently, the sort key is ``(degree, negated exponents)``
compared lexicographically.  Under this order ``X_1 < .. < X_n < Y^beta`` for
the degree-one monomials, and products concentrated on earlier variables are
smaller.  The leading term of an element is its largest monomial.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .core import AlgebraSpec, index_set, y_position
from .indices import (
    MultiIndex,
    box,
    compositions,
    mi_abs,
    mi_delta,
    mi_factorial,
    mi_sub,
)
from .scalars import ONE, ZERO, GaussianRational, ScalarLike, i_power


class Monomial(NamedTuple):
    """Ordered monomial X^x Y^y.

    ``x`` has one exponent per X generator; ``y`` has one exponent per
    multi-index of the algebra's index set, in ascending-lex order.
    """

    x: MultiIndex
    y: MultiIndex


def monomial_one(spec: AlgebraSpec) -> Monomial:
    return Monomial((0,) * spec.n, (0,) * len(index_set(spec)))


def monomial_degree(m: Monomial) -> int:
    return sum(m.x) + sum(m.y)


def monomial_key(m: Monomial):
    """Sort key realizing the order described in the module docstring."""
    return (monomial_degree(m), tuple(-e for e in m.x + m.y))


def monomial_compare(m1: Monomial, m2: Monomial) -> int:
    """-1, 0, or +1 as m1 is smaller than, equal to, or larger than m2."""
    k1, k2 = monomial_key(m1), monomial_key(m2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


def monomial_mul_commuting(m1: Monomial, m2: Monomial) -> Monomial:
    """Exponentwise product; valid when no Y of m1 must pass an X of m2."""
    return Monomial(
        tuple(a + b for a, b in zip(m1.x, m2.x)),
        tuple(a + b for a, b in zip(m1.y, m2.y)),
    )


class UEAElement:
    """A finite combination of ordered monomials with Gaussian-rational coefficients.

    Treated as an immutable value; all arithmetic returns new elements.
    ``terms`` maps :class:`Monomial` to nonzero coefficients.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms: Mapping | None = None) -> None:
        self.spec = spec
        clean: dict = {}
        if terms:
            for mono, coeff in terms.items():
                c = GaussianRational.coerce(coeff)
                if not c.is_zero():
                    clean[mono] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, spec: AlgebraSpec) -> "UEAElement":
        return cls(spec)

    @classmethod
    def one(cls, spec: AlgebraSpec) -> "UEAElement":
        return cls(spec, {monomial_one(spec): ONE})

    @classmethod
    def x_gen(cls, spec: AlgebraSpec, k: int) -> "UEAElement":
        """The generator X_{k+1} (k is the 0-based position)."""
        if not 0 <= k < spec.n:
            raise ValueError(f"X position {k} out of range")
        m = Monomial(mi_delta(spec.n, k), (0,) * len(index_set(spec)))
        return cls(spec, {m: ONE})

    @classmethod
    def y_gen(cls, spec: AlgebraSpec, beta: MultiIndex) -> "UEAElement":
        """The generator Y^beta for beta in the algebra's index set."""
        pos = y_position(spec).get(tuple(beta))
        if pos is None:
            raise ValueError(f"{tuple(beta)} is not in the index set of {spec}")
        m = Monomial((0,) * spec.n, mi_delta(len(index_set(spec)), pos))
        return cls(spec, {m: ONE})

    @classmethod
    def monomial(cls, spec: AlgebraSpec, mono: Monomial, coeff: ScalarLike = 1) -> "UEAElement":
        return cls(spec, {mono: GaussianRational.coerce(coeff)})

    # -- structure -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Maximal monomial degree; -1 for the zero element."""
        if not self.terms:
            return -1
        return max(monomial_degree(m) for m in self.terms)

    def leading_term(self) -> tuple[Monomial, GaussianRational]:
        """The largest monomial and its coefficient; raises on zero."""
        if not self.terms:
            raise ValueError("zero element has no leading term")
        m = max(self.terms, key=monomial_key)
        return m, self.terms[m]

    def sorted_terms(self, reverse: bool = True) -> list[tuple[Monomial, GaussianRational]]:
        """Terms sorted by the monomial order (default: leading first)."""
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]), reverse=reverse)

    def homogeneous_part(self, d: int) -> "UEAElement":
        return UEAElement(
            self.spec, {m: c for m, c in self.terms.items() if monomial_degree(m) == d}
        )

    def coefficient(self, mono: Monomial) -> GaussianRational:
        return self.terms.get(mono, ZERO)

    # -- arithmetic -----------------------------------------------------------
    def _require_same_spec(self, other: "UEAElement") -> None:
        if self.spec != other.spec:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "UEAElement") -> "UEAElement":
        self._require_same_spec(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono, ZERO) + coeff
            if new.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = new
        return UEAElement(self.spec, out)

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return self + (-other)

    def __neg__(self) -> "UEAElement":
        return UEAElement(self.spec, {m: -c for m, c in self.terms.items()})

    def scale(self, coeff: ScalarLike) -> "UEAElement":
        c = GaussianRational.coerce(coeff)
        if c.is_zero():
            return UEAElement.zero(self.spec)
        return UEAElement(self.spec, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: Union["UEAElement", ScalarLike]) -> "UEAElement":
        if isinstance(other, UEAElement):
            return normal_product(self, other)
        return self.scale(other)

    def __rmul__(self, other: ScalarLike) -> "UEAElement":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "<UEAElement 0>"
        return f"<UEAElement {self.__str__()}>"

    def __str__(self) -> str:
        from .expr import format_element

        return format_element(self)


# ---------------------------------------------------------------------------
# Normal-form products
# ---------------------------------------------------------------------------

_PUSH_CACHE: dict = {}


def _y_derivation(spec: AlgebraSpec, y: MultiIndex, k: int) -> list[tuple[MultiIndex, int]]:
    """[X_k, Y^y] as a derivation: replace one Y^beta factor by Y^{beta-delta_k}."""
    idx = index_set(spec)
    pos_of = y_position(spec)
    out: list[tuple[MultiIndex, int]] = []
    for pos, mult in enumerate(y):
        if mult == 0:
            continue
        beta = idx[pos]
        if beta[k] >= 1:
            target = mi_sub(beta, mi_delta(spec.n, k))
            tpos = pos_of[target]
            new = list(y)
            new[pos] -= 1
            new[tpos] += 1
            out.append((tuple(new), mult))
    return out


def _push_y_through_x(
    spec: AlgebraSpec, y: MultiIndex, x: MultiIndex
) -> tuple[tuple[Monomial, int], ...]:
    """Normal form of the product Y^y * X^x as integer-weighted monomials."""
    key = (spec, y, x)
    cached = _PUSH_CACHE.get(key)
    if cached is not None:
        return cached
    if not any(x) or not any(y):
        result: tuple[tuple[Monomial, int], ...] = ((Monomial(x, y), 1),)
        _PUSH_CACHE[key] = result
        return result
    k = next(pos for pos, e in enumerate(x) if e)
    rest = tuple(e - (1 if pos == k else 0) for pos, e in enumerate(x))
    acc: dict[Monomial, int] = {}
    for mono, coeff in _push_y_through_x(spec, y, rest):
        lifted = Monomial(tuple(e + (1 if pos == k else 0) for pos, e in enumerate(mono.x)), mono.y)
        acc[lifted] = acc.get(lifted, 0) + coeff
    for y2, mult in _y_derivation(spec, y, k):
        for mono, coeff in _push_y_through_x(spec, y2, rest):
            acc[mono] = acc.get(mono, 0) - mult * coeff
    result = tuple((m, c) for m, c in acc.items() if c)
    _PUSH_CACHE[key] = result
    return result


def normal_product(u: UEAElement, v: UEAElement) -> UEAElement:
    """The product of two elements, rewritten to ordered normal form."""
    u._require_same_spec(v)
    spec = u.spec
    out: dict[Monomial, GaussianRational] = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            c = c1 * c2
            if not any(m1.y) or not any(m2.x):
                mono = monomial_mul_commuting(m1, m2)
                new = out.get(mono, ZERO) + c
                if new.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = new
                continue
            for mid, weight in _push_y_through_x(spec, m1.y, m2.x):
                mono = Monomial(
                    tuple(a + b for a, b in zip(m1.x, mid.x)),
                    tuple(a + b for a, b in zip(mid.y, m2.y)),
                )
                new = out.get(mono, ZERO) + c * weight
                if new.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = new
    return UEAElement(spec, out)


def commutator(u: UEAElement, v: UEAElement) -> UEAElement:
    return normal_product(u, v) - normal_product(v, u)


def ad_x(spec: AlgebraSpec, k: int, u: UEAElement) -> UEAElement:
    """[X_k, u], computed directly as a derivation on the Y part.

    For an ordered monomial, [X_k, X^p Y^q] = X^p [X_k, Y^q]; the X part
    commutes with X_k.
    """
    out: dict[Monomial, GaussianRational] = {}
    for mono, coeff in u.terms.items():
        for y2, mult in _y_derivation(spec, mono.y, k):
            m2 = Monomial(mono.x, y2)
            new = out.get(m2, ZERO) + coeff * mult
            if new.is_zero():
                out.pop(m2, None)
            else:
                out[m2] = new
    return UEAElement(spec, out)


# ---------------------------------------------------------------------------
# Distinguished elements and operators
# ---------------------------------------------------------------------------


def y_monomial(spec: AlgebraSpec, gamma: MultiIndex) -> Monomial:
    """The Y-monomial prod_k (Y^{delta_k})^{gamma_k} (a product of degree-1 Y's)."""
    L = len(index_set(spec))
    pos_of = y_position(spec)
    y = [0] * L
    for k, mult in enumerate(gamma):
        if mult:
            y[pos_of[mi_delta(spec.n, k)]] += mult
    return Monomial((0,) * spec.n, tuple(y))


def y_star(spec: AlgebraSpec, gamma: MultiIndex) -> UEAElement:
    """The element i^{1-|gamma|} * prod_k (Y^{delta_k})^{gamma_k}.

    For gamma = 0 this is i times the identity; for |gamma| = 1 it is the
    degree-one generator itself.
    """
    gamma = tuple(gamma)
    if len(gamma) != spec.n or any(e < 0 for e in gamma):
        raise ValueError(f"gamma must be a non-negative multi-index of length {spec.n}")
    coeff = i_power(1 - mi_abs(gamma))
    return UEAElement(spec, {y_monomial(spec, gamma): coeff})


def pure_y(spec: AlgebraSpec, beta: MultiIndex) -> UEAElement:
    """Shorthand for the basis generator Y^beta."""
    return UEAElement.y_gen(spec, beta)


def gamma_j(spec: AlgebraSpec, j: int, u: UEAElement) -> UEAElement:
    """The j-th correction operator sum_k (i^k / k!) (Y^{delta_j})^k ad(X_j)^k (u).

    The sum terminates because ad(X_j) strictly lowers the total Y weight.
    Operators for different j commute: their ad parts commute, and
    left-multiplication by Y^{delta_j} commutes with ad(X_i) for i != j.
    """
    result = UEAElement.zero(spec)
    current = u
    k = 0
    coeff = ONE
    y_step = UEAElement.y_gen(spec, mi_delta(spec.n, j))
    y_pow = UEAElement.one(spec)
    while not current.is_zero():
        result = result + normal_product(y_pow, current).scale(coeff)
        k += 1
        coeff = coeff * i_power(1) * GaussianRational(f"1/{k}")
        y_pow = normal_product(y_pow, y_step)
        current = ad_x(spec, j, current)
    return result


def gamma_all(spec: AlgebraSpec, u: UEAElement) -> UEAElement:
    """Composite of all gamma_j (order immaterial; applied ascending)."""
    out = u
    for j in range(spec.n):
        out = gamma_j(spec, j, out)
    return out


def gamma_closed_form(spec: AlgebraSpec, beta: MultiIndex) -> UEAElement:
    """Closed form of gamma_all applied to i*Y^beta:

    sum over gamma <= beta of ((-1)^{|gamma|} / gamma!) Y_*^gamma Y^{beta-gamma}.
    """
    beta = tuple(beta)
    out = UEAElement.zero(spec)
    for gamma in box(beta):
        sign = -1 if mi_abs(gamma) % 2 else 1
        coeff = GaussianRational(sign) * GaussianRational(f"1/{mi_factorial(gamma)}")
        out = out + normal_product(
            y_star(spec, gamma), pure_y(spec, mi_sub(beta, gamma))
        ).scale(coeff)
    return out


def gamma_apply(spec: AlgebraSpec, beta: MultiIndex) -> UEAElement:
    """gamma_all(i * Y^beta), with the closed form checked against the operator form."""
    beta = tuple(beta)
    if tuple(beta) not in y_position(spec):
        raise ValueError(f"{beta} is not in the index set")
    operator_form = gamma_all(spec, pure_y(spec, beta).scale(i_power(1)))
    closed = gamma_closed_form(spec, beta)
    if operator_form != closed:
        raise RuntimeError(
            f"internal inconsistency: operator and closed forms differ for beta={beta}"
        )
    return operator_form


# ---------------------------------------------------------------------------
# Degree slices
# ---------------------------------------------------------------------------


def slice_monomials(spec: AlgebraSpec, degree: int) -> list[Monomial]:
    """All ordered monomials of exact total degree, ascending in the order."""
    n, L = spec.n, len(index_set(spec))
    out = [Monomial(comp[:n], comp[n:]) for comp in compositions(n + L, degree)]
    out.sort(key=monomial_key)
    return out


def monomials_up_to(spec: AlgebraSpec, degree: int) -> Iterator[Monomial]:
    """All ordered monomials of total degree <= degree, ascending."""
    for d in range(degree + 1):
        yield from slice_monomials(spec, d)


def element_from_terms(
    spec: AlgebraSpec, items: Iterable[tuple[Monomial, ScalarLike]]
) -> UEAElement:
    acc: dict[Monomial, GaussianRational] = {}
    for mono, coeff in items:
        c = GaussianRational.coerce(coeff)
        new = acc.get(mono, ZERO) + c
        if new.is_zero():
            acc.pop(mono, None)
        else:
            acc[mono] = new
    return UEAElement(spec, acc)
