"""Exact Gaussian-rational arithmetic.

All symbolic computations in this package run over Q(i), the field of
Gaussian rationals.  The real and imaginary parts are held as exact
rationals; the backend is ``gmpy2.mpq`` when gmpy2 is importable and
``fractions.Fraction`` otherwise.  Both backends have identical semantics;
gmpy2 is noticeably faster on the elimination-heavy kernels (see
``benchmarks/backend_bench.py``).
"""

from __future__ import annotations

from typing import Union

try:  # pragma: no cover - exercised indirectly via RATIONAL_BACKEND
    from gmpy2 import mpq as Rat

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

    RATIONAL_BACKEND = "fractions"

RationalLike = Union[int, str, "Rat"]

_ZERO = Rat(0)
_ONE = Rat(1)


def as_rational(value: RationalLike) -> "Rat":
    """Coerce an int, ``"p/q"`` string, or exact rational to the backend type.

    Floats are rejected: their binary round-off would silently contaminate
    the exact arithmetic everywhere downstream.
    """
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}; pass an int, 'p/q' string, or Fraction"
        )
    return Rat(value)


def rat_ceil(value: "Rat") -> int:
    """Exact ceiling of a backend rational."""
    num, den = int(value.numerator), int(value.denominator)
    return -((-num) // den)


def rat_floor(value: "Rat") -> int:
    """Exact floor of a backend rational."""
    return int(value.numerator) // int(value.denominator)


def format_rational(value: "Rat") -> str:
    """Render a rational as ``"p"`` or ``"p/q"`` (q > 1)."""
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    return f"{num}/{den}"


class GaussianRational:
    """An element of Q(i) with exact rational real and imaginary parts.

    Instances are immutable values: every arithmetic operation returns a new
    object.  Construction accepts ints, ``"p/q"`` strings, backend rationals,
    or another :class:`GaussianRational` (as the real part only when no
    imaginary part is given).
    """

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0) -> None:
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("cannot combine a GaussianRational with an imaginary part")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GaussianRational is immutable")

    # -- constructors -----------------------------------------------------
    @staticmethod
    def coerce(value: "ScalarLike") -> "GaussianRational":
        """Coerce an int, rational, or GaussianRational to a GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(value)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "ScalarLike") -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "ScalarLike") -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "ScalarLike") -> "GaussianRational":
        return GaussianRational.coerce(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "ScalarLike") -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of zero GaussianRational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other: "ScalarLike") -> "GaussianRational":
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other: "ScalarLike") -> "GaussianRational":
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an int")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparisons / hashing ----------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, str, type(_ZERO))):
            other = GaussianRational(other)  # type: ignore[arg-type]
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    # -- conversions ----------------------------------------------------------
    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{format_rational(self.im)}i"
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else "-"
        mag = imag.lstrip("-")
        return f"{format_rational(self.re)}{sign}{mag}"

    def to_json(self) -> dict:
        """JSON form with rational parts serialized as strings."""
        return {"re": format_rational(self.re), "im": format_rational(self.im)}


ScalarLike = Union[int, str, "Rat", GaussianRational]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def i_power(k: int) -> GaussianRational:
    """The power i**k for any integer k (negative allowed)."""
    return I ** (k % 4)
