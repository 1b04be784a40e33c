"""Text syntax round-trips, frozen parses, and error positions."""

from __future__ import annotations

import random

import pytest

from conftest import SPEC_PARAMS, make_spec, random_element
from nilzeta import GaussianRational
from nilzeta.expr import ExpressionError, format_element, parse_expression
from nilzeta.uea import UEAElement, pure_y


def test_parse_frozen_examples(heis) -> None:
    x1 = UEAElement.x_gen(heis, 0)
    y0 = pure_y(heis, (0,))
    y1 = pure_y(heis, (1,))
    assert parse_expression("X1", heis) == x1
    assert parse_expression("Y[1]", heis) == y1
    assert parse_expression("Y[0] - i", heis) == y0 - UEAElement.one(heis).scale(
        GaussianRational(0, 1)
    )
    assert parse_expression("2*X1^2*Y[1]", heis) == (x1 * x1 * y1).scale(
        GaussianRational(2)
    )
    assert parse_expression("-3/2i*Y[0] + X1", heis) == x1 + y0.scale(
        GaussianRational(0, "-3/2")
    )


def test_parse_bare_constants(heis) -> None:
    one = UEAElement.one(heis)
    assert parse_expression("5", heis) == one.scale(GaussianRational(5))
    assert parse_expression("i", heis) == one.scale(GaussianRational(0, 1))
    assert parse_expression("0", heis) == UEAElement.zero(heis)
    assert parse_expression("-1/2", heis) == one.scale(GaussianRational("-1/2"))


def test_parse_uses_algebra_product(heis) -> None:
    # Factors multiply with the non-commutative product, so a commutator
    # written out longhand collapses to the bracket value.
    got = parse_expression("X1 * Y[1] - Y[1] * X1", heis)
    assert got == pure_y(heis, (0,))


def test_parse_two_axis_indices(mixed) -> None:
    got = parse_expression("X2*Y[0,2]^2", mixed)
    y02 = pure_y(mixed, (0, 2))
    assert got == UEAElement.x_gen(mixed, 1) * y02 * y02


def test_whitespace_insignificant(quad) -> None:
    assert parse_expression("2*Y[2]-X1", quad) == parse_expression(
        "  2 * Y[ 2 ]   -   X1 ", quad
    )


@pytest.mark.parametrize(
    "text,position",
    [
        ("X1 +", 4),
        ("3//2", 2),
        ("X1^", 3),
        ("foo", 0),
        ("2*", 2),
        ("Y[1", 3),
        ("i*i", 2),
        ("1/0", 2),
    ],
)
def test_error_positions(heis, text: str, position: int) -> None:
    with pytest.raises(ExpressionError) as exc:
        parse_expression(text, heis)
    assert exc.value.position == position


def test_unknown_y_index_rejected(heis) -> None:
    with pytest.raises(ExpressionError, match="not a basis element"):
        parse_expression("Y[2]", heis)
    with pytest.raises(ExpressionError, match="needs 1"):
        parse_expression("Y[1,0]", heis)
    with pytest.raises(ExpressionError, match="out of range"):
        parse_expression("X0", heis)
    with pytest.raises(ExpressionError, match="out of range"):
        parse_expression("X2", heis)


def test_format_zero_and_constants(heis) -> None:
    assert format_element(UEAElement.zero(heis)) == "0"
    assert format_element(UEAElement.one(heis)) == "1"
    assert format_element(UEAElement.one(heis).scale(GaussianRational(0, -1))) == "-i"


def test_format_leading_monomial_first(heis) -> None:
    u = UEAElement.one(heis).scale(GaussianRational(0, -1)) + pure_y(heis, (0,))
    assert format_element(u) == "Y[0] - i"


@pytest.mark.parametrize("name", sorted(SPEC_PARAMS))
def test_round_trip_random_elements(name: str) -> None:
    spec = make_spec(name)
    rng = random.Random(4310 + spec.n)
    for _ in range(25):
        u = random_element(spec, rng, max_degree=3, terms=4)
        assert parse_expression(format_element(u), spec) == u


def test_format_is_deterministic(mixed) -> None:
    rng = random.Random(99)
    u = random_element(mixed, rng, max_degree=3, terms=5)
    assert format_element(u) == format_element(u + UEAElement.zero(mixed))
