"""Text syntax for enveloping-algebra elements.

Grammar (whitespace insignificant)::

    element := ["-"] term (("+" | "-") term)*
    term    := coeff "*" factor ("*" factor)*
             | factor ("*" factor)*
             | coeff
    factor  := "X" nat ["^" nat]
             | "Y[" nat ("," nat)* "]" ["^" nat]
    coeff   := int ["/" nat] ["i"] | "i"

``X3`` is the third generator (1-based); ``Y[1,0]`` names the basis element
for the written multi-index, whose length must match the algebra's n and
which must lie in the algebra's index set.  A bare coeff is a constant term
(needed to express elements like ``Y[0] - i``).  Factors multiply in the
written order with the algebra's non-commutative product.

Parse errors carry the character position and what was expected.  The
printer emits leading-monomial-first output that parses back to the same
element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import AlgebraSpec, index_set, y_position
from .scalars import GaussianRational, Rat, format_rational
from .uea import Monomial, UEAElement, normal_product


class ExpressionError(ValueError):
    """Parse failure with position information."""

    def __init__(self, message: str, position: int, expected: Optional[str] = None) -> None:
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.position = position
        self.expected = expected


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER, XGEN, Y, I, LBRACK, RBRACK, COMMA, CARET, STAR, PLUS, MINUS, SLASH, END
    value: object
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    k = 0
    n = len(text)
    while k < n:
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < n and text[k].isdigit():
                k += 1
            tokens.append(_Token("NUMBER", int(text[start:k]), start))
            continue
        if ch == "X":
            start = k
            k += 1
            if k >= n or not text[k].isdigit():
                raise ExpressionError("generator X needs a 1-based index", start, "digit")
            num_start = k
            while k < n and text[k].isdigit():
                k += 1
            tokens.append(_Token("XGEN", int(text[num_start:k]), start))
            continue
        if ch == "Y":
            tokens.append(_Token("Y", None, k))
            k += 1
            continue
        if ch == "i":
            tokens.append(_Token("I", None, k))
            k += 1
            continue
        simple = {
            "[": "LBRACK",
            "]": "RBRACK",
            ",": "COMMA",
            "^": "CARET",
            "*": "STAR",
            "+": "PLUS",
            "-": "MINUS",
            "/": "SLASH",
        }
        kind = simple.get(ch)
        if kind is None:
            raise ExpressionError(f"unexpected character {ch!r}", k)
        tokens.append(_Token(kind, ch, k))
        k += 1
    tokens.append(_Token("END", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, spec: AlgebraSpec) -> None:
        self.spec = spec
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def advance(self) -> _Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExpressionError(f"unexpected {tok.kind}", tok.pos, what)
        return self.advance()

    # element := ["-"] term (("+"|"-") term)*
    def element(self) -> UEAElement:
        negate = False
        if self.peek().kind == "MINUS":
            self.advance()
            negate = True
        total = self.term()
        if negate:
            total = -total
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.advance()
            nxt = self.term()
            total = total - nxt if op.kind == "MINUS" else total + nxt
        end = self.peek()
        if end.kind != "END":
            raise ExpressionError(f"unexpected {end.kind}", end.pos, "'+', '-', '*', or end")
        return total

    # term := coeff "*" factor ("*" factor)* | factor ("*" factor)* | coeff
    def term(self) -> UEAElement:
        tok = self.peek()
        coeff: Optional[GaussianRational] = None
        if tok.kind in ("NUMBER", "I"):
            coeff = self.coeff()
            if self.peek().kind != "STAR":
                return UEAElement.one(self.spec).scale(coeff)
            self.advance()
        out = self.factor()
        while self.peek().kind == "STAR":
            self.advance()
            out = normal_product(out, self.factor())
        if coeff is not None:
            out = out.scale(coeff)
        return out

    # coeff := int ["/" nat] ["i"] | "i"
    def coeff(self) -> GaussianRational:
        tok = self.peek()
        if tok.kind == "I":
            self.advance()
            return GaussianRational(0, 1)
        num_tok = self.expect("NUMBER", "a number or 'i'")
        num = Rat(num_tok.value)
        if self.peek().kind == "SLASH":
            self.advance()
            den_tok = self.expect("NUMBER", "a denominator")
            if den_tok.value == 0:
                raise ExpressionError("zero denominator", den_tok.pos)
            num = num / Rat(den_tok.value)
        if self.peek().kind == "I":
            self.advance()
            return GaussianRational(0, num)
        return GaussianRational(num)

    # factor := XGEN ["^" nat] | Y "[" nat ("," nat)* "]" ["^" nat]
    def factor(self) -> UEAElement:
        tok = self.peek()
        spec = self.spec
        if tok.kind == "XGEN":
            self.advance()
            k1 = tok.value
            if not 1 <= k1 <= spec.n:
                raise ExpressionError(
                    f"X{k1} out of range (this algebra has X1..X{spec.n})", tok.pos
                )
            exp = self._exponent()
            y_len = len(index_set(spec))
            mono = Monomial(
                tuple(exp if j == k1 - 1 else 0 for j in range(spec.n)), (0,) * y_len
            )
            return UEAElement.monomial(spec, mono)
        if tok.kind == "Y":
            self.advance()
            self.expect("LBRACK", "'['")
            entries = [self.expect("NUMBER", "a multi-index entry").value]
            while self.peek().kind == "COMMA":
                self.advance()
                entries.append(self.expect("NUMBER", "a multi-index entry").value)
            self.expect("RBRACK", "']'")
            beta = tuple(entries)
            if len(beta) != spec.n:
                raise ExpressionError(
                    f"Y index {list(beta)} has {len(beta)} entries; this algebra needs {spec.n}",
                    tok.pos,
                )
            pos = y_position(spec).get(beta)
            if pos is None:
                raise ExpressionError(
                    f"Y{list(beta)} is not a basis element of this algebra "
                    f"(index set bounded by alpha={list(spec.alpha)} per block)",
                    tok.pos,
                )
            exp = self._exponent()
            y_len = len(index_set(spec))
            mono = Monomial(
                (0,) * spec.n, tuple(exp if j == pos else 0 for j in range(y_len))
            )
            return UEAElement.monomial(spec, mono)
        raise ExpressionError(f"unexpected {tok.kind}", tok.pos, "a factor (Xk or Y[..])")

    def _exponent(self) -> int:
        if self.peek().kind == "CARET":
            self.advance()
            return self.expect("NUMBER", "an exponent").value
        return 1


def parse_expression(text: str, spec: AlgebraSpec) -> UEAElement:
    """Parse the grammar above into an exact element of the algebra."""
    return _Parser(text, spec).element()


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _monomial_factors(spec: AlgebraSpec, mono: Monomial) -> list[str]:
    idx = index_set(spec)
    parts = []
    for k, e in enumerate(mono.x):
        if e:
            parts.append(f"X{k + 1}" + (f"^{e}" if e > 1 else ""))
    for pos, e in enumerate(mono.y):
        if e:
            beta = idx[pos]
            parts.append(
                "Y[" + ",".join(str(b) for b in beta) + "]" + (f"^{e}" if e > 1 else "")
            )
    return parts


def format_element(u: UEAElement) -> str:
    """Deterministic text form: leading monomial first; parses back exactly.

    Coefficients with both real and imaginary parts are split into two
    printed terms (the grammar's coeff token is purely real or purely
    imaginary); the two terms re-merge on parsing.
    """
    if u.is_zero():
        return "0"
    spec = u.spec
    pieces: list[tuple[bool, str]] = []  # (negative, body-without-sign)
    for mono, coeff in u.sorted_terms(reverse=True):
        factors = _monomial_factors(spec, mono)
        for part, imag in ((coeff.re, False), (coeff.im, True)):
            if part == 0:
                continue
            negative = part < 0
            mag = -part if negative else part
            mag_text = format_rational(mag) + ("i" if imag else "")
            if imag and mag == 1:
                mag_text = "i"
            if not factors:
                body = mag_text
            elif mag == 1 and not imag:
                body = " * ".join(factors)
            else:
                body = " * ".join([mag_text] + factors)
            pieces.append((negative, body))
    first_neg, first_body = pieces[0]
    out = ("-" if first_neg else "") + first_body
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out
