"""The family of nilpotent Lie algebras and its combinatorial index sets.

An algebra in the family is determined by

* ``n`` — the number of generators ``X_1 .. X_n``,
* ``alpha`` — a tuple of positive ints, one bound per generator,
* ``partition`` — a partition of ``{0, .., n-1}`` into blocks (stored
  0-based; the JSON surface is 1-based).

Each block ``I_j`` contributes the box of multi-indices ``beta`` with
``beta <= sum_{k in I_j} alpha_k * delta_k`` componentwise; the union of the
boxes (deduplicated) indexes the second family of basis elements ``Y^beta``.
The only nonzero brackets are ``[X_k, Y^beta] = Y^{beta - delta_k}`` when
``beta_k >= 1``; the algebra is nilpotent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .indices import MultiIndex, box, mi_delta, mi_sub
from .linalg import kernel_basis
from .scalars import ONE, GaussianRational

# Basis symbols: ("X", k) with k 0-based, or ("Y", beta) with beta a multi-index.
Symbol = tuple[str, Union[int, MultiIndex]]
LieElement = dict


class SpecError(ValueError):
    """Raised when an algebra description fails validation."""


class JacobiError(AssertionError):
    """Raised when a structure-constant table violates the Jacobi identity.

    The offending basis triple is available as ``.triple``.
    """

    def __init__(self, triple: tuple[Symbol, Symbol, Symbol], message: str) -> None:
        super().__init__(message)
        self.triple = triple


@dataclass(frozen=True)
class AlgebraSpec:
    """Validated, normalized description of one algebra in the family.

    ``partition`` holds 0-based generator positions, each block sorted
    ascending, blocks sorted by their smallest element.  Construct via
    :func:`algebra_spec` or :func:`validate_spec`; the constructor itself
    checks the normal form.
    """

    n: int
    alpha: tuple[int, ...]
    partition: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise SpecError(f"n must be a positive int, got {self.n!r}")
        if len(self.alpha) != self.n or any(
            not isinstance(a, int) or a < 1 for a in self.alpha
        ):
            raise SpecError(
                f"alpha must be {self.n} positive ints, got {self.alpha!r}"
            )
        seen: set[int] = set()
        for block in self.partition:
            if not block or list(block) != sorted(block):
                raise SpecError(f"partition block {block!r} must be nonempty and sorted")
            for k in block:
                if not isinstance(k, int) or not 0 <= k < self.n:
                    raise SpecError(f"partition entry {k!r} out of range 0..{self.n - 1}")
                if k in seen:
                    raise SpecError(f"generator position {k} appears in two blocks")
                seen.add(k)
        if seen != set(range(self.n)):
            raise SpecError("partition must cover every generator position exactly once")
        mins = [block[0] for block in self.partition]
        if mins != sorted(mins):
            raise SpecError("blocks must be sorted by their smallest element")

    @property
    def p(self) -> int:
        """Number of partition blocks."""
        return len(self.partition)

    def to_json_dict(self) -> dict:
        """JSON form with 1-based generator indices."""
        return {
            "n": self.n,
            "alpha": list(self.alpha),
            "partition": [[k + 1 for k in block] for block in self.partition],
        }


def algebra_spec(
    n: int,
    alpha: Sequence[int],
    partition: Iterable[Iterable[int]] | None = None,
    *,
    one_based: bool = False,
) -> AlgebraSpec:
    """Build a normalized :class:`AlgebraSpec`.

    ``partition`` defaults to singleton blocks.  With ``one_based=True`` the
    block entries are 1-based (the JSON convention).
    """
    if partition is None:
        blocks = [(k,) for k in range(n)]
    else:
        shift = 1 if one_based else 0
        blocks = [tuple(sorted(int(k) - shift for k in block)) for block in partition]
    blocks.sort(key=lambda b: b[0] if b else -1)
    return AlgebraSpec(int(n), tuple(int(a) for a in alpha), tuple(blocks))


def validate_spec(data: Mapping) -> AlgebraSpec:
    """Parse and validate the JSON form ``{"n", "alpha", "partition"}`` (1-based)."""
    try:
        n = data["n"]
        alpha = data["alpha"]
        partition = data["partition"]
    except (KeyError, TypeError) as exc:
        raise SpecError(f"missing required field: {exc}") from exc
    if not isinstance(alpha, (list, tuple)):
        raise SpecError("alpha must be a list of positive ints")
    if not isinstance(partition, (list, tuple)) or not all(
        isinstance(b, (list, tuple)) for b in partition
    ):
        raise SpecError("partition must be a list of lists of 1-based generator indices")
    if not all(isinstance(k, int) and k >= 1 for b in partition for k in b):
        raise SpecError("partition entries must be 1-based positive ints")
    if not isinstance(n, int):
        raise SpecError("n must be an int")
    return algebra_spec(n, [int(a) for a in alpha], partition, one_based=True)


def load_spec(path: str) -> AlgebraSpec:
    """Load and validate an algebra description from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return validate_spec(json.load(fh))


# ---------------------------------------------------------------------------
# Index sets
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def block_bound(spec: AlgebraSpec, j: int) -> MultiIndex:
    """The componentwise bound of block j's box: alpha_k on the block, else 0."""
    return tuple(
        spec.alpha[k] if k in spec.partition[j] else 0 for k in range(spec.n)
    )


@lru_cache(maxsize=None)
def block_box(spec: AlgebraSpec, j: int) -> tuple[MultiIndex, ...]:
    """All multi-indices of block j's box, ascending lex."""
    return tuple(box(block_bound(spec, j)))


@lru_cache(maxsize=None)
def index_set(spec: AlgebraSpec) -> tuple[MultiIndex, ...]:
    """The deduplicated union of the block boxes, ascending lex.

    This indexes the ``Y^beta`` basis elements.  The zero multi-index lies in
    every block's box and appears exactly once here.
    """
    union = set()
    for j in range(spec.p):
        union.update(block_box(spec, j))
    return tuple(sorted(union))


@lru_cache(maxsize=None)
def y_position(spec: AlgebraSpec) -> dict:
    """Map multi-index -> position in :func:`index_set`."""
    return {beta: k for k, beta in enumerate(index_set(spec))}


@lru_cache(maxsize=None)
def basis(spec: AlgebraSpec) -> tuple[Symbol, ...]:
    """All basis symbols: X's by position, then Y's in index_set order."""
    return tuple(("X", k) for k in range(spec.n)) + tuple(
        ("Y", beta) for beta in index_set(spec)
    )


def block_of_index(spec: AlgebraSpec, beta: MultiIndex) -> int | None:
    """The smallest block j whose box contains beta, or None."""
    for j in range(spec.p):
        bound = block_bound(spec, j)
        if all(b <= e for b, e in zip(beta, bound)):
            return j
    return None


# ---------------------------------------------------------------------------
# Brackets, Jacobi, nilpotency, isotropic subalgebra
# ---------------------------------------------------------------------------


def bracket(spec: AlgebraSpec, a: Symbol, b: Symbol) -> LieElement:
    """The Lie bracket of two basis symbols as a sparse element.

    Only ``[X_k, Y^beta] = Y^{beta - delta_k}`` (when ``beta_k >= 1``) and its
    antisymmetric counterpart are nonzero.
    """
    kind_a, data_a = a
    kind_b, data_b = b
    if kind_a == "X" and kind_b == "Y":
        beta = data_b
        k = data_a
        if beta[k] >= 1:
            target = mi_sub(beta, mi_delta(spec.n, k))
            if target not in y_position(spec):
                raise SpecError(
                    f"bracket left the index set: {beta} - delta_{k} = {target}"
                )
            return {("Y", target): ONE}
        return {}
    if kind_a == "Y" and kind_b == "X":
        out = bracket(spec, b, a)
        return {sym: -c for sym, c in out.items()}
    return {}


def structure_constants(spec: AlgebraSpec) -> dict:
    """Nonzero brackets of basis pairs: (sym_a, sym_b) -> sparse element."""
    table: dict = {}
    syms = basis(spec)
    for a in syms:
        for b in syms:
            out = bracket(spec, a, b)
            if out:
                table[(a, b)] = out
    return table


def _table_bracket(table: Mapping, a: Symbol, b: Symbol) -> LieElement:
    return dict(table.get((a, b), {}))


def _bracket_elem(table: Mapping, a: Symbol, elem: LieElement) -> LieElement:
    """[a, elem] extended linearly in the second slot."""
    out: LieElement = {}
    for sym, coeff in elem.items():
        for sym2, c2 in _table_bracket(table, a, sym).items():
            new = out.get(sym2, GaussianRational(0)) + coeff * c2
            if new.is_zero():
                out.pop(sym2, None)
            else:
                out[sym2] = new
    return out


def jacobi_check(spec: AlgebraSpec, table: Mapping | None = None) -> None:
    """Verify antisymmetry and the Jacobi identity on every basis triple.

    ``table`` defaults to :func:`structure_constants`; passing a corrupted
    table raises :class:`JacobiError` naming the first failing triple.
    """
    if table is None:
        table = structure_constants(spec)
    syms = basis(spec)
    for a in syms:
        for b in syms:
            ab = _table_bracket(table, a, b)
            ba = _table_bracket(table, b, a)
            merged = dict(ab)
            for sym, c in ba.items():
                new = merged.get(sym, GaussianRational(0)) + c
                if new.is_zero():
                    merged.pop(sym, None)
                else:
                    merged[sym] = new
            if merged:
                raise JacobiError(
                    (a, b, b),
                    f"antisymmetry fails for [{_sym_str(a)}, {_sym_str(b)}]",
                )
    for a in syms:
        for b in syms:
            for c in syms:
                total: LieElement = {}
                for first, pair in ((a, (b, c)), (b, (c, a)), (c, (a, b))):
                    inner = _table_bracket(table, *pair)
                    part = _bracket_elem(table, first, inner)
                    for sym, coeff in part.items():
                        new = total.get(sym, GaussianRational(0)) + coeff
                        if new.is_zero():
                            total.pop(sym, None)
                        else:
                            total[sym] = new
                if total:
                    raise JacobiError(
                        (a, b, c),
                        "Jacobi identity fails on triple "
                        f"({_sym_str(a)}, {_sym_str(b)}, {_sym_str(c)})",
                    )


def _sym_str(sym: Symbol) -> str:
    kind, data = sym
    if kind == "X":
        return f"X{data + 1}"
    return "Y[" + ",".join(str(e) for e in data) + "]"


def nilpotency_class(spec: AlgebraSpec) -> int:
    """Length of the lower central series.

    Brackets of basis symbols are (up to sign) basis symbols, so every term
    of the series is spanned by a subset of the basis; the computation runs
    on symbol sets.
    """
    syms = set(basis(spec))
    current = set(syms)
    length = 0
    while current:
        length += 1
        nxt: set[Symbol] = set()
        for a in syms:
            for b in current:
                for sym in bracket(spec, a, b):
                    nxt.add(sym)
        if nxt == current:
            raise SpecError("lower central series stalled; algebra not nilpotent")
        current = nxt
    return length


def isotropic_subalgebra(spec: AlgebraSpec) -> tuple[Symbol, ...]:
    """Radical of the form (v, w) -> f([v, w]) where f reads off Y^0.

    Computed by exact linear algebra: the kernel of the pairing matrix over
    the full basis.  For every algebra in the family the result is spanned by
    basis symbols: ``Y^0`` together with all ``Y^beta`` of ``|beta| >= 2``.
    """
    syms = basis(spec)
    zero_y: Symbol = ("Y", tuple(0 for _ in range(spec.n)))
    rows = []
    for w in syms:
        row = {}
        for v in syms:
            out = bracket(spec, v, w)
            coeff = out.get(zero_y)
            if coeff is not None and not coeff.is_zero():
                row[v] = coeff
        if row:
            rows.append(row)
    kernel = kernel_basis(rows, list(syms))
    members: list[Symbol] = []
    for vec in kernel:
        if len(vec) != 1:
            raise SpecError("isotropic radical is not spanned by basis symbols")
        (sym, coeff), = vec.items()
        members.append(sym)
    members.sort(key=lambda s: syms.index(s))
    return tuple(members)
