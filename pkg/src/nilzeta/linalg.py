"""Exact sparse linear algebra over the Gaussian rationals.

Vectors are dicts mapping hashable column keys to nonzero
:class:`~nilzeta.scalars.GaussianRational` entries.  Two primitives are
provided:

* :func:`kernel_basis` — the nullspace of a small dense-ish matrix, used for
  the isotropic-subalgebra computation;
* :func:`reduce_against` — reduction of a vector against a set of pivot rows
  keyed by their leading column, used by the degree-slice elimination and the
  filtration-order solver.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, Sequence, TypeVar

from .scalars import ONE, GaussianRational

K = TypeVar("K", bound=Hashable)

Vector = dict
# Vector[K] = dict[K, GaussianRational]; plain dict at runtime.


def vec_add_scaled(target: dict, source: Mapping, coeff: GaussianRational) -> None:
    """In-place target += coeff * source, dropping entries that cancel."""
    if coeff.is_zero():
        return
    for key, value in source.items():
        new = target.get(key, None)
        new = coeff * value if new is None else new + coeff * value
        if new.is_zero():
            target.pop(key, None)
        else:
            target[key] = new


def vec_scale(vec: Mapping, coeff: GaussianRational) -> dict:
    if coeff.is_zero():
        return {}
    return {k: coeff * v for k, v in vec.items()}


def reduce_against(
    vec: Mapping,
    pivots: Mapping,
    key_order: Callable,
) -> tuple[dict, dict]:
    """Reduce ``vec`` against pivot rows.

    ``pivots`` maps a column key to a row normalized to have coefficient 1 at
    that key; the row's other support may include further pivot keys, which is
    handled by repeated elimination at the largest remaining pivot key under
    ``key_order``.  Terminates because each elimination step removes the
    largest pivot key present and pivot rows only contain keys <= their own
    leading key under ``key_order``.

    Returns ``(residual, used)`` where ``used`` maps pivot keys to the
    coefficients subtracted, i.e. ``vec == residual + sum(used[k] * pivots[k])``.
    """
    residual = dict(vec)
    used: dict = {}
    while True:
        hits = [k for k in residual if k in pivots]
        if not hits:
            return residual, used
        top = max(hits, key=key_order)
        coeff = residual[top]
        vec_add_scaled(residual, pivots[top], -coeff)
        used[top] = used.get(top, GaussianRational(0)) + coeff


def kernel_basis(
    rows: Iterable[Mapping],
    columns: Sequence,
) -> list[dict]:
    """Basis of {v : for every row r, sum_c r[c] * v[c] == 0}.

    ``columns`` fixes the variable order; pivot columns are chosen in that
    order.  Returned vectors are exact, one per free column, each normalized
    so the free column's entry is 1.
    """
    col_pos = {c: k for k, c in enumerate(columns)}
    work: list[dict] = []
    for row in rows:
        r = {c: v for c, v in row.items() if not v.is_zero()}
        if r:
            work.append(r)

    pivot_of_col: dict = {}
    echelon: list[tuple[object, dict]] = []
    for row in work:
        r = dict(row)
        for col, prow in echelon:
            if col in r:
                vec_add_scaled(r, prow, -r[col])
        if not r:
            continue
        pivot_col = min(r, key=lambda c: col_pos[c])
        inv = r[pivot_col].inverse()
        r = vec_scale(r, inv)
        for col, prow in echelon:
            if pivot_col in prow:
                vec_add_scaled(prow, r, -prow[pivot_col])
        echelon.append((pivot_col, r))
        pivot_of_col[pivot_col] = r

    free_cols = [c for c in columns if c not in pivot_of_col]
    basis = []
    for free in free_cols:
        vec = {free: ONE}
        for col, prow in pivot_of_col.items():
            if free in prow:
                coeff = -prow[free]
                if not coeff.is_zero():
                    vec[col] = coeff
        basis.append(vec)
    return basis
