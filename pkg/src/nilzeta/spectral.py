"""Numeric spectral verification: Galerkin eigenvalues, growth fits, zeta sums.

The Schroedinger-type operator produced by :func:`~nilzeta.weyl.delta1` is
discretized in the Hermite-function basis.  Matrix entries are assembled from
ladder matrices at an enlarged size (basis size plus the operator's total
degree) and then truncated, which makes every retained entry exact up to
float rounding; the truncated problem is therefore a genuine Rayleigh-Ritz
restriction and eigenvalues decrease monotonically in the basis size.

Convergence is certified by doubling: an eigenvalue counts as converged when
it moves relatively less than a drift tolerance between the basis size and
its double.  Fits of the converged spectrum give the growth exponent, the
abscissa of convergence of the eigenvalue power series, and tail bounds for
truncated zeta values — tail bounds are reported, never silently added.

The Hurwitz-zeta oracle used for residue checks is an independent
Euler-Maclaurin implementation (no external special-function dependency).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import AlgebraSpec
from .weyl import WeylOperator, delta1

_SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Exact-entry Galerkin assembly
# ---------------------------------------------------------------------------


def _axis_matrices(size: int) -> tuple[np.ndarray, np.ndarray]:
    """Position and derivative matrices in the Hermite-function basis."""
    lower = np.zeros((size, size))
    for k in range(1, size):
        lower[k - 1, k] = math.sqrt(k)
    x_mat = (lower + lower.T) / _SQRT2
    d_mat = (lower - lower.T) / _SQRT2
    return x_mat, d_mat


def hermite_matrix(w: WeylOperator, basis_size: int) -> np.ndarray:
    """Galerkin matrix of a Weyl operator in the Hermite-function basis.

    ``basis_size`` counts basis functions per axis (total basis_size**n).
    Entries are assembled at size basis_size + total_degree and truncated,
    so every retained entry equals the exact infinite-basis matrix element
    (up to float rounding).  Supports n = 1 and n = 2; larger n is rejected.
    """
    n = w.n
    if n > 2:
        raise ValueError("Hermite assembly supports n = 1 or n = 2 only")
    if basis_size < 1:
        raise ValueError("basis size must be positive")
    margin = max(w.total_degree(), 0)
    size = basis_size + margin
    x_mat, d_mat = _axis_matrices(size)
    x_pows = [np.eye(size)]
    d_pows = [np.eye(size)]
    max_exp = 0
    for (a, b) in w.terms:
        max_exp = max(max_exp, max(a), max(b))
    for _ in range(max_exp):
        x_pows.append(x_pows[-1] @ x_mat)
        d_pows.append(d_pows[-1] @ d_mat)

    total_dim = size ** n
    full = np.zeros((total_dim, total_dim), dtype=complex)
    for (a, b), coeff in w.terms.items():
        axis_mats = [x_pows[a[i]] @ d_pows[b[i]] for i in range(n)]
        term = axis_mats[0]
        for mat in axis_mats[1:]:
            term = np.kron(term, mat)
        full += complex(coeff) * term

    if n == 1:
        sub = full[:basis_size, :basis_size]
    else:
        idx = [k1 * size + k2 for k1 in range(basis_size) for k2 in range(basis_size)]
        sub = full[np.ix_(idx, idx)]
    if np.allclose(sub.imag, 0.0, atol=0.0):
        return sub.real.copy()
    return sub


# ---------------------------------------------------------------------------
# Eigenvalues with doubling-certified convergence
# ---------------------------------------------------------------------------


@dataclass
class SpectralEstimate:
    """Converged spectrum of the algebra's Schroedinger-type operator.

    ``eigenvalues`` holds the converged ascending prefix (refined values from
    the doubled basis).  Fit fields are populated by
    :func:`abscissa_and_residue` (or :func:`fit_growth`).
    """

    spec: AlgebraSpec
    basis_size: int
    drift_tol: float
    converged_count: int
    eigenvalues: np.ndarray
    theta: Optional[float] = None
    growth_constant: Optional[float] = None
    fit_residual: Optional[float] = None
    abscissa: Optional[float] = None
    schatten_order: Optional[float] = None

    def to_json_dict(self, head: int = 10) -> dict:
        return {
            "basis_size": self.basis_size,
            "drift_tol": self.drift_tol,
            "converged": self.converged_count,
            "eigenvalues_head": [float(v) for v in self.eigenvalues[:head]],
            "theta": self.theta,
            "abscissa": self.abscissa,
            "fit_residual": self.fit_residual,
            "schatten_order": self.schatten_order,
        }


_EST_CACHE: dict = {}
_EIGH_CACHE: dict = {}


def _eigvals(spec: AlgebraSpec, basis_size: int) -> np.ndarray:
    mat = hermite_matrix(delta1(spec), basis_size)
    return np.linalg.eigvalsh(mat)


def eigenvalues(
    spec: AlgebraSpec, basis_size: int, drift_tol: float = 1e-8
) -> SpectralEstimate:
    """Eigenvalues converged under basis doubling (results cached).

    An eigenvalue is converged when its relative drift between basis sizes N
    and 2N is below ``drift_tol``; only the contiguous prefix counts.
    """
    key = (spec, basis_size, drift_tol)
    cached = _EST_CACHE.get(key)
    if cached is not None:
        return cached
    coarse = _eigvals(spec, basis_size)
    fine = _eigvals(spec, 2 * basis_size)
    count = 0
    for k in range(len(coarse)):
        scale = max(1.0, abs(fine[k]))
        if abs(coarse[k] - fine[k]) <= drift_tol * scale:
            count += 1
        else:
            break
    est = SpectralEstimate(
        spec=spec,
        basis_size=basis_size,
        drift_tol=drift_tol,
        converged_count=count,
        eigenvalues=fine[:count].copy(),
    )
    _EST_CACHE[key] = est
    return est


MIN_FIT_COUNT = 50


def fit_growth(est: SpectralEstimate) -> tuple[float, float, float]:
    """Least-squares power-law fit over the top half of the converged spectrum.

    Fits log lambda_k = log C + theta log k (k the 1-based rank) and fills the
    estimate's ``theta``, ``growth_constant``, ``abscissa`` (-1/theta),
    ``schatten_order`` (2/theta: the critical Schatten order of the inverse
    square root) and ``fit_residual`` fields.  Requires at least
    ``MIN_FIT_COUNT`` converged eigenvalues.
    """
    count = est.converged_count
    if count < MIN_FIT_COUNT:
        raise ValueError(
            f"only {count} converged eigenvalues; need at least {MIN_FIT_COUNT} "
            f"for a growth fit - increase the basis size"
        )
    lo = count // 2
    ranks = np.arange(lo + 1, count + 1, dtype=float)
    vals = est.eigenvalues[lo:count]
    if np.any(vals <= 0):
        raise ValueError("non-positive eigenvalue in fit window")
    xs, ys = np.log(ranks), np.log(vals)
    theta, log_c = np.polyfit(xs, ys, 1)
    resid = float(np.sqrt(np.mean((ys - (theta * xs + log_c)) ** 2)))
    est.theta = float(theta)
    est.growth_constant = float(math.exp(log_c))
    est.fit_residual = resid
    est.abscissa = float(-1.0 / theta)
    est.schatten_order = float(2.0 / theta)
    return float(theta), float(math.exp(log_c)), resid


def abscissa_and_residue(
    spec: AlgebraSpec, est: SpectralEstimate, eps: float = 1e-4
) -> tuple[float, Optional[float]]:
    """Fitted convergence abscissa, plus the residue at the leading pole.

    The residue is computed only when the converged spectrum is an exact
    arithmetic progression a + d*k (then the eigenvalue zeta is
    d^z * hurwitz_zeta(-z, a/d) with a single pole at z = -1, and the residue
    is evaluated by symmetric sampling of (z+1) times the series there).
    Otherwise the residue slot is None.
    """
    if est.theta is None:
        fit_growth(est)
    vals = est.eigenvalues[: est.converged_count]
    residue: Optional[float] = None
    if len(vals) >= 10:
        diffs = np.diff(vals)
        d = float(np.mean(diffs))
        if d > 0 and float(np.max(np.abs(diffs - d))) < 1e-8:
            a = float(vals[0])
            def g(z: float) -> float:
                val = (z + 1.0) * (d ** z) * hurwitz_zeta(-z, a / d).real
                return val
            residue = 0.5 * (g(-1.0 - eps) + g(-1.0 + eps))
    assert est.abscissa is not None
    return est.abscissa, residue


# ---------------------------------------------------------------------------
# Hurwitz zeta (Euler-Maclaurin)
# ---------------------------------------------------------------------------

_BERNOULLI_2J = (
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
)


def hurwitz_zeta(s: complex, a: float, terms: int = 25, corrections: int = 8) -> complex:
    """Hurwitz zeta sum_{k>=0} (k+a)^{-s} by Euler-Maclaurin continuation.

    Valid for a > 0 and s != 1 (simple pole).  ``terms`` direct terms are
    summed; the integral, midpoint, and ``corrections`` Bernoulli correction
    terms continue the remainder.  Accuracy is far below 1e-10 for the
    moderate arguments used here.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    s = complex(s)
    if s == 1:
        raise ZeroDivisionError("Hurwitz zeta has a pole at s = 1")
    if corrections > len(_BERNOULLI_2J):
        raise ValueError(f"at most {len(_BERNOULLI_2J)} correction terms available")
    total = 0.0 + 0.0j
    for k in range(terms):
        total += (k + a) ** (-s)
    m = terms + a
    total += m ** (1 - s) / (s - 1)
    total += 0.5 * m ** (-s)
    rising = s  # (s)_1
    fact = 1.0
    for j in range(1, corrections + 1):
        fact *= (2 * j - 1) * (2 * j)
        total += _BERNOULLI_2J[j - 1] / fact * rising * m ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


# ---------------------------------------------------------------------------
# Truncated zeta values with explicit tail bounds
# ---------------------------------------------------------------------------

_TAIL_SAFETY = 1.25


def _eigh(spec: AlgebraSpec, basis_size: int) -> tuple[np.ndarray, np.ndarray]:
    key = (spec, basis_size)
    cached = _EIGH_CACHE.get(key)
    if cached is None:
        mat = hermite_matrix(delta1(spec), basis_size)
        cached = np.linalg.eigh(mat)
        _EIGH_CACHE[key] = cached
    return cached


def zeta_value(
    spec: AlgebraSpec,
    x_weight: Optional[WeylOperator],
    z: complex,
    basis_size: int,
    drift_tol: float = 1e-8,
) -> tuple[complex, float]:
    """Truncated spectral zeta value with an explicit tail bound.

    Returns ``(value, tail_bound)`` where ``value`` sums lambda_k^z over the
    converged eigenvalues (weighted by the diagonal matrix elements of
    ``x_weight`` in the eigenbasis when given) and ``tail_bound`` estimates
    the dropped tail from the fitted growth law.  The bound is reported, not
    added.  Requires Re z strictly left of the fitted abscissa; otherwise the
    series diverges and the request is refused with a pointer to the pole
    lattice.
    """
    z = complex(z)
    est = eigenvalues(spec, basis_size, drift_tol)
    if est.theta is None:
        fit_growth(est)
    assert est.abscissa is not None and est.theta is not None
    assert est.growth_constant is not None
    if z.real >= est.abscissa:
        raise ValueError(
            f"Re z = {z.real} is not left of the fitted convergence abscissa "
            f"{est.abscissa:.6f}; the truncated series does not converge there. "
            f"Pole locations to the right are predicted by the pole lattice "
            f"(reduction.pole_lattice / the 'poles' CLI command)."
        )
    count = est.converged_count
    vals = est.eigenvalues[:count]
    if x_weight is None:
        weights = np.ones(count)
    else:
        if x_weight.n != spec.n:
            raise ValueError("weight operator has the wrong variable count")
        _, vecs = _eigh(spec, basis_size)
        mat = hermite_matrix(x_weight, basis_size)
        weights = np.array(
            [np.vdot(vecs[:, k], mat @ vecs[:, k]) for k in range(count)]
        )
    powered = np.exp(z * np.log(vals))
    value = complex(np.sum(powered * weights))

    u = est.theta * z.real  # < -1 by the precondition
    w_bar = 1.0 if x_weight is None else float(
        np.max(np.abs(weights[max(0, count - count // 10 - 1):]))
    )
    c_fit = est.growth_constant
    tail = _TAIL_SAFETY * w_bar * (c_fit ** z.real) * (count - 1) ** (u + 1) / (-u - 1)
    return value, float(tail)
