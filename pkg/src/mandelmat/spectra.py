"""Singular values of ``M_n`` through the symmetric matrix ``S_n = M_n J_n``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import NonConvergenceError, SizeError, StructureViolationError
from .matrices import (
    _check_order,
    hessenberg_det,
    jordan_wielandt,
    mandelbrot_matrix,
    permutation_sign_reversal,
    reverse_columns,
    s_matrix,
)
from .polyring import bareiss_det

DENSE_SVD_CEILING = 10
LARGE_SVD_CEILING = 13
#: Bareiss on a dense Python-int matrix is used up to this dimension.
BAREISS_MAX_DIM = 127


@dataclass(frozen=True, eq=False)
class SingularTriple:
    n: int
    sigma: float
    u: np.ndarray
    v: np.ndarray
    iterations: int
    residual: float = float("nan")
    rayleigh_history: tuple = field(default=(), repr=False)


@dataclass(frozen=True, eq=False)
class SingularSpectrum:
    n: int
    sigmas: np.ndarray
    s_eigs: np.ndarray


def _symmetric_form(n: int, transpose: bool):
    m = mandelbrot_matrix(n)
    if transpose:
        m = m.transpose()
    # M^T J is symmetric as well, since M is persymmetric
    return m, reverse_columns(m)


def dominant_singular_triple(
    n: int,
    tol: float = 1e-10,
    max_iter: int = 100_000,
    transpose: bool = False,
    rayleigh_tol: float = 1e-14,
) -> SingularTriple:
    """Largest singular value of ``M_n`` with its singular vectors.

    Power iteration on ``S_n`` from the all-ones vector. ``S_n`` is
    nonnegative and its dominant eigenvalue is ``sigma_1`` (the runner-up is
    ``-sigma_2``), so iterates stay positive. Stops once the relative change of
    the Rayleigh quotient is below ``rayleigh_tol`` on two consecutive steps and
    ``||M v - sigma u||_inf <= tol`` with ``v = J u``.

    With ``transpose=True`` the same is done for ``M_n^T``; the roles of
    ``u`` and ``v`` then swap.
    """
    n = _check_order(n)
    m, s = _symmetric_form(n, transpose)
    a = s.to_scipy()
    mm = m.to_scipy()
    d = m.dim
    x = np.full(d, 1.0 / math.sqrt(d))
    history = []
    lam_old = None
    calm = 0
    res = float("inf")
    for it in range(1, max_iter + 1):
        y = a @ x
        lam = float(x @ y)
        history.append(lam)
        if lam_old is not None and abs(lam - lam_old) <= rayleigh_tol * abs(lam):
            calm += 1
        else:
            calm = 0
        if calm >= 2:
            res = float(np.max(np.abs(mm @ x[::-1] - lam * x)))
            if res <= tol:
                break
        lam_old = lam
        x = y / np.linalg.norm(y)
    else:
        raise NonConvergenceError(
            f"power iteration on S_{n} did not converge in {max_iter} steps", history
        )
    u = x if x[0] > 0 else -x
    v = u[::-1].copy()
    check = float(np.max(np.abs(mm @ v - lam * u)))
    if check > tol:
        raise StructureViolationError(f"||M v - sigma u||_inf = {check:.3e} exceeds tolerance")
    return SingularTriple(n, lam, u, v, it, check, tuple(history))


def all_singular_values(n: int, allow_large: bool = False) -> SingularSpectrum:
    """Every singular value of ``M_n`` from a dense symmetric eigensolve of ``S_n``."""
    n = _check_order(n)
    ceiling = LARGE_SVD_CEILING if allow_large else DENSE_SVD_CEILING
    if n > ceiling:
        raise SizeError(f"dense singular spectrum limited to n <= {ceiling} (allow_large={allow_large})")
    w = scipy.linalg.eigvalsh(s_matrix(n).to_dense(np.float64), check_finite=False)
    w = w[np.argsort(-np.abs(w), kind="stable")]
    return SingularSpectrum(n, np.abs(w), w)


def alternates_in_sign(values, tol: float = 1e-9) -> bool:
    """Descending-magnitude order alternates ``+, -, +, ...`` and ends positive.

    Magnitudes closer than ``tol`` make the order ambiguous and count as failure.
    """
    w = np.asarray(values, dtype=float)
    w = w[np.argsort(-np.abs(w), kind="stable")]
    mags = np.abs(w)
    if w.size == 0 or np.any(mags[:-1] - mags[1:] <= tol) or mags[-1] <= tol:
        return False
    expected = np.where(np.arange(w.size) % 2 == 0, 1.0, -1.0)
    return bool(np.all(np.sign(w) == expected)) and w[-1] > 0


def sign_alternation_check(n: int, tol: float = 1e-9, allow_large: bool = False) -> bool:
    if n < 2:
        raise ValueError("sign alternation is stated for n > 1")
    return alternates_in_sign(all_singular_values(n, allow_large).s_eigs, tol)


@dataclass(frozen=True)
class SFactsReport:
    n: int
    det: int
    trace: int
    trace_square: int
    square_is_mmt: bool
    det_method: str


def s_determinant(n: int) -> tuple[int, str]:
    """Exact ``det S_n``: Bareiss for small ``d``, else ``det M_n * det J_n``."""
    s = s_matrix(n)
    if s.dim <= BAREISS_MAX_DIM:
        return bareiss_det(s.to_dense().tolist()), "bareiss"
    if s != reverse_columns(mandelbrot_matrix(n)):
        raise StructureViolationError("S_n differs from M_n J_n")
    return hessenberg_det(mandelbrot_matrix(n)) * permutation_sign_reversal(s.dim), "product"


def s_facts_check(n: int) -> SFactsReport:
    """Exact integer checks on ``S_n``; raises on any mismatch.

    ``det S_n = -1`` (n > 1), ``trace S_n = 1``, ``trace S_n**2 = 2**(n+1) - 3``
    and ``S_n**2 = M_n M_n^T``.
    """
    n = _check_order(n)
    s = s_matrix(n)
    m = mandelbrot_matrix(n)
    det, how = s_determinant(n)
    trace = s.trace()
    sq = s @ s
    trace_sq = sq.trace()
    square_ok = sq == m @ m.transpose()
    report = SFactsReport(n, det, trace, trace_sq, square_ok, how)
    problems = []
    if n > 1 and det != -1:
        problems.append(f"det = {det}")
    if n == 1 and det != 1:
        problems.append(f"det = {det}")
    if trace != 1:
        problems.append(f"trace = {trace}")
    if trace_sq != (1 << (n + 1)) - 3:
        problems.append(f"trace S^2 = {trace_sq}")
    if not square_ok:
        problems.append("S^2 != M M^T")
    if problems:
        raise StructureViolationError(f"S_{n} facts violated: " + ", ".join(problems))
    return report


def jw_pairing_check(n: int, tol: float = 1e-10, allow_large: bool = False) -> bool:
    """Jordan-Wielandt spectrum is symmetric about 0 with positive half = singular values."""
    n = _check_order(n)
    ceiling = LARGE_SVD_CEILING if allow_large else DENSE_SVD_CEILING
    if n > ceiling:
        raise SizeError(f"dense Jordan-Wielandt spectrum limited to n <= {ceiling}")
    w = scipy.linalg.eigvalsh(jordan_wielandt(n).to_dense(np.float64), check_finite=False)
    w.sort()
    scale = max(1.0, float(np.abs(w).max()))
    if np.max(np.abs(w + w[::-1])) > tol * scale:
        return False
    d = w.size // 2
    positive = w[d:][::-1]
    sig = all_singular_values(n, allow_large).sigmas
    return bool(np.max(np.abs(positive - sig)) <= tol * scale)


def conjectured_sigma_bound(n) -> float:
    """Fitted upper bound ``sqrt(2.0193 n - 0.7914)`` for the largest singular value."""
    return math.sqrt(2.0193 * n - 0.7914)
