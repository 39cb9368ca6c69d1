"""Mandelbrot and characteristic polynomials evaluated by their recurrences.

No expanded coefficient vector is ever formed: the monomial coefficients
of these polynomials grow doubly exponentially, while the recurrences cost
O(n) per point and are far better conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import NonConvergenceError, SizeError
from .matrices import _check_order, mandelbrot_matrix

UNIT_ROUNDOFF = np.finfo(np.float64).eps / 2
DEFAULT_NEWTON_TOL = 4 * UNIT_ROUNDOFF
DENSE_SPECTRUM_CEILING = 8
LARGE_SPECTRUM_CEILING = 12


@dataclass(frozen=True)
class PolyEval:
    value: object
    derivative: object


def eval_C(n: int, z) -> PolyEval:
    """``C_n(z) = det(zI - M_n)`` and its derivative.

    ``C_0 = 1``, ``C_{k+1} = z C_k**2 - 1``; the derivative follows from
    ``C'_{k+1} = C_k**2 + 2 z C_k C'_k``. ``z`` may be a scalar or an array.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    c = 1.0 + 0 * z
    dc = 0.0 * z
    for _ in range(n):
        c, dc = z * c * c - 1.0, c * c + 2.0 * z * c * dc
    return PolyEval(c, dc)


def eval_p(n: int, z) -> PolyEval:
    """Mandelbrot polynomial ``p_n(z)`` with ``p_0 = 0``, ``p_{k+1} = z p_k**2 + 1``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    p = 0.0 * z
    dp = 0.0 * z
    for _ in range(n):
        p, dp = z * p * p + 1.0, p * p + 2.0 * z * p * dp
    return PolyEval(p, dp)


def perron_seed(n: int) -> float:
    """Asymptotic starting point ``2 - (3/8) pi**2 4**(-n)``."""
    return 2.0 - 0.375 * math.pi**2 * 4.0 ** (-n)


@dataclass(frozen=True)
class PerronResult:
    n: int
    rho: float
    iterations: int
    residual: float
    seed: float
    history: tuple = field(default=(), repr=False)


def perron_root(n: int, tol: float = DEFAULT_NEWTON_TOL, max_iter: int = 50, seed=None) -> PerronResult:
    """Dominant eigenvalue of ``M_n`` by Newton's method on ``C_n``.

    Starts from :func:`perron_seed` unless ``seed`` is given. Stops when the
    relative step is at most ``tol``, or when the residual rises again after
    having dropped below ``1e-10`` (the previous iterate is kept).

    Raises
    ------
    NonConvergenceError
        If ``max_iter`` steps do not meet either rule, or if the limit is not
        the largest real root in ``[1, 2)``. ``history`` holds the iterates.
    """
    n = _check_order(n)
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = float(perron_seed(n) if seed is None else seed)
    start = z
    history = [z]
    ev = eval_C(n, z)
    residual = abs(ev.value)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        z_new = z - ev.value / ev.derivative
        history.append(z_new)
        ev_new = eval_C(n, z_new)
        res_new = abs(ev_new.value)
        if abs(z_new - z) <= tol * abs(z_new):
            z, ev, residual = z_new, ev_new, res_new
            converged = True
            break
        if residual < 1e-10 and res_new > residual:
            converged = True
            break
        z, ev, residual = z_new, ev_new, res_new
    if not converged:
        raise NonConvergenceError(
            f"Newton iteration for rho_{n} did not converge in {max_iter} steps", history
        )
    if not (1.0 <= z < 2.0) or not ev.derivative > 0:
        raise NonConvergenceError(f"Newton iteration for rho_{n} reached a non-dominant root {z!r}", history)
    return PerronResult(n, z, iterations, float(residual), start, tuple(history))


def spectrum_small(n: int, allow_large: bool = False) -> np.ndarray:
    """All eigenvalues of ``M_n`` by a dense nonsymmetric eigensolver.

    Sorted by real part, then imaginary part. Orders above
    ``DENSE_SPECTRUM_CEILING`` need ``allow_large`` (and stop at 12).
    """
    n = _check_order(n)
    ceiling = LARGE_SPECTRUM_CEILING if allow_large else DENSE_SPECTRUM_CEILING
    if n > ceiling:
        raise SizeError(f"dense spectrum limited to n <= {ceiling} (allow_large={allow_large})")
    a = mandelbrot_matrix(n).to_dense(np.float64)
    w = scipy.linalg.eigvals(a, overwrite_a=True, check_finite=False)
    return w[np.lexsort((w.imag, w.real))]


def periodic_orbit_check(n: int, lam, steps_tol: float = 1e-6) -> bool:
    """Whether ``c = -lam`` sends ``0`` back to (near) ``0`` after ``n + 1`` steps."""
    c = -complex(lam)
    z = 0j
    for _ in range(n + 1):
        z = z * z + c
    return abs(z) <= steps_tol
