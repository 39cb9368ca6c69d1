"""Dominant (Perron) eigenvector of ``M_n`` and its structural properties.

Two independent routes produce the vector:

* :func:`eigenvector_solve` back-substitutes the unit upper triangular part
  of ``M_n - rho I`` (rows 2..d) with the last entry fixed at 1.
* :func:`eigenvector_recursive` assembles ``x_{k+1} = [rho C_k x_k; C_k; x_k]``
  without touching the matrix.

The recursive route needs ``C_k(rho)`` for ``k < n``. Evaluating them forward
from ``C_0 = 1`` amplifies the rounding error in ``rho`` by ``C_k'(rho)``,
which grows like ``4**k``. At the Perron root ``C_n(rho) = 0`` gives
``C_{n-1} = 1/sqrt(rho)``, and inverting the recurrence,
``C_k = sqrt((1 + C_{k+1}) / rho)``, is a contraction, so the default
``anchor=True`` walks down from that end instead. ``anchor=False`` keeps the
forward evaluation for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .errors import StructureViolationError
from .matrices import _check_order, mandelbrot_matrix
from .polyeval import eval_C, perron_root

Normalization = Literal["last_entry_one", "first_entry_one"]
NORMALIZATIONS = ("last_entry_one", "first_entry_one")


@dataclass(frozen=True, eq=False)
class EigvecResult:
    """Dominant eigenvector, stored 0-based; component ``j`` (1-based) is ``components[j-1]``."""

    n: int
    rho: float
    components: np.ndarray
    normalization: str
    method: str

    @property
    def dim(self) -> int:
        return self.components.size


def _rho_for(n, rho):
    return perron_root(n).rho if rho is None else float(rho)


def eigenvector_solve(n: int, rho=None) -> EigvecResult:
    """Null vector of ``M_n - rho I`` by O(d) back-substitution, ``x_d = 1``.

    Row ``i >= 2`` reads ``x_{i-1} + sum_{j>=i} M_ij x_j = rho x_i``, so each
    row yields the next unknown upward. Row 1 is left unused.
    """
    n = _check_order(n)
    rho = _rho_for(n, rho)
    m = mandelbrot_matrix(n)
    csr = m.to_scipy()
    indptr, indices, data = csr.indptr.tolist(), csr.indices.tolist(), csr.data.tolist()
    d = m.dim
    x = [0.0] * d
    x[d - 1] = 1.0
    for i in range(d - 1, 0, -1):
        acc = 0.0
        pivot = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j >= i:
                acc += data[k] * x[j]
            elif j == i - 1:
                pivot = data[k]
        if pivot != 1.0:
            raise StructureViolationError(f"missing unit subdiagonal in row {i + 1}")
        x[i - 1] = rho * x[i] - acc
    return EigvecResult(n, rho, np.array(x), "last_entry_one", "solve")


def c_values_at_root(n: int, rho: float, anchor: bool = True) -> list[float]:
    """``[C_1(rho), ..., C_{n-1}(rho)]`` (index 0 holds ``C_0 = 1``)."""
    if not anchor:
        return [1.0] + [float(eval_C(k, rho).value) for k in range(1, n)]
    cs = [1.0] * n
    if n >= 2:
        cs[n - 1] = 1.0 / math.sqrt(rho)
        for k in range(n - 2, 0, -1):
            cs[k] = math.sqrt((1.0 + cs[k + 1]) / rho)
    return cs


def eigenvector_recursive(n: int, rho=None, anchor: bool = True) -> EigvecResult:
    """Dominant eigenvector from the block recurrence, last entry 1.

    ``x_1 = [1]`` and ``x_{k+1} = [rho C_k(rho) x_k; C_k(rho); x_k]`` with
    ``rho = rho_n`` held fixed. ``anchor`` selects how the ``C_k`` are
    obtained (see the module docstring); anchoring assumes ``rho`` is the
    Perron root of order ``n``.
    """
    n = _check_order(n)
    rho = _rho_for(n, rho)
    cs = c_values_at_root(n, rho, anchor)
    x = np.empty((1 << n) - 1)
    x[-1] = 1.0
    size = 1
    for k in range(1, n):
        block = x[x.size - size:]
        start = x.size - (2 * size + 1)
        x[start + size] = cs[k]
        x[start:start + size] = (rho * cs[k]) * block
        size = 2 * size + 1
    return EigvecResult(n, rho, x, "last_entry_one", "recursive")


def renormalize(v: EigvecResult, target: str) -> EigvecResult:
    if target not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {target!r}")
    if target == v.normalization:
        return v
    ref = v.components[-1] if target == "last_entry_one" else v.components[0]
    return replace(v, components=v.components / ref, normalization=target)


def half_ratios(v: EigvecResult) -> np.ndarray:
    """``x_j / x_{j + 2**(n-1)}`` for every upper-half index ``j``."""
    if v.n < 2:
        raise ValueError("half scaling needs n >= 2")
    h = 1 << (v.n - 1)
    x = v.components
    return x[: h - 1] / x[h:]


def half_scaling_factor(v: EigvecResult, tol: float = 1e-10, return_deviation: bool = False):
    """Common ratio ``K`` between the upper and lower halves of the vector.

    ``K`` is the least-squares fit of ``upper = K * lower``; the relative
    spread of the individual ratios around it must stay within ``tol``.
    For the exact eigenvector ``K = sqrt(rho_n)``.
    """
    if v.n < 2:
        raise ValueError("half scaling needs n >= 2")
    h = 1 << (v.n - 1)
    upper, lower = v.components[: h - 1], v.components[h:]
    k = float(upper @ lower / (lower @ lower))
    dev = float(np.max(np.abs(upper / lower - k)) / k)
    if dev > tol:
        raise StructureViolationError(f"half-scaling ratios spread by {dev:.3e} > {tol:.1e}")
    return (k, dev) if return_deviation else k


def middle_entry_check(v: EigvecResult) -> float:
    """Entry ``2**(n-1)`` of the last-entry-one vector (exactly ``1/sqrt(rho_n)`` in theory)."""
    if v.n < 2:
        raise ValueError("middle entry needs n >= 2")
    v = renormalize(v, "last_entry_one")
    return float(v.components[(1 << (v.n - 1)) - 1])


def tail_limit_sequence(m: int) -> list[int]:
    """Limit of the bottom entries as ``rho -> 2``, read bottom-up (OEIS A048896).

    Generated by ``w_1 = [1]``, ``w_{k+1} = [2 w_k; 1; w_k]``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    w = [1]
    while len(w) < m:
        w = [2 * a for a in w] + [1] + w
    return w[::-1][:m]


def tail_convergence_check(n: int, m: int, v: EigvecResult | None = None) -> float:
    """Max ``|x - limit|`` over the bottom ``m`` entries, read bottom-up."""
    if m > 1 << (n - 1):
        raise ValueError("m must not exceed 2**(n-1)")
    if v is None:
        v = eigenvector_recursive(n)
    tail = renormalize(v, "last_entry_one").components[::-1][:m]
    return float(np.max(np.abs(tail - np.array(tail_limit_sequence(m), dtype=float))))


def leading_entry_pi_check(n: int, v: EigvecResult | None = None) -> float:
    """Relative error of ``x_1 = 2**n / pi`` for the last-entry-one vector of order ``n``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if v is None:
        v = eigenvector_recursive(n)
    x1 = renormalize(v, "last_entry_one").components[0]
    return abs(x1 * math.pi / 2.0**n - 1.0)


def gould_sequence(m: int) -> list[int]:
    """Gould's sequence ``2**popcount(j - 1)`` for ``j = 1..m`` (OEIS A001316)."""
    return [1 << bin(j).count("1") for j in range(m)]


@dataclass(frozen=True)
class GouldReport:
    n: int
    m: int
    match: bool
    max_deviation: float
    scaled: tuple
    #: the factor mapping x_m to 1, times pi; an absolute-scale observation only
    pi_scale_exponent: float


def gould_head(n: int, m: int, v: EigvecResult | None = None, round_tol: float = 0.01) -> GouldReport:
    """Compare the topmost ``m`` entries, reversed and divided by ``x_m``, with Gould's sequence."""
    if m < 1 or m & (m - 1):
        raise ValueError("m must be a power of two")
    if m > 1 << (n - 1):
        raise ValueError("m must not exceed 2**(n-1)")
    if v is None:
        v = eigenvector_recursive(n)
    head = renormalize(v, "last_entry_one").components[:m][::-1]
    scaled = head / head[0]
    target = np.array(gould_sequence(m), dtype=float)
    dev = float(np.max(np.abs(scaled - np.round(scaled))))
    match = bool(np.array_equal(np.round(scaled), target)) and dev < round_tol
    # x_m = 2**e / pi  =>  e = log2(pi * x_m)
    exponent = math.log2(math.pi * head[0])
    return GouldReport(n, m, match, dev, tuple(scaled.tolist()), exponent)


def gould_head_check(n: int, m: int, v: EigvecResult | None = None) -> bool:
    return gould_head(n, m, v).match


def first_row_balance(v: EigvecResult) -> float:
    """Relative imbalance of the unused first row, ``C_{n-1} + sum_j M_1j x_j = rho x_1``.

    ``v`` must be of order ``n >= 2``; ``C_{n-1}`` is the middle entry of the
    last-entry-one vector for the sub-block ``x_{n-1}``, i.e. the coefficient
    multiplying ``e_1`` in the block equations of the last recursion step.
    """
    v = renormalize(v, "last_entry_one")
    n, x, rho = v.n, v.components, v.rho
    if n < 2:
        raise ValueError("needs n >= 2")
    h = 1 << (n - 1)
    lower = x[h:]
    c = x[h - 1]
    m = mandelbrot_matrix(n - 1)
    row1 = m.cols[m.rows == 1] - 1
    lhs = c + lower[row1].sum()
    return abs(lhs - rho * lower[0]) / abs(rho * lower[0])


def residual(v: EigvecResult) -> float:
    """``||M x - rho x||_inf / ||x||_inf``."""
    a = mandelbrot_matrix(v.n).to_scipy()
    x = v.components
    return float(np.max(np.abs(a @ x - v.rho * x)) / np.max(np.abs(x)))


def max_relative_deviation(a: EigvecResult, b: EigvecResult) -> float:
    """Componentwise max ``|a - b| / |b|`` after bringing both to last-entry-one."""
    xa = renormalize(a, "last_entry_one").components
    xb = renormalize(b, "last_entry_one").components
    return float(np.max(np.abs(xa - xb) / np.abs(xb)))
