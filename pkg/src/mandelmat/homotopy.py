"""Eigenvalue paths of the symmetric family ``T(eps)`` joining ``S_n`` to ``S_{n+1}``.

``T(0)`` has spectrum ``{0} U +-eig(S_n)`` and ``T(1) = S_{n+1}``, whose
eigenvalue magnitudes are the singular values of ``M_{n+1}``. Paths are
followed by a predictor-corrector scheme: the slope of a simple eigenvalue of
a symmetric family is ``x^T T'(eps) x`` for its unit eigenvector ``x``, and the
predicted value is polished by inverse iteration with that value as shift.

The exact side (:func:`char_poly_T`, :func:`discriminant_positivity`) works
with integer polynomials in ``lam`` and ``eps`` and never touches floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.linalg.lapack import dgtsv

from .errors import PathCollisionError, SizeError
from .matrices import _check_order, homotopy_matrix, s_matrix
from .polyring import Poly, bareiss_det, discriminant
from .spectra import conjectured_sigma_bound, dominant_singular_triple

TRACKING_CEILING = 6
LARGE_TRACKING_CEILING = 9
#: exact discriminant for n = 3 (degree 15 in lam) only behind ``allow_long``
DISCRIMINANT_CEILING = 2
CHAR_POLY_CEILING = 3
FIGURE_HEADER = ("stage", "path_id", "t", "epsilon", "lambda", "abs_lambda", "lambda_squared", "bound_squared")


@dataclass(frozen=True, eq=False)
class EigenPath:
    n: int
    start_value: float
    eps: np.ndarray
    lam: np.ndarray
    converged_end: float
    max_residual: float = 0.0
    end_vector: np.ndarray | None = field(default=None, repr=False)

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.eps.tolist(), self.lam.tolist()))


def _bound_squared(t):
    return 2.0193 * np.asarray(t, dtype=float) - 0.7914


def _initial_pairs(n: int):
    w, y = scipy.linalg.eigh(s_matrix(n).to_dense(np.float64))
    return w, y


def _lift_seeds(w: np.ndarray, y: np.ndarray):
    """Eigenpairs of ``T(0)`` from eigenpairs ``(w, y)`` of ``S_n``: ``[y; 0; +-y]/sqrt 2`` and ``e_mid``."""
    d = w.size
    big = 2 * d + 1
    vals = np.concatenate([w, -w, [0.0]])
    vecs = np.zeros((big, 2 * d + 1))
    r = 1.0 / math.sqrt(2.0)
    vecs[:d, :d] = r * y
    vecs[d + 1:, :d] = r * y
    vecs[:d, d:2 * d] = r * y
    vecs[d + 1:, d:2 * d] = -r * y
    vecs[d, -1] = 1.0
    order = np.argsort(vals, kind="stable")
    return vals[order], vecs[:, order]


def _tridiagonal(a: np.ndarray):
    h, q = scipy.linalg.hessenberg(a, calc_q=True)
    off = 0.5 * (np.diag(h, -1) + np.diag(h, 1))
    return np.diag(h).copy(), off, q


def _tri_matvec(diag, off, z):
    out = diag * z
    out[:-1] += off * z[1:]
    out[1:] += off * z[:-1]
    return out


def _inverse_iteration(diag, off, shift, b, tol, max_iter):
    """Inverse iteration on a symmetric tridiagonal matrix with a fixed shift."""
    z = b / np.linalg.norm(b)
    lam, res = shift, math.inf
    for _ in range(max_iter):
        s = shift
        for _ in range(4):
            _, _, _, sol, info = dgtsv(off, diag - s, off, z)
            if info == 0:
                break
            s = s + 1e-14 * max(1.0, abs(s))
        else:
            return z, lam, math.inf
        z = sol / np.linalg.norm(sol)
        tz = _tri_matvec(diag, off, z)
        lam = float(z @ tz)
        res = float(np.linalg.norm(tz - lam * z))
        if res <= tol:
            break
    return z, lam, res


def _corrector(a, lam_pred, x, tol, max_iter):
    diag, off, q = _tridiagonal(a)
    if off.size == 0:
        return np.array([diag[0]]), x.copy(), np.zeros(1)
    b = q.T @ x
    count = lam_pred.size
    z = np.empty_like(b)
    lam = np.empty(count)
    for i in range(count):
        z[:, i], lam[i], _ = _inverse_iteration(diag, off, lam_pred[i], b[:, i], 0.25 * tol, max_iter)
    y = q @ z
    lam = np.einsum("ij,ij->j", y, a @ y)
    res = np.linalg.norm(a @ y - y * lam, axis=0)
    signs = np.sign(np.einsum("ij,ij->j", y, x))
    signs[signs == 0] = 1.0
    return lam, y * signs, res


def _gaps(values):
    g = np.diff(values)
    left = np.concatenate([[np.inf], g])
    right = np.concatenate([g, [np.inf]])
    return np.minimum(left, right)


def track_paths(
    n: int,
    steps: int = 256,
    tol: float = 1e-10,
    seeds=None,
    allow_large: bool = False,
    max_corrector: int = 8,
    max_halvings: int = 30,
) -> list[EigenPath]:
    """Follow every eigenvalue of ``T(eps)`` from ``eps = 0`` to ``1``.

    ``seeds`` is an optional pair ``(w, y)`` of eigenvalues and orthonormal
    eigenvectors of ``S_n`` (as left by a previous stage); by default they come
    from a dense symmetric eigensolve. Each grid step is accepted only if the
    corrected values keep their sorted order, each moved less than half the
    distance to its nearest predicted neighbour, and every residual is at most
    ``tol``. Otherwise the step is halved; after ``max_halvings`` halvings a
    :class:`PathCollisionError` is raised at the offending ``eps``.

    Paths are returned in ascending order of their start values.
    """
    n = _check_order(n)
    ceiling = LARGE_TRACKING_CEILING if allow_large else TRACKING_CEILING
    if n > ceiling:
        raise SizeError(f"path tracking limited to n <= {ceiling} (allow_large={allow_large})")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    fam = homotopy_matrix(n)
    deriv = fam.derivative()
    w, y = _initial_pairs(n) if seeds is None else (np.asarray(seeds[0], float), np.asarray(seeds[1], float))
    lam, x = _lift_seeds(w, y)
    if np.any(np.diff(lam) <= 0):
        raise PathCollisionError("starting values are not distinct", 0.0)
    starts = lam.copy()
    grid = np.linspace(0.0, 1.0, steps + 1)
    history = np.empty((lam.size, steps + 1))
    history[:, 0] = lam
    worst = float(np.max(np.linalg.norm(fam.assemble(0.0) @ x - x * lam, axis=0)))

    eps = 0.0
    for k in range(1, steps + 1):
        target = grid[k]
        h = target - eps
        halvings = 0
        while eps < target:
            h = min(h, target - eps)
            new_eps = target if h >= target - eps else eps + h
            slope = np.einsum("ij,ij->j", x, deriv @ x)
            pred = lam + (new_eps - eps) * slope
            a = fam.assemble(new_eps)
            new_lam, new_x, res = _corrector(a, pred, x, tol, max_corrector)
            ok = (
                np.all(np.diff(new_lam) > 0)
                and np.all(np.abs(new_lam - pred) <= 0.5 * _gaps(pred))
                and np.all(res <= tol)
            )
            if ok:
                eps, lam, x = new_eps, new_lam, new_x
                worst = max(worst, float(res.max()))
                h *= 2.0
                continue
            halvings += 1
            if halvings > max_halvings:
                raise PathCollisionError(
                    f"eigenvalue paths of T(eps) for n={n} could not be separated near eps={new_eps:.12g}",
                    new_eps,
                )
            h *= 0.5
        history[:, k] = lam

    return [
        EigenPath(n, float(starts[i]), grid.copy(), history[i].copy(), float(lam[i]), worst, x[:, i].copy())
        for i in range(lam.size)
    ]


def path_end_pairs(paths: list[EigenPath]):
    """Endpoint eigenvalues and eigenvectors of ``S_{n+1}``, usable as the next stage's seeds."""
    vals = np.array([p.converged_end for p in paths])
    vecs = np.column_stack([p.end_vector for p in paths])
    return vals, vecs


def min_separation(paths: list[EigenPath]) -> float:
    """Smallest distance between two paths over the shared sample grid."""
    lam = np.vstack([p.lam for p in paths])
    if lam.shape[0] < 2:
        return math.inf
    lam = np.sort(lam, axis=0)
    return float(np.min(np.diff(lam, axis=0)))


def count_above_one(values) -> int:
    return int(np.sum(np.abs(np.asarray(values, float)) > 1.0))


def gap_near_one(values) -> float:
    """Distance from 1 of the closest magnitude."""
    return float(np.min(np.abs(np.abs(np.asarray(values, float)) - 1.0)))


@dataclass(frozen=True, eq=False)
class ChainedData:
    rows: list
    stages: list
    bookkeeping: tuple

    header = FIGURE_HEADER

    @property
    def bookkeeping_ok(self) -> bool:
        return all(above == 1 << n for n, above, _ in self.bookkeeping)

    @property
    def bound_ok(self) -> bool:
        return all(r[6] <= r[7] for r in self.rows)


def chained_figure_data(n_max: int = 5, steps: int = 256, tol: float = 1e-10, allow_large: bool = False) -> ChainedData:
    """Paths for stages ``n = 1 .. n_max - 1`` joined end to start, ``t = n + eps``.

    Each stage starts from the previous endpoints, their negatives and ``0``.
    ``bookkeeping`` holds ``(n, #|lam| > 1, #|lam| < 1)`` at the end of stage ``n``.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if n_max > 5 and not allow_large:
        raise SizeError("chained data limited to n_max <= 5 (allow_large to raise)")
    rows, stages, counts = [], [], []
    seeds = None
    for n in range(1, n_max):
        paths = track_paths(n, steps=steps, tol=tol, seeds=seeds, allow_large=allow_large)
        stages.append(paths)
        for pid, p in enumerate(paths):
            t = n + p.eps
            for tt, e, lam_v, bound in zip(t.tolist(), p.eps.tolist(), p.lam.tolist(), _bound_squared(t).tolist()):
                rows.append((n, pid, tt, e, lam_v, abs(lam_v), lam_v * lam_v, bound))
        ends, vecs = path_end_pairs(paths)
        counts.append((n, count_above_one(ends), int(np.sum(np.abs(ends) < 1.0))))
        seeds = (ends, vecs)
    return ChainedData(rows, stages, tuple(counts))


def sigma_bound_check(n: int, tol: float = 1e-10) -> float:
    """Relative slack ``(bound - sigma_1) / sigma_1`` of the fitted largest-singular-value bound.

    A negative value means the bound is violated at this order; that is
    reported, not raised.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    sigma = dominant_singular_triple(n, tol=tol).sigma
    return (conjectured_sigma_bound(n) - sigma) / sigma


@dataclass(frozen=True)
class BivariatePoly:
    """Integer polynomial in ``lam`` and ``eps``; ``coeffs[(i, j)]`` multiplies ``lam**i eps**j``."""

    coeffs: dict

    @classmethod
    def from_nested(cls, p) -> "BivariatePoly":
        out = {}
        lam_coeffs = p.c if isinstance(p, Poly) and p.var == "lam" else (p,)
        for i, c in enumerate(lam_coeffs):
            eps_coeffs = c.c if isinstance(c, Poly) else (c,)
            for j, v in enumerate(eps_coeffs):
                if v:
                    out[(i, j)] = int(v)
        return cls(out)

    def to_nested(self) -> Poly:
        deg = self.degree_lambda
        rows = [[0] * (self.degree_eps + 1) for _ in range(deg + 1)]
        for (i, j), v in self.coeffs.items():
            rows[i][j] = v
        return Poly([Poly(r, "eps") for r in rows], "lam")

    @property
    def degree_lambda(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    @property
    def degree_eps(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def at_eps(self, eps) -> list:
        """Coefficients in ``lam`` (low to high) with ``eps`` substituted; exact for int/Fraction ``eps``."""
        out = [0] * (self.degree_lambda + 1)
        for (i, j), v in self.coeffs.items():
            out[i] += v * eps**j
        return out

    def roots_at(self, eps: float) -> np.ndarray:
        c = [float(v) for v in self.at_eps(eps)]
        return np.roots(c[::-1])


def char_poly_T(n: int) -> BivariatePoly:
    """Exact ``det(lam I - T(eps))`` by fraction-free elimination over ``Z[eps][lam]``."""
    n = _check_order(n)
    if n > CHAR_POLY_CEILING:
        raise SizeError(f"exact characteristic polynomial limited to n <= {CHAR_POLY_CEILING}")
    fam = homotopy_matrix(n)
    size = fam.dim
    base = fam.base.to_dense()
    pat = fam.eps_pattern.to_dense()
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            entry = Poly([-int(base[i, j]), -int(pat[i, j])], "eps")
            if i == j:
                entry = Poly([entry, 1], "lam")
            row.append(entry)
        rows.append(row)
    det = bareiss_det(rows)
    return BivariatePoly.from_nested(det)


def has_positive_coefficients(p) -> bool:
    """Every nonzero coefficient is positive and at least one is nonzero."""
    cs = [c for c in (p.c if isinstance(p, Poly) else (p,)) if c != 0]
    return bool(cs) and all(c > 0 for c in cs)


def discriminant_in_eps(f: BivariatePoly) -> list[int]:
    """``disc_lam(f)`` as integer coefficients in ``eps``, low to high."""
    d = discriminant(f.to_nested())
    return list(d.c) if isinstance(d, Poly) else [int(d)]


def discriminant_positivity(n: int, allow_long: bool = False) -> bool:
    """Whether the discriminant in ``lam`` of ``det(lam I - T(eps))`` has only positive coefficients in ``eps``."""
    n = _check_order(n)
    if n > DISCRIMINANT_CEILING and not allow_long:
        raise SizeError(f"exact discriminant limited to n <= {DISCRIMINANT_CEILING} (allow_long for n = 3)")
    coeffs = discriminant_in_eps(char_poly_T(n))
    return has_positive_coefficients(Poly(coeffs, "eps"))
