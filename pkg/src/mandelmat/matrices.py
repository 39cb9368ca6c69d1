"""Exact integer constructions of the Mandelbrot matrix family.

Every matrix here is a :class:`SparseIntMatrix`: coordinate storage with
1-based indices, sorted lexicographically by ``(row, col)``. The recursive
block placements used to build the family only ever append shifted copies,
so assembly is linear in the number of nonzeros.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterator

import numpy as np
import scipy.sparse as sp

from .errors import DomainError, InvalidOrderError, StructureViolationError

#: Above this order double precision stops being adequate for the family.
PRACTICAL_MAX_ORDER = 26


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SparseIntMatrix:
    """Square integer matrix in sorted coordinate form (1-based indices)."""

    dim: int
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        rows, cols, vals = (_readonly(a) for a in (self.rows, self.cols, self.values))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "values", vals)
        if self.dim < 1:
            raise ValueError("dim must be positive")
        if not (rows.shape == cols.shape == vals.shape) or rows.ndim != 1:
            raise ValueError("rows, cols and values must be 1-d arrays of equal length")
        if rows.size:
            if rows.min() < 1 or cols.min() < 1 or rows.max() > self.dim or cols.max() > self.dim:
                raise ValueError("index out of range")
            if np.any(vals == 0):
                raise ValueError("explicit zero entries are not allowed")
            key = rows * (self.dim + 1) + cols
            if np.any(np.diff(key) <= 0):
                raise ValueError("entries must be strictly sorted by (row, col) without duplicates")

    @classmethod
    def from_triplets(cls, dim, rows, cols, values=None, *, base=1) -> "SparseIntMatrix":
        """Build from unsorted triplets; duplicates are an error, zeros are dropped."""
        rows = np.asarray(rows, dtype=np.int64) + (1 - base)
        cols = np.asarray(cols, dtype=np.int64) + (1 - base)
        if values is None:
            values = np.ones(rows.shape, dtype=np.int64)
        values = np.asarray(values, dtype=np.int64)
        keep = values != 0
        rows, cols, values = rows[keep], cols[keep], values[keep]
        order = np.lexsort((cols, rows))
        return cls(dim, rows[order], cols[order], values[order])

    @classmethod
    def from_dense(cls, a) -> "SparseIntMatrix":
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("expected a square 2-d array")
        if not np.all(a == np.round(a)):
            raise ValueError("entries must be integers")
        r, c = np.nonzero(a)
        return cls.from_triplets(a.shape[0], r, c, a[r, c].astype(np.int64), base=0)

    @classmethod
    def from_scipy(cls, m) -> "SparseIntMatrix":
        m = sp.coo_matrix(m)
        if m.shape[0] != m.shape[1]:
            raise ValueError("expected a square matrix")
        m.sum_duplicates()
        return cls.from_triplets(m.shape[0], m.row, m.col, m.data, base=0)

    @property
    def nnz(self) -> int:
        return int(self.rows.size)

    def entries(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(row, col, value)`` as Python ints, 1-based, in storage order."""
        yield from zip(self.rows.tolist(), self.cols.tolist(), self.values.tolist())

    def to_dense(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.dim, self.dim), dtype=dtype)
        a[self.rows - 1, self.cols - 1] = self.values
        return a

    def to_scipy(self, dtype=np.float64) -> sp.csr_matrix:
        """0-based CSR copy for numerical work."""
        return sp.csr_matrix(
            (self.values.astype(dtype), (self.rows - 1, self.cols - 1)),
            shape=(self.dim, self.dim),
        )

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix.from_triplets(self.dim, self.cols, self.rows, self.values)

    @property
    def T(self) -> "SparseIntMatrix":
        return self.transpose()

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        # int64 products are exact for this family (entries and sums are tiny)
        prod = self.to_scipy(np.int64) @ other.to_scipy(np.int64)
        return SparseIntMatrix.from_scipy(prod)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"SparseIntMatrix(dim={self.dim}, nnz={self.nnz})"

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def trace(self) -> int:
        return int(self.values[self.rows == self.cols].sum())

    def norm_1(self) -> int:
        """Maximum absolute column sum."""
        return int(np.bincount(self.cols - 1, np.abs(self.values), minlength=self.dim).max())

    def norm_inf(self) -> int:
        """Maximum absolute row sum."""
        return int(np.bincount(self.rows - 1, np.abs(self.values), minlength=self.dim).max())

    def is_unit_upper_hessenberg(self) -> bool:
        below = self.rows > self.cols
        sub = below & (self.rows == self.cols + 1)
        if np.any(below & ~sub):
            return False
        return int(sub.sum()) == self.dim - 1 and bool(np.all(self.values[sub] == 1))


def _check_order(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidOrderError(f"order must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise InvalidOrderError(f"order must be >= 1, got {n}")
    if n > PRACTICAL_MAX_ORDER:
        warnings.warn(
            f"order {n} exceeds {PRACTICAL_MAX_ORDER}; double precision results "
            "for this family are not expected to be reliable",
            RuntimeWarning,
            stacklevel=3,
        )
    return n


def dimension(n: int) -> int:
    """``2**n - 1``."""
    return (1 << n) - 1


def _mandelbrot_coords(n: int):
    r = np.zeros(1, dtype=np.int64)
    c = np.zeros(1, dtype=np.int64)
    d = 1
    for _ in range(n - 1):
        big = 2 * d + 1
        r = np.concatenate([r, [0, d, d + 1], r + d + 1])
        c = np.concatenate([c, [big - 1, d - 1, d], c + d + 1])
        d = big
    return r, c, d


def mandelbrot_matrix(n: int) -> SparseIntMatrix:
    """The binary unit upper Hessenberg matrix ``M_n`` of dimension ``2**n - 1``.

    ``M_{n+1}`` holds two copies of ``M_n`` on the diagonal, joined by the
    entries ``(1, d_{n+1})``, ``(d_n + 1, d_n)`` and ``(d_n + 2, d_n + 1)``.
    """
    n = _check_order(n)
    r, c, d = _mandelbrot_coords(n)
    return SparseIntMatrix.from_triplets(d, r, c, base=0)


def anti_identity(d: int) -> SparseIntMatrix:
    """The reversal permutation ``J`` of size ``d``."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    i = np.arange(d)
    return SparseIntMatrix.from_triplets(d, i, d - 1 - i, base=0)


def s_matrix(n: int) -> SparseIntMatrix:
    """Symmetric ``S_n = M_n J_n``, built by its own block recursion.

    ``S_{n+1} = [[e1 e1^T, 0, S_n], [0, 0, e1^T], [S_n, e1, 0]]`` with
    ``S_1 = [1]``. Equality with the product is checked in the test suite,
    not assumed here.
    """
    n = _check_order(n)
    r = np.zeros(1, dtype=np.int64)
    c = np.zeros(1, dtype=np.int64)
    d = 1
    for _ in range(n - 1):
        r, c = (
            np.concatenate([[0, d, d + 1], r, r + d + 1]),
            np.concatenate([[0, d + 1, d], c + d + 1, c]),
        )
        d = 2 * d + 1
    return SparseIntMatrix.from_triplets(d, r, c, base=0)


def reverse_columns(m: SparseIntMatrix) -> SparseIntMatrix:
    """``m @ J`` without forming ``J``."""
    return SparseIntMatrix.from_triplets(m.dim, m.rows, m.dim + 1 - m.cols, m.values)


def jordan_wielandt(n: int) -> SparseIntMatrix:
    """Symmetric bipartite block matrix ``[[0, M_n], [M_n^T, 0]]``."""
    m = mandelbrot_matrix(n)
    d = m.dim
    rows = np.concatenate([m.rows, m.cols + d])
    cols = np.concatenate([m.cols + d, m.rows])
    vals = np.concatenate([m.values, m.values])
    return SparseIntMatrix.from_triplets(2 * d, rows, cols, vals)


def _hessenberg_null_chain(m: SparseIntMatrix):
    """Exact ``z`` with ``z[-1] = 1`` solving rows 2..d of ``m z = 0``.

    Returns ``(z, r)`` where ``r`` is row 1 of ``m z``. Requires a unit
    subdiagonal; each step is a division-free back-substitution.
    """
    if not m.is_unit_upper_hessenberg():
        raise StructureViolationError("matrix is not unit upper Hessenberg")
    d = m.dim
    csr = m.to_scipy(np.int64)
    indptr, indices, data = csr.indptr, csr.indices.tolist(), csr.data.tolist()
    z = [0] * d
    z[d - 1] = 1
    for i in range(d - 1, 0, -1):
        acc = 0
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j >= i:
                acc += data[k] * z[j]
        z[i - 1] = -acc
    r = sum(data[k] * z[indices[k]] for k in range(indptr[0], indptr[1]))
    return z, r


def hessenberg_det(m: SparseIntMatrix) -> int:
    """Exact determinant of a unit upper Hessenberg integer matrix.

    With ``z`` from the subdiagonal chain, ``m z = r e_1`` and the cofactor
    of ``(1, d)`` is 1, so ``det m = (-1)**(d + 1) * r``. Cost is O(nnz).
    """
    _, r = _hessenberg_null_chain(m)
    return r if m.dim % 2 == 1 else -r


def permutation_sign_reversal(d: int) -> int:
    """Determinant of the ``d x d`` anti-identity."""
    return -1 if (d * (d - 1) // 2) % 2 else 1


def mandelbrot_inverse(n: int) -> SparseIntMatrix:
    """Exact integer inverse of ``M_n`` by structured back-substitution.

    All columns are solved together: rows 2..d of ``M_n X = I`` are unit
    upper triangular in the leading ``d - 1`` unknowns, which leaves one free
    row fixed afterwards by row 1. Intermediate magnitudes stay at most 2,
    so ``int32`` storage is exact (and asserted).
    """
    m = mandelbrot_matrix(n)
    d = m.dim
    z, r = _hessenberg_null_chain(m)
    csr = m.to_scipy(np.int64)
    indptr, indices, data = csr.indptr, csr.indices, csr.data
    x = np.zeros((d, d), dtype=np.int32)
    for i in range(d - 1, 0, -1):
        row = x[i - 1]
        row[i] = 1
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j >= i:
                row -= data[k] * x[j]
    t = np.zeros(d, dtype=np.int64)
    t[0] = 1
    for k in range(indptr[0], indptr[1]):
        t -= data[k] * x[indices[k]].astype(np.int64)
    if r == 0 or np.any(t % r):
        raise StructureViolationError("non-unimodular Hessenberg chain")
    t //= r
    for i, zi in enumerate(z):
        if zi:
            x[i] += np.int32(zi) * t.astype(np.int32)
    if np.abs(x).max() > 2**20:
        raise StructureViolationError("unexpected growth in integer inverse")
    return SparseIntMatrix.from_dense(x)


@dataclass(frozen=True)
class HomotopyMatrix:
    """``T(eps) = base + eps * eps_pattern`` linking ``S_n`` to ``S_{n+1}``.

    ``base`` holds the two off-diagonal copies of ``S_n``; ``eps_pattern``
    holds the three entries that switch on the loop and the link to the
    middle vertex.
    """

    n: int
    dim: int
    base: SparseIntMatrix
    eps_pattern: SparseIntMatrix

    def _check_eps(self, eps) -> float:
        eps = float(eps)
        if not (0.0 <= eps <= 1.0):
            raise DomainError(f"eps must lie in [0, 1], got {eps}")
        return eps

    def assemble(self, eps) -> np.ndarray:
        """Dense real symmetric ``T(eps)``."""
        eps = self._check_eps(eps)
        a = self.base.to_dense(np.float64)
        a[self.eps_pattern.rows - 1, self.eps_pattern.cols - 1] += eps * self.eps_pattern.values
        return a

    def assemble_sparse(self, eps) -> sp.csr_matrix:
        eps = self._check_eps(eps)
        return self.base.to_scipy() + eps * self.eps_pattern.to_scipy()

    def derivative(self) -> np.ndarray:
        """``dT/deps`` as a dense array (constant in eps)."""
        return self.eps_pattern.to_dense(np.float64)


def homotopy_matrix(n: int) -> HomotopyMatrix:
    """The symmetric one-parameter family ``T(eps)`` of dimension ``2**(n+1) - 1``."""
    s = s_matrix(n)
    d = s.dim
    rows = np.concatenate([s.rows, s.rows + d + 1])
    cols = np.concatenate([s.cols + d + 1, s.cols])
    vals = np.concatenate([s.values, s.values])
    big = 2 * d + 1
    base = SparseIntMatrix.from_triplets(big, rows, cols, vals)
    eps_pattern = SparseIntMatrix.from_triplets(big, [0, d, d + 1], [0, d + 1, d], base=0)
    return HomotopyMatrix(n, big, base, eps_pattern)
