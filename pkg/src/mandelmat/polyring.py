"""Exact polynomial arithmetic over the integers, fraction-free determinants.

A :class:`Poly` is a dense univariate polynomial in a named variable whose
coefficients are Python ints or :class:`Poly` objects in a *different*
variable, so ``Z[eps][lam]`` is a ``Poly`` in ``lam`` with ``Poly``-in-``eps``
coefficients. Only ring operations and exact division are supported, which is
all Bareiss elimination needs.
"""

from __future__ import annotations

from itertools import zip_longest

#: variables from innermost to outermost ring; ``Z[eps][lam]`` nests lam over eps
VAR_ORDER = ("eps", "x", "lam")


def _rank(var: str) -> int:
    try:
        return VAR_ORDER.index(var)
    except ValueError:
        raise ValueError(f"unknown polynomial variable {var!r}; known: {VAR_ORDER}") from None


def _norm_coeff(c):
    if isinstance(c, Poly) and len(c.c) <= 1:
        return c.c[0] if c.c else 0
    return c


def is_zero(x) -> bool:
    return x == 0


def exquo(a, b):
    """Exact quotient ``a / b`` in the coefficient ring; raises if inexact."""
    if isinstance(a, Poly):
        if isinstance(b, Poly) and _rank(b.var) > _rank(a.var):
            if is_zero(a):
                return 0
            raise ArithmeticError("inner polynomial divided by outer polynomial")
        return a.exquo(b)
    if isinstance(b, Poly):
        if is_zero(a):
            return 0
        raise ArithmeticError("integer divided by nonconstant polynomial")
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{a} not divisible by {b}")
    return q


class Poly:
    __slots__ = ("c", "var")

    def __init__(self, coeffs, var: str = "x"):
        cs = [_norm_coeff(c) for c in coeffs]
        while cs and is_zero(cs[-1]):
            cs.pop()
        self.c = tuple(cs)
        _rank(var)
        self.var = var

    @classmethod
    def monomial(cls, coeff, power: int, var: str) -> "Poly":
        return cls([0] * power + [coeff], var)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else 0

    def _same(self, other) -> bool:
        return isinstance(other, Poly) and other.var == self.var

    def _outer(self, other) -> bool:
        # mixed nesting is always evaluated in the outer ring
        return isinstance(other, Poly) and _rank(other.var) > _rank(self.var)

    def __eq__(self, other):
        if self._outer(other):
            return other == self
        if self._same(other):
            return self.c == other.c
        if len(self.c) > 1:
            return False
        return (self.c[0] if self.c else 0) == other

    def __hash__(self):
        return hash((self.var, self.c))

    def __add__(self, other):
        if self._outer(other):
            return other + self
        if self._same(other):
            return Poly([a + b for a, b in zip_longest(self.c, other.c, fillvalue=0)], self.var)
        if not self.c:
            return Poly([other], self.var)
        return Poly((self.c[0] + other,) + self.c[1:], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._outer(other):
            return other * self
        if self._same(other):
            if not self.c or not other.c:
                return Poly([], self.var)
            out = [0] * (len(self.c) + len(other.c) - 1)
            for i, a in enumerate(self.c):
                if is_zero(a):
                    continue
                for j, b in enumerate(other.c):
                    if not is_zero(b):
                        out[i + j] = out[i + j] + a * b
            return Poly(out, self.var)
        if is_zero(other):
            return Poly([], self.var)
        return Poly([a * other for a in self.c], self.var)

    __rmul__ = __mul__

    def exquo(self, other):
        if not self._same(other):
            return Poly([exquo(a, other) for a in self.c], self.var)
        if not other.c:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.c)
        db = other.degree
        if len(rem) - 1 < db:
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return Poly([], self.var)
        q = [0] * (len(rem) - db)
        for k in range(len(q) - 1, -1, -1):
            top = rem[k + db]
            if is_zero(top):
                continue
            coef = exquo(top, other.lc)
            q[k] = coef
            for i, b in enumerate(other.c):
                if not is_zero(b):
                    rem[k + i] = rem[k + i] - coef * b
        if any(not is_zero(r) for r in rem):
            raise ArithmeticError("inexact polynomial division")
        return Poly(q, self.var)

    def deriv(self) -> "Poly":
        return Poly([i * a for i, a in enumerate(self.c)][1:], self.var)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def __repr__(self):
        return f"Poly({list(self.c)!r}, var={self.var!r})"


def bareiss_det(a):
    """Fraction-free determinant of a square matrix over an exact integral domain."""
    m = [list(row) for row in a]
    size = len(m)
    if size == 0:
        return 1
    if any(len(row) != size for row in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(size - 1):
        if is_zero(m[k][k]):
            for i in range(k + 1, size):
                if not is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, size):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, size):
                val = row_i[j] * pivot
                if not is_zero(lead) and not is_zero(row_k[j]):
                    val = val - lead * row_k[j]
                row_i[j] = exquo(val, prev)
            row_i[k] = 0
        prev = pivot
    det = m[-1][-1]
    return det if sign == 1 else -det


def sylvester_matrix(f: Poly, g: Poly):
    """Sylvester matrix of ``f`` and ``g`` (same variable), highest powers first."""
    if f.var != g.var:
        raise ValueError("polynomials must share a variable")
    m, k = f.degree, g.degree
    if m < 1 and k < 1:
        raise ValueError("need at least one nonconstant polynomial")
    size = m + k
    fc, gc = list(reversed(f.c)), list(reversed(g.c))
    rows = []
    for i in range(k):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - k - 1 - i))
    return rows


def resultant(f: Poly, g: Poly):
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(f: Poly):
    """``(-1)**(m(m-1)/2) Res(f, f') / lc(f)`` for ``f`` of degree ``m >= 2``."""
    m = f.degree
    if m < 2:
        raise ValueError("discriminant needs degree >= 2")
    r = exquo(resultant(f, f.deriv()), f.lc)
    return -r if (m * (m - 1) // 2) % 2 else r
