"""Exact polynomials in L and integer lattice linear algebra.

Everything here works over ``int`` and ``fractions.Fraction``; nothing is
ever converted to floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class LPoly:
    """Univariate polynomial in ``L`` with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``L**i``.  Instances are immutable
    and hashable; the zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        coeffs = _trim(coeffs)
        for c in coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"LPoly coefficients must be int, got {c!r}")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("LPoly is immutable")

    def __reduce__(self):
        return (LPoly, (self.coeffs,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LPoly":
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: int) -> "LPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"LPoly({list(self.coeffs)})"

    def __str__(self):
        return self.render()

    def render(self, var: str = "L") -> str:
        """Render in descending powers, e.g. ``L^9 + 4L^8 + 4L^5``."""
        if not self.coeffs:
            return "0"
        out = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}{mono}"
            out.append((sign, body))
        first_sign, first_body = out[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __eq__(self, other):
        if isinstance(other, int):
            other = LPoly([other])
        if not isinstance(other, LPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("LPoly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _coerce(self, other):
        if isinstance(other, LPoly):
            return other
        if isinstance(other, int):
            return LPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return LPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return LPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LPoly(out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LPoly":
        return LPoly(c * a for a in self.coeffs)

    def shift(self, k: int) -> "LPoly":
        """Multiply by ``L**k`` (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        return LPoly([0] * k + list(self.coeffs)) if self.coeffs else LPoly()

    def __pow__(self, e: int) -> "LPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = LPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Evaluate at an integer (or Fraction) by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    eval_at = __call__

    def divexact(self, other: "LPoly") -> "LPoly":
        """Exact division; raises ``ArithmeticError`` if not exact over Z."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            if rem:
                raise ArithmeticError("inexact polynomial division")
            return LPoly()
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1]
            if c % lead:
                raise ArithmeticError("inexact polynomial division")
            q = c // lead
            quot[k] = q
            if q:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= q * b
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return LPoly(quot)

    def is_palindromic(self) -> bool:
        c = self.coeffs
        return c == c[::-1]

    def to_list(self) -> list[int]:
        return list(self.coeffs)


L = LPoly([0, 1])
ONE = LPoly([1])
ZERO = LPoly()


class QPoly:
    """Polynomial in L with rational coefficients.

    Only used as an accumulator for averages; call :meth:`to_lpoly` to get
    back to integers, which raises if any coefficient is not integral.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(Fraction(c) for c in coeffs)

    @classmethod
    def from_lpoly(cls, p: LPoly) -> "QPoly":
        return cls(p.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        if isinstance(other, LPoly):
            other = QPoly.from_lpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(self[i] + other[i] for i in range(n))

    def __truediv__(self, c):
        return QPoly(a / c for a in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, LPoly):
            other = QPoly.from_lpoly(other)
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"QPoly({[str(c) for c in self.coeffs]})"

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_lpoly(self) -> LPoly:
        if not self.is_integral():
            raise ArithmeticError(f"non-integral coefficients in {self!r}")
        return LPoly(int(c) for c in self.coeffs)


# ---------------------------------------------------------------------------
# integer matrices (tuples of row tuples)


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("ragged matrix")
    return m


def shape(a: IntMatrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a)) if a else ()


def matmul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def columns(a: IntMatrix) -> list[tuple[int, ...]]:
    return [tuple(c) for c in zip(*a)]


def from_columns(cols: Sequence[Sequence[int]]) -> IntMatrix:
    return transpose(tuple(tuple(c) for c in cols))


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return as_matrix(out)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


def det(a: IntMatrix) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("det of non-square matrix")
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def char_poly_in_L(a: IntMatrix) -> LPoly:
    """det(L*I - A), via Bareiss elimination over Z[L].

    The leading principal minors of ``L*I - A`` are monic, so no pivoting
    is ever needed and every Bareiss division is exact.
    """
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("char poly of non-square matrix")
    if n == 0:
        return ONE
    m = [[(L if i == j else ZERO) - a[i][j] for j in range(n)] for i in range(n)]
    prev = ONE
    for k in range(n - 1):
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divexact(prev)
        prev = m[k][k]
    return m[n - 1][n - 1]


def hermite_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  ``H`` is
    in row echelon form with positive pivots, entries above each pivot
    reduced into ``[0, pivot)``, and zero rows at the bottom.
    """
    nrows, ncols = shape(a)
    h = [list(r) for r in a]
    u = [list(r) for r in identity(nrows)]
    piv_row = 0
    pivots = []
    for col in range(ncols):
        if piv_row >= nrows:
            break
        # gcd-reduce the column below piv_row with extended Euclid row ops
        for i in range(piv_row + 1, nrows):
            if h[i][col] == 0:
                continue
            x, y = h[piv_row][col], h[i][col]
            g, s, t = _xgcd(x, y)
            # [s t; -y/g x/g] has determinant 1
            a_, b_ = -y // g, x // g
            r1 = [s * p + t * q for p, q in zip(h[piv_row], h[i])]
            r2 = [a_ * p + b_ * q for p, q in zip(h[piv_row], h[i])]
            h[piv_row], h[i] = r1, r2
            u1 = [s * p + t * q for p, q in zip(u[piv_row], u[i])]
            u2 = [a_ * p + b_ * q for p, q in zip(u[piv_row], u[i])]
            u[piv_row], u[i] = u1, u2
        if h[piv_row][col] == 0:
            continue
        if h[piv_row][col] < 0:
            h[piv_row] = [-x for x in h[piv_row]]
            u[piv_row] = [-x for x in u[piv_row]]
        p = h[piv_row][col]
        for i in range(piv_row):
            q = h[i][col] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[piv_row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[piv_row])]
        pivots.append(col)
        piv_row += 1
    return as_matrix(h), as_matrix(u)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def rank(a: IntMatrix) -> int:
    if not a or not a[0]:
        return 0
    h, _ = hermite_normal_form(a)
    return sum(1 for row in h if any(row))


def inverse(a: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact rational inverse by Gauss-Jordan."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def int_inverse(a: IntMatrix) -> IntMatrix:
    inv = inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return as_matrix([[int(x) for x in row] for row in inv])


def kernel_basis(a: IntMatrix, ncols: int | None = None) -> IntMatrix:
    """Rows form a basis of the saturated lattice {x in Z^m : A x = 0}."""
    if not a:
        return identity(ncols or 0)
    m = len(a[0])
    h, u = hermite_normal_form(transpose(a))
    rk = sum(1 for row in h if any(row))
    return u[rk:] if rk < m else ()


def adapted_basis(sub_rows: Sequence[Sequence[int]], m: int) -> tuple[IntMatrix, int]:
    """Unimodular basis of Z^m adapted to a sublattice.

    Returns ``(B, k)``: the columns of ``B`` form a basis of ``Z^m`` and the
    first ``k`` columns span the saturation of the lattice spanned by
    ``sub_rows``.
    """
    sub = as_matrix(sub_rows)
    if not sub:
        return identity(m), 0
    h, u = hermite_normal_form(transpose(sub))
    k = sum(1 for row in h if any(row))
    return int_inverse(u), k


def saturate(sub_rows: Sequence[Sequence[int]], m: int) -> IntMatrix:
    """Rows spanning (span_Q S) ∩ Z^m."""
    b, k = adapted_basis(sub_rows, m)
    return transpose(b)[:k]


def _change_basis(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return matmul(matmul(int_inverse(b), a), b)


def quotient_lattice_action(a: IntMatrix, sub_rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Matrix of the action induced by ``A`` on ``Z^m / sat(S)``.

    ``A`` acts on column vectors.  Raises ``ValueError`` if ``A`` does not
    map the saturated sublattice into itself.
    """
    m = len(a)
    b, k = adapted_basis(sub_rows, m)
    c = _change_basis(a, b)
    if any(c[i][j] for i in range(k, m) for j in range(k)):
        raise ValueError("matrix does not stabilize the sublattice")
    return tuple(row[k:] for row in c[k:])


def restricted_lattice_action(a: IntMatrix, sub_rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Matrix of ``A`` restricted to the saturation of ``S`` (in a computed basis)."""
    m = len(a)
    b, k = adapted_basis(sub_rows, m)
    c = _change_basis(a, b)
    if any(c[i][j] for i in range(k, m) for j in range(k)):
        raise ValueError("matrix does not stabilize the sublattice")
    return tuple(row[:k] for row in c[:k])


def matrix_order(a: IntMatrix, bound: int = 10_000) -> int:
    n = len(a)
    one = identity(n)
    p = a
    for k in range(1, bound + 1):
        if p == one:
            return k
        p = matmul(p, a)
    raise ValueError("matrix order exceeds bound")


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ A @ V == D``.

    ``U`` and ``V`` are unimodular; ``D`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...`` (zeros last).
    """
    nrows, ncols = shape(a)
    d = [list(r) for r in a]
    u = [list(r) for r in identity(nrows)]
    v = [list(r) for r in identity(ncols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for m in (d, v):
            for row in m:
                row[i], row[j] = row[j], row[i]

    def combine_rows(i, j, s, t, p, q):
        # row_i <- s*row_i + t*row_j, row_j <- p*row_i + q*row_j
        for m in (d, u):
            ri, rj = m[i], m[j]
            m[i] = [s * x + t * y for x, y in zip(ri, rj)]
            m[j] = [p * x + q * y for x, y in zip(ri, rj)]

    def combine_cols(i, j, s, t, p, q):
        for m in (d, v):
            for row in m:
                x, y = row[i], row[j]
                row[i], row[j] = s * x + t * y, p * x + q * y

    for k in range(min(nrows, ncols)):
        nz = [(i, j) for i in range(k, nrows) for j in range(k, ncols) if d[i][j]]
        if not nz:
            break
        i0, j0 = min(nz, key=lambda ij: abs(d[ij[0]][ij[1]]))
        swap_rows(k, i0)
        swap_cols(k, j0)
        while True:
            changed = False
            for i in range(k + 1, nrows):
                if d[i][k] % d[k][k] == 0:
                    if d[i][k]:
                        combine_rows(k, i, 1, 0, -(d[i][k] // d[k][k]), 1)
                elif d[i][k]:
                    g, s, t = _xgcd(d[k][k], d[i][k])
                    combine_rows(k, i, s, t, -d[i][k] // g, d[k][k] // g)
                    changed = True
            for j in range(k + 1, ncols):
                if d[k][j] % d[k][k] == 0:
                    if d[k][j]:
                        combine_cols(k, j, 1, 0, -(d[k][j] // d[k][k]), 1)
                elif d[k][j]:
                    g, s, t = _xgcd(d[k][k], d[k][j])
                    combine_cols(k, j, s, t, -d[k][j] // g, d[k][k] // g)
                    changed = True
            if changed:
                continue
            # enforce divisibility of the remaining block
            bad = next(((i, j) for i in range(k + 1, nrows) for j in range(k + 1, ncols)
                        if d[i][j] % d[k][k]), None)
            if bad is None:
                break
            combine_rows(k, bad[0], 1, 1, 0, 1)
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            u[k] = [-x for x in u[k]]
    return as_matrix(d), as_matrix(u), as_matrix(v)
