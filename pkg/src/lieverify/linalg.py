"""Exact linear algebra over Q and Q(i).

Scalars are :class:`fractions.Fraction`. Matrices are immutable row-major
grids. Elimination runs fraction-free on integer rows (each row is scaled to
integers and kept primitive by dividing out its content), so intermediate
growth stays small on the sparse matrices that cohomology computations
produce. Only the final reduced row-echelon form is converted back to
fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

__all__ = [
    "DimensionError",
    "GaussianScalar",
    "Matrix",
    "Subspace",
    "as_fraction",
    "charpoly",
    "det",
    "rank_and_kernel",
    "rref",
    "signature",
    "solve_linear",
    "span_membership",
    "vec",
]


class DimensionError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    """Coerce ``x`` to an exact rational. Floats and bools are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean scalar {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"malformed rational {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def vec(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(s, v: Sequence) -> Vector:
    return tuple(s * a for a in v)


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def is_zero(v: Iterable) -> bool:
    return not any(v)


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianScalar:
    """An element ``re + i*im`` of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianScalar":
        if isinstance(x, GaussianScalar):
            return x
        return cls(as_fraction(x), Fraction(0))

    def __add__(self, other):
        o = GaussianScalar.coerce(other)
        return GaussianScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianScalar(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianScalar.coerce(other))

    def __rsub__(self, other):
        return GaussianScalar.coerce(other) - self

    def __mul__(self, other):
        o = GaussianScalar.coerce(other)
        return GaussianScalar(self.re * o.re - self.im * o.im,
                              self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussianScalar":
        return GaussianScalar(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = GaussianScalar.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conj()
        return GaussianScalar(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussianScalar.coerce(other) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianScalar.coerce(other)
        if not isinstance(other, GaussianScalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianScalar(0, 1)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix of exact scalars (row-major)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_fraction(x) if not isinstance(x, GaussianScalar) else x
                           for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, key, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        return m

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls._raw(tuple((Fraction(0),) * c for _ in range(r)), c)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*cols), ncols=len(cols)) if cols[0] else cls.zeros(0, len(cols))

    @classmethod
    def from_flat(cls, flat: Sequence, n: int) -> "Matrix":
        """Rebuild an ``n x n`` matrix from its row-major flattening."""
        return cls([flat[i * n:(i + 1) * n] for i in range(n)], ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def flat(self) -> Vector:
        return tuple(x for r in self.rows for x in r)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)) if self.nrows else
                           tuple(() for _ in range(self.ncols)), self.nrows)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, s) -> "Matrix":
        return Matrix._raw(tuple(tuple(s * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            # sparse-aware product; CE matrices are mostly zeros
            nz = [[(j, b) for j, b in enumerate(row) if b] for row in other.rows]
            out = []
            zero = Fraction(0)
            for r in self.rows:
                acc = [zero] * other.ncols
                for k, a in enumerate(r):
                    if a:
                        for j, b in nz[k]:
                            acc[j] += a * b
                out.append(tuple(acc))
            return Matrix._raw(tuple(out), other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise DimensionError(f"cannot apply {self.shape} matrix to length-{len(v)} vector")
        nzv = [(k, b) for k, b in enumerate(v) if b]
        zero = Fraction(0)
        return tuple(sum((r[k] * b for k, b in nzv), zero) for r in self.rows)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append(tuple(a * b for a in r for b in s))
        return Matrix._raw(tuple(rows), self.ncols * other.ncols)

    def is_symmetric(self) -> bool:
        return self.rows == self.T.rows

    def rank(self) -> int:
        return rank_and_kernel(self)[0]


# ---------------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------------


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = reduce(_lcm, (x.denominator for x in row if x), 1)
    out = [int(x * den) for x in row]
    return _primitive(out)


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[Vector], list[int]]:
    """Reduced row-echelon form of the rational matrix given by ``rows``.

    Returns the nonzero RREF rows (as fraction tuples) and their pivot columns.
    """
    A = [_integer_row([as_fraction(x) for x in r]) for r in rows if any(r)]
    for r in A:
        if len(r) != ncols:
            raise DimensionError("row length does not match column count")
    m = len(A)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = None
        best = None
        for i in range(r, m):
            a = A[i][c]
            if a and (best is None or abs(a) < best):
                p, best = i, abs(a)
                if best == 1:
                    break
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        prow = A[r]
        piv = prow[c]
        for i in range(r + 1, m):
            a = A[i][c]
            if a:
                g = gcd(piv, a)
                s, t = piv // g, a // g
                A[i] = _primitive([s * x - t * y for x, y in zip(A[i], prow)])
        pivots.append(c)
        r += 1
    A = A[:r]
    # back substitution, still over the integers
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        krow = A[k]
        piv = krow[c]
        for i in range(k):
            a = A[i][c]
            if a:
                g = gcd(piv, a)
                s, t = piv // g, a // g
                A[i] = _primitive([s * x - t * y for x, y in zip(A[i], krow)])
    out = []
    for k, c in enumerate(pivots):
        piv = A[k][c]
        out.append(tuple(Fraction(x, piv) for x in A[k]))
    return out, pivots


def _kernel_from_rref(R: list[Vector], pivots: list[int], ncols: int) -> list[Vector]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def rank_and_kernel(M: Matrix) -> tuple[int, "Subspace"]:
    R, piv = rref(M.rows, M.ncols)
    kernel = Subspace.span(_kernel_from_rref(R, piv, M.ncols), M.ncols)
    return len(piv), kernel


def solve_linear(M: Matrix, b: Sequence) -> Vector | None:
    """A particular solution of ``M x = b``, or ``None`` if inconsistent."""
    b = vec(b)
    if len(b) != M.nrows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {M.nrows}")
    n = M.ncols
    aug = [tuple(r) + (bi,) for r, bi in zip(M.rows, b)]
    R, piv = rref(aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, piv):
        x[p] = row[n]
    return tuple(x)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its reduced row-echelon basis.

    Two subspaces are equal exactly when their canonical bases agree.
    """

    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [vec(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        R, piv = rref(vs, ambient_dim)
        return cls(ambient_dim, tuple(R), tuple(piv))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vec(n, i) for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Normal form of ``v`` modulo this subspace (zero at every pivot)."""
        v = list(vec(v))
        if len(v) != self.ambient_dim:
            raise DimensionError("ambient dimension mismatch")
        for row, p in zip(self.basis, self.pivots):
            a = v[p]
            if a:
                for k, x in enumerate(row):
                    if x:
                        v[k] -= a * x
        return tuple(v)

    def __contains__(self, v) -> bool:
        return is_zero(self.reduce(v))

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of ``v`` in the canonical basis, or None if outside."""
        v = vec(v)
        if not is_zero(self.reduce(v)):
            return None
        return tuple(v[p] for p in self.pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient dimension mismatch")
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(b in self for b in other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient dimension mismatch")
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        k = self.dim
        M = Matrix.from_columns(list(self.basis) + [vscale(-1, b) for b in other.basis])
        _, ker = rank_and_kernel(M)
        vs = [lincomb(c[:k], self.basis, self.ambient_dim) for c in ker.basis]
        return Subspace.span(vs, self.ambient_dim)


def span_membership(S: Subspace, T: Subspace, v: Sequence) -> Vector | None:
    """Coefficients expressing ``v`` over ``S.basis + T.basis``, or None if v is not in S + T."""
    if S.ambient_dim != T.ambient_dim:
        raise DimensionError("ambient dimensions of S and T differ")
    v = vec(v)
    if len(v) != S.ambient_dim:
        raise DimensionError("vector does not live in the ambient space")
    gens = list(S.basis) + list(T.basis)
    if not gens:
        return () if is_zero(v) else None
    M = Matrix.from_columns(gens)
    return solve_linear(M, v)


# ---------------------------------------------------------------------------
# Determinants, characteristic polynomials, signatures
# ---------------------------------------------------------------------------


def det(rows: Sequence[Sequence]):
    """Determinant over any exact field (Fraction or GaussianScalar entries)."""
    A = [list(r) for r in rows]
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionError("determinant of a non-square matrix")
    one = A[0][0] * 0 + 1 if n else Fraction(1)
    result = one
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return one * 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            result = -result
        piv = A[c][c]
        result = result * piv
        for i in range(c + 1, n):
            f = A[i][c]
            if f:
                f = f / piv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result


def charpoly(M: Matrix) -> list[Fraction]:
    """Coefficients of det(t*I - M), highest degree first (Faddeev-LeVerrier)."""
    n = M.nrows
    if M.ncols != n:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    coeffs = [Fraction(1)]
    Mk = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        Mk = M @ (Mk + ident.scale(c))
        c = -Mk.trace() / k
        coeffs.append(c)
    return coeffs


def signature(G: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric form, by exact congruence."""
    if not G.is_symmetric():
        raise ValueError("signature needs a symmetric matrix")
    A = [list(r) for r in G.rows]
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if A[i][i]), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j, which has nonzero square 2*A[i][j]
            for r in range(n):
                A[r][i] += A[r][j]
            for c in range(n):
                A[i][c] += A[j][c]
            if not A[i][i]:
                for r in range(n):
                    A[r][i] -= 2 * A[r][j]
                for c in range(n):
                    A[i][c] -= 2 * A[j][c]
            k = i
        d = A[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = A[i][k] / d
            if f:
                for c in range(n):
                    A[i][c] -= f * A[k][c]
                for r in range(n):
                    A[r][i] -= f * A[r][k]
    return pos, neg, n - pos - neg
