"""Homogeneous splits g = h ⊕ m, invariant structures on m, the Nijenhuis tensor."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .cohomology import Representation, pair_index, pairs
from .lie import LieAlgebra, NotClosedError, Subalgebra, rational_spectrum, subalgebra_closure
from .linalg import (
    DimensionError,
    GaussianScalar,
    Matrix,
    Subspace,
    Vector,
    det,
    is_zero,
    lincomb,
    rank_and_kernel,
    solve_linear,
    unit_vec,
    vec,
    zero_vec,
)

__all__ = [
    "AcsCheck",
    "AcsObstruction",
    "HomogeneousSplit",
    "NijenhuisForm",
    "NondegeneracyReport",
    "NoRationalSolution",
    "NotACS",
    "NotClosedError",
    "NotComplementError",
    "NotInvariant",
    "TypeComponentLeak",
    "UnsupportedDimension",
    "acs_obstruction",
    "invariant_endomorphisms",
    "invariant_hermitian_forms",
    "make_split",
    "nijenhuis_tensor",
    "nondegeneracy_report",
    "perturbed_lift",
    "solve_invariant_acs",
    "verify_acs_invariance",
]


class NotComplementError(ValueError):
    pass


class NotACS(ValueError):
    pass


class NotInvariant(ValueError):
    pass


class UnsupportedDimension(ValueError):
    def __init__(self, dim: int, limit: int):
        super().__init__(f"invariant endomorphism space has dimension {dim} > {limit}")
        self.dim = dim


class NoRationalSolution(ValueError):
    pass


class TypeComponentLeak(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class HomogeneousSplit:
    """``g = h ⊕ m`` with the maps derived from the bracket.

    For generators ``x_a`` of h and complement vectors ``u_i``:
    ``[x_a, u_i] = ρ(x_a) u_i + φ(x_a, u_i)`` and
    ``[u_i, u_j] = θ_m(u_i, u_j) + θ_h(u_i, u_j)``, split along h ⊕ m.
    ``phi[a][i]`` and ``theta_h[i][j]`` are h-coordinates, ``theta_m[i][j]``
    m-coordinates.
    """

    g: LieAlgebra
    h: Subalgebra
    h_algebra: LieAlgebra
    m_basis: tuple
    isotropy: Representation
    phi: tuple
    theta_m: tuple
    theta_h: tuple
    _basis_matrix: Matrix

    @property
    def dim_h(self) -> int:
        return self.h.dim

    @property
    def dim_m(self) -> int:
        return len(self.m_basis)

    @property
    def m_labels(self) -> tuple[str, ...]:
        from .lie import format_vector
        return tuple(format_vector(u, self.g.labels) for u in self.m_basis)

    def split_coords(self, w: Sequence) -> tuple[Vector, Vector]:
        """(h-coordinates, m-coordinates) of a vector of g."""
        coords = solve_linear(self._basis_matrix, w)
        k = self.dim_h
        return coords[:k], coords[k:]

    def pr_m(self, w: Sequence) -> Vector:
        return self.split_coords(w)[1]

    def pr_h(self, w: Sequence) -> Vector:
        return self.split_coords(w)[0]

    def lift(self, u: Sequence) -> Vector:
        """The element of g with m-coordinates ``u`` lying in the chosen complement."""
        return lincomb(u, self.m_basis, self.g.dim)

    def h_element(self, y: Sequence) -> Vector:
        return lincomb(y, self.h.generators, self.g.dim)

    def phi_apply(self, y: Sequence, u: Sequence) -> Vector:
        """φ(y, u) in h-coordinates for y in h-coordinates and u in m-coordinates."""
        out = [Fraction(0)] * self.dim_h
        for a, ya in enumerate(y):
            if not ya:
                continue
            for i, ui in enumerate(u):
                if ui:
                    for b, x in enumerate(self.phi[a][i]):
                        if x:
                            out[b] += ya * ui * x
        return tuple(out)


def make_split(g: LieAlgebra, h, m_basis: Sequence[Sequence]) -> HomogeneousSplit:
    """Build the split for subalgebra ``h`` (a Subalgebra or generator list) and complement ``m_basis``."""
    if not isinstance(h, Subalgebra):
        h = Subalgebra(g, tuple(h))
    m_basis = tuple(vec(u) for u in m_basis)
    n = g.dim
    if any(len(u) != n for u in m_basis):
        raise DimensionError("complement vectors have the wrong length")
    k, q = h.dim, len(m_basis)
    if k + q != n or Subspace.span(list(h.generators) + list(m_basis), n).dim != n:
        raise NotComplementError("h generators and complement do not form a basis of g")
    h_alg = subalgebra_closure(h)  # raises NotClosedError
    B = Matrix.from_columns(list(h.generators) + list(m_basis))

    def split(w):
        c = solve_linear(B, w)
        return c[:k], c[k:]

    rho_cols = [[None] * q for _ in range(k)]
    phi = [[None] * q for _ in range(k)]
    for a in range(k):
        for i in range(q):
            hp, mp = split(g.bracket(h.generators[a], m_basis[i]))
            phi[a][i], rho_cols[a][i] = hp, mp
    theta_m = [[zero_vec(q)] * q for _ in range(q)]
    theta_h = [[zero_vec(k)] * q for _ in range(q)]
    for i in range(q):
        for j in range(i + 1, q):
            hp, mp = split(g.bracket(m_basis[i], m_basis[j]))
            theta_h[i][j], theta_m[i][j] = hp, mp
            theta_h[j][i] = tuple(-x for x in hp)
            theta_m[j][i] = tuple(-x for x in mp)
    mats = [Matrix.from_columns(rho_cols[a]) if q else Matrix.zeros(0, 0) for a in range(k)]
    rho = Representation.of_dim(h_alg, q, mats, "m")
    return HomogeneousSplit(
        g, h, h_alg, m_basis, rho,
        tuple(tuple(r) for r in phi),
        tuple(tuple(r) for r in theta_m),
        tuple(tuple(r) for r in theta_h),
        B,
    )


# ---------------------------------------------------------------------------
# invariant endomorphisms and almost complex structures
# ---------------------------------------------------------------------------


def invariant_endomorphisms(split: HomogeneousSplit) -> Subspace:
    """All A (row-major flattened) with ρ(x)A = Aρ(x) for every generator x of h."""
    q = split.dim_m
    rows = []
    for R in split.isotropy.matrices:
        for i in range(q):
            for j in range(q):
                row = [Fraction(0)] * (q * q)
                for k in range(q):
                    if R[i, k]:
                        row[k * q + j] += R[i, k]
                    if R[k, j]:
                        row[i * q + k] -= R[k, j]
                if any(row):
                    rows.append(row)
    if not rows:
        return Subspace.full(q * q)
    return rank_and_kernel(Matrix(rows, ncols=q * q))[1]


def _is_acs(J: Matrix) -> bool:
    n = J.nrows
    return J.shape == (n, n) and J @ J == -Matrix.identity(n)


def solve_invariant_acs(split: HomogeneousSplit, max_dim: int = 3) -> list[Matrix]:
    """All rational invariant J with J² = -1, when the invariant space is small.

    The quadratic system in at most ``max_dim`` unknowns is solved exactly
    (sympy), and every solution is re-checked in exact arithmetic.
    """
    import sympy

    space = invariant_endomorphisms(split)
    k = space.dim
    if k > max_dim:
        raise UnsupportedDimension(k, max_dim)
    q = split.dim_m
    if k == 0:
        raise NoRationalSolution("no nonzero invariant endomorphisms")
    ts = sympy.symbols(f"t0:{k}")
    basis = [Matrix.from_flat(b, q) for b in space.basis]

    def sym(x: Fraction):
        return sympy.Rational(x.numerator, x.denominator)

    Jsym = sympy.zeros(q, q)
    for t, B in zip(ts, basis):
        Jsym += t * sympy.Matrix(q, q, [sym(x) for x in B.flat()])
    eqs = {e for e in (Jsym * Jsym + sympy.eye(q)) if e != 0}
    sols = sympy.solve(list(eqs), ts, dict=True)
    found = []
    for s in sols:
        if set(s) != set(ts):
            raise UnsupportedDimension(k, max_dim)  # positive-dimensional family
        vals = [s[t] for t in ts]
        if not all(v.is_rational for v in vals):
            continue
        coeffs = [Fraction(int(v.p), int(v.q)) for v in vals]
        J = Matrix.from_flat(lincomb(coeffs, space.basis, q * q), q)
        if not _is_acs(J):
            raise ArithmeticError("solver returned a non-solution")
        found.append(J)
    if not found:
        raise NoRationalSolution(f"J² = -1 has no rational solution in the {k}-dimensional invariant space")
    found.sort(key=lambda M: M.flat(), reverse=True)
    return found


@dataclass(frozen=True)
class AcsObstruction:
    """A joint eigenvector of every invariant endomorphism.

    Every invariant J then satisfies ``J w = s w`` for a rational ``s``, and
    ``J² w = -w`` would force ``s² = -1``.
    """

    vector: Vector
    eigenvalues: tuple  # one per basis element of the invariant space


def acs_obstruction(split: HomogeneousSplit, attempts: int = 5) -> AcsObstruction | None:
    """Search for a common rational eigenvector of the invariant endomorphisms."""
    space = invariant_endomorphisms(split)
    q = split.dim_m
    mats = [Matrix.from_flat(b, q) for b in space.basis]
    if not mats:
        return None
    for attempt in range(attempts):
        weights = [Fraction((i + 1) ** (attempt + 1) + attempt) for i in range(len(mats))]
        A = Matrix.from_flat(lincomb(weights, space.basis, q * q), q)
        eig, _ = rational_spectrum(A, strict=False)
        for lam, _mult in eig:
            _, E = rank_and_kernel(A - Matrix.identity(q).scale(lam))
            w = E.basis[0]
            # every invariant endomorphism must act by a scalar on all of E
            ells = []
            ok = True
            for M in mats:
                img = M @ w
                p = next(i for i, x in enumerate(w) if x)
                ell = img[p] / w[p]
                if any(M @ v != tuple(ell * x for x in v) for v in E.basis):
                    ok = False
                    break
                ells.append(ell)
            if ok:
                return AcsObstruction(w, tuple(ells))
    return None


@dataclass(frozen=True)
class AcsCheck:
    passed: bool
    witness: tuple | None = None  # (generator index, m-basis index)


def verify_acs_invariance(split: HomogeneousSplit, J: Matrix) -> AcsCheck:
    if not _is_acs(J) or J.nrows != split.dim_m:
        raise NotACS("J² != -1")
    for a, R in enumerate(split.isotropy.matrices):
        C = R @ J - J @ R
        if not C.is_zero():
            u = next(j for j in range(C.ncols) if any(C.column(j)))
            return AcsCheck(False, (a, u))
    return AcsCheck(True)


# ---------------------------------------------------------------------------
# invariant pseudo-Hermitian metrics
# ---------------------------------------------------------------------------


def invariant_hermitian_forms(split: HomogeneousSplit, J: Matrix) -> Subspace:
    """Symmetric B (flattened row-major) with ρ(x)ᵀB + Bρ(x) = 0 and JᵀBJ = B."""
    if not _is_acs(J):
        raise NotACS("J² != -1")
    q = split.dim_m
    N = q * q
    rows = []
    for i in range(q):
        for j in range(i + 1, q):
            row = [Fraction(0)] * N
            row[i * q + j] = Fraction(1)
            row[j * q + i] = Fraction(-1)
            rows.append(row)
    # B(ρu_i, u_j) + B(u_i, ρu_j) = Σ_k R[k][i] B[k][j] + R[k][j] B[i][k]
    for R in split.isotropy.matrices:
        for i in range(q):
            for j in range(i, q):
                row = [Fraction(0)] * N
                for k in range(q):
                    if R[k, i]:
                        row[k * q + j] += R[k, i]
                    if R[k, j]:
                        row[i * q + k] += R[k, j]
                if any(row):
                    rows.append(row)
    # B(Ju_i, Ju_j) - B(u_i, u_j) = Σ_{k,l} J[k][i] J[l][j] B[k][l] - B[i][j]
    for i in range(q):
        for j in range(i, q):
            row = [Fraction(0)] * N
            for k in range(q):
                if J[k, i]:
                    for l in range(q):
                        if J[l, j]:
                            row[k * q + l] += J[k, i] * J[l, j]
            row[i * q + j] -= 1
            if any(row):
                rows.append(row)
    return rank_and_kernel(Matrix(rows, ncols=N))[1]


# ---------------------------------------------------------------------------
# Nijenhuis tensor
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NijenhuisForm:
    """Values ``N(u_i, u_j)`` (m-coordinates) for i < j."""

    dim: int
    values: tuple  # indexed like cohomology.pairs(dim)

    def basis_value(self, i: int, j: int) -> Vector:
        if i == j:
            return zero_vec(self.dim)
        p, s = pair_index(i, j, self.dim)
        v = self.values[p]
        return v if s == 1 else tuple(-x for x in v)

    def __call__(self, u: Sequence, v: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b and i != j:
                    for k, x in enumerate(self.basis_value(i, j)):
                        if x:
                            out[k] += a * b * x
        return tuple(out)

    def as_tensor(self) -> Vector:
        """Coordinates in Λ²m*⊗m (pair index * dim + component)."""
        return tuple(x for v in self.values for x in v)

    def is_zero(self) -> bool:
        return all(is_zero(v) for v in self.values)


def perturbed_lift(split: HomogeneousSplit, shifts: Sequence[Sequence]) -> Callable:
    """Lift through the complement ``u_i + w_i`` with ``w_i`` (h-coordinates) in h."""
    shifted = [tuple(a + b for a, b in zip(u, split.h_element(w)))
               for u, w in zip(split.m_basis, shifts)]

    def lift(u):
        return lincomb(u, shifted, split.g.dim)

    return lift


def nijenhuis_tensor(split: HomogeneousSplit, J: Matrix, lift: Callable | None = None) -> NijenhuisForm:
    """N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY], brackets projected to m."""
    if not _is_acs(J):
        raise NotACS("J² != -1")
    if not verify_acs_invariance(split, J).passed:
        raise NotInvariant("J does not commute with the isotropy action")
    lift = lift or split.lift
    q = split.dim_m
    g = split.g
    e = [unit_vec(q, i) for i in range(q)]
    Je = [J.column(i) for i in range(q)]
    L = [lift(v) for v in e]
    LJ = [lift(v) for v in Je]
    values = []
    for i, j in pairs(q):
        t1 = split.pr_m(g.bracket(LJ[i], LJ[j]))
        t2 = split.pr_m(g.bracket(L[i], L[j]))
        t3 = J @ split.pr_m(g.bracket(LJ[i], L[j]))
        t4 = J @ split.pr_m(g.bracket(L[i], LJ[j]))
        values.append(tuple(a - b - c - d for a, b, c, d in zip(t1, t2, t3, t4)))
    return NijenhuisForm(q, tuple(values))


@dataclass(frozen=True)
class NondegeneracyReport:
    rank: int
    nondegenerate: bool
    det_certificate: GaussianScalar
    complex_basis: tuple  # real vectors u_k; the (1,0)-basis is u_k - i J u_k
    matrix: tuple  # rows of the complex matrix, indexed [c][pair]


def _complex_frame(J: Matrix) -> list[int]:
    q = J.nrows
    chosen = []
    span = Subspace.zero(q)
    for k in range(q):
        u = unit_vec(q, k)
        T = span + Subspace.span([u, J @ u], q)
        if T.dim == span.dim + 2:
            chosen.append(k)
            span = T
    return chosen


def nondegeneracy_report(split: HomogeneousSplit, J: Matrix, N: NijenhuisForm) -> NondegeneracyReport:
    """Real rank of N and the determinant of N: Λ²T^{1,0} -> T^{0,1}.

    With w_k = u_k - iJu_k spanning T^{1,0}, each N(w_a, w_b) is written as
    Σ γ_c (u_c + iJu_c) + Σ δ_c (u_c - iJu_c); a nonzero δ means the value
    leaked into T^{1,0} and is reported as an error.
    """
    q = split.dim_m
    rank = Subspace.span(N.values, q).dim if N.values else 0
    frame = _complex_frame(J)
    if 2 * len(frame) != q:
        raise ArithmeticError("failed to find a complex frame for J")
    us = [unit_vec(q, k) for k in frame]
    Jus = [J @ u for u in us]
    real_basis = Matrix.from_columns(us + Jus)
    r = len(us)

    def coords(v):
        c = solve_linear(real_basis, v)
        return c[:r], c[r:]

    cols = []
    for a, b in pairs(r):
        re = [x - y for x, y in zip(N(us[a], us[b]), N(Jus[a], Jus[b]))]
        im = [-(x + y) for x, y in zip(N(us[a], Jus[b]), N(Jus[a], us[b]))]
        (ar, br), (ai, bi) = coords(re), coords(im)
        col = []
        for c in range(r):
            alpha = GaussianScalar(ar[c], ai[c])
            beta = GaussianScalar(br[c], bi[c])
            gamma = (alpha - GaussianScalar(0, 1) * beta) / 2
            delta = (alpha + GaussianScalar(0, 1) * beta) / 2
            if delta:
                raise TypeComponentLeak(f"N(w_{a}, w_{b}) has a (1,0) component")
            col.append(gamma)
        cols.append(col)
    rows = tuple(tuple(cols[p][c] for p in range(len(cols))) for c in range(r))
    if r and len(cols) == r:
        d = det(rows)
    else:
        d = GaussianScalar(0, 0)
    d = GaussianScalar.coerce(d)
    return NondegeneracyReport(rank, bool(d), d, tuple(frame), rows)
