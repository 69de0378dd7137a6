"""Lie algebras given by structure constants over Q."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .linalg import (
    Matrix,
    Subspace,
    Vector,
    as_fraction,
    charpoly,
    is_zero,
    rank_and_kernel,
    solve_linear,
    unit_vec,
    vec,
    zero_vec,
)

__all__ = [
    "AntisymmetryError",
    "DerivationReport",
    "Fingerprint",
    "JacobiError",
    "LieAlgebra",
    "NonRationalSpectrum",
    "NotClosedError",
    "NotInvariantError",
    "SemidirectError",
    "Subalgebra",
    "derivation_algebra",
    "format_vector",
    "generated_subalgebra",
    "jacobi_defect",
    "killing_form",
    "outer_derivation_algebra",
    "rational_spectrum",
    "semidirect_product",
    "structure_fingerprint",
    "subalgebra_closure",
    "weight_decomposition",
]


class AntisymmetryError(ValueError):
    def __init__(self, i: int, j: int, k: int):
        super().__init__(f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")
        self.indices = (i, j, k)


class JacobiError(ValueError):
    def __init__(self, defects):
        i, j, k, _ = defects[0]
        super().__init__(f"Jacobi identity fails on {len(defects)} triple(s), first ({i},{j},{k})")
        self.defects = defects


class NotClosedError(ValueError):
    def __init__(self, pair: tuple[int, int], residual: Vector):
        super().__init__(f"bracket of generators {pair} leaves the span (residual {list(map(str, residual))})")
        self.pair = pair
        self.residual = residual


class NonRationalSpectrum(ValueError):
    def __init__(self, factor: str):
        super().__init__(f"characteristic polynomial has a non-rational factor {factor}")
        self.factor = factor


class NotInvariantError(ValueError):
    pass


class SemidirectError(ValueError):
    """Raised when the action is not by derivations or not a representation."""

    def __init__(self, kind: str, witness):
        super().__init__(f"{kind}: {witness}")
        self.kind = kind
        self.witness = witness


def _label_list(n: int, labels) -> tuple[str, ...]:
    if labels is None:
        return tuple(f"e{i}" for i in range(n))
    labels = tuple(labels)
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for dimension {n}")
    return labels


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``c[i][j][k]`` with ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    Antisymmetry is enforced on construction; the Jacobi identity is not
    (see :func:`jacobi_defect`).
    """

    c: tuple
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        n = len(self.c)
        c = tuple(tuple(vec(self.c[i][j]) for j in range(n)) for i in range(n))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "labels", _label_list(n, self.labels or None))
        for i in range(n):
            for j in range(n):
                if len(c[i][j]) != n:
                    raise ValueError("structure constants must be an n x n x n array")
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        raise AntisymmetryError(i, j, k)

    @classmethod
    def from_brackets(cls, n: int, brackets: Mapping[tuple[int, int], Mapping[int, object]],
                      labels=None, name: str = "") -> "LieAlgebra":
        """Build from the listed brackets ``{(i, j): {k: coeff}}``; the rest is
        zero or filled in by antisymmetry."""
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        seen = set()
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"bracket index ({i},{j}) out of range")
            if i == j:
                raise ValueError(f"bracket [e{i}, e{i}] must not be listed")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"bracket ({i},{j}) listed twice")
            seen.add(key)
            for k, v in coeffs.items():
                if not 0 <= int(k) < n:
                    raise IndexError(f"coefficient index {k} out of range")
                val = as_fraction(v)
                c[i][j][int(k)] = val
                c[j][i][int(k)] = -val
        return cls(tuple(tuple(tuple(r) for r in plane) for plane in c), labels, name)

    @classmethod
    def abelian(cls, n: int, labels=None) -> "LieAlgebra":
        return cls(tuple(tuple(zero_vec(n) for _ in range(n)) for _ in range(n)), labels, "abelian")

    @property
    def dim(self) -> int:
        return len(self.c)

    def basis_vector(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def vector(self, **coeffs) -> Vector:
        """Vector from label keyword coefficients, e.g. ``L.vector(h=1, b=-1)``."""
        v = [Fraction(0)] * self.dim
        for name, x in coeffs.items():
            v[self.labels.index(name)] += as_fraction(x)
        return tuple(v)

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        c = self.c
        for i, a in enumerate(u):
            if not a:
                continue
            ci = c[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, x in enumerate(ci[j]):
                    if x:
                        out[k] += ab * x
        return tuple(out)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``[x, .]``; column j holds ``[x, e_j]``."""
        n = self.dim
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(n)]
        return Matrix.from_columns(cols) if n else Matrix.zeros(0, 0)

    def structure_matrix(self) -> Matrix:
        """Rows indexed by (j, k); applied to x gives all ``[x, e_j]_k``."""
        n = self.dim
        return Matrix([[self.c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)], ncols=n)

    def permuted(self, order: Sequence[int]) -> "LieAlgebra":
        """Same algebra with basis ``e_{order[0]}, e_{order[1]}, ...``."""
        n = self.dim
        c = tuple(tuple(tuple(self.c[order[i]][order[j]][order[k]] for k in range(n))
                        for j in range(n)) for i in range(n))
        return LieAlgebra(c, tuple(self.labels[o] for o in order), self.name)

    def change_basis(self, P: Matrix, labels=None) -> "LieAlgebra":
        """Structure constants in the basis given by the columns of ``P``."""
        n = self.dim
        cols = P.columns()
        c = []
        for i in range(n):
            plane = []
            for j in range(n):
                w = self.bracket(cols[i], cols[j])
                coords = solve_linear(P, w)
                if coords is None:
                    raise ValueError("change of basis matrix is singular")
                plane.append(coords)
            c.append(tuple(plane))
        return LieAlgebra(tuple(c), labels, self.name)

    def same_constants(self, other: "LieAlgebra") -> bool:
        return self.c == other.c

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.c == other.c and self.labels == other.labels

    def __hash__(self):
        return hash((self.c, self.labels))


def format_vector(v: Sequence, labels: Sequence[str]) -> str:
    terms = []
    for x, name in zip(v, labels):
        if not x:
            continue
        if any(ch in name for ch in "+-* "):
            name = f"({name})"
        if x == 1:
            t = name
        elif x == -1:
            t = f"-{name}"
        else:
            t = f"{x}*{name}"
        terms.append(t)
    if not terms:
        return "0"
    s = terms[0]
    for t in terms[1:]:
        s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return s


def jacobi_defect(L: LieAlgebra) -> list[tuple[int, int, int, Vector]]:
    """All triples i<j<k on which the Jacobi identity fails, with the defect."""
    out = []
    n = L.dim
    e = [L.basis_vector(i) for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        t1 = L.bracket(e[i], L.c[j][k])
        t2 = L.bracket(e[j], L.c[k][i])
        t3 = L.bracket(e[k], L.c[i][j])
        d = tuple(a + b + c for a, b, c in zip(t1, t2, t3))
        if not is_zero(d):
            out.append((i, j, k, d))
    return out


def _require_jacobi(L: LieAlgebra):
    defects = jacobi_defect(L)
    if defects:
        raise JacobiError(defects)


@dataclass(frozen=True)
class Subalgebra:
    parent: LieAlgebra
    generators: tuple
    labels: tuple = ()

    def __post_init__(self):
        gens = tuple(vec(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(format_vector(g, self.parent.labels) for g in gens))

    @property
    def dim(self) -> int:
        return len(self.generators)

    def span(self) -> Subspace:
        return Subspace.span(self.generators, self.parent.dim)


def subalgebra_closure(S: Subalgebra) -> LieAlgebra:
    """Induced bracket table of ``S`` in its own generator basis.

    Raises :class:`NotClosedError` on the first pair of generators whose
    bracket leaves their span.
    """
    L = S.parent
    k = S.dim
    span = S.span()
    if span.dim != k:
        raise ValueError("subalgebra generators are linearly dependent")
    G = Matrix.from_columns(list(S.generators)) if k else Matrix.zeros(L.dim, 0)
    c = [[zero_vec(k) for _ in range(k)] for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            w = L.bracket(S.generators[a], S.generators[b])
            coords = solve_linear(G, w) if k else None
            if coords is None:
                raise NotClosedError((a, b), span.reduce(w))
            c[a][b] = coords
            c[b][a] = tuple(-x for x in coords)
    return LieAlgebra(tuple(tuple(p) for p in c), S.labels, f"subalgebra of {L.name}".strip())


def generated_subalgebra(L: LieAlgebra, vectors: Sequence[Sequence]) -> Subspace:
    """Smallest subalgebra containing ``vectors`` (as a subspace)."""
    S = Subspace.span(vectors, L.dim)
    while True:
        new = [L.bracket(u, v) for u, v in combinations(S.basis, 2)]
        T = Subspace.span(list(S.basis) + new, L.dim)
        if T.dim == S.dim:
            return S
        S = T


@dataclass(frozen=True)
class DerivationReport:
    dim: int
    basis: tuple  # of Matrix
    inner_dim: int

    @property
    def outer_dim(self) -> int:
        return self.dim - self.inner_dim


def _derivation_system(L: LieAlgebra) -> Matrix:
    # unknown D[r][s] at index r*n + s; D e_s = sum_r D[r][s] e_r
    n = L.dim
    c = L.c
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for l in range(n):
                    if c[i][j][l]:
                        row[k * n + l] += c[i][j][l]
                for r in range(n):
                    if c[r][j][k]:
                        row[r * n + i] -= c[r][j][k]
                    if c[i][r][k]:
                        row[r * n + j] -= c[i][r][k]
                if any(row):
                    rows.append(row)
    return Matrix(rows, ncols=n * n)


def derivation_algebra(L: LieAlgebra) -> DerivationReport:
    _require_jacobi(L)
    n = L.dim
    _, ker = rank_and_kernel(_derivation_system(L))
    basis = tuple(Matrix.from_flat(v, n) for v in ker.basis)
    inner = Subspace.span([L.ad(L.basis_vector(i)).flat() for i in range(n)], n * n)
    return DerivationReport(ker.dim, basis, inner.dim)


def is_derivation(L: LieAlgebra, D: Matrix) -> tuple[int, int] | None:
    """None if ``D`` is a derivation, else a witnessing basis pair."""
    n = L.dim
    for i in range(n):
        for j in range(i + 1, n):
            ei, ej = L.basis_vector(i), L.basis_vector(j)
            lhs = D @ L.c[i][j]
            rhs = tuple(a + b for a, b in zip(L.bracket(D.column(i), ej), L.bracket(ei, D.column(j))))
            if lhs != rhs:
                return (i, j)
    return None


def outer_derivation_algebra(L: LieAlgebra) -> LieAlgebra:
    """The quotient der(L)/ad(L) with the commutator bracket."""
    rep = derivation_algebra(L)
    n = L.dim
    N = n * n
    inner = Subspace.span([L.ad(L.basis_vector(i)).flat() for i in range(n)], N)
    reps = []
    acc = inner
    for D in rep.basis:
        f = D.flat()
        if f not in acc:
            reps.append(D)
            acc = acc + Subspace.span([f], N)
    q = len(reps)
    gens = list(inner.basis) + [D.flat() for D in reps]
    G = Matrix.from_columns(gens)
    c = [[zero_vec(q) for _ in range(q)] for _ in range(q)]
    for a in range(q):
        for b in range(a + 1, q):
            coords = solve_linear(G, reps[a].commutator(reps[b]).flat())
            if coords is None:
                raise ArithmeticError("commutator of derivations is not a derivation")
            c[a][b] = coords[inner.dim:]
            c[b][a] = tuple(-x for x in c[a][b])
    return LieAlgebra(tuple(tuple(p) for p in c), tuple(f"D{a}" for a in range(q)),
                      f"out({L.name})" if L.name else "out")


def semidirect_product(s: LieAlgebra, a: LieAlgebra, action: Sequence[Matrix],
                       name: str = "") -> LieAlgebra:
    """``s ⋉ a`` on the basis (s-basis, a-basis) with ``[x, y] = action(x) y``."""
    ns, na = s.dim, a.dim
    if len(action) != ns:
        raise ValueError("need one action matrix per basis element of s")
    for idx, A in enumerate(action):
        if A.shape != (na, na):
            raise ValueError(f"action matrix {idx} has shape {A.shape}")
        w = is_derivation(a, A)
        if w is not None:
            raise SemidirectError("ActionNotDerivation", {"generator": idx, "pair": w})
    for i in range(ns):
        for j in range(i + 1, ns):
            lhs = Matrix.zeros(na, na)
            for k, x in enumerate(s.c[i][j]):
                if x:
                    lhs = lhs + action[k].scale(x)
            if lhs != action[i].commutator(action[j]):
                raise SemidirectError("ActionNotRepresentation", {"pair": (i, j)})
    n = ns + na
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(ns):
        for j in range(ns):
            for k in range(ns):
                c[i][j][k] = s.c[i][j][k]
    for i in range(na):
        for j in range(na):
            for k in range(na):
                c[ns + i][ns + j][ns + k] = a.c[i][j][k]
    for i in range(ns):
        for j in range(na):
            for k in range(na):
                x = action[i][k, j]
                c[i][ns + j][ns + k] = x
                c[ns + j][i][ns + k] = -x
    return LieAlgebra(tuple(tuple(tuple(r) for r in p) for p in c), s.labels + a.labels, name)


def restricted_matrix(L: LieAlgebra, x: Sequence, W: Subspace) -> Matrix:
    """Matrix of ad(x) on the invariant subspace ``W`` in its canonical basis."""
    cols = []
    for w in W.basis:
        coords = W.coordinates(L.bracket(x, w))
        if coords is None:
            raise NotInvariantError("ad(x) does not preserve the subspace")
        cols.append(coords)
    return Matrix.from_columns(cols) if cols else Matrix.zeros(0, 0)


def rational_spectrum(M: Matrix, strict: bool = True):
    """Rational eigenvalues of ``M`` with algebraic multiplicities.

    With ``strict`` a non-linear irreducible factor of the characteristic
    polynomial raises :class:`NonRationalSpectrum`; otherwise those factors
    are returned separately as strings.
    """
    import sympy

    t = sympy.Symbol("t")
    if M.nrows == 0:
        return ([], []) if not strict else []
    coeffs = [sympy.Rational(x.numerator, x.denominator) for x in charpoly(M)]
    poly = sympy.Poly(coeffs, t, domain=sympy.QQ)
    _, factors = poly.factor_list()
    eig = []
    other = []
    for f, mult in factors:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            root = -b / a
            eig.append((Fraction(int(root.p), int(root.q)), int(mult)))
        else:
            other.append(str(f.as_expr()) + (f"^{mult}" if mult > 1 else ""))
    eig.sort()
    if strict:
        if other:
            raise NonRationalSpectrum(", ".join(other))
        return eig
    return eig, other


def weight_decomposition(L: LieAlgebra, x: Sequence, restrict_to: Subspace | None = None):
    """Eigenvalues of ad(x) on ``restrict_to`` (default: all of L) with multiplicities."""
    W = restrict_to if restrict_to is not None else Subspace.full(L.dim)
    return rational_spectrum(restricted_matrix(L, vec(x), W))


def killing_form(L: LieAlgebra) -> Matrix:
    n = L.dim
    ads = [L.ad(L.basis_vector(i)) for i in range(n)]
    K = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        A = ads[i].rows
        for j in range(i, n):
            B = ads[j].rows
            s = Fraction(0)
            for p in range(n):
                Ap = A[p]
                for q in range(n):
                    if Ap[q] and B[q][p]:
                        s += Ap[q] * B[q][p]
            K[i][j] = K[j][i] = s
    return Matrix(K, ncols=n)


def center(L: LieAlgebra) -> Subspace:
    return rank_and_kernel(L.structure_matrix())[1]


@dataclass(frozen=True)
class Fingerprint:
    center_dim: int
    derived_series: tuple
    lower_central_series: tuple
    killing_rank: int
    solvable: bool
    nilpotent: bool
    semisimple: bool = field(default=False)


def _series(L: LieAlgebra, step) -> tuple[int, ...]:
    S = Subspace.full(L.dim)
    dims = [S.dim]
    while True:
        T = step(S)
        if T.dim == S.dim:
            return tuple(dims)
        dims.append(T.dim)
        S = T


def structure_fingerprint(L: LieAlgebra) -> Fingerprint:
    _require_jacobi(L)
    n = L.dim
    basis = [L.basis_vector(i) for i in range(n)]
    derived = _series(L, lambda S: Subspace.span([L.bracket(u, v) for u, v in combinations(S.basis, 2)], n))
    lower = _series(L, lambda S: Subspace.span([L.bracket(e, v) for e in basis for v in S.basis], n))
    krank = killing_form(L).rank()
    return Fingerprint(
        center_dim=center(L).dim,
        derived_series=derived,
        lower_central_series=lower,
        killing_rank=krank,
        solvable=derived[-1] == 0,
        nilpotent=lower[-1] == 0,
        semisimple=n > 0 and krank == n,
    )
