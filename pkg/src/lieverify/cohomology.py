"""Chevalley-Eilenberg cohomology in degrees 0 and 1.

Flattening conventions (fixed once, used everywhere):

* tensor product ``V ⊗ W``: basis ``v_i ⊗ w_j`` at index ``i * dim W + j``;
* ``Λ²V*``: alternating forms ``ω``, coordinate ``ω(v_i, v_j)`` for the
  ordered pairs ``i < j`` in lexicographic order (see :func:`pair_index`);
* a k-cochain on ``h`` with values in ``V``: coordinate
  ``(index of the k-subset of h-basis) * dim V + (module index)``.

The module action on a dual is ``-ρ(x)ᵀ`` and on tensors the Leibniz rule,
so on ``Λ²V*`` it is ``(x·ω)(u, v) = -ω(x u, v) - ω(u, x v)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .lie import LieAlgebra
from .linalg import (
    DimensionError,
    Matrix,
    Subspace,
    Vector,
    is_zero,
    rank_and_kernel,
    solve_linear,
    vec,
    zero_vec,
)

__all__ = [
    "Cochain",
    "apply_d",
    "CohomologyReport",
    "NotARepresentation",
    "RecipeError",
    "Representation",
    "build_representation",
    "ce_differential",
    "coboundary_witness",
    "cohomology",
    "pair_index",
    "pairs",
    "parse_recipe",
]


class NotARepresentation(ValueError):
    def __init__(self, pair):
        super().__init__(f"rho([x_{pair[0]}, x_{pair[1]}]) != [rho(x_{pair[0]}), rho(x_{pair[1]})]")
        self.pair = pair


class RecipeError(ValueError):
    pass


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def _pair_lookup(n: int) -> dict:
    return {p: k for k, p in enumerate(pairs(n))}


def pair_index(i: int, j: int, n: int) -> tuple[int, int]:
    """(index of {i, j} in Λ² ordering, sign) for ``i != j``."""
    if i < j:
        return _pair_lookup(n)[(i, j)], 1
    return _pair_lookup(n)[(j, i)], -1


class Representation:
    """A module of ``algebra`` given by one matrix per basis element.

    The bracket compatibility ``ρ([x,y]) = [ρ(x), ρ(y)]`` is checked on
    construction unless ``check=False``.
    """

    def __init__(self, algebra: LieAlgebra, matrices: Sequence[Matrix], name: str = "",
                 check: bool = True):
        self.algebra = algebra
        self.matrices = tuple(matrices)
        self.name = name
        if len(self.matrices) != algebra.dim:
            raise DimensionError("need one matrix per basis element of the acting algebra")
        dims = {M.shape for M in self.matrices}
        if len(dims) > 1 or any(r != c for r, c in dims):
            raise DimensionError("action matrices must be square and of equal size")
        self._dim = self.matrices[0].nrows if self.matrices else 0
        if check:
            bad = self.compatibility_defect()
            if bad is not None:
                raise NotARepresentation(bad)

    @classmethod
    def of_dim(cls, algebra: LieAlgebra, dim: int, matrices=None, name: str = "", check: bool = True):
        """Like the constructor but also valid for a 0-dimensional algebra."""
        rep = cls(algebra, matrices or [Matrix.zeros(dim, dim) for _ in range(algebra.dim)], name, check)
        rep._dim = dim
        return rep

    @property
    def dim(self) -> int:
        return self._dim

    def compatibility_defect(self):
        L = self.algebra
        for a, b in pairs(L.dim):
            lhs = Matrix.zeros(self.dim, self.dim)
            for k, x in enumerate(L.c[a][b]):
                if x:
                    lhs = lhs + self.matrices[k].scale(x)
            if lhs != self.matrices[a].commutator(self.matrices[b]):
                return (a, b)
        return None

    def act(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for k, a in enumerate(x):
            if a:
                out = out + self.matrices[k].scale(a)
        return out

    def permuted(self, h_order: Sequence[int], v_order: Sequence[int]) -> "Representation":
        """Same module after reordering the algebra basis and the module basis."""
        L = self.algebra.permuted(h_order)
        mats = []
        for a in h_order:
            M = self.matrices[a]
            mats.append(Matrix([[M[i, j] for j in v_order] for i in v_order], ncols=self.dim))
        return Representation.of_dim(L, self.dim, mats, self.name)

    def __repr__(self):
        return f"Representation({self.name or '?'}, dim={self.dim}, algebra dim={self.algebra.dim})"


def trivial(L: LieAlgebra, n: int) -> Representation:
    return Representation.of_dim(L, n, name=f"trivial^{n}")


def adjoint(L: LieAlgebra) -> Representation:
    return Representation.of_dim(L, L.dim, [L.ad(L.basis_vector(i)) for i in range(L.dim)], "ad")


def dual(rep: Representation) -> Representation:
    return Representation.of_dim(rep.algebra, rep.dim, [-M.T for M in rep.matrices],
                                 f"dual({rep.name})", check=False)


def tensor(V: Representation, W: Representation) -> Representation:
    IV, IW = Matrix.identity(V.dim), Matrix.identity(W.dim)
    mats = [A.kron(IW) + IV.kron(B) for A, B in zip(V.matrices, W.matrices)]
    return Representation.of_dim(V.algebra, V.dim * W.dim, mats, f"{V.name}⊗{W.name}", check=False)


def wedge2_dual(V: Representation) -> Representation:
    n = V.dim
    P = pairs(n)
    mats = []
    for M in V.matrices:
        rows = [[Fraction(0)] * len(P) for _ in P]
        for p, (i, j) in enumerate(P):
            # (x.ω)(v_i, v_j) = -Σ_k M[k][i] ω(v_k, v_j) - Σ_k M[k][j] ω(v_i, v_k)
            for k in range(n):
                a = M[k, i]
                if a and k != j:
                    q, s = pair_index(k, j, n)
                    rows[p][q] -= s * a
                a = M[k, j]
                if a and k != i:
                    q, s = pair_index(i, k, n)
                    rows[p][q] -= s * a
        mats.append(Matrix(rows, ncols=len(P)))
    return Representation.of_dim(V.algebra, len(P), mats, f"wedge2dual({V.name})", check=False)


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(wedge2dual\(|dual\(|⊗|\(x\)|\*|\(|\)|m|h)")


def parse_recipe(text: str):
    """Parse a module recipe into a nested tuple tree.

    Grammar: ``atom := m | h``; ``expr := atom | dual(expr) | expr* |
    expr ⊗ expr | wedge2dual(expr)``. ``(x)`` is accepted for ``⊗``. Tensor
    products associate to the left.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise RecipeError(f"unexpected input at position {pos}: {text[pos:]!r}")
        tokens.append("⊗" if mt.group(1) == "(x)" else mt.group(1))
        pos = mt.end()
    it = iter(tokens + [None])
    cur = [next(it)]

    def advance():
        cur[0] = next(it)

    def primary():
        tok = cur[0]
        if tok in ("m", "h"):
            advance()
            node = ("atom", tok)
        elif tok in ("dual(", "wedge2dual(", "("):
            advance()
            inner = expr()
            if cur[0] != ")":
                raise RecipeError(f"expected ')' in {text!r}")
            advance()
            node = inner if tok == "(" else (tok[:-1], inner)
        else:
            raise RecipeError(f"unexpected token {tok!r} in {text!r}")
        while cur[0] == "*":
            advance()
            node = ("dual", node)
        return node

    def expr():
        node = primary()
        while cur[0] == "⊗":
            advance()
            node = ("tensor", node, primary())
        return node

    tree = expr()
    if cur[0] is not None:
        raise RecipeError(f"trailing input in {text!r}")
    return tree


def _evaluate(tree, atoms: dict) -> Representation:
    kind = tree[0]
    if kind == "atom":
        return atoms[tree[1]]
    if kind == "dual":
        return dual(_evaluate(tree[1], atoms))
    if kind == "wedge2dual":
        return wedge2_dual(_evaluate(tree[1], atoms))
    if kind == "tensor":
        return tensor(_evaluate(tree[1], atoms), _evaluate(tree[2], atoms))
    raise RecipeError(f"malformed recipe node {tree!r}")


def build_representation(recipe, split) -> Representation:
    """Evaluate a recipe (string or parsed tree) on a homogeneous split.

    Atom ``m`` is the isotropy module, atom ``h`` the adjoint module of the
    isotropy algebra.
    """
    tree = parse_recipe(recipe) if isinstance(recipe, str) else recipe
    rep = _evaluate(tree, {"m": split.isotropy, "h": adjoint(split.h_algebra)})
    rep.name = recipe if isinstance(recipe, str) else rep.name
    return rep


# ---------------------------------------------------------------------------
# cochains and the differential
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cochain:
    degree: int
    module: Representation
    coeffs: Vector

    def __post_init__(self):
        if self.degree not in (0, 1, 2):
            raise ValueError("only degrees 0, 1, 2 are supported")
        object.__setattr__(self, "coeffs", vec(self.coeffs))
        if len(self.coeffs) != cochain_dim(self.module, self.degree):
            raise DimensionError(f"degree-{self.degree} cochain has {len(self.coeffs)} coefficients, "
                                 f"expected {cochain_dim(self.module, self.degree)}")

    @classmethod
    def zero(cls, module: Representation, degree: int) -> "Cochain":
        return cls(degree, module, zero_vec(cochain_dim(module, degree)))

    def value(self, *args: int) -> Vector:
        """Module vector at the given h-basis arguments (none for degree 0)."""
        d = self.module.dim
        if self.degree == 0:
            return self.coeffs
        if self.degree == 1:
            (a,) = args
            return self.coeffs[a * d:(a + 1) * d]
        a, b = args
        if a == b:
            return zero_vec(d)
        p, s = pair_index(a, b, self.module.algebra.dim)
        v = self.coeffs[p * d:(p + 1) * d]
        return v if s == 1 else tuple(-x for x in v)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.degree, self.module, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.degree, self.module, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, s) -> "Cochain":
        return Cochain(self.degree, self.module, tuple(s * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return is_zero(self.coeffs)

    def _check(self, other: "Cochain"):
        if other.degree != self.degree or other.module is not self.module:
            raise ValueError("cochains live in different spaces")


def cochain_dim(rep: Representation, k: int) -> int:
    n = rep.algebra.dim
    count = {0: 1, 1: n, 2: n * (n - 1) // 2}[k]
    return count * rep.dim


def ce_differential(rep: Representation, k: int) -> Matrix:
    """Matrix of d: C^k(h, V) -> C^{k+1}(h, V) for k in {0, 1}.

    ``(dθ)(x) = ρ(x)θ`` and
    ``(dψ)(x, y) = ρ(x)ψ(y) - ρ(y)ψ(x) - ψ([x, y])``.
    """
    L = rep.algebra
    n, d = L.dim, rep.dim
    if k == 0:
        rows = []
        for a in range(n):
            rows.extend(rep.matrices[a].rows)
        return Matrix(rows, ncols=d) if rows else Matrix.zeros(0, d)
    if k != 1:
        raise ValueError("only d^0 and d^1 are implemented")
    P = pairs(n)
    rows = []
    for a, b in P:
        Ma, Mb = rep.matrices[a], rep.matrices[b]
        cab = L.c[a][b]
        for v in range(d):
            row = [Fraction(0)] * (n * d)
            for w in range(d):
                if Ma[v, w]:
                    row[b * d + w] += Ma[v, w]
                if Mb[v, w]:
                    row[a * d + w] -= Mb[v, w]
            for c, x in enumerate(cab):
                if x:
                    row[c * d + v] -= x
            rows.append(row)
    return Matrix(rows, ncols=n * d) if rows else Matrix.zeros(0, n * d)


def apply_d(rep: Representation, z: Cochain) -> Cochain:
    return Cochain(z.degree + 1, rep, ce_differential(rep, z.degree) @ z.coeffs)


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    dim_cocycles: int
    dim_coboundaries: int
    representatives: tuple  # of Cochain
    cocycles: Subspace
    coboundaries: Subspace

    @property
    def dim_H(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries

    def normal_form(self, z: Sequence) -> Vector:
        """Canonical representative of the class of ``z`` (reduced modulo coboundaries)."""
        return self.coboundaries.reduce(z)

    def class_coordinates(self, z: Sequence) -> Vector | None:
        """Coordinates of [z] in the basis of representatives; None if z is not a cocycle."""
        if vec(z) not in self.cocycles:
            return None
        span = Subspace.span([r.coeffs for r in self.representatives], self.cocycles.ambient_dim)
        nf = self.normal_form(z)
        coords = span.coordinates(nf)
        # representatives are an RREF basis, so span coordinates are representative coordinates
        return coords


def cohomology(rep: Representation, k: int) -> CohomologyReport:
    if k == 0:
        _, Z = rank_and_kernel(ce_differential(rep, 0))
        B = Subspace.zero(rep.dim)
        reps = tuple(Cochain(0, rep, z) for z in Z.basis)
        return CohomologyReport(0, Z.dim, 0, reps, Z, B)
    if k != 1:
        raise ValueError("only H^0 and H^1 are implemented")
    N = cochain_dim(rep, 1)
    _, Z = rank_and_kernel(ce_differential(rep, 1))
    d0 = ce_differential(rep, 0)
    B = Subspace.span(d0.columns(), N) if d0.ncols else Subspace.zero(N)
    normal = Subspace.span([B.reduce(z) for z in Z.basis], N)
    reps = tuple(Cochain(1, rep, v) for v in normal.basis)
    return CohomologyReport(1, Z.dim, B.dim, reps, Z, B)


def coboundary_witness(rep: Representation, z: Cochain) -> Cochain | None:
    """θ with dθ = z, or None when [z] != 0 in H^1."""
    if z.module is not rep and z.module.dim != rep.dim:
        raise ValueError("cochain belongs to a different module")
    if z.degree != 1:
        raise ValueError("coboundary witnesses are sought for 1-cochains")
    theta = solve_linear(ce_differential(rep, 0), z.coeffs)
    if theta is None:
        return None
    return Cochain(0, rep, theta)
