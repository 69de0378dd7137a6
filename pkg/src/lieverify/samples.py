"""Small Lie algebras for randomized checks.

Random samples are direct sums of a few standard algebras, written in a
random rational basis, together with a subalgebra and a deliberately
non-canonical complement.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .lie import LieAlgebra, generated_subalgebra, semidirect_product
from .linalg import Matrix, Subspace, solve_linear, unit_vec


def sl2() -> LieAlgebra:
    # [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return LieAlgebra.from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, ("h", "e", "f"), "sl2")


def so3() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}, None, "so3")


def heisenberg(n: int = 1) -> LieAlgebra:
    """Heisenberg algebra of dimension 2n+1, center last."""
    d = 2 * n + 1
    br = {(i, n + i): {d - 1: 1} for i in range(n)}
    return LieAlgebra.from_brackets(d, br, None, f"heis{d}")


def aff1() -> LieAlgebra:
    return LieAlgebra.from_brackets(2, {(0, 1): {1: 1}}, ("a", "b"), "aff1")


def euclidean2() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (0, 2): {1: -1}}, ("r", "x", "y"), "e2")


def graded3(w1: int = 1, w2: int = 2) -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {1: w1}, (0, 2): {2: w2}}, ("t", "x", "y"), "r3")


def filiform4() -> LieAlgebra:
    return LieAlgebra.from_brackets(4, {(0, 1): {2: 1}, (0, 2): {3: 1}}, None, "n4")


def sl2_plane() -> LieAlgebra:
    """sl2 ⋉ R² with the standard action."""
    std = [Matrix([[1, 0], [0, -1]]), Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]])]
    return semidirect_product(sl2(), LieAlgebra.abelian(2, ("p", "q")), std, "sl2+R2")


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    zero = [Matrix.zeros(B.dim, B.dim) for _ in range(A.dim)]
    return semidirect_product(A, B, zero, f"{A.name}+{B.name}")


BUILDING_BLOCKS = (sl2, so3, heisenberg, aff1, euclidean2, graded3, filiform4, sl2_plane,
                   lambda: LieAlgebra.abelian(1), lambda: LieAlgebra.abelian(2))


@dataclass(frozen=True)
class SampleSplit:
    g: LieAlgebra
    h_generators: tuple
    m_basis: tuple


def random_invertible(n: int, rng: random.Random, bound: int = 2) -> Matrix:
    while True:
        P = Matrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if P.rank() == n:
            return P


def random_algebra(rng: random.Random, max_dim: int = 6) -> LieAlgebra:
    L = None
    while L is None or L.dim < 2:
        L = None
        for _ in range(rng.randint(1, 3)):
            B = rng.choice(BUILDING_BLOCKS)()
            if L is None:
                L = B if B.dim <= max_dim else None
            elif L.dim + B.dim <= max_dim:
                L = direct_sum(L, B)
    return L


def random_split(rng: random.Random, max_dim: int = 6) -> SampleSplit:
    """A random algebra, a proper nonzero subalgebra and a skewed complement."""
    L = random_algebra(rng, max_dim)
    n = L.dim
    S = None
    for _ in range(10):
        k = rng.randint(1, 2)
        gens = [L.basis_vector(i) for i in rng.sample(range(n), k)]
        S = generated_subalgebra(L, gens)
        if 0 < S.dim < n:
            break
        S = Subspace.span([gens[0]], n)
    P = random_invertible(n, rng)
    G = L.change_basis(P)
    # subalgebra in the new basis: v = P c
    h_gens = tuple(solve_linear(P, v) for v in S.basis)
    span = Subspace.span(h_gens, n)
    comp = []
    acc = span
    for i in range(n):
        T = acc + Subspace.span([unit_vec(n, i)], n)
        if T.dim > acc.dim:
            comp.append(unit_vec(n, i))
            acc = T
    shifted = []
    for u in comp:
        w = [Fraction(rng.randint(-2, 2)) for _ in h_gens]
        shift = [sum((c * g[t] for c, g in zip(w, h_gens)), Fraction(0)) for t in range(n)]
        shifted.append(tuple(a + b for a, b in zip(u, shift)))
    return SampleSplit(G, h_gens, tuple(shifted))
