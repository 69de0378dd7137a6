"""Reconstruction constraints for non-reductive homogeneous spaces.

Given a split g = h ⊕ m, a cochain φ in C¹(h, m*⊗h) is read as a bilinear
map h × m -> h. From it:

* ``δφ(x)(u1, u2) = ρ(φ(x, u1)) u2 - ρ(φ(x, u2)) u1``  (values in Λ²m*⊗m),
* ``Qφ(x)(u1, u2) = φ(φ(x, u1), u2) - φ(φ(x, u2), u1) - φ(x, θ_m(u1, u2))``,
* ``p_ν(x)(u1, u2) = φ(x, ν(u1, u2))`` for invariant ν in Λ²m*⊗m.

The Jacobi identity with one argument in h forces [δφ] = 0 in
H¹(h, Λ²m*⊗m) (condition 1) and Qφ ∈ B¹(h, Λ²m*⊗h) + span{p_ν}
(condition 2).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import (
    Cochain,
    CohomologyReport,
    Representation,
    build_representation,
    ce_differential,
    coboundary_witness,
    cohomology,
    pairs,
)
from .geometry import HomogeneousSplit
from .linalg import Matrix, Subspace, Vector, lincomb, rank_and_kernel, span_membership, vec

__all__ = [
    "Condition1Result",
    "Condition2Verdict",
    "NotCocycle",
    "ReconstructionContext",
    "condition1_kernel",
    "condition2_check",
    "delta_map",
    "invariant_nu_basis",
    "make_context",
    "pi_space",
    "pnu_map",
    "q_map",
    "q_residual_polynomial",
    "split_cochains",
]

RECIPE_A = "m*⊗h"
RECIPE_B = "wedge2dual(m)⊗m"
RECIPE_C = "wedge2dual(m)⊗h"


class NotCocycle(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ReconstructionContext:
    split: HomogeneousSplit
    modA: Representation  # m*⊗h
    modB: Representation  # Λ²m*⊗m
    modC: Representation  # Λ²m*⊗h


def make_context(split: HomogeneousSplit) -> ReconstructionContext:
    return ReconstructionContext(
        split,
        build_representation(RECIPE_A, split),
        build_representation(RECIPE_B, split),
        build_representation(RECIPE_C, split),
    )


# layout helpers ------------------------------------------------------------


def _phi_table(ctx: ReconstructionContext, phi: Cochain):
    """phi[a][i] = φ(x_a, u_i) as h-coordinates."""
    if phi.module is not ctx.modA:
        raise ValueError("φ must be a cochain with values in m*⊗h")
    k, q = ctx.split.dim_h, ctx.split.dim_m
    out = []
    for a in range(k):
        v = phi.value(a)
        out.append([v[i * k:(i + 1) * k] for i in range(q)])
    return out


def _form_table(theta: Cochain, q: int, width: int):
    """theta[(i, j)] for i < j, from a degree-0 cochain in Λ²m*⊗(width-dim module)."""
    return {p: theta.coeffs[idx * width:(idx + 1) * width] for idx, p in enumerate(pairs(q))}


def split_cochains(ctx: ReconstructionContext) -> tuple[Cochain, Cochain, Cochain]:
    """(φ, θ_m, θ_h) of the split as cochains in modA, modB, modC."""
    s = ctx.split
    k, q = s.dim_h, s.dim_m
    phi = [x for a in range(k) for i in range(q) for x in s.phi[a][i]]
    tm = [x for i, j in pairs(q) for x in s.theta_m[i][j]]
    th = [x for i, j in pairs(q) for x in s.theta_h[i][j]]
    return Cochain(1, ctx.modA, phi), Cochain(0, ctx.modB, tm), Cochain(0, ctx.modC, th)


def _apply_h(table, y: Sequence, u: Sequence, k: int) -> list[Fraction]:
    """φ(y, u) for y in h-coordinates and u in m-coordinates."""
    out = [Fraction(0)] * k
    for a, ya in enumerate(y):
        if not ya:
            continue
        row = table[a]
        for i, ui in enumerate(u):
            if ui:
                for b, x in enumerate(row[i]):
                    if x:
                        out[b] += ya * ui * x
    return out


# the maps ------------------------------------------------------------------


def transfer_matrix(ctx: ReconstructionContext) -> Matrix:
    """T: m*⊗h -> Λ²m*⊗m, T(ψ)(u_i, u_j) = ρ(ψ(u_i)) u_j - ρ(ψ(u_j)) u_i."""
    s = ctx.split
    k, q = s.dim_h, s.dim_m
    rho = s.isotropy.matrices
    rows = []
    for i, j in pairs(q):
        for c in range(q):
            row = [Fraction(0)] * (q * k)
            for b in range(k):
                row[i * k + b] += rho[b][c, j]
                row[j * k + b] -= rho[b][c, i]
            rows.append(row)
    return Matrix(rows, ncols=q * k)


def delta_map(ctx: ReconstructionContext, phi: Cochain) -> Cochain:
    if phi.module is not ctx.modA or phi.degree != 1:
        raise ValueError("δ is defined on 1-cochains with values in m*⊗h")
    T = transfer_matrix(ctx)
    out = []
    for a in range(ctx.split.dim_h):
        out.extend(T @ phi.value(a))
    return Cochain(1, ctx.modB, out)


def q_quadratic(ctx: ReconstructionContext, phi: Cochain, psi: Cochain) -> Cochain:
    """(x, u1, u2) -> ψ(φ(x, u1), u2) - ψ(φ(x, u2), u1)."""
    k, q = ctx.split.dim_h, ctx.split.dim_m
    P, S = _phi_table(ctx, phi), _phi_table(ctx, psi)
    out = []
    for a in range(k):
        for i, j in pairs(q):
            uj = [Fraction(int(t == j)) for t in range(q)]
            ui = [Fraction(int(t == i)) for t in range(q)]
            v1 = _apply_h(S, P[a][i], uj, k)
            v2 = _apply_h(S, P[a][j], ui, k)
            out.extend(x - y for x, y in zip(v1, v2))
    return Cochain(1, ctx.modC, out)


def q_linear(ctx: ReconstructionContext, phi: Cochain, theta: Cochain) -> Cochain:
    """(x, u1, u2) -> -φ(x, θ(u1, u2)) for θ in Λ²m*⊗m."""
    k, q = ctx.split.dim_h, ctx.split.dim_m
    P = _phi_table(ctx, phi)
    T = _form_table(theta, q, q)
    out = []
    for a in range(k):
        for p in pairs(q):
            w = T[p]
            v = [Fraction(0)] * k
            for i, wi in enumerate(w):
                if wi:
                    for b, x in enumerate(P[a][i]):
                        if x:
                            v[b] -= wi * x
            out.extend(v)
    return Cochain(1, ctx.modC, out)


def q_map(ctx: ReconstructionContext, phi: Cochain, theta_m: Cochain | None = None) -> Cochain:
    """Qφ, using the split's own θ_m unless another one is supplied."""
    if theta_m is None:
        theta_m = split_cochains(ctx)[1]
    if theta_m.module is not ctx.modB:
        raise ValueError("θ_m must take values in Λ²m*⊗m")
    return q_quadratic(ctx, phi, phi) + q_linear(ctx, phi, theta_m)


def invariant_nu_basis(ctx: ReconstructionContext) -> Subspace:
    """(Λ²m*⊗m)^h as a subspace of the module."""
    return cohomology(ctx.modB, 0).cocycles


def pnu_map(ctx: ReconstructionContext, phi: Cochain, nu: Sequence) -> Cochain:
    nu = vec(nu)
    if nu not in invariant_nu_basis(ctx):
        raise ValueError("ν is not h-invariant")
    return q_linear(ctx, phi, Cochain(0, ctx.modB, nu)).scale(-1)


def coboundaries(rep: Representation) -> Subspace:
    d0 = ce_differential(rep, 0)
    N = d0.nrows
    return Subspace.span(d0.columns(), N) if d0.ncols else Subspace.zero(N)


def pi_space(ctx: ReconstructionContext, phi: Cochain) -> Subspace:
    """B¹(h, Λ²m*⊗h) + span{p_ν : ν invariant}."""
    B = coboundaries(ctx.modC)
    ps = [pnu_map(ctx, phi, nu).coeffs for nu in invariant_nu_basis(ctx).basis]
    return B + Subspace.span(ps, B.ambient_dim)


# conditions ----------------------------------------------------------------


@dataclass(frozen=True)
class Condition1Result:
    h1: CohomologyReport
    kernel: Subspace  # in coordinates w.r.t. h1.representatives
    witnesses: tuple  # θ_m (degree-0 cochain in modB) for each kernel basis vector

    @property
    def full(self) -> bool:
        return self.kernel.dim == self.h1.dim_H


def condition1_kernel(ctx: ReconstructionContext, h1: CohomologyReport | None = None) -> Condition1Result:
    """Kernel of the induced map H¹(h, m*⊗h) -> H¹(h, Λ²m*⊗m)."""
    h1 = h1 or cohomology(ctx.modA, 1)
    r = h1.dim_H
    images = [delta_map(ctx, phi).coeffs for phi in h1.representatives]
    d0 = ce_differential(ctx.modB, 0)
    N = d0.nrows
    cols = images + [tuple(-x for x in c) for c in d0.columns()]
    if not cols:
        return Condition1Result(h1, Subspace.zero(0), ())
    _, ker = rank_and_kernel(Matrix.from_columns(cols) if N else Matrix.zeros(0, len(cols)))
    kernel = Subspace.span([v[:r] for v in ker.basis], r)
    witnesses = []
    for c in kernel.basis:
        phi = Cochain(1, ctx.modA, lincomb(c, [p.coeffs for p in h1.representatives], ctx.modA.dim * ctx.split.dim_h))
        theta = coboundary_witness(ctx.modB, delta_map(ctx, phi))
        if theta is None:
            raise ArithmeticError("kernel class without a coboundary witness")
        witnesses.append(theta)
    return Condition1Result(h1, kernel, tuple(witnesses))


@dataclass(frozen=True)
class Condition2Verdict:
    condition1: bool
    member: bool
    q: Cochain | None
    theta_m: Cochain | None
    coefficients: Vector | None  # over pi_space's B¹ basis then the p_ν generators


def condition2_check(ctx: ReconstructionContext, phi: Cochain,
                     theta_m: Cochain | None = None) -> Condition2Verdict:
    """Decide whether Qφ lies in B¹(h, Λ²m*⊗h) + span{p_ν}.

    Without an explicit ``theta_m`` one is produced by solving δφ = dθ_m;
    any two solutions differ by an invariant ν, which only moves Qφ by -p_ν,
    so the verdict does not depend on the choice.
    """
    if phi.module is not ctx.modA or phi.degree != 1:
        raise ValueError("φ must be a 1-cochain with values in m*⊗h")
    if any(ce_differential(ctx.modA, 1) @ phi.coeffs):
        raise NotCocycle("dφ != 0")
    if theta_m is None:
        theta_m = coboundary_witness(ctx.modB, delta_map(ctx, phi))
        if theta_m is None:
            return Condition2Verdict(False, False, None, None, None)
    Q = q_map(ctx, phi, theta_m)
    B = coboundaries(ctx.modC)
    ps = Subspace.span([pnu_map(ctx, phi, nu).coeffs for nu in invariant_nu_basis(ctx).basis], B.ambient_dim)
    coeffs = span_membership(B, ps, Q.coeffs)
    return Condition2Verdict(True, coeffs is not None, Q, theta_m, coeffs)


def q_residual_polynomial(ctx: ReconstructionContext, cond1: Condition1Result | None = None):
    """Exact quadratic form Qφ for φ = Σ t_i φ_i over the condition-(1) kernel.

    θ_m is taken as Σ t_i θ_i with θ_i the coboundary witnesses. Returns a
    list (one entry per coordinate of C¹(h, Λ²m*⊗h)) of dicts mapping
    ``(i, j)`` with i <= j to the coefficient of ``t_i t_j``. Nothing is solved.
    """
    cond1 = cond1 or condition1_kernel(ctx)
    h1 = cond1.h1
    n = ctx.modA.dim * ctx.split.dim_h
    phis = [Cochain(1, ctx.modA, lincomb(c, [p.coeffs for p in h1.representatives], n))
            for c in cond1.kernel.basis]
    thetas = cond1.witnesses
    r = len(phis)
    size = ctx.modC.dim * ctx.split.dim_h
    poly = [dict() for _ in range(size)]
    for i in range(r):
        for j in range(r):
            term = q_quadratic(ctx, phis[i], phis[j]) + q_linear(ctx, phis[i], thetas[j])
            key = (min(i, j), max(i, j))
            for idx, x in enumerate(term.coeffs):
                if x:
                    poly[idx][key] = poly[idx].get(key, Fraction(0)) + x
    return [{k: v for k, v in d.items() if v} for d in poly]
