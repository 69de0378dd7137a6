import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from lieverify.cohomology import adjoint
from lieverify.geometry import (
    NoRationalSolution,
    NotComplementError,
    UnsupportedDimension,
    acs_obstruction,
    invariant_endomorphisms,
    invariant_hermitian_forms,
    make_split,
    nijenhuis_tensor,
    nondegeneracy_report,
    perturbed_lift,
    solve_invariant_acs,
    verify_acs_invariance,
)
from lieverify.lie import LieAlgebra, semidirect_product
from lieverify.linalg import Matrix, signature, solve_linear
from lieverify.model import abelian_model
from lieverify.samples import random_algebra, random_invertible, sl2


def standard_J(n):
    cols = []
    for k in range(n):
        col = [0] * n
        col[k + 1 if k % 2 == 0 else k - 1] = 1 if k % 2 == 0 else -1
        cols.append(col)
    return Matrix.from_columns(cols)


def conj(P, M):
    Pinv = Matrix.from_columns([solve_linear(P, c) for c in Matrix.identity(P.nrows).columns()])
    return P @ M @ Pinv


def trivial_split(L):
    return make_split(L, (), [L.basis_vector(i) for i in range(L.dim)])


def test_split_example(split, model):
    lab = split.m_labels
    fz = model.l1.labels.index("f-z")
    e = lab.index("e")
    assert split.isotropy.matrices[fz].column(e) == tuple(F(l == "b") for l in lab)
    assert split.phi[fz][e] == (0, 1, 0)


def test_split_trivial_h():
    L = sl2()
    s = trivial_split(L)
    assert s.dim_h == 0 and s.isotropy.matrices == ()
    assert s.theta_m[1][2] == L.c[1][2]


def test_not_complement(model):
    g = model.g
    with pytest.raises(NotComplementError):
        make_split(g, model.l1, [g.vector(x1=1)] + list(model.m_basis[1:]))


def test_invariant_endomorphisms(split, model):
    S = invariant_endomorphisms(split)
    assert model.J0.flat() in S and Matrix.identity(6).flat() in S
    assert invariant_endomorphisms(trivial_split(LieAlgebra.abelian(6))).dim == 36


def sl2_on_sl2():
    """sl2 ⋉ sl2_ab: isotropy sl2 acting irreducibly on a 3-dim complement."""
    L = sl2()
    G = semidirect_product(L, LieAlgebra.abelian(3), adjoint(L).matrices)
    return make_split(G, [G.basis_vector(i) for i in range(3)], [G.basis_vector(i) for i in range(3, 6)])


def test_acs_solutions(split, model):
    sols = solve_invariant_acs(split)
    assert len(sols) == 2 and set(sols) == {model.J0, -model.J0}


def test_acs_refusals():
    with pytest.raises(UnsupportedDimension):
        solve_invariant_acs(trivial_split(LieAlgebra.abelian(2)))
    s = sl2_on_sl2()
    assert invariant_endomorphisms(s).dim == 1
    with pytest.raises(NoRationalSolution):
        solve_invariant_acs(s)


def test_negative_control_certificate(model):
    g = model.g
    s = make_split(g, [g.vector(h=1), g.vector(e=1), g.vector(f=1)],
                   [g.vector(**{n: 1}) for n in ("z", "b", "x1", "x2", "x3", "x4")])
    with pytest.raises(UnsupportedDimension):
        solve_invariant_acs(s)
    obs = acs_obstruction(s)
    assert obs is not None
    space = invariant_endomorphisms(s)
    assert space.dim > 3
    for b, ell in zip(space.basis, obs.eigenvalues):
        assert Matrix.from_flat(b, 6) @ obs.vector == tuple(ell * x for x in obs.vector)


def test_acs_invariance_verdicts(split, model):
    assert verify_acs_invariance(split, model.J0).passed
    assert verify_acs_invariance(split, -model.J0).passed
    lab = split.m_labels
    swap = {"z": "x3", "x3": "z", "b": "x2", "x2": "b", "e": "x4", "x4": "e"}
    sign = {"z": 1, "x3": -1, "b": 1, "x2": -1, "e": 1, "x4": -1}
    cols = []
    for l in lab:
        col = [0] * 6
        col[lab.index(swap[l])] = sign[l]
        cols.append(col)
    bad = Matrix.from_columns(cols)
    assert (bad @ bad) == -Matrix.identity(6)
    assert not verify_acs_invariance(split, bad).passed


def test_metric(split, model):
    H = invariant_hermitian_forms(split, model.J0)
    assert H.dim == 1 and model.metric.flat() in H
    assert signature(model.metric) == (2, 4, 0)


def test_hermitian_trivial_h_2d():
    s = trivial_split(LieAlgebra.abelian(2))
    H = invariant_hermitian_forms(s, standard_J(2))
    assert H.dim == 1 and Matrix.identity(2).flat() in H


def test_nijenhuis_builtin(split, model):
    N = nijenhuis_tensor(split, model.J0)
    lab = split.m_labels
    assert N.basis_value(lab.index("z"), lab.index("b")) == tuple(F(4 * (l == "z")) for l in lab)
    for i in range(6):
        assert all(x == 0 for x in N.basis_value(i, i))
    r = nondegeneracy_report(split, model.J0, N)
    assert r.rank == 6 and r.nondegenerate and r.det_certificate


def test_nijenhuis_abelian():
    d = abelian_model()
    s = make_split(d["g"], d["subalgebra"], d["complement"])
    N = nijenhuis_tensor(s, d["acs"])
    assert N.is_zero()
    r = nondegeneracy_report(s, d["acs"], N)
    assert r.rank == 0 and not r.nondegenerate


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_lift_independence(split, model, seed):
    rng = random.Random(seed)
    shifts = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)] for _ in range(6)]
    assert nijenhuis_tensor(split, model.J0, perturbed_lift(split, shifts)) == nijenhuis_tensor(split, model.J0)


def test_antilinear_and_equivariant(split, model):
    J = model.J0
    N = nijenhuis_tensor(split, J)
    E = Matrix.identity(6).columns()
    for u in E:
        for v in E:
            assert N(J @ u, v) == tuple(-x for x in J @ N(u, v))
            for R in split.isotropy.matrices:
                lhs = R @ N(u, v)
                rhs = tuple(a + b for a, b in zip(N(R @ u, v), N(u, R @ v)))
                assert lhs == rhs


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_rank_parity_random(seed):
    rng = random.Random(seed)
    L = random_algebra(rng, 6)
    if L.dim % 2:
        L = semidirect_product(L, LieAlgebra.abelian(1), [Matrix.zeros(1, 1)] * L.dim)
    s = trivial_split(L)
    J = conj(random_invertible(L.dim, rng), standard_J(L.dim))
    N = nijenhuis_tensor(s, J)
    r = nondegeneracy_report(s, J, N)
    assert r.rank % 2 == 0
    u = [F(rng.randint(-2, 2)) for _ in range(L.dim)]
    v = [F(rng.randint(-2, 2)) for _ in range(L.dim)]
    assert N(J @ u, v) == tuple(-x for x in J @ N(u, v))
