"""Independent brute-force oracles built straight from the brackets of g.

Nothing here uses the module/recipe machinery: cochains are indexed by hand
and every action is obtained by bracketing in g and splitting against h ⊕ m.
"""
from fractions import Fraction as F
from itertools import combinations

from lieverify.linalg import Matrix, Subspace, rank_and_kernel, solve_linear


def h1_and_condition1(g, H, M):
    """(dim Z¹, dim B¹, dim H¹, dim of classes satisfying condition 1) for C¹(h, m*⊗h)."""
    H, M = list(H), list(M)
    k, q = len(H), len(M)
    basis = Matrix.from_columns(H + M)
    cache = {}

    def split(w):
        w = tuple(w)
        if w not in cache:
            c = solve_linear(basis, w)
            cache[w] = (c[:k], c[k:])
        return cache[w]

    hh = [[split(g.bracket(H[a], H[b]))[0] for b in range(k)] for a in range(k)]
    hm = [[split(g.bracket(H[a], M[i]))[1] for i in range(q)] for a in range(k)]

    nphi = k * q * k

    def idx(a, i, b):
        return a * q * k + i * k + b

    # (x.ψ)(u) = [x, ψ(u)]_h - ψ([x, u]_m);  dφ(x_a, x_b) = x_a.φ(x_b) - x_b.φ(x_a) - φ([x_a, x_b])
    rows = []
    for a, b in combinations(range(k), 2):
        for i in range(q):
            for out in range(k):
                row = [F(0)] * nphi
                for x, y, sgn in ((a, b, 1), (b, a, -1)):
                    for c in range(k):
                        row[idx(y, i, c)] += sgn * hh[x][c][out]
                    for j in range(q):
                        row[idx(y, j, out)] -= sgn * hm[x][i][j]
                for c in range(k):
                    row[idx(c, i, out)] -= hh[a][b][c]
                rows.append(row)
    if rows:
        _, Z = rank_and_kernel(Matrix(rows, ncols=nphi))
    else:
        Z = Subspace.full(nphi)
    bvecs = []
    for j in range(q):
        for c in range(k):
            v = [F(0)] * nphi
            for a in range(k):
                for b in range(k):
                    v[idx(a, j, b)] += hh[a][c][b]
                for i in range(q):
                    if hm[a][i][j]:
                        v[idx(a, i, c)] -= hm[a][i][j]
            bvecs.append(v)
    B = Subspace.span(bvecs, nphi)

    # condition 1: δφ = d θ for some θ in Λ²m*⊗m; unknowns (z-coords of φ in Z, θ)
    P = list(combinations(range(q), 2))
    nth = len(P) * q

    def th(i, j, c):
        if i < j:
            return P.index((i, j)) * q + c, 1
        return P.index((j, i)) * q + c, -1

    nz = Z.dim
    rows = []
    for a in range(k):
        for i, j in P:
            for c in range(q):
                row = [F(0)] * (nz + nth)
                for zi, zv in enumerate(Z.basis):
                    val = F(0)
                    for b in range(k):
                        val += zv[idx(a, i, b)] * hm[b][j][c] - zv[idx(a, j, b)] * hm[b][i][c]
                    row[zi] += val
                for d in range(q):
                    r = hm[a][d][c]
                    if r:
                        p, s = th(i, j, d)
                        row[nz + p] -= s * r
                for d in range(q):
                    r = hm[a][i][d]
                    if r and d != j:
                        p, s = th(d, j, c)
                        row[nz + p] += s * r
                    r = hm[a][j][d]
                    if r and d != i:
                        p, s = th(i, d, c)
                        row[nz + p] += s * r
                rows.append(row)
    if rows:
        _, K = rank_and_kernel(Matrix(rows, ncols=nz + nth))
        zpart = [v[:nz] for v in K.basis]
    else:
        zpart = [tuple(F(int(i == t)) for i in range(nz)) for t in range(nz)]
    vecs = [tuple(sum((c * b[t] for c, b in zip(v, Z.basis)), F(0)) for t in range(nphi)) for v in zpart]
    good = (Subspace.span(vecs, nphi) + B).dim - B.dim
    return Z.dim, B.dim, Z.dim - B.dim, good
