"""Condition (1) and (2) on the built-in example, class by class.

Prints the H¹(l1, m*⊗l1) representatives, the rank of the induced map into
H¹(l1, Λ²m*⊗m), its kernel, the class of the split's own φ, the
condition-(2) verdict of each basis class, and optionally the quadratic
residual of Qφ over the kernel.
"""
import argparse
import json

from lieverify.cohomology import Cochain, cohomology
from lieverify.geometry import make_split
from lieverify.linalg import lincomb
from lieverify.model import builtin_erratum_model
from lieverify.reconstruction import (
    condition1_kernel,
    condition2_check,
    delta_map,
    make_context,
    q_residual_polynomial,
    split_cochains,
)
from lieverify.report import jsonable


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--residual", action="store_true", help="also dump the quadratic residual of Qφ")
    args = p.parse_args()
    m = builtin_erratum_model()
    ctx = make_context(make_split(m.g, m.l1, m.m_basis))
    c1 = condition1_kernel(ctx)
    h1, n = c1.h1, ctx.modA.dim * ctx.split.dim_h
    reps = [r.coeffs for r in h1.representatives]
    hb = cohomology(ctx.modB, 1)
    print(f"dim H1(modA) = {h1.dim_H}  (Z {h1.dim_cocycles}, B {h1.dim_coboundaries})")
    for i, r in enumerate(h1.representatives):
        img = delta_map(ctx, r).coeffs
        exact = img in hb.coboundaries
        v = condition2_check(ctx, r)
        print(f"  class {i}: support {sum(1 for x in r.coeffs if x)}, δ exact: {exact}, condition 2: {v.member}")
    print(f"kernel of H1(modA) -> H1(modB): dim {c1.kernel.dim}")
    for c in c1.kernel.basis:
        phi = Cochain(1, ctx.modA, lincomb(c, reps, n))
        print(f"  {json.dumps(jsonable(list(c)))}  condition 2: {condition2_check(ctx, phi).member}")
    own = h1.class_coordinates(split_cochains(ctx)[0].coeffs)
    print(f"class of the split's φ: {json.dumps(jsonable(list(own)))}, in kernel: {own in c1.kernel}")
    if args.residual:
        poly = q_residual_polynomial(ctx, c1)
        nonzero = [(i, d) for i, d in enumerate(poly) if d]
        print(f"Qφ residual: {len(nonzero)} nonzero coordinates of {len(poly)}")
        for i, d in nonzero:
            terms = " + ".join(f"({v})t{a}t{b}" for (a, b), v in sorted(d.items()))
            print(f"  [{i}] {terms}")


if __name__ == "__main__":
    main()
