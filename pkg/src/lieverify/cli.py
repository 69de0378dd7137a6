"""Command-line entry point.

Exit codes: 0 every check passed, 1 some check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report as R
from .cohomology import RecipeError, build_representation, cohomology, parse_recipe
from .geometry import (
    NoRationalSolution,
    UnsupportedDimension,
    invariant_endomorphisms,
    make_split,
    nijenhuis_tensor,
    nondegeneracy_report,
    solve_invariant_acs,
    verify_acs_invariance,
)
from .lie import (
    NotClosedError,
    Subalgebra,
    derivation_algebra,
    format_vector,
    jacobi_defect,
    killing_form,
    outer_derivation_algebra,
    subalgebra_closure,
)
from .linalg import det
from .model import AlgebraFile, AlgebraFileError, builtin_erratum_model, dump_algebra_file, builtin_algebra_file, load_algebra_file
from .reconstruction import condition1_kernel, condition2_check, make_context, split_cochains


class InputError(Exception):
    pass


def _require(af: AlgebraFile, *fields: str) -> None:
    for f in fields:
        if getattr(af, f) is None:
            raise InputError(f"algebra file has no '{f}' block")


def _split(af: AlgebraFile):
    _require(af, "subalgebra", "complement")
    return make_split(af.algebra, Subalgebra(af.algebra, af.subalgebra), af.complement)


def _jacobi_check(rep: R.VerificationReport, af: AlgebraFile) -> bool:
    L = af.algebra

    def fn():
        d = jacobi_defect(L)
        return not d, {"defects": [{"triple": [L.labels[i], L.labels[j], L.labels[k]],
                                    "defect": format_vector(v, L.labels)} for i, j, k, v in d]}

    return rep.run("jacobi", f"{af.name} satisfies the Jacobi identity", "[x,[y,z]] + cyclic = 0", fn).verdict == R.PASS


def cmd_jacobi(af, args):
    rep = R.VerificationReport(f"jacobi: {af.name}")
    _jacobi_check(rep, af)
    return rep


def cmd_subalgebra(af, args):
    _require(af, "subalgebra")
    rep = R.VerificationReport(f"subalgebra: {af.name}")
    L = af.algebra

    def fn():
        try:
            H = subalgebra_closure(Subalgebra(L, af.subalgebra))
        except NotClosedError as exc:
            a, b = exc.pair
            return False, {"pair": [a, b], "residual": format_vector(exc.residual, L.labels)}
        return True, {"dim": H.dim, "brackets": {f"[{H.labels[a]}, {H.labels[b]}]": format_vector(H.c[a][b], H.labels)
                                                 for a in range(H.dim) for b in range(a + 1, H.dim)}}

    rep.run("subalgebra", "the subalgebra block is closed under the bracket", "[h,h] ⊂ h", fn)
    return rep


def cmd_derivations(af, args):
    rep = R.VerificationReport(f"derivations: {af.name}")
    L = af.algebra

    def fn():
        d = derivation_algebra(L)
        w = {"der_dim": d.dim, "inner_dim": d.inner_dim, "outer_dim": d.outer_dim}
        if d.outer_dim:
            K = killing_form(outer_derivation_algebra(L))
            w["outer_killing_det"] = det(K.rows)
        return True, w

    rep.run("derivations", "derivation algebra and its inner part", "der(L) ⊃ ad(L)", fn)
    return rep


def cmd_cohomology(af, args):
    try:
        parse_recipe(args.module)
    except RecipeError as exc:
        raise InputError(str(exc)) from exc
    rep = R.VerificationReport(f"cohomology: {af.name}")
    s = _split(af)

    def fn():
        V = build_representation(args.module, s)
        H = cohomology(V, args.degree)
        return True, {"module": args.module, "module_dim": V.dim, "degree": args.degree,
                      "dim_cocycles": H.dim_cocycles, "dim_coboundaries": H.dim_coboundaries,
                      "dim_H": H.dim_H, "representatives": [r.coeffs for r in H.representatives]}

    rep.run("cohomology", f"H^{args.degree}(h, {args.module})", "Chevalley-Eilenberg complex", fn)
    return rep


def cmd_acs(af, args):
    rep = R.VerificationReport(f"acs: {af.name}")
    s = _split(af)
    if af.acs is not None:
        def verify():
            res = verify_acs_invariance(s, af.acs)
            return res.passed, {"witness": res.witness}
        rep.run("acs_invariant", "the given J squares to -1 and commutes with the isotropy action",
                "J² = -1, [ρ(h), J] = 0", verify)
    else:
        def solve():
            try:
                sols = solve_invariant_acs(s)
            except (NoRationalSolution, UnsupportedDimension) as exc:
                return R.UNVERIFIABLE, {"invariant_endomorphism_dim": invariant_endomorphisms(s).dim,
                                        "reason": str(exc)}
            return bool(sols), {"solutions": sols}
        rep.run("acs_solve", "invariant almost complex structures on m", "J² = -1, [ρ(h), J] = 0", solve)
    return rep


def cmd_nijenhuis(af, args):
    _require(af, "acs")
    rep = R.VerificationReport(f"nijenhuis: {af.name}")
    s = _split(af)

    def fn():
        N = nijenhuis_tensor(s, af.acs)
        r = nondegeneracy_report(s, af.acs, N)
        return r.nondegenerate, {"rank": r.rank, "det": r.det_certificate,
                                 "status": "nondegenerate" if r.nondegenerate else "degenerate",
                                 "complex_matrix": [list(row) for row in r.matrix]}

    rep.run("nijenhuis_nondegenerate", "N_J: Λ²T^{1,0} -> T^{0,1} is an isomorphism", "N_J nondegenerate", fn)
    return rep


def cmd_theorem_b(af, args):
    rep = R.VerificationReport(f"theorem-b: {af.name}")
    s = _split(af)
    ctx = make_context(s)
    state = {}

    def cond1():
        c1 = condition1_kernel(ctx)
        state["c1"] = c1
        return c1.full, {"dim_H1": c1.h1.dim_H, "kernel_dim": c1.kernel.dim,
                         "kernel_basis": [list(b) for b in c1.kernel.basis]}

    def cond2():
        v = condition2_check(ctx, split_cochains(ctx)[0])
        return v.member, {"member": v.member, "coefficients": v.coefficients}

    rep.run("condition_1", "H^1(h, m*⊗h) -> H^1(h, Λ²m*⊗m) vanishes", "δ[φ] = 0", cond1)
    rep.run("condition_2", "Qφ lies in B^1 + span{p_ν} for the split's φ", "[Qφ] ≡ 0 mod Π_φ", cond2)
    return rep


def cmd_verify(args):
    cfg = R.VerifyConfig(seed=args.seed)
    return R.run_full_verification(builtin_erratum_model(), cfg)


COMMANDS = {
    "jacobi": cmd_jacobi,
    "subalgebra": cmd_subalgebra,
    "derivations": cmd_derivations,
    "cohomology": cmd_cohomology,
    "acs": cmd_acs,
    "nijenhuis": cmd_nijenhuis,
    "theorem-b": cmd_theorem_b,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized property checks")
    common.add_argument("--output", type=Path, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="lieverify", description="Exact checks for homogeneous almost complex structures.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the built-in example pipeline")
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("file", type=Path)
        if name == "cohomology":
            sp.add_argument("--degree", type=int, choices=(0, 1), default=1)
            sp.add_argument("--module", default="m*⊗h", help="module recipe, e.g. 'm*⊗h' or 'wedge2dual(m)⊗m'")
    ex = sub.add_parser("export-builtin", help="write the built-in example as an algebra file")
    ex.add_argument("file", type=Path)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "export-builtin":
            dump_algebra_file(builtin_algebra_file(), args.file)
            return 0
        if args.command == "verify":
            rep = cmd_verify(args)
        else:
            af = load_algebra_file(args.file)
            rep = COMMANDS[args.command](af, args)
    except (OSError, AlgebraFileError, InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = rep.to_json() if args.format == "json" else rep.to_text()
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
