"""Exact verification of invariant almost complex structures on homogeneous spaces."""
from .cohomology import Cochain, Representation, build_representation, cohomology, parse_recipe
from .geometry import (
    HomogeneousSplit,
    invariant_hermitian_forms,
    make_split,
    nijenhuis_tensor,
    nondegeneracy_report,
    solve_invariant_acs,
)
from .lie import LieAlgebra, Subalgebra, derivation_algebra, jacobi_defect, subalgebra_closure
from .linalg import GaussianScalar, Matrix, Subspace
from .model import builtin_erratum_model, load_algebra_file
from .reconstruction import condition1_kernel, condition2_check, make_context
from .report import VerifyConfig, run_full_verification

__all__ = [
    "Cochain", "GaussianScalar", "HomogeneousSplit", "LieAlgebra", "Matrix", "Representation",
    "Subalgebra", "Subspace", "VerifyConfig", "build_representation", "builtin_erratum_model",
    "cohomology", "condition1_kernel", "condition2_check", "derivation_algebra",
    "invariant_hermitian_forms", "jacobi_defect", "load_algebra_file", "make_context", "make_split",
    "nijenhuis_tensor", "nondegeneracy_report", "parse_recipe", "run_full_verification",
    "solve_invariant_acs", "subalgebra_closure",
]
