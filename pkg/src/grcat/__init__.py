"""Obstruction theory for Gr-functors and abstract kernels on small finite groups.

Everything is exact: groups are multiplication tables, abelian groups are in
invariant-factor form, and cochains hold residue vectors.
"""

from .abelian import AbelianHom, FiniteAbelianGroup
from .automorphisms import automorphism_group, center, inner_automorphisms, outer_quotient
from .catalog import catalog_group, identify, load_catalog
from .cochains import Cochain, coboundary, is_cocycle
from .cohomology import (CohomologyGroup, classes_of, cocycles, cohomologous, cohomology_group,
                         solve_coboundary)
from .errors import GrcatError
from .extension import (AbstractKernel, FactorSet, build_extension, factor_set, kernel_obstruction,
                        kernel_search, make_kernel, strictify, verify_strictification)
from .functors import (FunctorData, automorphisms, check_monoidal, classify, congruent, make_functor,
                       obstruction, realizable, validate_pair)
from .groups import FiniteGroup, GroupHom, make_group, make_hom, permutation_group
from .grtype import GrType, tensor_arrows, validate_gr_type
from .modules import PiModule, make_module, pullback_module
from .serialize import dump, dumps, load, loads
from .strict import StrictGrCat, aut_gr_category, reduce_strict, reduced_type_of_group

__all__ = [
    "AbelianHom", "FiniteAbelianGroup", "automorphism_group", "center", "inner_automorphisms",
    "outer_quotient", "Cochain", "coboundary", "is_cocycle", "CohomologyGroup", "classes_of", "cocycles",
    "cohomologous", "cohomology_group", "solve_coboundary", "GrcatError", "AbstractKernel", "FactorSet",
    "build_extension", "factor_set", "kernel_obstruction", "kernel_search", "make_kernel", "strictify",
    "verify_strictification", "FunctorData", "automorphisms", "check_monoidal", "classify", "congruent",
    "make_functor", "obstruction", "realizable", "validate_pair", "FiniteGroup", "GroupHom", "make_group",
    "make_hom", "permutation_group", "GrType", "tensor_arrows", "validate_gr_type", "PiModule",
    "make_module", "pullback_module", "StrictGrCat", "aut_gr_category", "reduce_strict",
    "reduced_type_of_group", "catalog_group", "identify", "load_catalog", "load", "loads", "dump", "dumps",
]
