"""Small objects shared by the test modules."""

from grcat.abelian import FiniteAbelianGroup
from grcat.catalog import catalog_group
from grcat.cochains import Cochain
from grcat.groups import cyclic_group, direct_product, permutation_group
from grcat.grtype import GrType, strict_type
from grcat.modules import make_module, trivial_module

C1 = cyclic_group(1)
C2 = cyclic_group(2)
C3 = cyclic_group(3)
C4 = cyclic_group(4)
V4 = direct_product(C2, C2)
S3 = permutation_group([[1, 2, 0], [1, 0, 2]], 3)
Q8 = catalog_group("Q8")
D4 = catalog_group("D4")

Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))
Z4 = FiniteAbelianGroup((4,))
Z0 = FiniteAbelianGroup(())

SIGMA = 1  # the non-identity element of C2


def c2_z2():
    return trivial_module(C2, Z2)


def c2_z4_neg():
    return make_module(C2, Z4, {1: [[3]]})


def xi_sigma(module):
    """The 3-cochain with xi(s, s, s) = 1 and zero elsewhere, over a C2-module."""
    return Cochain.from_dict(module, 3, {(1, 1, 1): module.carrier.basis(0)})


def nontrivial_c2_type():
    m = c2_z2()
    return GrType(m, xi_sigma(m)).check()


def strict_c2_z2():
    return strict_type(c2_z2())
