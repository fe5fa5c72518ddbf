import itertools

import pytest
from hypothesis import given, settings, strategies as st

from grcat.cochains import Cochain, coboundary, normalized_positions
from grcat.cohomology import (brute_force_classes, canonical_representative, class_coordinates, classes_of,
                              cohomologous, cohomology_group, cocycles, solve_coboundary)
from grcat.errors import BruteForceTooLarge, DegreeTooHigh, GroupTooLarge, NotACocycle
from grcat.groups import cyclic_group
from grcat.modules import make_module, trivial_module

from helpers import C1, C2, C3, C4, S3, V4, Z0, Z2, Z3, Z4, c2_z2, c2_z4_neg, xi_sigma

from test_cochains import MODULES


@pytest.mark.parametrize("module, n, factors", [
    (c2_z2(), 1, (2,)), (c2_z2(), 2, (2,)), (c2_z2(), 3, (2,)),
    (c2_z4_neg(), 0, (2,)), (c2_z4_neg(), 1, (2,)), (c2_z4_neg(), 2, (2,)), (c2_z4_neg(), 3, (2,)),
    (trivial_module(C3, Z2), 2, ()), (trivial_module(C3, Z2), 3, ()),
    (trivial_module(C4, Z4), 2, (4,)), (trivial_module(C4, Z4), 3, (4,)),
    (trivial_module(V4, Z2), 1, (2, 2)), (trivial_module(V4, Z2), 2, (2, 2, 2)),
    (trivial_module(C1, Z4), 0, (4,)), (trivial_module(C1, Z4), 3, ()),
    (trivial_module(C2, Z0), 2, ()), (trivial_module(S3, Z2), 1, (2,)),
])
def test_known_groups(module, n, factors):
    assert cohomology_group(module, n).invariant_factors == factors


@pytest.mark.parametrize("module", MODULES, ids=range(len(MODULES)))
@pytest.mark.parametrize("n", [0, 1, 2])
def test_two_routes_agree(module, n):
    if module.carrier.order ** len(normalized_positions(module.group, n)) > 2 ** 20:
        with pytest.raises(BruteForceTooLarge):
            cohomology_group(module, n, method="brute_force")
        return
    snf = cohomology_group(module, n)
    brute = cohomology_group(module, n, method="brute_force")
    assert snf.invariant_factors == brute.invariant_factors
    assert len(brute_force_classes(module, n)) == snf.order
    assert len(classes_of(module, n)) == snf.order


def test_degree_three_routes_agree_on_c2():
    for m in (c2_z2(), c2_z4_neg()):
        assert cohomology_group(m, 3).invariant_factors == cohomology_group(m, 3, method="brute_force").invariant_factors


def test_representatives_are_cocycles_of_exact_order():
    for m in MODULES:
        h = cohomology_group(m, 2)
        for d, rep in zip(h.invariant_factors, h.representatives):
            assert coboundary(rep).is_zero()
            for k in range(1, d):
                assert solve_coboundary(k * rep) is None
            assert solve_coboundary(d * rep) is not None


def test_cocycles_by_enumeration():
    for m in (c2_z2(), c2_z4_neg(), trivial_module(C3, Z2), trivial_module(V4, Z2)):
        for n in (1, 2):
            k = len(normalized_positions(m.group, n))
            brute = []
            for coords in itertools.product(*[range(d) for d in m.carrier.invariant_factors] * k):
                c = Cochain.from_vector(m, n, coords)
                if coboundary(c).is_zero():
                    brute.append(c)
            assert sorted(c.to_vector() for c in cocycles(m, n)) == sorted(c.to_vector() for c in brute)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MODULES), st.integers(1, 3), st.data())
def test_solve_is_sound_and_complete_on_coboundaries(m, n, data):
    if n == 3 and m.group.order > 4:
        n = 2
    size = len(normalized_positions(m.group, n - 1)) * m.carrier.rank
    coords = data.draw(st.lists(st.integers(0, 11), min_size=size, max_size=size))
    alpha = Cochain.from_vector(m, n - 1, coords)
    z = coboundary(alpha)
    beta = solve_coboundary(z)
    assert beta is not None and coboundary(beta) == z


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MODULES), st.data())
def test_class_coordinates_are_invariant(m, data):
    cl = classes_of(m, 2)
    i = data.draw(st.integers(0, len(cl) - 1))
    size = len(normalized_positions(m.group, 1)) * m.carrier.rank
    alpha = Cochain.from_vector(m, 1, data.draw(st.lists(st.integers(0, 11), min_size=size, max_size=size)))
    z = cl[i] + coboundary(alpha)
    assert class_coordinates(z) == class_coordinates(cl[i])
    assert canonical_representative(z) == cl[i]
    assert cohomologous(z, cl[i]) is not None
    for j, other in enumerate(cl):
        if j != i:
            assert cohomologous(z, other) is None


def test_classes_are_pairwise_distinct_and_zero_first():
    for m in MODULES:
        cl = classes_of(m, 2)
        assert cl[0].is_zero()
        assert len({c.to_vector() for c in cl}) == len(cl)


def test_nonzero_xi_on_c2():
    xi = xi_sigma(c2_z2())
    assert solve_coboundary(xi) is None
    assert class_coordinates(xi) == (1,)


def test_errors():
    with pytest.raises(NotACocycle):
        solve_coboundary(xi_sigma(trivial_module(C2, Z4)))
    with pytest.raises(DegreeTooHigh):
        cohomology_group(c2_z2(), 4)
    with pytest.raises(ValueError):
        cohomology_group(c2_z2(), 2, method="magic")
    with pytest.raises(GroupTooLarge):
        cohomology_group(trivial_module(cyclic_group(16), Z2), 3)
    with pytest.raises(BruteForceTooLarge):
        cohomology_group(trivial_module(V4, Z2), 3, method="brute_force", bound=16)


def test_non_normalized_cocycle_is_not_solved():
    m = c2_z2()
    # d of a non-normalized 0... the constant 2-cochain 1 is a cocycle but not normalized
    c = Cochain(m, 2, [1, 1, 1, 1])
    assert coboundary(c).is_zero()
    assert solve_coboundary(c) is None
