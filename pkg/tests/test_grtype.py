from hypothesis import given, settings, strategies as st

from grcat.cochains import Cochain, coboundary, normalized_positions
from grcat.grtype import (GrType, associator, compose_arrows, pentagon_failures, strict_type, tensor_arrows,
                          triangle_failures, validate_gr_type)
from grcat.errors import NotACocycle, SourceMismatch

import pytest

from helpers import C2, c2_z2, c2_z4_neg, nontrivial_c2_type, xi_sigma
from test_cochains import MODULES

SMALL = [m for m in MODULES if m.group.order <= 4]


def test_arrow_operations():
    T = strict_type(c2_z4_neg())
    assert tensor_arrows(T, (1, (1,)), (1, (1,))) == (0, (0,))  # 1 + s.1 = 0
    assert tensor_arrows(T, (0, (1,)), (1, (2,))) == (1, (3,))
    assert compose_arrows(T, (1, (3,)), (1, (2,))) == (1, (1,))
    with pytest.raises(ValueError):
        compose_arrows(T, (0, (0,)), (1, (0,)))


def test_nontrivial_type_validates():
    T = nontrivial_c2_type()
    assert validate_gr_type(T).ok
    assert associator(T, 1, 1, 1) == (1, (1,))


def test_type_rejects_bad_xi():
    with pytest.raises(SourceMismatch):
        GrType(c2_z2(), Cochain.zero(c2_z4_neg(), 3))
    with pytest.raises(NotACocycle):
        GrType(c2_z2(), Cochain.from_dict(c2_z2(), 3, {(0, 1, 1): (1,)})).check()
    rep = validate_gr_type(GrType(c2_z2(), Cochain.from_dict(c2_z2(), 3, {(1, 0, 1): (1,)})))
    assert rep.check("triangle").failures == [(1, 1)]
    assert not rep.ok


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_pentagon_is_the_cocycle_condition(m, data):
    size = len(normalized_positions(m.group, 3)) * m.carrier.rank
    coords = data.draw(st.lists(st.integers(0, 3), min_size=size, max_size=size))
    xi = Cochain.from_vector(m, 3, coords)
    T = GrType(m, xi)
    assert set(pentagon_failures(T)) == {a for a, _ in coboundary(xi).items()}
    assert not triangle_failures(T)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_coboundaries_satisfy_pentagon(m, data):
    size = len(normalized_positions(m.group, 2)) * m.carrier.rank
    alpha = Cochain.from_vector(m, 2, data.draw(st.lists(st.integers(0, 3), min_size=size, max_size=size)))
    assert validate_gr_type(GrType(m, coboundary(alpha))).ok
