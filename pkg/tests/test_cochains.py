import itertools

import pytest
from hypothesis import given, settings, strategies as st

from grcat.cochains import Cochain, coboundary, coboundary_at, cocycle_check, is_cocycle, normalized_positions, tuple_index
from grcat.errors import DegreeTooHigh, SourceMismatch
from grcat.groups import GroupHom
from grcat.modules import make_module, pullback_module, trivial_module

from helpers import C2, C3, C4, S3, V4, Z2, Z3, Z4, c2_z2, c2_z4_neg, xi_sigma

MODULES = [c2_z2(), c2_z4_neg(), trivial_module(C3, Z2), trivial_module(V4, Z2),
           make_module(S3, Z3, {x: [[1 if S3.names[x] in ("(0 1 2)", "(1 2 0)", "(2 0 1)") else 2]]
                                for x in S3.elements}),
           make_module(V4, Z4, {1: [[3]], 2: [[1]], 3: [[3]]})]


@st.composite
def cochains(draw, max_degree=2, normalized=True):
    m = draw(st.sampled_from(MODULES))
    n = draw(st.integers(0, max_degree))
    if normalized:
        size = len(normalized_positions(m.group, n)) * m.carrier.rank
        coords = draw(st.lists(st.integers(0, 11), min_size=size, max_size=size))
        return Cochain.from_vector(m, n, coords)
    p, k = m.group.order, m.carrier.rank
    vals = draw(st.lists(st.integers(0, 11), min_size=p ** n * k, max_size=p ** n * k))
    return Cochain(m, n, vals)


def test_action_of_modules_fixture():
    # the S3 module is the sign action on Z/3
    m = MODULES[4]
    assert sorted(m.act(x, (1,))[0] for x in S3.elements) == [1, 1, 1, 2, 2, 2]


def test_index_is_row_major():
    assert tuple_index((1, 0, 1), 2) == 5
    assert tuple_index((), 5) == 0
    assert list(normalized_positions(C3, 2)) == [4, 5, 7, 8]


def test_degree_bounds():
    with pytest.raises(DegreeTooHigh):
        Cochain.zero(c2_z2(), 5)


def test_coboundary_examples():
    m = c2_z4_neg()
    c0 = Cochain.from_dict(m, 0, {(): (1,)})
    # (d c)(s) = s.a - a = -2
    assert coboundary(c0)(1) == (2,)
    c1 = Cochain.from_dict(m, 1, {(1,): (1,)})
    # (d c)(s, s) = s.c(s) - c(e) + c(s) = -1 + 1 = 0
    assert coboundary(c1)(1, 1) == (0,)
    assert is_cocycle(xi_sigma(c2_z2()))
    # over the sign action the two ends cancel; over trivial Z/4 they add to 2
    assert is_cocycle(xi_sigma(c2_z4_neg()))
    assert coboundary(xi_sigma(trivial_module(C2, Z4)))(1, 1, 1, 1) == (2,)


@settings(max_examples=80, deadline=None)
@given(cochains(max_degree=2, normalized=False))
def test_dd_is_zero(c):
    assert coboundary(coboundary(c)).is_zero()


@settings(max_examples=60, deadline=None)
@given(cochains(max_degree=2, normalized=False), st.data())
def test_pointwise_formula_matches_dense(c, data):
    p = c.module.group.order
    args = data.draw(st.tuples(*[st.integers(0, p - 1)] * (c.degree + 1)))
    assert coboundary_at(c, args) == coboundary(c)(*args)


@settings(max_examples=60, deadline=None)
@given(cochains(max_degree=2, normalized=False), st.data())
def test_coboundary_is_additive(c, data):
    k = data.draw(st.integers(-3, 3))
    d = Cochain(c.module, c.degree, c.values[::-1])
    assert coboundary(c + k * d) == coboundary(c) + k * coboundary(d)


@settings(max_examples=60, deadline=None)
@given(cochains(max_degree=2))
def test_normalized_maps_to_normalized(c):
    assert coboundary(c).is_normalized()
    assert Cochain.from_vector(c.module, c.degree, c.to_vector()) == c


def test_normalization_failures():
    m = c2_z2()
    c = Cochain.from_dict(m, 2, {(0, 1): (1,), (1, 1): (1,)})
    assert c.normalization_failures() == [(0, 1)]


def test_arithmetic_requires_same_module():
    with pytest.raises(SourceMismatch):
        Cochain.zero(c2_z2(), 2) + Cochain.zero(c2_z4_neg(), 2)


@settings(max_examples=40, deadline=None)
@given(cochains(max_degree=2, normalized=False))
def test_pullback_commutes_with_coboundary(c):
    G = c.module.group
    # along the squaring-free projection C4 -> C2 or the identity
    if G.order == 2:
        phi = GroupHom(C4, C2, (0, 1, 0, 1))
    else:
        phi = GroupHom(G, G, tuple(G.elements))
    assert coboundary(c.pullback(phi)) == coboundary(c).pullback(phi)


def test_sampled_cocycle_check_detects_failure():
    m = trivial_module(V4, Z2)
    bad = Cochain.from_dict(m, 3, {(1, 2, 3): (1,)})
    exhaustive, was_exhaustive = cocycle_check(bad)
    sampled, was = cocycle_check(bad, limit=1, samples=2000)
    assert was_exhaustive and not was
    assert sampled and set(sampled) <= set(exhaustive)
