import itertools

import pytest
from hypothesis import given, settings, strategies as st

from grcat.abelian import AbelianHom, identity_abelian_hom
from grcat.cochains import Cochain, coboundary, normalized_positions
from grcat.cohomology import cocycles, cohomology_group, solve_coboundary
from grcat.errors import InvalidPair, NotAdditive, SignatureMismatch
from grcat.functors import (automorphisms, check_monoidal, classify, congruent, identity_functor, make_functor,
                            natural_transformation_failures, obstruction, realizable)
from grcat.groups import GroupHom, identity_hom, iter_homomorphisms, trivial_hom
from grcat.grtype import GrType, strict_type
from grcat.modules import make_module, trivial_module

from helpers import C2, C4, V4, Z2, Z4, c2_z2, c2_z4_neg, nontrivial_c2_type, strict_c2_z2

MODULES = [c2_z2(), c2_z4_neg(), trivial_module(C4, Z2), trivial_module(V4, Z2), trivial_module(C2, Z4)]


@st.composite
def gr_types(draw):
    m = draw(st.sampled_from(MODULES))
    zs = cocycles(m, 3)
    return GrType(m, draw(st.sampled_from(zs)))


def pairs(source, target):
    """Every valid (phi, f) between two types."""
    A, B = source.carrier, target.carrier
    out = []
    for phi in iter_homomorphisms(source.pi, target.pi):
        phi = GroupHom(source.pi, target.pi, tuple(phi))
        for images in itertools.product(B.elements(), repeat=A.rank):
            try:
                out.append(make_functor(source, target, phi, AbelianHom(A, B, images)))
            except (InvalidPair, NotAdditive):
                pass
    return out


@st.composite
def functors(draw):
    while True:
        s, t = draw(gr_types()), draw(gr_types())
        ps = pairs(s, t)
        if ps:
            return draw(st.sampled_from(ps))


def brute_monoidal(F):
    m = F.module
    size = len(normalized_positions(F.source.pi, 2)) * m.carrier.rank
    for coords in itertools.product(*[range(d) for d in m.carrier.invariant_factors] * (size // max(m.carrier.rank, 1))):
        g = Cochain.from_vector(m, 2, coords)
        if check_monoidal(F.with_g(g)).ok:
            return g
    return None


def test_identity_functor_examples():
    F = identity_functor(strict_c2_z2())
    assert obstruction(F).is_zero()
    g = realizable(F)
    assert g is not None and g.is_zero()
    assert len(classify(F.source, F.target, F.phi, F.f)) == 2
    assert len(automorphisms(F)) == 2
    G = identity_functor(nontrivial_c2_type())
    assert obstruction(G).is_zero()


def test_obstructed_functor():
    s, t = nontrivial_c2_type(), strict_c2_z2()
    F = make_functor(s, t, identity_hom(C2), identity_abelian_hom(Z2))
    k = obstruction(F)
    assert k(1, 1, 1) == (1,)
    assert realizable(F) is None
    assert classify(s, t, F.phi, F.f) == []
    # killing the carrier removes the obstruction
    F0 = make_functor(s, t, identity_hom(C2), AbelianHom(Z2, Z2, ((0,),)))
    assert realizable(F0) is not None


def test_invalid_pairs():
    s, t = strict_type(c2_z4_neg()), strict_type(trivial_module(C2, Z4))
    with pytest.raises(InvalidPair):
        make_functor(s, t, identity_hom(C2), identity_abelian_hom(Z4))
    with pytest.raises(NotAdditive):
        AbelianHom(Z2, Z4, ((1,),))
    with pytest.raises(InvalidPair):
        make_functor(strict_type(trivial_module(C4, Z2)), strict_c2_z2(), trivial_hom(C2, C2),
                     identity_abelian_hom(Z2))


def brute_space(F):
    return F.module.carrier.order ** len(normalized_positions(F.source.pi, 2))


@settings(max_examples=40, deadline=None)
@given(functors().filter(lambda F: brute_space(F) <= 1024))
def test_realizable_matches_brute_search(F):
    g = realizable(F)
    brute = brute_monoidal(F)
    assert (g is None) == (brute is None)
    if g is not None:
        assert check_monoidal(F.with_g(g)).ok


@settings(max_examples=30, deadline=None)
@given(functors(), st.data())
def test_obstruction_class_ignores_coboundaries(F, data):
    def perturb(T):
        size = len(normalized_positions(T.pi, 2)) * T.carrier.rank
        beta = Cochain.from_vector(T.module, 2, data.draw(st.lists(st.integers(0, 3), min_size=size, max_size=size)))
        return GrType(T.module, T.xi + coboundary(beta))

    F2 = make_functor(perturb(F.source), perturb(F.target), F.phi, F.f)
    assert (solve_coboundary(obstruction(F)) is None) == (solve_coboundary(obstruction(F2)) is None)


@settings(max_examples=30, deadline=None)
@given(functors())
def test_classification_is_a_bijection_with_h2(F):
    out = classify(F.source, F.target, F.phi, F.f)
    if realizable(F) is None:
        assert out == []
        return
    assert len(out) == cohomology_group(F.module, 2).order
    for i, a in enumerate(out):
        assert check_monoidal(a).ok
        for j, b in enumerate(out):
            assert (congruent(a, b) is not None) == (i == j)


@settings(max_examples=30, deadline=None)
@given(functors(), st.data())
def test_congruence_is_an_equivalence(F, data):
    g0 = realizable(F)
    if g0 is None:
        return
    m = F.module
    size = len(normalized_positions(F.source.pi, 1)) * m.carrier.rank

    def nearby():
        a = Cochain.from_vector(m, 1, data.draw(st.lists(st.integers(0, 3), min_size=size, max_size=size)))
        return F.with_g(g0 + coboundary(a))

    a, b, c = nearby(), nearby(), nearby()
    assert congruent(a, a) is not None
    ab, bc = congruent(a, b), congruent(b, c)
    assert ab is not None and congruent(b, a) is not None and congruent(a, c) is not None
    assert natural_transformation_failures(a, b, ab) == []
    assert natural_transformation_failures(a, c, ab + bc) == []


@settings(max_examples=30, deadline=None)
@given(functors())
def test_automorphism_count(F):
    m = F.module
    h0, h1 = cohomology_group(m, 0).order, cohomology_group(m, 1).order
    # |Z^1| = |H^1| |B^1| and |B^1| = |A| / |H^0|
    assert len(automorphisms(F)) * h0 == h1 * m.carrier.order


def test_congruent_requires_same_signature():
    F = identity_functor(strict_c2_z2()).with_g(Cochain.zero(c2_z2(), 2))
    G = identity_functor(nontrivial_c2_type()).with_g(Cochain.zero(c2_z2(), 2))
    with pytest.raises(SignatureMismatch):
        congruent(F, G)
    with pytest.raises(SignatureMismatch):
        congruent(F, identity_functor(strict_c2_z2()))
