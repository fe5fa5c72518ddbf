import itertools

import pytest
from hypothesis import given, settings, strategies as st

from grcat.catalog import load_catalog
from grcat.errors import NoIdentity, NoInverse, NotAHomomorphism, NotAssociative, NotLatinSquare
from grcat.groups import (are_isomorphic, cyclic_group, direct_product, identity_hom, iter_homomorphisms,
                          make_group, make_hom, permutation_group, trivial_hom)

from helpers import C2, C4, S3, V4

SMALL = [g for _, g in load_catalog(8)]


def test_trivial_and_c2():
    assert make_group(["e"], [[0]]).order == 1
    g = make_group(["e", "s"], [[0, 1], [1, 0]])
    assert g.order == 2 and g.identity == 0 and g.inv(1) == 1


def test_s3_from_permutations():
    g = permutation_group([[1, 2, 0], [1, 0, 2]], 3)
    assert g.order == 6 and not g.is_abelian
    # elements in lexicographic order of their image tuples, identity first
    assert g.names[0] == "(0 1 2)"
    assert list(g.names) == sorted(g.names)


def test_permutation_closure_matches_table():
    g = S3
    perms = [tuple(int(c) for c in n.strip("()").split()) for n in g.names]
    for i, j in itertools.product(g.elements, repeat=2):
        assert perms[g.mul(i, j)] == tuple(perms[i][x] for x in perms[j])


@pytest.mark.parametrize("table, error", [
    ([[0, 1], [0, 1]], NotLatinSquare),
    ([[0, 2, 1], [1, 0, 2], [2, 1, 0]], NoIdentity),  # x*y = x - y mod 3
    ([[0, 1, 2], [1, 2, 0], [2, 1, 0]], NotLatinSquare),
])
def test_invalid_tables(table, error):
    with pytest.raises(error):
        make_group([str(i) for i in range(len(table))], table)


def test_non_associative_latin_square():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises((NotAssociative, NoInverse)) as info:
        make_group(list("abcde"), t)
    assert info.value.witness is not None


def test_errors_name_the_tuple():
    with pytest.raises(NotLatinSquare) as info:
        make_group(["a", "b"], [[0, 1], [0, 1]])
    assert info.value.witness == (0, 0)  # column 0 repeats 0 in row 0's position


def test_hom_checks():
    with pytest.raises(NotAHomomorphism):
        make_hom(C2, C4, [0, 1])
    assert make_hom(C2, C4, [0, 2]).image == (0, 2)
    assert not trivial_hom(C4, C2).violations()


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"order{g.order}")
def test_catalog_tables_are_groups(g):
    h = make_group(g.names, g.table)
    assert h == g
    assert g.inverses[g.identity] == g.identity
    assert all(g.mul(x, g.inv(x)) == g.identity for x in g.elements)


def test_homomorphism_enumeration_matches_brute_force():
    for src, tgt in [(C4, C2), (V4, S3), (C2, V4), (S3, C2)]:
        brute = []
        for image in itertools.product(tgt.elements, repeat=src.order):
            if image[src.identity] == tgt.identity and all(
                    image[src.mul(a, b)] == tgt.mul(image[a], image[b]) for a in src.elements for b in src.elements):
                brute.append(image)
        assert sorted(iter_homomorphisms(src, tgt)) == sorted(brute)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL[:6]))
def test_direct_products_are_groups(g, h):
    p = direct_product(g, h)
    make_group(p.names, p.table)
    assert p.order == g.order * h.order
    assert p.is_abelian == (g.is_abelian and h.is_abelian)


def test_isomorphism_search():
    assert are_isomorphic(direct_product(C2, C2), V4)
    assert not are_isomorphic(C4, V4)
    assert are_isomorphic(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3)))
    assert identity_hom(S3).is_bijective
