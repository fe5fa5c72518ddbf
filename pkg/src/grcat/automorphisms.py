"""Aut(G), inner automorphisms, Out(G) with a normalized section, and Z(G)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .abelian import Decomposition, FiniteAbelianGroup, decompose_abelian
from .errors import GroupTooLarge
from .groups import FiniteGroup, GroupHom, brute_force_automorphisms, iter_homomorphisms

MAX_GROUP_ORDER = 64
MAX_AUT_ORDER = 2048


@dataclass(frozen=True)
class AutData:
    """Everything derived from Aut(G), computed once per group.

    Automorphisms are image tuples sorted lexicographically, so index 0 is the
    identity. ``mu[c]`` is the index of x -> c x c^-1. Out(G) elements are
    Inn-cosets ordered by their least member, which is also the section value.
    """

    group: FiniteGroup
    auts: tuple[tuple[int, ...], ...]
    aut_group: FiniteGroup
    mu: tuple[int, ...]
    inner: tuple[int, ...]
    out_group: FiniteGroup
    section: tuple[int, ...]
    projection: tuple[int, ...]

    def __hash__(self):
        return hash(self.group)

    def aut_index(self, image) -> int:
        return self._index[tuple(image)]

    @cached_property
    def _index(self) -> dict:
        return {a: i for i, a in enumerate(self.auts)}

    @cached_property
    def _mu_pre(self) -> dict:
        pre: dict = {}
        for c, a in enumerate(self.mu):
            pre.setdefault(a, []).append(c)
        return {a: tuple(v) for a, v in pre.items()}

    def hom(self, i: int) -> GroupHom:
        return GroupHom(self.group, self.group, self.auts[i])

    def mu_preimage(self, i: int) -> tuple[int, ...]:
        """Group elements c with mu_c equal to automorphism ``i`` (a Z(G)-coset or empty)."""
        return self._mu_pre.get(i, ())


@lru_cache(maxsize=256)
def aut_data(g: FiniteGroup) -> AutData:
    if g.order > MAX_GROUP_ORDER:
        raise GroupTooLarge(f"|G| = {g.order} exceeds {MAX_GROUP_ORDER}")
    auts = sorted(iter_homomorphisms(g, g, bijective=True))
    if len(auts) > MAX_AUT_ORDER:
        raise GroupTooLarge(f"|Aut(G)| = {len(auts)} exceeds {MAX_AUT_ORDER}")
    index = {a: i for i, a in enumerate(auts)}
    table = tuple(tuple(index[tuple(a[x] for x in b)] for b in auts) for a in auts)
    aut_group = FiniteGroup(tuple(f"aut{i}" for i in range(len(auts))), table, 0)

    mu = []
    for c in g.elements:
        mu.append(index[tuple(g.conjugate(c, x) for x in g.elements)])
    inner = tuple(sorted(set(mu)))

    inner_set = set(inner)
    projection = [-1] * len(auts)
    section = []
    for a in range(len(auts)):
        if projection[a] >= 0:
            continue
        k = len(section)
        section.append(a)
        for i in inner_set:
            projection[table[i][a]] = k
    out_table = tuple(
        tuple(projection[table[section[s]][section[t]]] for t in range(len(section)))
        for s in range(len(section))
    )
    out_group = FiniteGroup(tuple(f"out{i}" for i in range(len(section))), out_table, 0)
    return AutData(g, tuple(auts), aut_group, tuple(mu), inner, out_group, tuple(section), tuple(projection))


def automorphism_group(g: FiniteGroup, *, brute_force: bool = False) -> tuple[FiniteGroup, list[GroupHom]]:
    """Aut(G) as a group of composition, plus the automorphisms in matching order.

    ``brute_force=True`` scans all bijections instead (order <= 8); it exists
    as an oracle for the generator-image search.
    """
    if brute_force:
        auts = brute_force_automorphisms(g)
        index = {a: i for i, a in enumerate(auts)}
        table = tuple(tuple(index[tuple(a[x] for x in b)] for b in auts) for a in auts)
        grp = FiniteGroup(tuple(f"aut{i}" for i in range(len(auts))), table, 0)
        return grp, [GroupHom(g, g, a) for a in auts]
    d = aut_data(g)
    return d.aut_group, [d.hom(i) for i in range(len(d.auts))]


def inner_automorphisms(g: FiniteGroup) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(indices of inner automorphisms, mu) where mu[c] indexes x -> c x c^-1."""
    d = aut_data(g)
    return d.inner, d.mu


def outer_quotient(g: FiniteGroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Out(G) = Aut(G)/Inn(G) and a coset-representative section with section[1] = id."""
    d = aut_data(g)
    return d.out_group, d.section


@dataclass(frozen=True)
class Center:
    group: FiniteAbelianGroup
    embed: dict  # residue vector -> element of G
    coords: dict  # element of G -> residue vector

    def __hash__(self):
        return hash(self.group)


@lru_cache(maxsize=256)
def center_data(g: FiniteGroup) -> Center:
    elems = [c for c in g.elements if all(g.table[c][x] == g.table[x][c] for x in g.elements)]
    dec: Decomposition = decompose_abelian(elems, g.mul, g.identity)
    return Center(dec.group, dec.from_vector, dec.to_vector)


def center(g: FiniteGroup) -> tuple[FiniteAbelianGroup, dict]:
    """Z(G) in invariant-factor form and the embedding residue vector -> element."""
    c = center_data(g)
    return c.group, c.embed
