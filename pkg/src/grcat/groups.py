"""Finite groups given by multiplication tables, homomorphisms between them,
and generator-image search for homomorphisms, automorphisms and isomorphisms.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    GroupTooLarge,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotLatinSquare,
)


@dataclass(frozen=True)
class FiniteGroup:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.names, self.table, self.identity))

    @property
    def order(self) -> int:
        return len(self.table)

    def same_table(self, other: "FiniteGroup") -> bool:
        """Equal as groups on the same index set, ignoring element names."""
        return self.table == other.table and self.identity == other.identity

    def least(self, candidates) -> int:
        """The least candidate in index order, with the identity counted first."""
        return min(candidates, key=lambda g: (g != self.identity, g))

    def __len__(self):
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *xs: int) -> int:
        """Left-to-right product of the arguments."""
        r = self.identity
        for x in xs:
            r = self.table[r][x]
        return r

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for a in self.elements:
            n, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                n += 1
            out.append(n)
        return tuple(out)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        a.setflags(write=False)
        return a

    @cached_property
    def is_abelian(self) -> bool:
        t = self.array
        return bool((t == t.T).all())

    def conjugate(self, c: int, x: int) -> int:
        """c x c^-1."""
        return self.table[self.table[c][x]][self.inverses[c]]

    def subgroup_closure(self, gens: Sequence[int]) -> list[int]:
        seen = {self.identity}
        order = [self.identity]
        queue = deque(order)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily.

        Each step adds the element whose inclusion yields the largest subgroup
        (smallest index on ties), so cyclic groups get a single generator.
        """
        gens: list[int] = []
        current = {self.identity}
        while len(current) < self.order:
            best, best_size = None, -1
            for a in self.elements:
                if a in current:
                    continue
                size = len(self.subgroup_closure(gens + [a]))
                if size > best_size:
                    best, best_size = a, size
            gens.append(best)
            current = set(self.subgroup_closure(gens))
        return tuple(gens)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _check_table(names, table) -> tuple[tuple[int, ...], ...]:
    n = len(table)
    if n == 0:
        raise NotLatinSquare("empty table")
    if len(names) != n:
        raise ValueError(f"{len(names)} names for a table of order {n}")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotLatinSquare(f"row {i} has length {len(row)}, expected {n}", (i,))
        rows.append(tuple(int(v) for v in row))
    full = set(range(n))
    for i, row in enumerate(rows):
        if set(row) != full:
            bad = next(j for j in range(n) if row.count(row[j]) > 1 or not 0 <= row[j] < n)
            raise NotLatinSquare(f"row {i} is not a permutation (column {bad})", (i, bad))
    for j in range(n):
        col = [rows[i][j] for i in range(n)]
        if set(col) != full:
            bad = next(i for i in range(n) if col.count(col[i]) > 1)
            raise NotLatinSquare(f"column {j} is not a permutation (row {bad})", (bad, j))
    return tuple(rows)


def make_group(names: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a :class:`FiniteGroup`.

    ``table[i][j]`` is the index of the product ``i*j``. Raises the first
    violated axiom among Latin square, identity, inverses and associativity.
    """
    rows = _check_table(names, table)
    n = len(rows)
    ident = None
    for e in range(n):
        if rows[e] == tuple(range(n)) and all(rows[i][e] == i for i in range(n)):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no two-sided identity element")
    for a in range(n):
        b = rows[a].index(ident)
        if rows[b][a] != ident:
            raise NoInverse(f"element {a} has no two-sided inverse", (a,))
    t = np.array(rows, dtype=np.int64)
    lhs = t[t]  # lhs[i, j, k] = (i*j)*k
    rhs = t[:, t]  # rhs[i, j, k] = i*(j*k)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        raise NotAssociative(f"({i}*{j})*{k} != {i}*({j}*{k})", (i, j, k))
    return FiniteGroup(tuple(str(s) for s in names), rows, ident)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(("e",), ((0,),), 0)


def cyclic_group(n: int) -> FiniteGroup:
    names = tuple(str(i) for i in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(names, table, 0)


def compose_permutations(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """(p*q)(i) = p(q(i)): apply q first."""
    return tuple(p[i] for i in q)


def permutation_group(generators: Sequence[Sequence[int]], degree: int) -> FiniteGroup:
    """Subgroup of the symmetric group on ``degree`` points generated by ``generators``.

    Elements are closed under composition and listed in lexicographic order of
    their image tuples, so the identity permutation is element 0.
    """
    gens = [tuple(int(v) for v in g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ValueError(f"{list(g)} is not a permutation of 0..{degree - 1}")
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose_permutations(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) > 4096:
        raise GroupTooLarge(f"generated group has order {len(seen)}")
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(index[compose_permutations(p, q)] for q in elems) for p in elems)
    names = tuple("(" + " ".join(map(str, p)) + ")" for p in elems)
    return FiniteGroup(names, table, 0)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Pairs (a, b) indexed as a * |h| + b."""
    m = h.order
    names = tuple(f"({a},{b})" for a in g.names for b in h.names)
    table = tuple(
        tuple(g.table[a1][a2] * m + h.table[b1][b2] for a2 in g.elements for b2 in h.elements)
        for a1 in g.elements
        for b1 in h.elements
    )
    return FiniteGroup(names, table, g.identity * m + h.identity)


def semidirect_product(n: FiniteGroup, h: FiniteGroup, action: Sequence[Sequence[int]]) -> FiniteGroup:
    """N x| H with (a, x)(b, y) = (a * action[x](b), x y); indexed x * |N| + a.

    ``action[x]`` is the image tuple of the automorphism of N by which x acts.
    """
    m = n.order
    names = tuple(f"({a},{x})" for x in h.names for a in n.names)
    rows = []
    for x in h.elements:
        for a in n.elements:
            row = []
            for y in h.elements:
                for b in n.elements:
                    row.append(h.table[x][y] * m + n.table[a][action[x][b]])
            rows.append(tuple(row))
    return make_group(names, rows)


def metacyclic_group(m: int, n: int, r: int, t: int = 0) -> FiniteGroup:
    """<a, b | a^m, b^n = a^t, b a b^-1 = a^r>, elements a^i b^j indexed j*m + i."""
    names = tuple(f"a{i}b{j}" for j in range(n) for i in range(m))

    def mul(i, j, k, l):
        i2 = (i + pow(r, j, m) * k) % m
        j2 = j + l
        if j2 >= n:
            i2 = (i2 + t) % m
            j2 -= n
        return j2 * m + i2

    rows = tuple(
        tuple(mul(i, j, k, l) for l in range(n) for k in range(m))
        for j in range(n)
        for i in range(m)
    )
    return make_group(names, rows)


# --------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.image[x]

    def violations(self, limit: int = 10) -> list[str]:
        out = []
        s, t = self.source, self.target
        if len(self.image) != s.order:
            return [f"image has {len(self.image)} entries for a source of order {s.order}"]
        if any(not 0 <= v < t.order for v in self.image):
            return ["image index out of range"]
        if self.image[s.identity] != t.identity:
            out.append("identity not sent to identity")
        for i in s.elements:
            for j in s.elements:
                if self.image[s.table[i][j]] != t.table[self.image[i]][self.image[j]]:
                    out.append(f"f({i}*{j}) != f({i})*f({j})")
                    if len(out) >= limit:
                        return out
        return out

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.target != self.source:
            raise ValueError("homomorphisms are not composable")
        return GroupHom(other.source, self.target, tuple(self.image[v] for v in other.image))

    @property
    def is_bijective(self) -> bool:
        return len(set(self.image)) == self.source.order == self.target.order


def make_hom(source: FiniteGroup, target: FiniteGroup, image: Sequence[int]) -> GroupHom:
    f = GroupHom(source, target, tuple(int(v) for v in image))
    bad = f.violations(limit=1)
    if bad:
        raise NotAHomomorphism(bad[0])
    return f


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(g.elements))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, (target.identity,) * source.order)


def _prefix_trees(g: FiniteGroup, gens: Sequence[int]):
    """For each prefix gens[:i+1], the BFS spanning tree of the subgroup it
    generates, as a list of (element, parent, generator position) triples,
    restricted to the elements that are new at that prefix."""
    trees = []
    parent: dict[int, tuple[int, int]] = {}
    known = [g.identity]
    seen = {g.identity}
    for i in range(len(gens)):
        new = []
        queue = deque(known)
        while queue:
            x = queue.popleft()
            for p in range(i + 1):
                y = g.table[x][gens[p]]
                if y not in seen:
                    seen.add(y)
                    parent[y] = (x, p)
                    known.append(y)
                    new.append((y, x, p))
                    queue.append(y)
        trees.append((list(known), new))
    return trees


def iter_homomorphisms(
    source: FiniteGroup, target: FiniteGroup, *, bijective: bool = False
) -> Iterator[tuple[int, ...]]:
    """Yield image tuples of all homomorphisms source -> target.

    Images are chosen for a greedy generating set of ``source`` and extended
    along a spanning tree; partial maps are checked against the subgroup
    generated so far, which prunes most candidates early. With
    ``bijective=True`` only isomorphisms are produced.
    """
    if bijective and source.order != target.order:
        return
    gens = source.generators
    if not gens:
        yield (target.identity,)
        return
    trees = _prefix_trees(source, gens)
    if bijective:
        cands = [[y for y in target.elements if target.orders[y] == source.orders[x]] for x in gens]
    else:
        cands = [[y for y in target.elements if source.orders[x] % target.orders[y] == 0] for x in gens]
    img = [None] * source.order
    img[source.identity] = target.identity
    chosen = [None] * len(gens)

    def consistent(i) -> bool:
        known, new = trees[i]
        for y, x, p in new:
            img[y] = target.table[img[x]][chosen[p]]
        for x in known:
            for p in range(i + 1):
                if img[source.table[x][gens[p]]] != target.table[img[x]][chosen[p]]:
                    return False
        if bijective and len(set(img[x] for x in known)) != len(known):
            return False
        return True

    def rec(i):
        if i == len(gens):
            yield tuple(img)
            return
        for c in cands[i]:
            chosen[i] = c
            if consistent(i):
                yield from rec(i + 1)
        for y, _, _ in trees[i][1]:
            img[y] = None

    yield from rec(0)


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> GroupHom | None:
    if g.order != h.order or sorted(g.orders) != sorted(h.orders):
        return None
    for image in iter_homomorphisms(g, h, bijective=True):
        return GroupHom(g, h, image)
    return None


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_isomorphism(g, h) is not None


def brute_force_automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms by scanning every bijection fixing the identity (|G| <= 8)."""
    if g.order > 8:
        raise GroupTooLarge("brute-force bijection scan is limited to order 8")
    others = [x for x in g.elements if x != g.identity]
    out = []
    for perm in itertools.permutations(others):
        image = [0] * g.order
        image[g.identity] = g.identity
        for x, y in zip(others, perm):
            image[x] = y
        if all(image[g.table[a][b]] == g.table[image[a]][image[b]] for a in g.elements for b in g.elements):
            out.append(tuple(image))
    return sorted(out)
