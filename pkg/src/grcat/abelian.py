"""Finite abelian groups in invariant-factor form and homomorphisms between them."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Sequence

from .errors import NotAdditive, NotAFactorChain
from .groups import FiniteGroup
from .intlinalg import smith_normal_form

Vector = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k and every d_i >= 2.

    Elements are residue vectors; the empty tuple of factors is the trivial group.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        ds = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", ds)
        for i, d in enumerate(ds):
            if d < 2:
                raise NotAFactorChain(f"invariant factor {d} < 2")
            if i + 1 < len(ds) and ds[i + 1] % d:
                raise NotAFactorChain(f"{d} does not divide {ds[i + 1]}")

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def zero(self) -> Vector:
        return (0,) * self.rank

    def normalize(self, v: Sequence[int]) -> Vector:
        if len(v) != self.rank:
            raise ValueError(f"vector {tuple(v)} has length {len(v)}, expected {self.rank}")
        return tuple(int(x) % d for x, d in zip(v, self.invariant_factors))

    def add(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def neg(self, a: Sequence[int]) -> Vector:
        return tuple(-x % d for x, d in zip(a, self.invariant_factors))

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.invariant_factors))

    def scale(self, n: int, a: Sequence[int]) -> Vector:
        return tuple(n * x % d for x, d in zip(a, self.invariant_factors))

    def basis(self, i: int) -> Vector:
        return tuple(int(j == i) for j in range(self.rank))

    def elements(self) -> list[Vector]:
        return list(itertools.product(*(range(d) for d in self.invariant_factors)))

    def index(self, a: Sequence[int]) -> int:
        """Mixed-radix position of ``a`` in :meth:`elements`."""
        out = 0
        for x, d in zip(a, self.invariant_factors):
            out = out * d + x
        return out

    def element_order(self, a: Sequence[int]) -> int:
        from math import gcd, lcm

        out = 1
        for x, d in zip(a, self.invariant_factors):
            out = lcm(out, d // gcd(x, d))
        return out

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The additive group as a multiplication table over :meth:`elements`."""
        els = self.elements()
        names = tuple(",".join(map(str, e)) if e else "0" for e in els)
        table = tuple(tuple(self.index(self.add(a, b)) for b in els) for a in els)
        return FiniteGroup(names, table, 0)

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


def trivial_abelian() -> FiniteAbelianGroup:
    return FiniteAbelianGroup(())


@dataclass(frozen=True)
class AbelianHom:
    """Additive map given by the images of the standard generators."""

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    images: tuple[Vector, ...]

    def __post_init__(self):
        imgs = tuple(self.target.normalize(v) for v in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.source.rank:
            raise NotAdditive(f"{len(imgs)} generator images for a source of rank {self.source.rank}")
        for i, (v, d) in enumerate(zip(imgs, self.source.invariant_factors)):
            if any(self.target.scale(d, v)):
                raise NotAdditive(f"image of generator {i} has order not dividing {d}", (i,))

    def __call__(self, a: Sequence[int]) -> Vector:
        out = [0] * self.target.rank
        for x, img in zip(a, self.images):
            if x:
                for k, y in enumerate(img):
                    out[k] += x * y
        return self.target.normalize(out)

    @property
    def matrix(self) -> list[list[int]]:
        """Columns are generator images (target.rank x source.rank)."""
        return [[img[k] for img in self.images] for k in range(self.target.rank)]

    def compose(self, other: "AbelianHom") -> "AbelianHom":
        """self after other."""
        return AbelianHom(other.source, self.target, tuple(self(v) for v in other.images))

    @property
    def is_bijective(self) -> bool:
        if self.source.order != self.target.order:
            return False
        return len({self(a) for a in self.source.elements()}) == self.source.order


def identity_abelian_hom(a: FiniteAbelianGroup) -> AbelianHom:
    return AbelianHom(a, a, tuple(a.basis(i) for i in range(a.rank)))


def zero_abelian_hom(a: FiniteAbelianGroup, b: FiniteAbelianGroup) -> AbelianHom:
    return AbelianHom(a, b, tuple(b.zero for _ in range(a.rank)))


@dataclass(frozen=True)
class Decomposition:
    """An explicit isomorphism between a concrete finite abelian group and
    its invariant-factor form."""

    group: FiniteAbelianGroup
    to_vector: dict
    from_vector: dict

    def __hash__(self):
        return hash(self.group)


def decompose_abelian(elements: Sequence[Hashable], op: Callable, identity: Hashable) -> Decomposition:
    """Invariant-factor decomposition of a finite abelian group.

    ``elements`` lists the group (order matters: it fixes the generators that
    are tried first, so the result is deterministic). Coordinates come from a
    breadth-first word for each element; the relation lattice is spanned by
    the Schreier relations and diagonalised by Smith normal form.
    """
    els = list(elements)
    # greedy generators in list order
    gens: list = []
    span = {identity}
    for x in els:
        if x in span:
            continue
        gens.append(x)
        span = _closure(gens, op, identity)
        if len(span) == len(els):
            break
    m = len(gens)
    word = {identity: (0,) * m}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for i, g in enumerate(gens):
            y = op(x, g)
            if y not in word:
                w = list(word[x])
                w[i] += 1
                word[y] = tuple(w)
                queue.append(y)
    rels = []
    for x in els:
        for i, g in enumerate(gens):
            w = list(word[x])
            w[i] += 1
            r = [a - b for a, b in zip(w, word[op(x, g)])]
            if any(r):
                rels.append(r)
    sf = smith_normal_form(rels, m, track="V Vinv")
    keep = [j for j, d in enumerate(sf.diagonal) if d != 1]
    if sf.rank < m:
        raise ValueError("group is infinite or elements are not closed under op")
    factors = tuple(sf.diagonal[j] for j in keep)
    group = FiniteAbelianGroup(factors)
    to_vector = {}
    for x in els:
        y = [sum(word[x][i] * sf.V[i][j] for i in range(m)) for j in range(m)]
        to_vector[x] = tuple(y[j] % sf.diagonal[j] for j in keep)
    from_vector = {v: x for x, v in to_vector.items()}
    if len(from_vector) != len(els):
        raise ValueError("decomposition is not injective")
    return Decomposition(group, to_vector, from_vector)


def _closure(gens, op, identity):
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = op(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def abelian_group_from_orders(orders: Sequence[int]) -> tuple[FiniteAbelianGroup, Callable[[Sequence[int]], Vector]]:
    """Normalize Z/n_1 + ... + Z/n_r to invariant-factor form.

    Returns the normalized group and the isomorphism on residue vectors.
    """
    orders = [int(n) for n in orders]
    els = list(itertools.product(*(range(n) for n in orders)))

    def op(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    dec = decompose_abelian(els, op, tuple(0 for _ in orders))

    def iso(v):
        return dec.to_vector[tuple(int(x) % n for x, n in zip(v, orders))]

    return dec.group, iso
