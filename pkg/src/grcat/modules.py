"""Modules over a finite group: a finite abelian group with an action by automorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .abelian import AbelianHom, FiniteAbelianGroup, Vector
from .errors import NotAdditive, NotAnAction, SourceMismatch
from .groups import FiniteGroup, GroupHom, iter_homomorphisms
from .automorphisms import aut_data


@dataclass(frozen=True)
class PiModule:
    """``images[x][j]`` is the residue vector of x acting on generator j."""

    group: FiniteGroup
    carrier: FiniteAbelianGroup
    images: tuple[tuple[Vector, ...], ...]

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.group, self.carrier, self.images))

    def act(self, x: int, a: Sequence[int]) -> Vector:
        out = [0] * self.carrier.rank
        for c, img in zip(a, self.images[x]):
            if c:
                for k, y in enumerate(img):
                    out[k] += c * y
        return self.carrier.normalize(out)

    @cached_property
    def matrices(self) -> np.ndarray:
        """Stack of integer action matrices, shape (|Pi|, k, k); column j is x . e_j."""
        k = self.carrier.rank
        m = np.zeros((self.group.order, k, k), dtype=np.int64)
        for x, imgs in enumerate(self.images):
            for j, v in enumerate(imgs):
                m[x, :, j] = v
        m.setflags(write=False)
        return m

    @cached_property
    def is_trivial_action(self) -> bool:
        ident = tuple(self.carrier.basis(j) for j in range(self.carrier.rank))
        return all(imgs == ident for imgs in self.images)

    def automorphism_of(self, x: int) -> AbelianHom:
        return AbelianHom(self.carrier, self.carrier, self.images[x])

    def same_structure(self, other: "PiModule") -> bool:
        """Same group table, carrier and action, ignoring element names."""
        return (self.group.same_table(other.group) and self.carrier == other.carrier
                and self.images == other.images)

    def fixed_points(self) -> list[Vector]:
        return [a for a in self.carrier.elements()
                if all(self.act(x, a) == a for x in self.group.elements)]

    def __repr__(self):
        kind = "trivial" if self.is_trivial_action else "nontrivial"
        return f"PiModule(|Pi|={self.group.order}, A={self.carrier}, {kind} action)"


def _validate(m: PiModule) -> None:
    A, G = m.carrier, m.group
    k = A.rank
    if len(m.images) != G.order:
        raise NotAnAction(f"action given for {len(m.images)} elements, group has {G.order}")
    for x in G.elements:
        if len(m.images[x]) != k:
            raise NotAdditive(f"element {x} has {len(m.images[x])} generator images, expected {k}", (x,))
        for j, (v, d) in enumerate(zip(m.images[x], A.invariant_factors)):
            if any(A.scale(d, v)):
                raise NotAdditive(f"x={x} sends generator {j} to an element of order not dividing {d}", (x, j))
    e = G.identity
    for j in range(k):
        if m.images[e][j] != A.basis(j):
            raise NotAnAction(f"identity element moves generator {j}", (e, j))
    for x in G.elements:
        for y in G.elements:
            xy = G.table[x][y]
            for j in range(k):
                if m.images[xy][j] != m.act(x, m.images[y][j]):
                    raise NotAnAction(f"action({x}*{y}, e{j}) != action({x}, action({y}, e{j}))", (x, y, j))
    for x in G.elements:
        if not m.automorphism_of(x).is_bijective:
            raise NotAdditive(f"element {x} does not act by an automorphism", (x,))


def make_module(group: FiniteGroup, carrier: FiniteAbelianGroup,
                action: Mapping[int, Sequence[Sequence[int]]] | Sequence[Sequence[Sequence[int]]]) -> PiModule:
    """Build a module from the images of the carrier's generators under each
    group element, then validate the action axioms.

    ``action`` maps element index -> list of generator images (residue
    vectors). The identity may be omitted.
    """
    if isinstance(action, Mapping):
        table = {int(x): v for x, v in action.items()}
    else:
        table = dict(enumerate(action))
    images = []
    for x in group.elements:
        if x in table:
            imgs = tuple(carrier.normalize(v) for v in table[x])
        elif x == group.identity:
            imgs = tuple(carrier.basis(j) for j in range(carrier.rank))
        else:
            raise NotAnAction(f"no action given for element {x}", (x,))
        images.append(imgs)
    m = PiModule(group, carrier, tuple(images))
    _validate(m)
    return m


def trivial_module(group: FiniteGroup, carrier: FiniteAbelianGroup) -> PiModule:
    ident = tuple(carrier.basis(j) for j in range(carrier.rank))
    return PiModule(group, carrier, (ident,) * group.order)


def module_from_automorphisms(group: FiniteGroup, carrier: FiniteAbelianGroup,
                              rho: Sequence[AbelianHom]) -> PiModule:
    """Module where x acts by ``rho[x]``; validated."""
    return make_module(group, carrier, [r.images for r in rho])


def pullback_module(phi: GroupHom, module: PiModule) -> PiModule:
    """Restrict scalars along phi: x . a = phi(x) . a."""
    if phi.target != module.group:
        raise SourceMismatch("homomorphism target is not the module's group")
    return PiModule(phi.source, module.carrier, tuple(module.images[phi.image[x]] for x in phi.source.elements))


def is_equivariant(f: AbelianHom, phi: GroupHom, source: PiModule, target: PiModule) -> list[tuple[int, int]]:
    """Pairs (x, j) where f(x . e_j) != phi(x) . f(e_j)."""
    bad = []
    for x in source.group.elements:
        for j in range(source.carrier.rank):
            if f(source.images[x][j]) != target.act(phi.image[x], f.images[j]):
                bad.append((x, j))
    return bad


def all_actions(group: FiniteGroup, carrier: FiniteAbelianGroup) -> list[PiModule]:
    """Every module structure on ``carrier``, one per homomorphism group -> Aut(carrier)."""
    ag = carrier.as_group
    data = aut_data(ag)
    els = carrier.elements()
    basis_idx = [carrier.index(carrier.basis(j)) for j in range(carrier.rank)]
    out = []
    for image in iter_homomorphisms(group, data.aut_group):
        imgs = []
        for x in group.elements:
            aut = data.auts[image[x]]
            imgs.append(tuple(els[aut[b]] for b in basis_idx))
        out.append(PiModule(group, carrier, tuple(imgs)))
    return sorted(out, key=lambda m: m.images)
