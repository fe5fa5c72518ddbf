"""Skeletal Gr-categories of type (Pi, A, xi).

Objects are the elements of Pi, arrows s -> s are pairs (s, u) with u in A,
composition adds the second components, and the associativity constraint at
(x, y, z) is the arrow (xyz, xi(x, y, z)). Units are strict.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .abelian import Vector
from .cochains import Cochain, cocycle_check
from .errors import NotACocycle, SourceMismatch
from .modules import PiModule, trivial_module
from .report import Report

Arrow = tuple[int, Vector]


@dataclass(frozen=True)
class GrType:
    module: PiModule
    xi: Cochain

    def __post_init__(self):
        if self.xi.degree != 3 or self.xi.module != self.module:
            raise SourceMismatch("xi must be a 3-cochain over the type's module")

    @property
    def pi(self):
        return self.module.group

    @property
    def carrier(self):
        return self.module.carrier

    def check(self) -> "GrType":
        """Raise NotACocycle unless xi is a normalized 3-cocycle."""
        if not self.xi.is_normalized():
            raise NotACocycle("xi is not normalized", self.xi.normalization_failures()[:1])
        bad, _ = cocycle_check(self.xi)
        if bad:
            raise NotACocycle("xi is not a 3-cocycle", bad[:1])
        return self


def strict_type(module: PiModule) -> GrType:
    return GrType(module, Cochain.zero(module, 3))


def trivial_type(group, carrier) -> GrType:
    return strict_type(trivial_module(group, carrier))


# arrows ----------------------------------------------------------------------

def identity_arrow(T: GrType, s: int) -> Arrow:
    return (s, T.carrier.zero)


def compose_arrows(T: GrType, b: Arrow, a: Arrow) -> Arrow:
    """b after a; both must be endomorphisms of the same object."""
    if a[0] != b[0]:
        raise ValueError(f"arrows on objects {a[0]} and {b[0]} do not compose")
    return (a[0], T.carrier.add(a[1], b[1]))


def tensor_arrows(T: GrType, a: Arrow, b: Arrow) -> Arrow:
    """(s, u) (x) (t, v) = (st, u + s.v)."""
    (s, u), (t, v) = a, b
    return (T.pi.mul(s, t), T.carrier.add(u, T.module.act(s, v)))


def associator(T: GrType, x: int, y: int, z: int) -> Arrow:
    return (T.pi.prod(x, y, z), T.xi(x, y, z))


def pentagon_failures(T: GrType, *, limit: int = 2 ** 16, samples: int = 20000,
                      seed: int = 0) -> list[tuple[int, int, int, int]]:
    """Quadruples where the pentagon of arrows fails to commute.

    (id_x (x) a_{y,z,t}) o a_{x,yz,t} o (a_{x,y,z} (x) id_t)  vs  a_{x,y,zt} o a_{xy,z,t}

    All quadruples when there are at most ``limit`` of them, else a seeded sample.
    """
    G = T.pi
    bad = []
    if G.order ** 4 <= limit:
        quads = itertools.product(G.elements, repeat=4)
    else:
        rng = random.Random(seed)
        quads = [tuple(rng.randrange(G.order) for _ in range(4)) for _ in range(samples)]
    for x, y, z, t in quads:
        left = compose_arrows(
            T,
            tensor_arrows(T, identity_arrow(T, x), associator(T, y, z, t)),
            compose_arrows(T, associator(T, x, G.mul(y, z), t),
                           tensor_arrows(T, associator(T, x, y, z), identity_arrow(T, t))),
        )
        right = compose_arrows(T, associator(T, x, y, G.mul(z, t)), associator(T, G.mul(x, y), z, t))
        if left != right:
            bad.append((x, y, z, t))
    return sorted(set(bad))


def triangle_failures(T: GrType) -> list[tuple[int, int]]:
    """Pairs (x, z) where a_{x,1,z} is not the identity (units are strict)."""
    e = T.pi.identity
    return [(x, z) for x in T.pi.elements for z in T.pi.elements if any(T.xi(x, e, z))]


def validate_gr_type(T: GrType) -> Report:
    """Pentagon, triangle, normalization and the cocycle condition, each with its failing tuples."""
    r = Report("Gr-category type")
    r.add("pentagon", pentagon_failures(T))
    r.add("triangle", triangle_failures(T))
    r.add("normalized", T.xi.normalization_failures())
    bad, exhaustive = cocycle_check(T.xi)
    r.add("cocycle", bad, detail={"exhaustive": exhaustive})
    return r
