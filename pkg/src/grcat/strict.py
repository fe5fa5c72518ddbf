"""Finite strict Gr-categories, the category A_G of a group, and reduction to a type.

Arrows carry their endpoints, so tensoring can read the targets it needs.
In A_G an arrow c: alpha -> beta is a group element with alpha = mu_c o beta;
composing c: alpha -> beta with d: beta -> gamma gives c*d (the arrow applied
first is written first), and c (x) d = c * alpha'(d) for c: alpha -> alpha'.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .abelian import decompose_abelian
from .automorphisms import aut_data, center_data
from .cochains import Cochain, cocycle_check
from .errors import (CentralityViolation, GroupTooLarge, NonInvertibleObject, NotACocycle, NotAGroupoid,
                     UnitEndomorphismsNotAbelian)
from .groups import FiniteGroup, GroupHom
from .grtype import GrType
from .modules import PiModule, make_module
from .report import Report

EXHAUSTIVE_LIMIT = 20000
SAMPLES = 3000
MAX_TYPE_ORDER = 64


@dataclass(frozen=True, order=True)
class Arrow:
    src: Hashable
    tgt: Hashable
    label: Hashable


@dataclass(eq=False)
class StrictGrCat:
    """A finite strict monoidal groupoid given by explicit tables or rules.

    ``compose(g, f)`` is g after f. ``arrows_from(X)`` lists every arrow out
    of X in label order.
    """

    name: str
    objects: tuple
    arrows_from: Callable[[Hashable], tuple]
    compose: Callable[[Arrow, Arrow], Arrow]
    identity: Callable[[Hashable], Arrow]
    inverse: Callable[[Arrow], Arrow]
    tensor_obj: Callable[[Hashable, Hashable], Hashable]
    tensor_arr: Callable[[Arrow, Arrow], Arrow]
    unit: Hashable
    info: dict = field(default_factory=dict)

    def hom(self, x, y) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows_from(x) if a.tgt == y)

    def arrows(self):
        for x in self.objects:
            yield from self.arrows_from(x)

    @property
    def arrow_count(self) -> int:
        return sum(len(self.arrows_from(x)) for x in self.objects)

    def listing(self, limit: int = 50) -> dict:
        """Diagnostic dump: objects, nonempty hom-sets, object tensor table."""
        objs = list(self.objects)[:limit]
        homs = {}
        for x in objs:
            for a in self.arrows_from(x):
                homs.setdefault(f"{x} -> {a.tgt}", []).append(str(a.label))
        return {
            "name": self.name,
            "objects": [str(x) for x in objs],
            "object_count": len(self.objects),
            "arrow_count": self.arrow_count,
            "hom": homs,
            "tensor": [[str(self.tensor_obj(x, y)) for y in objs] for x in objs],
            "unit": str(self.unit),
        }


# validation --------------------------------------------------------------------

def _triples(items: Sequence, rng: random.Random, k: int = 3):
    if len(items) ** k <= EXHAUSTIVE_LIMIT:
        return itertools.product(items, repeat=k)
    return (tuple(rng.choice(items) for _ in range(k)) for _ in range(SAMPLES))


def validate_strict(C: StrictGrCat, seed: int = 0) -> Report:
    """Check every strict Gr-category invariant.

    Object-level and arrow-level identities are checked exhaustively when the
    number of tuples is at most EXHAUSTIVE_LIMIT, otherwise on SAMPLES seeded
    random tuples.
    """
    rng = random.Random(seed)
    r = Report(f"strict Gr-category {C.name}")
    objs = list(C.objects)
    arrows = list(C.arrows())
    ids = {x: C.identity(x) for x in objs}
    I = C.unit

    bad = []
    for a in arrows:
        inv = C.inverse(a)
        if inv.src != a.tgt or inv.tgt != a.src or C.compose(inv, a) != ids[a.src] or C.compose(a, inv) != ids[a.tgt]:
            bad.append(a)
    r.add("groupoid", bad)

    bad = [a for a in arrows if C.compose(a, ids[a.src]) != a or C.compose(ids[a.tgt], a) != a]
    r.add("identity arrows", bad)

    bad = []
    degree = max(len(C.arrows_from(x)) for x in objs)
    if len(arrows) * degree ** 2 <= EXHAUSTIVE_LIMIT:
        chains = [(a, b, c) for a in arrows for b in C.arrows_from(a.tgt) for c in C.arrows_from(b.tgt)]
    else:
        chains = []
        for _ in range(SAMPLES):
            a = rng.choice(arrows)
            b = rng.choice(C.arrows_from(a.tgt))
            chains.append((a, b, rng.choice(C.arrows_from(b.tgt))))
    for a, b, c in chains:
        if C.compose(c, C.compose(b, a)) != C.compose(C.compose(c, b), a):
            bad.append((a.label, b.label, c.label))
    r.add("composition associative", bad)

    bad = []
    for x, y, z in _triples(objs, rng):
        if C.tensor_obj(C.tensor_obj(x, y), z) != C.tensor_obj(x, C.tensor_obj(y, z)):
            bad.append((x, y, z))
    r.add("tensor associative on objects", bad)
    r.add("tensor unital on objects", [x for x in objs if C.tensor_obj(I, x) != x or C.tensor_obj(x, I) != x])

    # arrows: one non-identity arrow per triple suffices once tensor is a bifunctor
    bad = []
    if len(objs) ** 2 * len(arrows) <= EXHAUSTIVE_LIMIT:
        cases = [(a, x, y) for a in arrows for x in objs for y in objs]
    else:
        cases = [(rng.choice(arrows), rng.choice(objs), rng.choice(objs)) for _ in range(SAMPLES)]
    for a, x, y in cases:
        ix, iy = ids[x], ids[y]
        for p, q, s in ((a, ix, iy), (ix, a, iy), (ix, iy, a)):
            if C.tensor_arr(C.tensor_arr(p, q), s) != C.tensor_arr(p, C.tensor_arr(q, s)):
                bad.append((p.label, q.label, s.label))
    r.add("tensor associative on arrows", bad)
    iu = ids[I]
    r.add("tensor unital on arrows", [a for a in arrows if C.tensor_arr(iu, a) != a or C.tensor_arr(a, iu) != a])

    # bifunctoriality: identities, each one-sided tensor preserves composition, interchange
    bad = []
    for x in objs:
        for y in (objs if len(objs) ** 2 <= EXHAUSTIVE_LIMIT else [rng.choice(objs) for _ in range(8)]):
            if C.tensor_arr(ids[x], ids[y]) != ids[C.tensor_obj(x, y)]:
                bad.append((x, y))
    if len(arrows) ** 2 <= EXHAUSTIVE_LIMIT:
        quads = [(f, g) for f in arrows for g in arrows]
    else:
        quads = [(rng.choice(arrows), rng.choice(arrows)) for _ in range(SAMPLES)]
    for f, g in quads:
        fg = C.tensor_arr(f, g)
        if fg.src != C.tensor_obj(f.src, g.src) or fg.tgt != C.tensor_obj(f.tgt, g.tgt):
            bad.append((f.label, g.label))
            continue
        via1 = C.compose(C.tensor_arr(ids[f.tgt], g), C.tensor_arr(f, ids[g.src]))
        via2 = C.compose(C.tensor_arr(f, ids[g.tgt]), C.tensor_arr(ids[f.src], g))
        if fg != via1 or fg != via2:
            bad.append((f.label, g.label))
        f2 = rng.choice(C.arrows_from(f.tgt))
        g2 = rng.choice(C.arrows_from(g.tgt))
        if C.tensor_arr(C.compose(f2, f), C.compose(g2, g)) != C.compose(C.tensor_arr(f2, g2), fg):
            bad.append((f.label, g.label, f2.label, g2.label))
    r.add("tensor functorial", bad)

    bad = []
    for x in objs:
        if not any(C.tensor_obj(x, y) == I for y in objs):
            bad.append(x)
    r.add("objects invertible", bad)
    return r


# A_G ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def aut_gr_category(G: FiniteGroup) -> StrictGrCat:
    """The strict Gr-category A_G: objects Aut(G), arrows group elements."""
    d = aut_data(G)
    T = d.aut_group.table
    inv_aut = d.aut_group.inverses

    @lru_cache(maxsize=None)
    def arrows_from(a):
        # c: a -> b with a = mu_c o b, i.e. b = mu_{c^-1} o a
        return tuple(sorted((Arrow(a, T[d.mu[G.inv(c)]][a], c) for c in G.elements),
                            key=lambda x: x.label))

    def compose(g: Arrow, f: Arrow) -> Arrow:
        if f.tgt != g.src:
            raise ValueError("arrows do not compose")
        return Arrow(f.src, g.tgt, G.mul(f.label, g.label))

    def tensor_arr(f: Arrow, g: Arrow) -> Arrow:
        image = d.auts[f.tgt][g.label]
        return Arrow(T[f.src][g.src], T[f.tgt][g.tgt], G.mul(f.label, image))

    return StrictGrCat(
        name=f"A_G (|G|={G.order})",
        objects=tuple(range(len(d.auts))),
        arrows_from=arrows_from,
        compose=compose,
        identity=lambda a: Arrow(a, a, G.identity),
        inverse=lambda f: Arrow(f.tgt, f.src, G.inv(f.label)),
        tensor_obj=lambda a, b: T[a][b],
        tensor_arr=tensor_arr,
        unit=0,
        info={"group": G, "aut_inverse": inv_aut},
    )


# reduction ---------------------------------------------------------------------

@dataclass
class Stick:
    """Representatives X_s per isomorphism class and chosen arrows i_X: X_s -> X."""

    classes: list[list]  # objects per class, class 0 is the unit's
    representatives: list
    class_of: dict
    choose: Callable[[Hashable], Arrow]

    def arrow(self, x) -> Arrow:
        return self.choose(x)


@dataclass
class Reduction:
    gr_type: GrType
    stick: Stick
    pi0: FiniteGroup
    pi1_elements: list  # arrow of Hom(I, I) for each carrier element, in carrier order
    pi1_coords: dict  # arrow -> carrier vector


def _iso_classes(C: StrictGrCat) -> tuple[list[list], dict]:
    parent = {x: x for x in C.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in C.objects:
        for a in C.arrows_from(x):
            rx, ry = find(x), find(a.tgt)
            if rx != ry:
                parent[ry] = rx
    groups: dict = {}
    for x in C.objects:
        groups.setdefault(find(x), []).append(x)
    classes = sorted(groups.values(), key=lambda c: list(C.objects).index(c[0]))
    unit_class = next(c for c in classes if C.unit in c)
    classes.remove(unit_class)
    classes.insert(0, unit_class)
    class_of = {x: i for i, c in enumerate(classes) for x in c}
    return classes, class_of


def reduce_strict(C: StrictGrCat, rng: random.Random | None = None) -> Reduction:
    """Reduce a finite strict Gr-category to its type (Pi_0, Pi_1, xi) through a stick.

    The stick uses the first object of each class (the unit for its class)
    and the first arrow of each hom-set in label order; ``rng`` picks both at
    random instead (the unit stays fixed).
    """
    classes, class_of = _iso_classes(C)
    pos = {x: i for i, x in enumerate(C.objects)}
    reps = []
    for i, cls in enumerate(classes):
        if i == 0:
            reps.append(C.unit)
        else:
            reps.append(rng.choice(cls) if rng else min(cls, key=pos.__getitem__))

    chosen: dict = {}

    def choose(x) -> Arrow:
        if x not in chosen:
            s = reps[class_of[x]]
            if x == s:
                chosen[x] = C.identity(x)
            else:
                homs = C.hom(s, x)
                chosen[x] = rng.choice(homs) if rng else homs[0]
        return chosen[x]

    stick = Stick(classes, reps, class_of, choose)

    # Pi_0
    n = len(classes)
    if n > MAX_TYPE_ORDER:
        raise GroupTooLarge(f"|Pi_0| = {n} exceeds {MAX_TYPE_ORDER}; xi would have {n ** 3} values")
    table = []
    for s in range(n):
        row = [class_of[C.tensor_obj(reps[s], reps[t])] for t in range(n)]
        table.append(row)
    for s in range(n):
        if 0 not in table[s]:
            raise NonInvertibleObject(f"object {reps[s]} has no tensor inverse", reps[s])
    pi0 = FiniteGroup(tuple(f"[{reps[s]}]" for s in range(n)), tuple(map(tuple, table)), 0)

    # Pi_1 = Aut(I)
    I = C.unit
    ends = list(C.hom(I, I))
    for a in ends:
        inv = C.inverse(a)
        if C.compose(inv, a) != C.identity(I):
            raise NotAGroupoid(f"arrow {a.label} is not invertible", a)
    for a in ends:
        for b in ends:
            if C.compose(a, b) != C.compose(b, a):
                raise UnitEndomorphismsNotAbelian(f"Aut(I) is not abelian at ({a.label}, {b.label})", (a, b))
    dec = decompose_abelian(ends, C.compose, C.identity(I))
    A = dec.group
    to_vec, from_vec = dec.to_vector, dec.from_vector

    # gamma_X(u) = u (x) id_X identifies Aut(I) with Aut(X)
    gamma_inv: dict = {}

    def gamma_inverse(a: Arrow):
        x = a.src
        if x not in gamma_inv:
            gamma_inv[x] = {C.tensor_arr(u, C.identity(x)): to_vec[u] for u in ends}
        try:
            return gamma_inv[x][a]
        except KeyError:
            raise NotAGroupoid(f"automorphism {a.label} of {x} is not of the form u (x) id") from None

    images = []
    for s in range(n):
        X = reps[s]
        images.append(tuple(gamma_inverse(C.tensor_arr(C.identity(X), from_vec[A.basis(j)]))
                            for j in range(A.rank)))
    module = make_module(pi0, A, images)

    # H_{s,t}: X_s (x) X_t -> X_{st} is the inverse of the stick arrow
    def h(s, t) -> Arrow:
        return C.inverse(choose(C.tensor_obj(reps[s], reps[t])))

    def ident(s) -> Arrow:
        return C.identity(reps[s])

    def xi_value(r, s, t):
        rs, st = table[r][s], table[s][t]
        a = C.inverse(h(r, st))
        a = C.compose(C.inverse(C.tensor_arr(ident(r), h(s, t))), a)
        a = C.compose(C.tensor_arr(h(r, s), ident(t)), a)
        a = C.compose(h(rs, t), a)
        return gamma_inverse(a)

    xi = Cochain.from_function(module, 3, xi_value)
    if not xi.is_normalized() or cocycle_check(xi)[0]:
        raise NotACocycle("reduced associativity constraint is not a normalized 3-cocycle")
    return Reduction(GrType(module, xi), stick, pi0, [from_vec[v] for v in A.elements()], dict(to_vec))


# reduced type of a group, directly -----------------------------------------------

@lru_cache(maxsize=64)
def outer_module(G: FiniteGroup) -> PiModule:
    """Z(G) as an Out(G)-module: [alpha] . c = H(alpha)(c) for the normalized section H."""
    d = aut_data(G)
    z = center_data(G)
    A = z.group
    images = []
    for o in d.out_group.elements:
        aut = d.auts[d.section[o]]
        images.append(tuple(z.coords[aut[z.embed[A.basis(j)]]] for j in range(A.rank)))
    return make_module(d.out_group, A, images)


class OuterCocycle:
    """xi'(r, s, t) for Out(G), evaluated on demand.

    h_{s,t} is the least g with H_s o H_t = mu_g o H_{st} (forced to the
    identity when s or t is), and xi'(r,s,t) = R * L^-1 with
    L = H_r(h_{s,t}) * h_{r,st} and R = h_{r,s} * h_{rs,t}.
    """

    def __init__(self, G: FiniteGroup):
        self.G = G
        self.data = aut_data(G)
        self.center = center_data(G)
        self._h: dict = {}

    def h(self, s: int, t: int) -> int:
        key = (s, t)
        if key not in self._h:
            d, G = self.data, self.G
            e = d.out_group.identity
            if s == e or t == e:
                self._h[key] = G.identity
            else:
                T = d.aut_group.table
                inv = d.aut_group.inverses
                st = d.out_group.mul(s, t)
                target = T[T[d.section[s]][d.section[t]]][inv[d.section[st]]]
                pre = d.mu_preimage(target)
                if not pre:
                    raise AssertionError("section products left their Inn-coset")
                self._h[key] = G.least(pre)
        return self._h[key]

    def value(self, r: int, s: int, t: int) -> tuple[int, ...]:
        G, d, out = self.G, self.data, self.data.out_group
        hr = d.auts[d.section[r]]
        left = G.mul(hr[self.h(s, t)], self.h(r, out.mul(s, t)))
        right = G.mul(self.h(r, s), self.h(out.mul(r, s), t))
        z = G.mul(right, G.inv(left))
        if z not in self.center.coords:
            raise CentralityViolation(f"xi'({r},{s},{t}) = {G.names[z]} is not central", (r, s, t))
        return self.center.coords[z]

    def pullback(self, psi: GroupHom) -> Cochain:
        """psi^* xi' over the pullback of the Out(G)-module along psi, computed lazily."""
        from .modules import pullback_module

        m = pullback_module(psi, outer_module(self.G))
        return Cochain.from_function(m, 3, lambda x, y, z: self.value(psi(x), psi(y), psi(z)))


def reduced_type_of_group(G: FiniteGroup) -> GrType:
    """(Out(G), Z(G), xi') computed from the section of Out(G) and the elements h_{s,t}."""
    oc = OuterCocycle(G)
    m = outer_module(G)
    if m.group.order > MAX_TYPE_ORDER:
        raise GroupTooLarge(f"|Out(G)| = {m.group.order} exceeds {MAX_TYPE_ORDER}")
    xi = Cochain.from_function(m, 3, oc.value)
    return GrType(m, xi).check()
