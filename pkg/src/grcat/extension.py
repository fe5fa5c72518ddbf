"""Abstract kernels, factor sets and their obstructions, crossed products, and
the strict Gr-category attached to a kernel.

An abstract kernel (Pi, G, psi) has psi: Pi -> Out(G). Lifting psi through the
section of Out(G) gives phi: Pi -> Aut(G), and f(x, y) in G is chosen with
phi(x) phi(y) = mu_{f(x,y)} phi(xy). Products in G are evaluated in the
written order, and the obstruction k is defined by

    phi(x)[f(y,z)] * f(x,yz) = k(x,y,z) * f(x,y) * f(xy,z).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .abelian import AbelianHom, FiniteAbelianGroup
from .automorphisms import aut_data, center_data
from .cochains import Cochain, cocycle_check
from .cohomology import cohomologous, solve_coboundary
from .errors import (CentralityViolation, GroupTooLarge, NotACocycle, NotAHomomorphism, ObstructionNonzero,
                     SourceMismatch)
from .groups import FiniteGroup, GroupHom, iter_homomorphisms, make_group
from .grtype import GrType
from .modules import PiModule, pullback_module
from .report import Report
from .strict import Arrow, OuterCocycle, StrictGrCat, outer_module, reduce_strict, validate_strict


@dataclass(frozen=True)
class AbstractKernel:
    pi: FiniteGroup
    g: FiniteGroup
    psi: GroupHom
    name: str = field(default="", compare=False)

    def __post_init__(self):
        out = aut_data(self.g).out_group
        if not self.psi.source.same_table(self.pi) or not self.psi.target.same_table(out):
            raise SourceMismatch("psi must map Pi to Out(G)")
        object.__setattr__(self, "psi", GroupHom(self.pi, out, self.psi.image))
        bad = self.psi.violations(limit=1)
        if bad:
            raise NotAHomomorphism(f"psi: {bad[0]}")

    @property
    def module(self) -> PiModule:
        """Z(G) with x acting through any lift of psi(x)."""
        return pullback_module(self.psi, outer_module(self.g))


def make_kernel(pi: FiniteGroup, g: FiniteGroup, psi_images, name: str = "") -> AbstractKernel:
    return AbstractKernel(pi, g, GroupHom(pi, aut_data(g).out_group, tuple(int(v) for v in psi_images)), name)


@dataclass(frozen=True)
class FactorSet:
    """phi[x] is an index into Aut(G); f[x][y] an element of G."""

    phi: tuple[int, ...]
    f: tuple[tuple[int, ...], ...]

    def failures(self, K: AbstractKernel) -> list[tuple]:
        d = aut_data(K.g)
        T = d.aut_group.table
        P, G = K.pi, K.g
        e = P.identity
        bad = []
        if self.phi[e] != 0:
            bad.append(("phi(1)",))
        for x in P.elements:
            if d.projection[self.phi[x]] != K.psi(x):
                bad.append(("lift", x))
            for y in P.elements:
                if (x == e or y == e) and self.f[x][y] != G.identity:
                    bad.append(("normalized", x, y))
                if T[self.phi[x]][self.phi[y]] != T[d.mu[self.f[x][y]]][self.phi[P.mul(x, y)]]:
                    bad.append(("factor", x, y))
        return bad


def factor_set(K: AbstractKernel, rng: random.Random | None = None) -> FactorSet:
    """phi = section o psi and f(x, y) the least (identity first) valid element.

    With ``rng`` both the lift of each psi(x) (x != 1) and f are chosen at random.
    """
    d = aut_data(K.g)
    T, inv = d.aut_group.table, d.aut_group.inverses
    P, G = K.pi, K.g
    e = P.identity
    phi = []
    for x in P.elements:
        if rng is not None and x != e:
            coset = [a for a in range(len(d.auts)) if d.projection[a] == K.psi(x)]
            phi.append(rng.choice(coset))
        else:
            phi.append(d.section[K.psi(x)])
    f = []
    for x in P.elements:
        row = []
        for y in P.elements:
            if x == e or y == e:
                row.append(G.identity)
                continue
            target = T[T[phi[x]][phi[y]]][inv[phi[P.mul(x, y)]]]
            pre = d.mu_preimage(target)
            row.append(rng.choice(pre) if rng is not None else G.least(pre))
        f.append(tuple(row))
    fs = FactorSet(tuple(phi), tuple(f))
    bad = fs.failures(K)
    if bad:
        raise AssertionError(f"factor set invariant fails at {bad[0]}")
    return fs


def kernel_obstruction(K: AbstractKernel, fs: FactorSet | None = None) -> Cochain:
    """k = phi(x)[f(y,z)] * f(x,yz) * (f(x,y) * f(xy,z))^-1, a 3-cocycle over Z(G)."""
    fs = fs or factor_set(K)
    d, z = aut_data(K.g), center_data(K.g)
    P, G = K.pi, K.g
    m = K.module

    def value(x, y, w):
        left = G.mul(d.auts[fs.phi[x]][fs.f[y][w]], fs.f[x][P.mul(y, w)])
        right = G.mul(fs.f[x][y], fs.f[P.mul(x, y)][w])
        k = G.mul(left, G.inv(right))
        if k not in z.coords:
            raise CentralityViolation(f"k({x},{y},{w}) = {G.names[k]} is not central", (x, y, w))
        return z.coords[k]

    k = Cochain.from_function(m, 3, value)
    bad, _ = cocycle_check(k)
    if bad or not k.is_normalized():
        raise NotACocycle("kernel obstruction is not a normalized 3-cocycle", bad[:1])
    return k


def adjusted_factor_set(K: AbstractKernel, fs: FactorSet | None = None) -> FactorSet:
    """Replace f by f * (-alpha) with d alpha = k, so the obstruction vanishes identically."""
    fs = fs or factor_set(K)
    k = kernel_obstruction(K, fs)
    alpha = solve_coboundary(k)
    if alpha is None:
        raise ObstructionNonzero("the kernel obstruction class is nonzero; no extension exists")
    z = center_data(K.g)
    A, G = z.group, K.g
    f = tuple(tuple(G.mul(fs.f[x][y], z.embed[A.neg(alpha(x, y))]) for y in K.pi.elements)
              for x in K.pi.elements)
    out = FactorSet(fs.phi, f)
    if not kernel_obstruction(K, out).is_zero():
        raise AssertionError("adjusted factor set still has an obstruction")
    return out


def build_extension(K: AbstractKernel, fs: FactorSet | None = None) -> FiniteGroup:
    """The crossed product on G x Pi: (a,x)(b,y) = (a * phi(x)(b) * f(x,y), xy).

    Element (a, x) has index a * |Pi| + x.
    """
    fs = adjusted_factor_set(K, fs)
    d = aut_data(K.g)
    P, G = K.pi, K.g
    p = P.order
    names = [f"({G.names[a]},{P.names[x]})" for a in G.elements for x in P.elements]
    rows = []
    for a in G.elements:
        for x in P.elements:
            act = d.auts[fs.phi[x]]
            row = []
            for b in G.elements:
                for y in P.elements:
                    c = G.prod(a, act[b], fs.f[x][y])
                    row.append(c * p + P.mul(x, y))
            rows.append(row)
    return make_group(names, rows)


def extension_maps(K: AbstractKernel, E: FiniteGroup) -> tuple[GroupHom, GroupHom]:
    """The inclusion G -> E, a -> (a, 1), and the projection E -> Pi."""
    p = K.pi.order
    incl = GroupHom(K.g, E, tuple(a * p + K.pi.identity for a in K.g.elements))
    proj = GroupHom(E, K.pi, tuple(i % p for i in E.elements))
    return incl, proj


# the strict Gr-category of a kernel -------------------------------------------

def strictify(K: AbstractKernel) -> StrictGrCat:
    """Objects (x, alpha) with alpha in the coset psi(x); arrows (x, c) as in A_G."""
    d = aut_data(K.g)
    P, G = K.pi, K.g
    T = d.aut_group.table
    cosets = {}
    for a in range(len(d.auts)):
        cosets.setdefault(d.projection[a], []).append(a)
    objects = tuple((x, a) for x in P.elements for a in cosets.get(K.psi(x), []))

    arrows: dict = {}

    def arrows_from(X):
        if X not in arrows:
            x, a = X
            arrows[X] = tuple(sorted((Arrow(X, (x, T[d.mu[G.inv(c)]][a]), (x, c)) for c in G.elements),
                                     key=lambda r: r.label))
        return arrows[X]

    def compose(g: Arrow, f: Arrow) -> Arrow:
        if f.tgt != g.src:
            raise ValueError("arrows do not compose")
        return Arrow(f.src, g.tgt, (f.label[0], G.mul(f.label[1], g.label[1])))

    def tensor_obj(X, Y):
        return (P.mul(X[0], Y[0]), T[X[1]][Y[1]])

    def tensor_arr(f: Arrow, g: Arrow) -> Arrow:
        c = G.mul(f.label[1], d.auts[f.tgt[1]][g.label[1]])
        return Arrow(tensor_obj(f.src, g.src), tensor_obj(f.tgt, g.tgt), (P.mul(f.label[0], g.label[0]), c))

    return StrictGrCat(
        name=f"strictification{' of ' + K.name if K.name else ''}",
        objects=objects,
        arrows_from=arrows_from,
        compose=compose,
        identity=lambda X: Arrow(X, X, (X[0], G.identity)),
        inverse=lambda f: Arrow(f.tgt, f.src, (f.label[0], G.inv(f.label[1]))),
        tensor_obj=tensor_obj,
        tensor_arr=tensor_arr,
        unit=(P.identity, 0),
        info={"kernel": K},
    )


def verify_strictification(K: AbstractKernel, *, seed: int = 0) -> Report:
    """Reduce the strict category of K and compare it with (Pi, Z(G), psi^* xi').

    Three checks form the group "strictification": Pi_0 is Pi through
    x -> [(x, phi x)], Pi_1 is Z(G) equivariantly through z -> (1, z), and the
    transported xi differs from psi^* xi' by a coboundary (witness in data).
    A fourth check relates the kernel obstruction to psi^* xi'.
    """
    r = Report("strictification report")
    C = strictify(K)
    r.add("strict Gr-category", [c.name for c in validate_strict(C, seed=seed).checks if not c.passed])
    red = reduce_strict(C)
    T = red.gr_type
    P, G = K.pi, K.g
    z = center_data(G)
    A = z.group
    m = K.module
    pulled = OuterCocycle(G).pullback(K.psi).over(m)

    # Pi_0
    lam = tuple(red.stick.class_of[next(X for X in C.objects if X[0] == x)] for x in P.elements)
    bad = []
    if len(set(lam)) != P.order or T.pi.order != P.order:
        bad.append("not a bijection")
    bad += [(x, y) for x in P.elements for y in P.elements if lam[P.mul(x, y)] != T.pi.mul(lam[x], lam[y])]
    r.add("Pi_0 isomorphic to Pi", bad, group="strictification", detail={"lambda": list(lam)})
    if bad:
        r.add("Pi_1 isomorphic to Z(G)", ["skipped"], group="strictification")
        r.add("xi cohomologous to psi^* xi'", ["skipped"], group="strictification")
        return r

    # Pi_1: z -> arrow (1, z) of the unit object
    I = C.unit
    to_T = {}
    for v in A.elements():
        arrow = Arrow(I, I, (P.identity, z.embed[v]))
        to_T[v] = red.pi1_coords.get(arrow)
    bad = []
    if None in to_T.values() or len(set(to_T.values())) != A.order or T.carrier.order != A.order:
        bad.append("not a bijection")
    else:
        bad += [(u, v) for u in A.elements() for v in A.elements()
                if to_T[A.add(u, v)] != T.carrier.add(to_T[u], to_T[v])]
        bad += [(x, v) for x in P.elements for v in A.elements()
                if to_T[m.act(x, v)] != T.module.act(lam[x], to_T[v])]
    r.add("Pi_1 isomorphic to Z(G)", bad, group="strictification")
    if bad:
        r.add("xi cohomologous to psi^* xi'", ["skipped"], group="strictification")
        return r

    from_T = {w: v for v, w in to_T.items()}
    transported = Cochain.from_function(m, 3, lambda x, y, w: from_T[T.xi(lam[x], lam[y], lam[w])])
    witness = cohomologous(transported, pulled)
    r.add("xi cohomologous to psi^* xi'", [] if witness is not None else ["no coboundary witness"],
          group="strictification", detail={"witness": _cochain_entries(witness)})

    k = kernel_obstruction(K)
    sign_corrected = cohomologous(k, -pulled)
    literal = cohomologous(k, pulled)
    r.add("kernel obstruction matches psi^* xi'", [] if sign_corrected is not None else ["k + psi^* xi' not a coboundary"],
          detail={"k + psi^* xi' witness": _cochain_entries(sign_corrected),
                  "literal k ~ psi^* xi'": literal is not None})
    return r


def _cochain_entries(c: Cochain | None):
    if c is None:
        return None
    return {",".join(map(str, args)): list(v) for args, v in c.items()}


# catalog search ------------------------------------------------------------------

@dataclass(frozen=True)
class Realization:
    kernel: AbstractKernel
    theta: AbelianHom  # carrier of the type -> Z(G), equivariant
    witness: Cochain  # d witness = theta_* xi - psi^* xi'


@dataclass
class SearchResult:
    realizations: list[Realization]
    skipped: list[tuple[str, str]]  # (group name, reason)

    @property
    def kernels(self) -> list[AbstractKernel]:
        return [r.kernel for r in self.realizations]


def _abelian_automorphisms(A: FiniteAbelianGroup) -> list[AbelianHom]:
    if A.rank == 0:
        return [AbelianHom(A, A, ())]
    els = A.elements()
    data = aut_data(A.as_group)
    basis = [A.index(A.basis(j)) for j in range(A.rank)]
    return [AbelianHom(A, A, tuple(els[aut[b]] for b in basis)) for aut in data.auts]


def kernel_search(T: GrType, catalog) -> SearchResult:
    """Kernels (Pi, G, psi) over the catalog whose strictification has the type T.

    A kernel qualifies when some isomorphism theta: A -> Z(G) is equivariant
    for psi and theta_* xi is cohomologous to psi^* xi'. ``catalog`` holds
    groups or (name, group) pairs. Groups too large for the automorphism
    search are listed in ``skipped``.
    """
    found, skipped = [], []
    try:
        thetas = _abelian_automorphisms(T.carrier)
    except GroupTooLarge as exc:
        return SearchResult([], [("*", f"Aut(A) too large: {exc}")])
    for item in catalog:
        name, G = item if isinstance(item, tuple) else ("", item)
        try:
            z = center_data(G)
            if z.group != T.carrier:
                continue
            out = aut_data(G).out_group
            oc = OuterCocycle(G)
        except GroupTooLarge as exc:
            skipped.append((name, str(exc)))
            continue
        for image in iter_homomorphisms(T.pi, out):
            K = AbstractKernel(T.pi, G, GroupHom(T.pi, out, tuple(image)), name)
            m = K.module
            good = [th for th in thetas
                    if all(th(T.module.act(x, a)) == m.act(x, th(a))
                           for x in T.pi.elements for a in T.carrier.elements())]
            if not good:
                continue
            pulled = None
            for th in good:
                pushed = T.xi.pushforward(th, PiModule(T.pi, m.carrier, m.images)).over(m)
                if pulled is None:
                    pulled = oc.pullback(K.psi).over(m)
                w = cohomologous(pushed, pulled)
                if w is not None:
                    found.append(Realization(K, th, w))
                    break
    found.sort(key=lambda r: (r.kernel.g.order, r.kernel.name, r.kernel.psi.image))
    return SearchResult(found, skipped)


__all__ = [
    "AbstractKernel", "make_kernel", "FactorSet", "factor_set", "kernel_obstruction", "adjusted_factor_set",
    "build_extension", "extension_maps", "strictify", "verify_strictification", "Realization",
    "SearchResult", "kernel_search",
]
