"""Functors of type (phi, f) between Gr-category types.

A functor of type (phi, f) from (Pi, A, xi) to (Pi', A', xi') acts by phi on
objects and by f on automorphisms. A monoidal structure is a normalized
2-cochain g over A' (with Pi acting through phi), subject to

    phi(x).g(y,z) + g(x,yz) + f(xi(x,y,z)) = xi'(phi x, phi y, phi z) + g(x,y) + g(xy,z),

that is, dg = phi^* xi' - f_* xi. The right-hand side is the obstruction k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .abelian import AbelianHom, identity_abelian_hom
from .cochains import Cochain, coboundary, cocycle_check
from .cohomology import classes_of, cocycles, solve_coboundary
from .errors import InvalidPair, NotACocycle, NotAdditive, SignatureMismatch
from .groups import GroupHom, identity_hom
from .grtype import GrType
from .modules import PiModule, is_equivariant, pullback_module
from .report import Report


@dataclass(frozen=True)
class FunctorData:
    source: GrType
    target: GrType
    phi: GroupHom
    f: AbelianHom
    g: Cochain | None = None

    def __post_init__(self):
        # regard phi as a map between the types' own groups when the tables agree
        phi = self.phi
        if phi.source.same_table(self.source.pi) and phi.target.same_table(self.target.pi):
            object.__setattr__(self, "phi", GroupHom(self.source.pi, self.target.pi, phi.image))

    @property
    def module(self) -> PiModule:
        """A' with Pi acting through phi: the coefficients of k, g and alpha."""
        return pullback_module(self.phi, self.target.module)

    def with_g(self, g: Cochain | None) -> "FunctorData":
        if g is not None:
            g = g.over(self.module)
        return replace(self, g=g)

    def signature(self):
        return (self.source, self.target, self.phi, self.f)


def validate_pair(phi: GroupHom, f: AbelianHom, source: GrType, target: GrType) -> Report:
    """phi and f are homomorphisms between the right groups and f is equivariant."""
    r = Report("functor pair")
    shape = []
    if not phi.source.same_table(source.pi) or not phi.target.same_table(target.pi):
        shape.append("phi does not map the source group to the target group")
    if f.source != source.carrier or f.target != target.carrier:
        shape.append("f does not map the source carrier to the target carrier")
    r.add("signature", shape)
    if shape:
        return r
    r.add("phi homomorphism", phi.violations())
    bad = []
    for i, (img, d) in enumerate(zip(f.images, f.source.invariant_factors)):
        if any(f.target.scale(d, img)):
            bad.append(i)
    r.add("f additive", bad)
    r.add("equivariance", is_equivariant(f, phi, source.module, target.module))
    return r


def _require_valid(F: FunctorData) -> None:
    rep = validate_pair(F.phi, F.f, F.source, F.target)
    if not rep.ok:
        failed = next(c for c in rep.checks if not c.passed)
        raise InvalidPair(f"invalid functor pair: {failed.name} fails", failed.failures[:1])


def make_functor(source: GrType, target: GrType, phi: GroupHom, f: AbelianHom,
                 g: Cochain | None = None) -> FunctorData:
    """Validated FunctorData; raises InvalidPair."""
    try:
        F = FunctorData(source, target, phi, f)
    except NotAdditive as exc:
        raise InvalidPair(str(exc)) from exc
    _require_valid(F)
    return F.with_g(g)


def obstruction(F: FunctorData) -> Cochain:
    """k = phi^* xi' - f_* xi over A' with the pulled-back action; checked to be a 3-cocycle."""
    _require_valid(F)
    m = F.module
    pulled = F.target.xi.pullback(F.phi).over(m)
    pushed = F.source.xi.pushforward(F.f, PiModule(F.source.pi, m.carrier, m.images))
    k = pulled - pushed.over(m)
    bad, _ = cocycle_check(k)
    if bad or not k.is_normalized():
        raise NotACocycle("obstruction is not a normalized 3-cocycle", bad[:1])
    return k


def check_monoidal(F: FunctorData) -> Report:
    """The skeletal hexagon for every triple, and g(1, y) = g(x, 1) = 0."""
    r = Report("monoidal structure")
    if F.g is None:
        r.add("has g", ["no monoidal structure given"])
        return r
    m = F.module
    g = F.g.over(m)
    A = m.carrier
    P = F.source.pi
    xi, xi2 = F.source.xi, F.target.xi
    phi = F.phi
    bad = []
    for x, y, z in itertools.product(P.elements, repeat=3):
        left = A.add(A.add(m.act(x, g(y, z)), g(x, P.mul(y, z))), F.f(xi(x, y, z)))
        right = A.add(A.add(xi2(phi(x), phi(y), phi(z)), g(x, y)), g(P.mul(x, y), z))
        if left != right:
            bad.append((x, y, z))
    r.add("hexagon", bad)
    r.add("unit", g.normalization_failures())
    return r


def realizable(F: FunctorData) -> Cochain | None:
    """A normalized g with dg = obstruction(F), or None when the class is nonzero."""
    g = solve_coboundary(obstruction(F))
    if g is None:
        return None
    rep = check_monoidal(F.with_g(g))
    if not rep.ok:
        raise AssertionError("realizable produced a g that fails the monoidal check")
    return g


def classify(source: GrType, target: GrType, phi: GroupHom, f: AbelianHom) -> list[FunctorData]:
    """One monoidal functor per congruence class: g0 + z for z over the classes of H^2."""
    F = make_functor(source, target, phi, f)
    g0 = realizable(F)
    if g0 is None:
        return []
    return [F.with_g(g0 + z.over(g0.module)) for z in classes_of(F.module, 2)]


def congruent(F: FunctorData, F2: FunctorData) -> Cochain | None:
    """A normalized 1-cochain alpha with g - g' = d alpha, or None."""
    if F.signature() != F2.signature():
        raise SignatureMismatch("functors differ in source, target, phi or f")
    if F.g is None or F2.g is None:
        raise SignatureMismatch("both functors need a monoidal structure g")
    m = F.module
    diff = F.g.over(m) - F2.g.over(m)
    if not diff.is_normalized():
        return None
    try:
        return solve_coboundary(diff)
    except NotACocycle:
        # g and g' do not have the same coboundary: not both monoidal
        return None


def automorphisms(F: FunctorData) -> list[Cochain]:
    """Monoidal automorphisms of F, as the normalized 1-cocycles over A'."""
    _require_valid(F)
    return cocycles(F.module, 1)


def natural_transformation_failures(F: FunctorData, F2: FunctorData, alpha: Cochain) -> list[tuple[int, int]]:
    """Pairs (x, y) where x.alpha(y) - alpha(xy) + alpha(x) != g(x,y) - g'(x,y)."""
    m = F.module
    diff = F.g.over(m) - F2.g.over(m)
    d = coboundary(alpha.over(m))
    P = F.source.pi
    return [(x, y) for x in P.elements for y in P.elements if d(x, y) != diff(x, y)]


def identity_functor(T: GrType) -> FunctorData:
    return make_functor(T, T, identity_hom(T.pi), identity_abelian_hom(T.carrier))


__all__ = [
    "FunctorData", "validate_pair", "make_functor", "obstruction", "check_monoidal", "realizable",
    "classify", "congruent", "automorphisms", "natural_transformation_failures", "identity_functor",
]
