"""Cohomology of a finite group with coefficients in a finite module.

Two independent routes compute H^n:

* ``snf`` works on normalized coordinates. Cocycle generators come from
  imposing the rows of d_n one at a time modulo the invariant factors; the
  coboundary lattice is the echelonised span of the columns of d_{n-1}.
  The quotient Z^n / B^n gets a small presentation on the echelon pivots,
  which Smith normal form diagonalises.
* ``brute_force`` enumerates every normalized cochain, evaluates the
  coboundary formula directly, and reads the invariant factors off the
  numbers of classes killed by each prime power.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
import sympy

from .cochains import Cochain, _coboundary_plan, coboundary, normalized_positions
from .errors import BruteForceTooLarge, DegreeTooHigh, GroupTooLarge, NotACocycle
from .intlinalg import ModLattice, SmithForm, smith_normal_form, solve_integer
from .modules import PiModule

DEFAULT_BOUND = 2 ** 20
MATRIX_LIMIT = 2 ** 26  # entries of a dense coboundary matrix
LATTICE_LIMIT = 1500  # normalized coordinates of an echelon lattice


@dataclass(frozen=True)
class CohomologyGroup:
    degree: int
    module: PiModule
    invariant_factors: tuple[int, ...]
    representatives: tuple[Cochain, ...]
    method: str = field(default="snf", compare=False)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return f"H^{self.degree} = 0"
        return f"H^{self.degree} = " + " + ".join(f"Z/{d}" for d in self.invariant_factors)


# ---------------------------------------------------------------------------
# matrices on normalized coordinates

def _moduli(module: PiModule, n: int) -> list[int]:
    count = len(normalized_positions(module.group, n))
    return list(module.carrier.invariant_factors) * count


def _lattice_moduli(module: PiModule, n: int) -> list[int]:
    mods = _moduli(module, n)
    if len(mods) > LATTICE_LIMIT:
        raise GroupTooLarge(f"degree-{n} cochains over |Pi| = {module.group.order} have {len(mods)} "
                            f"coordinates, more than {LATTICE_LIMIT}")
    return mods


@lru_cache(maxsize=256)
def coboundary_matrix(module: PiModule, n: int) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of d_n on normalized coordinates (rows: degree n+1)."""
    if n > 3:
        raise DegreeTooHigh(f"no coboundary matrix for degree {n}")
    p, k = module.group.order, module.carrier.rank
    if (p ** (2 * n + 1)) * k * k > MATRIX_LIMIT:
        raise GroupTooLarge(f"coboundary matrix in degree {n} over |Pi| = {p} is too large")
    first, tail, terms = _coboundary_plan(module.group, n)
    rows_dense = p ** (n + 1)
    cols_dense = p ** n
    full = np.zeros((rows_dense, k, cols_dense, k), dtype=np.int64)
    t = np.arange(rows_dense)
    mats = module.matrices[first]  # (rows, k, k)
    for i in range(k):
        for j in range(k):
            np.add.at(full, (t, i, tail, j), mats[:, i, j])
    for sign, idx in terms:
        for i in range(k):
            np.add.at(full, (t, i, idx, i), sign)
    rpos = normalized_positions(module.group, n + 1)
    cpos = normalized_positions(module.group, n)
    sub = full[rpos][:, :, cpos, :].reshape(len(rpos) * k, len(cpos) * k)
    return tuple(tuple(int(v) for v in row) for row in sub)


@lru_cache(maxsize=256)
def coboundary_lattice(module: PiModule, n: int) -> ModLattice:
    """B^n (plus the modulus lattice) on normalized coordinates.

    Rows are tagged with the (n-1)-cochain they are the coboundary of.
    """
    mods = _lattice_moduli(module, n)
    if n == 0:
        return ModLattice([], mods)
    m = coboundary_matrix(module, n - 1)
    prev = _moduli(module, n - 1)
    cols = [list(c) for c in zip(*m)] if m and m[0] else []
    tags = [[int(i == j) for j in range(len(prev))] for i in range(len(cols))]
    return ModLattice(cols, mods, tags, prev)


def solve_coboundary(z: Cochain) -> Cochain | None:
    """A normalized (n-1)-cochain alpha with d alpha = z, or None if z is not a coboundary."""
    n = z.degree
    if not 1 <= n <= 3:
        raise DegreeTooHigh(f"solve_coboundary needs degree 1..3, got {n}")
    if not coboundary(z).is_zero():
        raise NotACocycle(f"degree-{n} cochain is not a cocycle")
    module = z.module
    if not z.is_normalized():
        return None
    if module.carrier.rank == 0 or z.is_zero():
        return Cochain.zero(module, n - 1)
    rest, tag = coboundary_lattice(module, n).reduce_tracked(z.to_vector())
    if any(rest):
        return None
    alpha = Cochain.from_vector(module, n - 1, tag)
    if coboundary(alpha) != z:
        raise AssertionError("solve_coboundary produced an invalid witness")
    return alpha


def cohomologous(c1: Cochain, c2: Cochain) -> Cochain | None:
    """alpha with d alpha = c1 - c2, or None."""
    return solve_coboundary(c1 - c2)


def canonical_representative(z: Cochain) -> Cochain:
    """Lexicographically least cochain in z + B^n."""
    lat = coboundary_lattice(z.module, z.degree)
    return Cochain.from_vector(z.module, z.degree, lat.reduce(z.to_vector()))


# ---------------------------------------------------------------------------
# SNF route

def _cocycle_generators(module: PiModule, n: int) -> np.ndarray:
    """Generators (rows, reduced mod D_n) of Z^n, imposing one coordinate of d_n = 0 at a time.

    Each constraint is a character of the current subgroup; Euclid on the
    generators leaves one generator with a nonzero value, which is then
    multiplied into the kernel.
    """
    mods = np.array(_moduli(module, n), dtype=np.int64)
    target = _moduli(module, n + 1)
    m = np.array(coboundary_matrix(module, n), dtype=np.int64)
    gens = np.diag(np.ones(len(mods), dtype=np.int64))
    for j, d in enumerate(target):
        c = (gens @ m[j]) % d
        nz = [int(i) for i in np.flatnonzero(c)]
        if not nz:
            continue
        piv = nz[0]
        for i in nz[1:]:
            while c[i]:
                q = c[piv] // c[i]
                gens[piv] = (gens[piv] - q * gens[i]) % mods
                c[piv] -= q * c[i]
                gens[[piv, i]] = gens[[i, piv]]
                c[[piv, i]] = c[[i, piv]]
        g = math.gcd(int(c[piv]), d)
        gens[piv] = (gens[piv] * (d // g)) % mods
    return gens[gens.any(axis=1)]


@lru_cache(maxsize=256)
def cocycle_lattice(module: PiModule, n: int) -> ModLattice:
    """Z^n (plus the modulus lattice) as an echelon lattice on normalized coordinates."""
    if n > 3:
        raise DegreeTooHigh("cocycles are computed in degrees 0..3")
    mods = _lattice_moduli(module, n)
    return ModLattice(_cocycle_generators(module, n).tolist(), mods)


@dataclass
class _Quotient:
    zlat: ModLattice
    gens: list[int]  # echelon positions j with pivot < modulus: generators of Z/Lambda
    sf: SmithForm  # SNF of the relation matrix on those generators
    keep: list[int]  # diagonal positions with entry > 1


@lru_cache(maxsize=256)
def _quotient(module: PiModule, n: int) -> _Quotient:
    """H^n = (Z/Lambda)/(B/Lambda) from a polycyclic presentation of Z/Lambda.

    Every element of Z/Lambda has unique echelon digits; relative orders and
    the digits of their powers give the relations of Z/Lambda, and the digits
    of the echelon rows of B add the coboundary relations.
    """
    zlat = cocycle_lattice(module, n)
    blat = coboundary_lattice(module, n)
    mods = zlat.moduli
    gens = [j for j, (p, d) in enumerate(zip(zlat.pivots, mods)) if p < d]
    where = {j: i for i, j in enumerate(gens)}

    def project(digits):
        return [digits[j] for j in gens]

    rels = []
    for j in gens:
        m = mods[j] // zlat.pivots[j]
        r = project(zlat.digits([m * int(x) for x in zlat.rows[j]]))
        r[where[j]] -= m
        rels.append(r)
    for row, p, d in zip(blat.rows, blat.pivots, mods):
        if p < d:
            rels.append(project(zlat.digits(row.tolist())))
    sf = smith_normal_form(rels, len(gens), track="V Vinv")
    if sf.rank != len(gens):
        raise AssertionError("cohomology quotient is not finite")
    keep = [j for j, d in enumerate(sf.diagonal) if d != 1]
    return _Quotient(zlat, gens, sf, keep)


def class_coordinates(z: Cochain) -> tuple[int, ...]:
    """Coordinates of the class of cocycle ``z`` w.r.t. the generators of H^n."""
    if not coboundary(z).is_zero():
        raise NotACocycle("not a cocycle")
    if z.module.carrier.rank == 0 or (z.degree > 0 and z.module.group.order == 1):
        return ()
    q = _quotient(z.module, z.degree)
    digits = q.zlat.digits(z.to_vector())
    t = [digits[j] for j in q.gens]
    y = [sum(ti * q.sf.V[i][j] for i, ti in enumerate(t)) for j in range(len(t))]
    return tuple(y[j] % q.sf.diagonal[j] for j in q.keep)


def _snf_group(module: PiModule, n: int) -> CohomologyGroup:
    if module.carrier.rank == 0 or (n > 0 and module.group.order == 1):
        return CohomologyGroup(n, module, (), (), "snf")
    q = _quotient(module, n)
    factors = tuple(q.sf.diagonal[j] for j in q.keep)
    mods = np.array(q.zlat.moduli, dtype=np.int64)
    reps = []
    for j in q.keep:
        x = np.zeros(len(mods), dtype=np.int64)
        for i, c in enumerate(q.sf.Vinv[j]):
            if c:
                x = (x + (c % int(mods.max())) * q.zlat.rows[q.gens[i]]) % mods
        reps.append(canonical_representative(Cochain.from_vector(module, n, x.tolist())))
    return CohomologyGroup(n, module, factors, tuple(reps), "snf")


# ---------------------------------------------------------------------------
# brute-force route

def _brute_tables(module: PiModule):
    A = module.carrier
    els = A.elements()
    size = len(els)
    add = np.array([[A.index(A.add(x, y)) for y in els] for x in els], dtype=np.int64)
    neg = np.array([A.index(A.neg(x)) for x in els], dtype=np.int64)
    act = np.array([[A.index(module.act(g, x)) for x in els] for g in module.group.elements], dtype=np.int64)
    return size, add, neg, act


def _all_cochains(module: PiModule, n: int, size: int) -> np.ndarray:
    """Every normalized n-cochain as a dense (count, |Pi|^n) array of element codes."""
    p = module.group.order
    pos = normalized_positions(module.group, n)
    count = size ** len(pos)
    codes = np.arange(count, dtype=np.int64)
    out = np.zeros((count, p ** n), dtype=np.int64)
    for slot in range(len(pos) - 1, -1, -1):
        out[:, pos[slot]] = codes % size
        codes //= size
    return out


def _brute_coboundary(module: PiModule, n: int, dense: np.ndarray, tables) -> np.ndarray:
    """Evaluate the coboundary formula on a batch, tuple by tuple."""
    size, add, neg, act = tables
    G = module.group
    p = G.order
    out = np.zeros((dense.shape[0], p ** (n + 1)), dtype=np.int64)
    for t, args in enumerate(itertools.product(range(p), repeat=n + 1)):
        def col(tup):
            i = 0
            for a in tup:
                i = i * p + a
            return dense[:, i]

        acc = act[args[0]][col(args[1:])]
        for i in range(1, n + 1):
            merged = args[: i - 1] + (G.table[args[i - 1]][args[i]],) + args[i + 1:]
            v = col(merged)
            acc = add[acc, neg[v] if i % 2 else v]
        v = col(args[:n])
        acc = add[acc, neg[v] if (n + 1) % 2 else v]
        out[:, t] = acc
    return out


def _encode(dense: np.ndarray, pos: np.ndarray, size: int) -> np.ndarray:
    codes = np.zeros(dense.shape[0], dtype=np.int64)
    for slot in pos:
        codes = codes * size + dense[:, slot]
    return codes


def _factor_counts(torsion: dict[int, int], h_order: int) -> tuple[int, ...]:
    """Invariant factors from |{h : m h = 0}| for every prime power m dividing |H|."""
    exps_by_prime = {}
    for p, e in sympy.factorint(h_order).items():
        # ranks[j-1] = number of cyclic p-factors of exponent >= j
        ranks, prev = [], 1
        for j in range(1, e + 1):
            cnt = torsion[p ** j]
            r = 0
            while prev * p ** (r + 1) <= cnt:
                r += 1
            ranks.append(r)
            prev = cnt
        exps = []
        for j in range(len(ranks), 0, -1):
            exps += [j] * (ranks[j - 1] - (ranks[j] if j < len(ranks) else 0))
        exps_by_prime[p] = exps  # descending
    width = max((len(v) for v in exps_by_prime.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in exps_by_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return tuple(sorted(factors))


@dataclass
class _BruteClasses:
    reps: list[Cochain]  # lexicographically least cocycle of each class, ascending
    table: list[list[int]]  # class addition


@lru_cache(maxsize=64)
def _brute_classes(module: PiModule, n: int, bound: int) -> _BruteClasses:
    A = module.carrier
    size = A.order
    pos = normalized_positions(module.group, n)
    nn = len(pos)
    prev = len(normalized_positions(module.group, n - 1)) if n else 0
    if size ** nn > bound or (n and size ** prev > bound):
        raise BruteForceTooLarge(f"|C^{n}| = {size}^{nn} exceeds the brute-force bound {bound}")
    tables = _brute_tables(module)
    add = tables[1]
    cn = _all_cochains(module, n, size)
    z = cn[(_brute_coboundary(module, n, cn, tables) == 0).all(axis=1)]
    if n:
        cprev = _all_cochains(module, n - 1, size)
        b = _brute_coboundary(module, n - 1, cprev, tables)
        _, first = np.unique(_encode(b, pos, size), return_index=True)
        b = b[first]
    else:
        b = np.zeros((1, 1), dtype=np.int64)
    # z is in ascending code order, so the first unseen cocycle of a class is its least member
    z_codes = _encode(z, pos, size)
    class_of = np.full(size ** nn, -1, dtype=np.int64)
    reps = []
    for row, code in zip(z, z_codes):
        if class_of[code] >= 0:
            continue
        class_of[_encode(add[row[None, :], b], pos, size)] = len(reps)
        reps.append(row)
    table = [class_of[_encode(add[r[None, :], np.array(reps)], pos, size)].tolist() for r in reps]
    els = A.elements()
    cochains = []
    for row in reps:
        coords = []
        for slot in pos:
            coords.extend(els[int(row[slot])])
        cochains.append(Cochain.from_vector(module, n, coords))
    return _BruteClasses(cochains, table)


def _brute_group(module: PiModule, n: int, bound: int) -> CohomologyGroup:
    data = _brute_classes(module, n, bound)
    h = len(data.reps)
    if h == 1:
        return CohomologyGroup(n, module, (), (), "brute_force")
    table = data.table

    def multiple(c, m):
        acc = 0
        for _ in range(m):
            acc = table[acc][c]
        return acc

    torsion = {}
    for p, e in sympy.factorint(h).items():
        for j in range(1, e + 1):
            torsion[p ** j] = sum(1 for c in range(h) if multiple(c, p ** j) == 0)
    factors = _factor_counts(torsion, h)

    def order(c):
        acc, m = c, 1
        while acc:
            acc, m = table[acc][c], m + 1
        return m

    def span(gens):
        seen, frontier = {0}, [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    # greedy: largest factor first, least class of that order that is independent
    chosen: list[int] = []
    size = 1
    for d in sorted(factors, reverse=True):
        for c in range(h):
            if order(c) == d and len(span(chosen + [c])) == size * d:
                chosen.append(c)
                size *= d
                break
        else:
            raise AssertionError("greedy generator search failed")
    chosen.reverse()
    return CohomologyGroup(n, module, factors, tuple(data.reps[c] for c in chosen), "brute_force")


def brute_force_classes(module: PiModule, n: int, bound: int = DEFAULT_BOUND) -> list[Cochain]:
    """Lexicographically least cocycle of every class, by exhaustive enumeration."""
    return _brute_classes(module, n, bound).reps


# ---------------------------------------------------------------------------
# public entry points

def cohomology_group(module: PiModule, n: int, method: str = "snf", bound: int = DEFAULT_BOUND) -> CohomologyGroup:
    """H^n(Pi, A) as invariant factors plus one representative cocycle per factor."""
    if not 0 <= n <= 3:
        raise DegreeTooHigh(f"cohomology is computed in degrees 0..3, got {n}")
    if method == "snf":
        return _snf_group(module, n)
    if method == "brute_force":
        return _brute_group(module, n, bound)
    raise ValueError(f"unknown method {method!r}")


def classes_of(module: PiModule, n: int) -> list[Cochain]:
    """One cocycle per cohomology class, each the lexicographically least of its class.

    Ordered by class coordinates, so the zero class comes first.
    """
    h = cohomology_group(module, n)
    if not h.invariant_factors:
        return [Cochain.zero(module, n)]
    out = []
    for coeffs in itertools.product(*(range(d) for d in h.invariant_factors)):
        z = Cochain.zero(module, n)
        for c, rep in zip(coeffs, h.representatives):
            if c:
                z = z + c * rep
        out.append(canonical_representative(z))
    return out


def cocycles(module: PiModule, n: int) -> list[Cochain]:
    """Every normalized n-cocycle (n <= 3), in lexicographic order of coordinates."""
    if module.carrier.rank == 0 or (n > 0 and module.group.order == 1):
        return [Cochain.zero(module, n)]
    lat = cocycle_lattice(module, n)
    return sorted((Cochain.from_vector(module, n, v) for v in lat.elements()), key=lambda c: c.to_vector())
