"""Cochains Pi^n -> A and the bar-resolution coboundary.

Values are held densely over all |Pi|^n tuples (mixed-radix index, first
argument most significant) so that non-normalized input can still be
represented and reported; the normalized coordinates used by the linear
algebra are the non-identity tuples in the same order, components innermost.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from .abelian import AbelianHom, Vector
from .errors import DegreeTooHigh, SourceMismatch
from .groups import FiniteGroup, GroupHom
from .modules import PiModule, pullback_module

MAX_DEGREE = 4
DENSE_LIMIT = 2 ** 20


def tuple_index(args: Sequence[int], order: int) -> int:
    i = 0
    for a in args:
        i = i * order + a
    return i


@lru_cache(maxsize=128)
def _digits(order: int, n: int) -> np.ndarray:
    """digits[i, t] = i-th argument of the t-th tuple."""
    if n == 0:
        return np.zeros((0, 1), dtype=np.int64)
    grid = np.indices((order,) * n).reshape(n, -1)
    return grid.astype(np.int64)


@lru_cache(maxsize=128)
def normalized_positions(group: FiniteGroup, n: int) -> np.ndarray:
    """Dense indices of the tuples with no identity argument, in lexicographic order."""
    d = _digits(group.order, n)
    if n == 0:
        return np.zeros(1, dtype=np.int64)
    mask = (d != group.identity).all(axis=0)
    return np.flatnonzero(mask)


def _flatten(digits: Sequence[np.ndarray], order: int) -> np.ndarray:
    idx = np.zeros_like(digits[0]) if len(digits) else np.zeros(1, dtype=np.int64)
    for d in digits:
        idx = idx * order + d
    return idx


@lru_cache(maxsize=64)
def _coboundary_plan(group: FiniteGroup, n: int):
    """Index arrays for every term of the degree-n coboundary formula."""
    p = group.order
    d = _digits(p, n + 1)
    rows = [d[i] for i in range(n + 1)]
    t = group.array
    first_arg = rows[0]
    terms = []  # (sign, index array)
    tail = _flatten(rows[1:], p) if n else np.zeros(p ** (n + 1), dtype=np.int64)
    for i in range(1, n + 1):
        merged = rows[: i - 1] + [t[rows[i - 1], rows[i]]] + rows[i + 1:]
        terms.append(((-1) ** i, _flatten(merged, p)))
    last = _flatten(rows[:n], p) if n else np.zeros(p ** (n + 1), dtype=np.int64)
    terms.append(((-1) ** (n + 1), last))
    return first_arg, tail, terms


class Cochain:
    """A map Pi^degree -> A over a fixed module; immutable."""

    __slots__ = ("module", "degree", "values", "_hash")

    def __init__(self, module: PiModule, degree: int, values):
        if not 0 <= degree <= MAX_DEGREE:
            raise DegreeTooHigh(f"cochain degree {degree} outside 0..{MAX_DEGREE}")
        p, k = module.group.order, module.carrier.rank
        arr = np.array(values, dtype=np.int64).reshape(p ** degree, k)
        mods = np.array(module.carrier.invariant_factors, dtype=np.int64)
        if k:
            arr = arr % mods
        arr.setflags(write=False)
        self.module = module
        self.degree = degree
        self.values = arr
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, module: PiModule, degree: int) -> "Cochain":
        p, k = module.group.order, module.carrier.rank
        return cls(module, degree, np.zeros((p ** degree, k), dtype=np.int64))

    @classmethod
    def from_function(cls, module: PiModule, degree: int, fn: Callable[..., Sequence[int]]) -> "Cochain":
        p, k = module.group.order, module.carrier.rank
        vals = np.zeros((p ** degree, k), dtype=np.int64)
        for i, args in enumerate(itertools.product(range(p), repeat=degree)):
            vals[i] = module.carrier.normalize(fn(*args))
        return cls(module, degree, vals)

    @classmethod
    def from_dict(cls, module: PiModule, degree: int, entries: Mapping[tuple, Sequence[int]]) -> "Cochain":
        p, k = module.group.order, module.carrier.rank
        vals = np.zeros((p ** degree, k), dtype=np.int64)
        for args, v in entries.items():
            args = tuple(args)
            if len(args) != degree or any(not 0 <= a < p for a in args):
                raise ValueError(f"bad argument tuple {args} for degree {degree}")
            vals[tuple_index(args, p)] = module.carrier.normalize(v)
        return cls(module, degree, vals)

    @classmethod
    def from_vector(cls, module: PiModule, degree: int, coords: Sequence[int]) -> "Cochain":
        """Inverse of :meth:`to_vector`: normalized coordinates -> cochain."""
        p, k = module.group.order, module.carrier.rank
        pos = normalized_positions(module.group, degree)
        if len(coords) != len(pos) * k:
            raise ValueError(f"expected {len(pos) * k} coordinates, got {len(coords)}")
        ds = module.carrier.invariant_factors
        reduced = [int(c) % ds[i % k] for i, c in enumerate(coords)]
        vals = np.zeros((p ** degree, k), dtype=np.int64)
        if reduced:
            vals[pos] = np.array(reduced, dtype=np.int64).reshape(len(pos), k)
        return cls(module, degree, vals)

    # access -------------------------------------------------------------
    def __call__(self, *args: int) -> Vector:
        return tuple(int(v) for v in self.values[tuple_index(args, self.module.group.order)])

    def to_vector(self) -> tuple[int, ...]:
        pos = normalized_positions(self.module.group, self.degree)
        return tuple(int(v) for v in self.values[pos].reshape(-1))

    def items(self) -> Iterator[tuple[tuple[int, ...], Vector]]:
        """Nonzero entries as (argument tuple, value)."""
        p = self.module.group.order
        for i in np.flatnonzero(self.values.any(axis=1)) if self.module.carrier.rank else []:
            args = tuple(int(a) for a in np.unravel_index(int(i), (p,) * self.degree)) if self.degree else ()
            yield args, tuple(int(v) for v in self.values[i])

    def normalization_failures(self) -> list[tuple[int, ...]]:
        e = self.module.group.identity
        return [args for args, _ in self.items() if e in args]

    def is_normalized(self) -> bool:
        return not self.normalization_failures()

    def is_zero(self) -> bool:
        return not self.values.any()

    # arithmetic ----------------------------------------------------------
    def _check(self, other: "Cochain"):
        if not isinstance(other, Cochain):
            return NotImplemented
        if other.degree != self.degree or other.module != self.module:
            raise SourceMismatch("cochains live over different modules or degrees")

    def __add__(self, other):
        self._check(other)
        return Cochain(self.module, self.degree, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return Cochain(self.module, self.degree, self.values - other.values)

    def __neg__(self):
        return Cochain(self.module, self.degree, -self.values)

    def __rmul__(self, n: int):
        return Cochain(self.module, self.degree, int(n) * self.values)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and self.module == other.module
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.module, self.degree, self.values.tobytes()))
        return self._hash

    def __repr__(self):
        shown = ", ".join(f"{a}: {v}" for a, v in list(self.items())[:6])
        more = " ..." if sum(1 for _ in self.items()) > 6 else ""
        return f"Cochain(degree={self.degree}, {{{shown}{more}}})"

    # functoriality -------------------------------------------------------
    def pushforward(self, f: AbelianHom, target: PiModule) -> "Cochain":
        """(f_* c)(args) = f(c(args)); ``target`` must share the source group."""
        if f.source != self.module.carrier or f.target != target.carrier:
            raise SourceMismatch("homomorphism does not match the carriers")
        if target.group != self.module.group:
            raise SourceMismatch("target module is over a different group")
        k2 = target.carrier.rank
        if k2 == 0:
            return Cochain.zero(target, self.degree)
        mat = np.array(f.matrix, dtype=np.int64).reshape(k2, self.module.carrier.rank)
        return Cochain(target, self.degree, self.values @ mat.T)

    def pullback(self, phi: GroupHom) -> "Cochain":
        """(phi^* c)(x_1..x_n) = c(phi x_1, ..., phi x_n) over the pulled-back module."""
        if phi.target != self.module.group:
            raise SourceMismatch("homomorphism target is not the cochain's group")
        m = pullback_module(phi, self.module)
        p, q = phi.source.order, phi.target.order
        img = np.array(phi.image, dtype=np.int64)
        d = _digits(p, self.degree)
        idx = _flatten([img[d[i]] for i in range(self.degree)], q) if self.degree else np.zeros(1, dtype=np.int64)
        return Cochain(m, self.degree, self.values[idx])

    def over(self, module: PiModule) -> "Cochain":
        """The same values regarded over another module with the same group and carrier."""
        if not module.group.same_table(self.module.group) or module.carrier != self.module.carrier:
            raise SourceMismatch("module has a different group or carrier")
        return Cochain(module, self.degree, self.values)


def coboundary(c: Cochain) -> Cochain:
    """(dc)(g_1..g_{n+1}) = g_1.c(g_2..) + sum_i (-1)^i c(..g_i g_{i+1}..) + (-1)^{n+1} c(g_1..g_n)."""
    n = c.degree
    if n > 3:
        raise DegreeTooHigh(f"coboundary of a degree-{n} cochain is not supported")
    m = c.module
    if m.carrier.rank == 0:
        return Cochain.zero(m, n + 1)
    first, tail, terms = _coboundary_plan(m.group, n)
    vals = c.values
    acted = np.einsum("tij,tj->ti", m.matrices[first], vals[tail])
    out = acted
    for sign, idx in terms:
        out = out + sign * vals[idx]
    return Cochain(m, n + 1, out)


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


def coboundary_at(c: Cochain, args: Sequence[int]) -> Vector:
    """(dc)(args) from the bar formula, for a single tuple."""
    m, G = c.module, c.module.group
    n = c.degree
    A = m.carrier
    acc = m.act(args[0], c(*args[1:]))
    for i in range(1, n + 1):
        merged = tuple(args[: i - 1]) + (G.mul(args[i - 1], args[i]),) + tuple(args[i + 1:])
        v = c(*merged)
        acc = A.add(acc, A.neg(v) if i % 2 else v)
    v = c(*args[:n])
    return A.add(acc, A.neg(v) if (n + 1) % 2 else v)


def cocycle_check(c: Cochain, *, limit: int = DENSE_LIMIT, samples: int = 20000,
                  seed: int = 0) -> tuple[list[tuple[int, ...]], bool]:
    """(failing tuples, exhaustive?) for the cocycle condition.

    Exhaustive through the dense coboundary when |Pi|^(n+1) <= limit;
    otherwise the formula is evaluated on ``samples`` seeded random tuples.
    """
    p = c.module.group.order
    if p ** (c.degree + 1) <= limit:
        return cocycle_failures(c), True
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        args = tuple(rng.randrange(p) for _ in range(c.degree + 1))
        if any(coboundary_at(c, args)):
            bad.append(args)
    return sorted(set(bad)), False


def cocycle_failures(c: Cochain) -> list[tuple[int, ...]]:
    """Argument tuples where the coboundary is nonzero."""
    return [args for args, _ in coboundary(c).items()]
