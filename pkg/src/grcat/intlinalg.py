"""Exact integer linear algebra: Smith normal form with transforms, integer
linear systems, and echelon lattices containing a diagonal sublattice.

Matrices are lists of rows of Python ints (arbitrary precision). Echelon
lattices keep every entry reduced modulo a fixed diagonal, so they use int64
numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    bt = list(zip(*b)) if b else []
    inner = len(b)
    if inner == 0:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


@dataclass
class SmithForm:
    """``U @ A @ V == diag(diagonal)`` padded with zeros to ``A``'s shape.

    ``U`` and ``V`` are unimodular; their inverses are kept as well when
    requested. ``rank`` counts nonzero diagonal entries, all positive and
    forming a divisibility chain.
    """

    rows: int
    cols: int
    diagonal: list[int]
    U: Matrix | None
    Uinv: Matrix | None
    V: Matrix | None
    Vinv: Matrix | None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None, *,
                      track: str = "U V Uinv Vinv") -> SmithForm:
    """Smith normal form over the integers.

    Pivots are the entries of least absolute value in the remaining block;
    quotients round to nearest so intermediate entries stay small.
    ``track`` names the transforms to maintain (any subset of
    ``"U V Uinv Vinv"``).
    """
    s = [[int(x) for x in row] for row in a]
    m = len(s)
    n = len(s[0]) if m else (ncols or 0)
    want = set(track.split())
    U = identity(m) if "U" in want else None
    Uinv = identity(m) if "Uinv" in want else None
    V = identity(n) if "V" in want else None
    Vinv = identity(n) if "Vinv" in want else None

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Uinv is not None:
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
        if Vinv is not None:
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = s[src], s[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]
        if Uinv is not None:
            # Uinv <- Uinv @ R^-1: col_src -= q * col_dst
            for row in Uinv:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in s:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
        if Vinv is not None:
            # Vinv <- C^-1 @ Vinv: row_src -= q * row_dst
            vs, vd = Vinv[src], Vinv[dst]
            for k in range(n):
                if vd[k]:
                    vs[k] -= q * vd[k]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]
        if Uinv is not None:
            for row in Uinv:
                row[i] = -row[i]

    def nearest(x, p):
        # p > 0
        return (2 * x + p) // (2 * p)

    diag: list[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = s[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            if s[t][t] < 0:
                negate_row(t)
            p = s[t][t]
            clean = True
            for i in range(t + 1, m):
                if s[i][t]:
                    q = nearest(s[i][t], p)
                    if q:
                        add_row(i, t, -q)
                    if s[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if s[t][j]:
                    q = nearest(s[t][j], p)
                    if q:
                        add_col(j, t, -q)
                    if s[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row/column t to the pivot
                cand = [(abs(s[i][t]), i, t) for i in range(t + 1, m) if s[i][t]]
                cand += [(abs(s[t][j]), t, j) for j in range(t + 1, n) if s[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, m):
                row = s[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        diag.append(s[t][t])
        t += 1
    return SmithForm(m, n, diag, U, Uinv, V, Vinv)


def invariant_factors_of_relations(relations: Sequence[Sequence[int]], ngens: int) -> list[int]:
    """Invariant factors (>1) of Z^ngens modulo the row span of ``relations``.

    Zeros stand for infinite cyclic factors.
    """
    sf = smith_normal_form(relations, ngens, track="")
    out = [d for d in sf.diagonal if d != 1]
    out += [0] * (ngens - sf.rank)
    return out


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int,
                  sf: SmithForm | None = None) -> list[int] | None:
    """An integer solution x of ``a @ x == b``, or None."""
    if sf is None:
        sf = smith_normal_form(a, ncols, track="U V")
    y = matvec(sf.U, b) if sf.rows else []
    x = [0] * ncols
    for i, v in enumerate(y):
        if i < sf.rank:
            d = sf.diagonal[i]
            if v % d:
                return None
            x[i] = v // d
        elif v:
            return None
    return matvec(sf.V, x) if ncols else []


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of the integer kernel of ``a``, as a list of column vectors."""
    sf = smith_normal_form(a, ncols, track="V")
    return [[sf.V[i][j] for i in range(ncols)] for j in range(sf.rank, ncols)]


class ModLattice:
    """A lattice L with  D Z^n <= L <= Z^n  for a fixed modulus vector D.

    Stored as an upper echelon basis ``rows`` where ``rows[j]`` vanishes before
    position ``j`` and has positive pivot ``pivots[j]`` dividing ``moduli[j]``.
    Reducing a vector against it gives the lexicographically least
    representative of its coset in the box prod [0, D_j).

    With ``tags`` (one per generator, residues mod ``tag_moduli``) every row
    also carries the combination of generators it came from, so membership
    tests can return a witness. The implicit rows of D Z^n carry tag zero.
    """

    def __init__(self, generators: Sequence[Sequence[int]], moduli: Sequence[int],
                 tags: Sequence[Sequence[int]] | None = None, tag_moduli: Sequence[int] | None = None):
        self.moduli = [int(d) for d in moduli]
        n = len(self.moduli)
        mods = np.array(self.moduli, dtype=np.int64)
        tracked = tags is not None
        tmods = np.array(tag_moduli if tracked else [], dtype=np.int64)
        t = len(tmods)
        work = np.array(generators, dtype=np.int64).reshape(-1, n) % mods if n else np.zeros((len(generators), 0), dtype=np.int64)
        wtags = np.array(tags, dtype=np.int64).reshape(-1, t) % tmods if tracked else np.zeros((len(work), 0), dtype=np.int64)
        keep = work.any(axis=1)
        work, wtags = work[keep], wtags[keep]
        rows = np.zeros((n, n), dtype=np.int64)
        rtags = np.zeros((n, t), dtype=np.int64)
        for j in range(n):
            pivot = np.zeros(n, dtype=np.int64)
            pivot[j] = mods[j]
            ptag = np.zeros(t, dtype=np.int64)
            hit = np.flatnonzero(work[:, j]) if len(work) else []
            for i in hit:
                w, wt = work[i].copy(), wtags[i].copy()
                # gcd step between pivot and w on coordinate j
                while w[j]:
                    q = pivot[j] // w[j]
                    pivot, w = w, pivot - q * w
                    ptag, wt = wt, (ptag - q * wt) % tmods if t else wt
                w[j + 1:] %= mods[j + 1:]
                work[i], wtags[i] = w, wt
            if pivot[j] < 0:
                pivot = -pivot
                ptag = (-ptag) % tmods if t else ptag
            pivot[j + 1:] %= mods[j + 1:]
            rows[j], rtags[j] = pivot, ptag
            if len(work):
                alive = work.any(axis=1)
                work, wtags = work[alive], wtags[alive]
        pivots = rows.diagonal().copy()
        # back-reduce so each row is itself the canonical representative above its pivot
        for j in range(n):
            if j:
                q = rows[:j, j] // pivots[j]
                rows[:j] -= np.outer(q, rows[j])
                if t:
                    rtags[:j] = (rtags[:j] - np.outer(q, rtags[j])) % tmods
        self.rows = rows
        self.pivots = [int(p) for p in pivots]
        self._tags = rtags if tracked else None
        self._tmods = tmods

    @property
    def dim(self) -> int:
        return len(self.moduli)

    def reduce_tracked(self, v: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...] | None]:
        """(least representative of v + L, tag of the lattice vector subtracted)."""
        x = np.array([int(a) for a in v], dtype=np.int64) % np.array(self.moduli, dtype=np.int64) if self.moduli else np.zeros(0, dtype=np.int64)
        tag = np.zeros(len(self._tmods), dtype=np.int64)
        for j in range(len(x)):
            q = x[j] // self.pivots[j]
            if q:
                x[j:] -= q * self.rows[j, j:]
                if self._tags is not None:
                    tag = (tag + q * self._tags[j]) % self._tmods
        mods = np.array(self.moduli, dtype=np.int64)
        x %= mods if len(x) else 1
        return tuple(int(a) for a in x), (tuple(int(a) for a in tag) if self._tags is not None else None)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.reduce_tracked(v)[0]

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    @property
    def size_mod_moduli(self) -> int:
        """|L / D Z^n|."""
        out = 1
        for d, p in zip(self.moduli, self.pivots):
            out *= d // p
        return out

    def digits(self, v: Sequence[int]) -> list[int]:
        """For v in L: the unique t with v = sum t_j rows[j] mod D and 0 <= t_j < D_j / pivots[j]."""
        mods = np.array(self.moduli, dtype=np.int64)
        x = np.array([int(a) for a in v], dtype=np.int64) % mods
        out = []
        for j in range(len(x)):
            q, r = divmod(int(x[j]), self.pivots[j])
            if r:
                raise ValueError("vector is not in the lattice")
            out.append(q)
            if q:
                x[j:] = (x[j:] - q * self.rows[j, j:]) % mods[j:]
        return out

    def elements(self):
        """Every element of L / D Z^n as its reduced representative in the box."""
        n = self.dim
        ranges = [range(d // p) for d, p in zip(self.moduli, self.pivots)]
        rows = [[int(a) for a in r] for r in self.rows]

        def rec(j, acc):
            if j == n:
                yield tuple(x % m for x, m in zip(acc, self.moduli))
                return
            row = rows[j]
            for c in ranges[j]:
                yield from rec(j + 1, [a + c * r for a, r in zip(acc, row)] if c else acc)

        yield from rec(0, [0] * n)
