"""Integer lattices under the l1 norm.

Bases are compared through their row-style Hermite normal form. Shortest and
closest vector questions are answered exactly by enumerating lattice points
in an l1 ball, walking the echelon form pivot by pivot. Every coordinate
left of the current pivot is already fixed, which gives the pruning bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from . import intmat
from .codes import LinearCode
from .errors import EnumerationCapError, PromiseViolation
from .zq import IntVec, l1_dist, l1_norm

DEFAULT_NODE_CAP = 5 * 10**6


@dataclass(frozen=True)
class LatticeBasis:
    """k linearly independent integer rows in Z^n."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("basis needs at least one nonempty row")
        n = len(self.rows[0])
        if any(len(r) != n for r in self.rows):
            raise ValueError("ragged basis")
        if self.hnf.rank != len(self.rows):
            raise ValueError("basis rows are linearly dependent")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "LatticeBasis":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def full_rank(self) -> bool:
        return self.k == self.n

    @cached_property
    def hnf(self) -> intmat.HNF:
        return intmat.hnf(self.rows, with_transform=True)

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        return self.hnf.rows

    def canonical_basis(self) -> "LatticeBasis":
        return LatticeBasis(self.hnf.rows)

    def same_lattice(self, other: "LatticeBasis") -> bool:
        return self.canonical() == other.canonical()


def determinant(b: LatticeBasis) -> int:
    if not b.full_rank:
        raise ValueError(f"determinant needs a square basis, got {b.k}x{b.n}")
    return intmat.det(b.rows)


def gram_det(b: LatticeBasis) -> int:
    return intmat.gram_det(b.rows)


adjugate = intmat.adjugate


@dataclass(frozen=True)
class ConstructionA:
    code: LinearCode
    basis: LatticeBasis

    @property
    def q(self) -> int:
        return self.code.q


@dataclass(frozen=True)
class ConstructionAG:
    code: LinearCode
    basis: LatticeBasis


def construction_a(code: LinearCode) -> ConstructionA:
    """Canonical basis of C + qZ^n (HNF of the lifted rows stacked over qI)."""
    return ConstructionA(code, LatticeBasis(code.lattice_hnf.rows))


def construction_ag(code: LinearCode) -> ConstructionAG:
    """Lattice spanned over Z by the centered generator rows themselves."""
    rows = code.lifted_gen()
    if intmat.rank(rows) != len(rows):
        raise ValueError("centered generator rows are linearly dependent over Q")
    return ConstructionAG(code, LatticeBasis.of(rows))


def member(b: LatticeBasis, v: Sequence[int]) -> tuple[bool, IntVec | None]:
    """Exact membership test. The witness z satisfies z * b.rows == v."""
    h = b.hnf
    zh = h.solve(tuple(v))
    if zh is None:
        return False, None
    u = h.transform[: h.rank]
    return True, intmat.vecmat(zh, u)


def _parallel(v: Sequence[int], w: Sequence[int]) -> bool:
    n = len(v)
    return all(v[i] * w[j] == v[j] * w[i] for i in range(n) for j in range(i + 1, n))


@dataclass
class _Search:
    """Shrinking-radius l1 enumeration with lexicographic tie collection."""

    hnf: intmat.HNF
    center: tuple[int, ...]
    radius: int
    accept: Callable[[tuple[int, ...]], bool]
    node_cap: int = DEFAULT_NODE_CAP
    collect_all: bool = False
    nodes: int = 0
    best: int | None = None
    found: list[tuple[int, ...]] = field(default_factory=list)

    def run(self):
        h = self.hnf
        n = h.ncols
        t = self.center
        first = h.pivots[0] if h.rank else n
        acc = sum(abs(t[j]) for j in range(first))
        if acc <= self.radius:
            self._rec(0, [0] * n, acc)
        return self

    def _bound(self):
        return self.radius if self.best is None or self.collect_all else min(self.radius, self.best)

    def _rec(self, i, partial, acc):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise EnumerationCapError(f"lattice enumeration exceeded {self.node_cap} nodes")
        h = self.hnf
        n = h.ncols
        t = self.center
        if i == h.rank:
            v = tuple(partial)
            if self.accept(v):
                self._offer(v, acc)
            return
        row = h.rows[i]
        p = h.pivots[i]
        nxt = h.pivots[i + 1] if i + 1 < h.rank else n
        d = row[p]
        rem = self._bound() - acc
        if rem < 0:
            return
        off = t[p] - partial[p]
        lo = -((-(off - rem)) // d)
        hi = (off + rem) // d
        zs = sorted(range(lo, hi + 1), key=lambda z: (abs(partial[p] + z * d - t[p]), z))
        for z in zs:
            cost = acc
            for j in range(p, nxt):
                cost += abs(partial[j] + z * row[j] - t[j])
            if cost > self._bound():
                continue
            new = partial if z == 0 else [a + z * b for a, b in zip(partial, row)]
            self._rec(i + 1, new, cost)

    def _offer(self, v, dist):
        if self.collect_all:
            self.found.append(v)
            self.best = dist if self.best is None else min(self.best, dist)
        elif self.best is None or dist < self.best:
            self.found = [v]
            self.best = dist
        elif dist == self.best:
            self.found.append(v)


def ball_points(b: LatticeBasis, center: Sequence[int], radius: int, node_cap: int = DEFAULT_NODE_CAP) -> list[IntVec]:
    """All lattice points v with ||v - center||_1 <= radius, sorted."""
    s = _Search(b.hnf, tuple(center), int(radius), lambda v: True, node_cap, collect_all=True).run()
    return sorted(s.found)


def _row_norm_bounds(b: LatticeBasis) -> list[int]:
    """Two a-priori radii: smallest row norm, and second smallest (for lambda2)."""
    out = []
    for rows in (b.rows, b.hnf.rows):
        norms = sorted(l1_norm(r) for r in rows)
        out.append(norms)
    first = min(x[0] for x in out)
    second = min(x[1] for x in out) if b.k >= 2 else None
    return [first, second]


def lambda1_l1(b: LatticeBasis, radius: int | None = None, node_cap: int = DEFAULT_NODE_CAP) -> tuple[int, IntVec]:
    """(lambda_1, lexicographically smallest shortest nonzero vector)."""
    bound = _row_norm_bounds(b)[0]
    radius = bound if radius is None else min(radius, bound)
    zero = (0,) * b.n
    s = _Search(b.hnf, zero, radius, lambda v: any(v), node_cap).run()
    if s.best is None:
        raise EnumerationCapError(f"no nonzero lattice vector within radius {radius}")
    return s.best, min(s.found)


def lambda2_l1(b: LatticeBasis, radius: int | None = None, node_cap: int = DEFAULT_NODE_CAP) -> int:
    """Shortest length among vectors not parallel to the lambda_1 witness."""
    if b.k < 2:
        raise ValueError("lambda_2 needs a lattice of rank >= 2")
    _, w = lambda1_l1(b, node_cap=node_cap)
    bound = _row_norm_bounds(b)[1]
    radius = bound if radius is None else min(radius, bound)
    zero = (0,) * b.n
    s = _Search(b.hnf, zero, radius, lambda v: any(v) and not _parallel(v, w), node_cap).run()
    if s.best is None:
        raise EnumerationCapError(f"no independent lattice vector within radius {radius}")
    return s.best


def _rounded_member(b: LatticeBasis, r: Sequence[int]) -> IntVec:
    """A nearby lattice point by pivot-wise rounding (seeds the CVP radius)."""
    h = b.hnf
    res = list(r)
    v = [0] * b.n
    for row, p in zip(h.rows, h.pivots):
        z = round(Fraction(res[p], row[p]))
        if z:
            res = [a - z * x for a, x in zip(res, row)]
            v = [a + z * x for a, x in zip(v, row)]
    return tuple(v)


def closest_vector_l1_bruteforce(b: LatticeBasis, r: Sequence[int], radius: int | None = None,
                                 node_cap: int = DEFAULT_NODE_CAP) -> tuple[IntVec, int]:
    """Exact l1-closest lattice vector to r (lexicographically smallest on ties)."""
    if len(r) != b.n:
        raise ValueError(f"target length {len(r)} != ambient dimension {b.n}")
    seed = l1_dist(_rounded_member(b, r), r)
    radius = seed if radius is None else min(radius, seed)
    s = _Search(b.hnf, tuple(r), radius, lambda v: True, node_cap).run()
    return min(s.found), s.best


def solve_bdd(b: LatticeBasis, r: Sequence[int], alpha, lam1: int | None = None,
              node_cap: int = DEFAULT_NODE_CAP) -> IntVec:
    """BDD_alpha: returns the closest vector after checking d(r, L) < alpha * lambda_1."""
    alpha = Fraction(alpha)
    if lam1 is None:
        lam1, _ = lambda1_l1(b, node_cap=node_cap)
    v, d = closest_vector_l1_bruteforce(b, r, node_cap=node_cap)
    if not d < alpha * lam1:
        raise PromiseViolation(f"BDD promise violated: d(r, L) = {d} >= alpha * lambda1 = {alpha * lam1}")
    return v


def solve_usvp(b: LatticeBasis, gamma=1, node_cap: int = DEFAULT_NODE_CAP) -> IntVec:
    """uSVP_gamma: a lambda_1 witness after checking lambda_2 > gamma * lambda_1."""
    gamma = Fraction(gamma)
    lam1, w = lambda1_l1(b, node_cap=node_cap)
    if b.k >= 2:
        limit = gamma * lam1
        zero = (0,) * b.n
        s = _Search(b.hnf, zero, int(limit), lambda v: any(v) and not _parallel(v, w), node_cap).run()
        if s.best is not None and s.best <= limit:
            raise PromiseViolation(
                f"uSVP gap violated: lambda2 = {s.best} <= gamma * lambda1 = {limit}")
    return w


def format_basis(b: LatticeBasis) -> str:
    lines = [f"{b.k} {b.n}"] + [" ".join(str(x) for x in r) for r in b.rows]
    return "\n".join(lines) + "\n"


def parse_basis(text: str) -> LatticeBasis:
    """Lattice file: ``k n`` then k rows of n integers."""
    lines = [ln.split() for ln in text.split("\n") if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("lattice file header must be 'k n'")
    k, n = (int(x) for x in lines[0])
    rows = lines[1:]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise ValueError(f"expected {k} rows of {n} integers")
    return LatticeBasis.of(rows)
