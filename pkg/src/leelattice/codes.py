"""Linear codes over Z_q and brute-force Lee decoders.

Codewords are enumerated as the points of C + qZ^n inside the box [0, q)^n,
walking the Hermite normal form of that lattice column by column. Every
codeword appears exactly once, even for non-prime q where distinct messages
collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import intmat
from .errors import EnumerationCapError
from .zq import ZqVec, center_scalar, lee_sphere_vectors, lee_sphere_sizes

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class LinearCode:
    """Row space of ``gen`` over Z_q. Rows are kept in standard representation."""

    q: int
    gen: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"modulus must be >= 2, got {self.q}")
        if not self.gen or not self.gen[0]:
            raise ValueError("generator matrix must have at least one row and column")
        n = len(self.gen[0])
        if any(len(r) != n for r in self.gen):
            raise ValueError("ragged generator matrix")
        if len(self.gen) > n:
            raise ValueError(f"k = {len(self.gen)} exceeds n = {n}")
        for r in self.gen:
            for x in r:
                if not 0 <= x < self.q:
                    raise ValueError(f"generator entry {x} outside [0, {self.q})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], q: int) -> "LinearCode":
        """Accepts any integer representatives (e.g. centered ones) and reduces them."""
        return cls(q, tuple(tuple(int(x) % q for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.gen[0])

    @property
    def k(self) -> int:
        return len(self.gen)

    def lifted_gen(self) -> list[list[int]]:
        """Generator rows in the centered representation."""
        return [[center_scalar(x, self.q) for x in r] for r in self.gen]

    @cached_property
    def lattice_hnf(self) -> intmat.HNF:
        """Hermite form of C + qZ^n."""
        q, n = self.q, self.n
        stacked = [list(r) for r in self.gen] + [[q * (i == j) for j in range(n)] for i in range(n)]
        return intmat.hnf(stacked)

    @property
    def size(self) -> int:
        """|C| = q^n / det(C + qZ^n)."""
        return self.q**self.n // self.lattice_hnf.determinant()

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.gen)

    def contains(self, x: ZqVec | Sequence[int]) -> bool:
        return self.lattice_hnf.solve(tuple(x)) is not None


@dataclass(frozen=True)
class ParityCheck:
    q: int
    h: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], q: int) -> "ParityCheck":
        return cls(q, tuple(tuple(int(x) % q for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.h[0])

    def checks(self, code: LinearCode) -> bool:
        """True when every generator row of ``code`` has zero syndrome."""
        return all(not any(syndrome(self, ZqVec(g, self.q))) for g in code.gen)


def codeword_array(code: LinearCode, cap: int = DEFAULT_CAP) -> np.ndarray:
    """All codewords as an (|C|, n) int64 array, in lexicographic order."""
    if code.q >= 2**31:
        raise EnumerationCapError(f"modulus {code.q} too large for array enumeration")
    size = code.size
    if size > cap:
        raise EnumerationCapError(f"|C| = {size} exceeds enumeration cap {cap}")
    h = code.lattice_hnf
    q, n = code.q, code.n
    rows = np.array(h.rows, dtype=np.int64)
    pts = np.zeros((1, n), dtype=np.int64)
    for j in range(n):
        d = int(rows[j, j])
        steps = q // d
        base = np.mod(pts[:, j], d)
        # v_j = base + t*d for t in [0, q/d); coefficient z_j = (v_j - pts_j) / d
        t = np.arange(steps, dtype=np.int64)
        z = (base[:, None] + t[None, :] * d - pts[:, j][:, None]) // d
        pts = np.repeat(pts, steps, axis=0) + z.reshape(-1)[:, None] * rows[j][None, :]
    return pts


def enumerate_codewords(code: LinearCode, cap: int = DEFAULT_CAP) -> Iterator[ZqVec]:
    q = code.q
    for row in codeword_array(code, cap):
        yield ZqVec(tuple(int(x) for x in row), q)


def _lee_weights(arr: np.ndarray, q: int) -> np.ndarray:
    arr = np.mod(arr, q)
    return np.minimum(arr, q - arr).sum(axis=1)


def _centered(arr: np.ndarray, q: int) -> np.ndarray:
    arr = np.mod(arr, q)
    return np.where(arr > q // 2, arr - q, arr)


def _lex_first(arr: np.ndarray) -> int:
    """Row index of the lexicographically smallest row."""
    order = np.lexsort(arr.T[::-1])
    return int(order[0])


def min_lee_distance(code: LinearCode, cap: int = DEFAULT_CAP) -> int:
    arr = codeword_array(code, cap)
    w = _lee_weights(arr, code.q)
    w = w[w > 0]
    if w.size == 0:
        raise ValueError("minimum distance of the zero code is undefined")
    return int(w.min())


def min_hamming_distance(code: LinearCode, cap: int = DEFAULT_CAP) -> int:
    arr = codeword_array(code, cap)
    w = np.count_nonzero(arr, axis=1)
    w = w[w > 0]
    if w.size == 0:
        raise ValueError("minimum distance of the zero code is undefined")
    return int(w.min())


def syndrome(h: ParityCheck, e: ZqVec) -> ZqVec:
    """e H^T over Z_q."""
    if e.q != h.q:
        raise ValueError(f"modulus mismatch: {e.q} != {h.q}")
    if e.n != h.n:
        raise ValueError(f"length mismatch: e has {e.n}, H has {h.n} columns")
    return ZqVec(tuple(sum(a * b for a, b in zip(e, row)) % h.q for row in h.h), h.q)


def solve_leesdp_bruteforce(h: ParityCheck, s: ZqVec, t: int, cap: int = DEFAULT_CAP) -> ZqVec | None:
    """Minimum-Lee-weight e with e H^T = s and weight <= t, or None.

    Candidates are scanned by increasing weight and, within a weight, in
    lexicographic order of their centered representatives, so the first hit
    is the canonical answer.
    """
    q, n = h.q, h.n
    if s.n != len(h.h):
        raise ValueError(f"syndrome length {s.n} != {len(h.h)} parity checks")
    tmax = min(int(t), n * (q // 2))
    if tmax < 0:
        return None
    sizes = lee_sphere_sizes(q, n, tmax)
    if sum(sizes) > cap:
        raise EnumerationCapError(f"{sum(sizes)} candidates exceed enumeration cap {cap}")
    target = s.values
    for w in range(tmax + 1):
        for centered in lee_sphere_vectors(q, n, w):
            e = ZqVec(tuple(x % q for x in centered), q)
            if syndrome(h, e).values == target:
                return e
    return None


def solve_leedp_bruteforce(code: LinearCode, r: ZqVec, t: int | float, cap: int = DEFAULT_CAP) -> ZqVec | None:
    """Codeword closest to r in the Lee metric if within distance t, else None.

    Ties go to the codeword whose centered representative is lexicographically
    smallest.
    """
    if r.q != code.q or r.n != code.n:
        raise ValueError("received vector does not match the code's modulus/length")
    c, w = nearest_codeword(code, r, cap)
    if w > t:
        return None
    return c


def nearest_codeword(code: LinearCode, r: ZqVec, cap: int = DEFAULT_CAP) -> tuple[ZqVec, int]:
    """(closest codeword, its Lee distance to r), lexicographic tie-break."""
    q = code.q
    arr = codeword_array(code, cap)
    w = _lee_weights(np.asarray(r.values, dtype=np.int64)[None, :] - arr, q)
    best = int(w.min())
    cands = arr[w == best]
    i = _lex_first(_centered(cands, q))
    return ZqVec(tuple(int(x) for x in cands[i]), q), best


def format_code(code: LinearCode) -> str:
    lines = [f"{code.q} {code.k} {code.n}"]
    lines += [" ".join(str(x) for x in row) for row in code.gen]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LinearCode:
    """Code file: ``q k n`` then k rows of n integers (standard representation)."""
    tokens = text.split("\n")
    lines = [ln.split() for ln in tokens if ln.strip()]
    if not lines or len(lines[0]) != 3:
        raise ValueError("code file header must be 'q k n'")
    q, k, n = (int(x) for x in lines[0])
    rows = lines[1:]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise ValueError(f"expected {k} rows of {n} integers")
    gen = tuple(tuple(int(x) for x in r) for r in rows)
    return LinearCode(q, gen)
