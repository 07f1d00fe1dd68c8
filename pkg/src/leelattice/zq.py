"""Arithmetic over Z_q: Lee/Hamming weights and the lift/reduce maps to Z^n.

Integer vectors are plain tuples of Python ints (arbitrary precision).
Vectors over Z_q carry their modulus in :class:`ZqVec`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class ZqVec:
    """A vector over Z_q stored in the standard representation {0, ..., q-1}."""

    values: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"modulus must be >= 2, got {self.q}")
        if not self.values:
            raise ValueError("vector must have length >= 1")
        for x in self.values:
            if not 0 <= x < self.q:
                raise ValueError(f"entry {x} outside [0, {self.q})")

    @classmethod
    def of(cls, values: Iterable[int], q: int) -> "ZqVec":
        """Build a vector from arbitrary integers, reducing them mod q."""
        return cls(tuple(int(x) % q for x in values), q)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def _check(self, other: "ZqVec"):
        if other.q != self.q or other.n != self.n:
            raise ValueError("vectors must share modulus and length")

    def __add__(self, other: "ZqVec") -> "ZqVec":
        self._check(other)
        return ZqVec(tuple((a + b) % self.q for a, b in zip(self, other)), self.q)

    def __sub__(self, other: "ZqVec") -> "ZqVec":
        self._check(other)
        return ZqVec(tuple((a - b) % self.q for a, b in zip(self, other)), self.q)

    def __neg__(self) -> "ZqVec":
        return ZqVec(tuple((-a) % self.q for a in self), self.q)

    def scale(self, c: int) -> "ZqVec":
        return ZqVec(tuple((c * a) % self.q for a in self), self.q)

    def is_zero(self) -> bool:
        return not any(self.values)


def zeros(n: int, q: int) -> ZqVec:
    return ZqVec((0,) * n, q)


def lee_weight_scalar(x: int, q: int) -> int:
    x %= q
    return min(x, q - x)


def lee_weight(x: ZqVec) -> int:
    """Sum of coordinate Lee weights min{x_i, q - x_i}."""
    q = x.q
    return sum(min(v, q - v) for v in x.values)


def lee_distance(x: ZqVec, y: ZqVec) -> int:
    return lee_weight(x - y)


def hamming_weight(x: ZqVec) -> int:
    return sum(1 for v in x.values if v)


def center_scalar(x: int, q: int) -> int:
    # q even: q/2 stays positive, so the range is {-(q/2 - 1), ..., q/2}
    x %= q
    return x - q if x > q // 2 else x


def center_lift(x: ZqVec) -> IntVec:
    """Representatives in {-floor((q-1)/2), ..., floor(q/2)}."""
    return tuple(center_scalar(v, x.q) for v in x.values)


def reduce_mod_q(v: Sequence[int], q: int) -> ZqVec:
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    return ZqVec(tuple(int(a) % q for a in v), q)


def centered_range(q: int) -> range:
    return range(-((q - 1) // 2), q // 2 + 1)


def l1_norm(v: Sequence[int]) -> int:
    return sum(abs(a) for a in v)


def l1_dist(v: Sequence[int], w: Sequence[int]) -> int:
    if len(v) != len(w):
        raise ValueError(f"length mismatch: {len(v)} != {len(w)}")
    return sum(abs(a - b) for a, b in zip(v, w))


def vsub(v: Sequence[int], w: Sequence[int]) -> IntVec:
    if len(v) != len(w):
        raise ValueError(f"length mismatch: {len(v)} != {len(w)}")
    return tuple(a - b for a, b in zip(v, w))


def vadd(v: Sequence[int], w: Sequence[int]) -> IntVec:
    if len(v) != len(w):
        raise ValueError(f"length mismatch: {len(v)} != {len(w)}")
    return tuple(a + b for a, b in zip(v, w))


def lee_sphere_sizes(q: int, n: int, wmax: int) -> list[int]:
    """Number of vectors in Z_q^n of each Lee weight 0..wmax (exact DP)."""
    half = q // 2
    # residues per nonzero Lee weight: two, except q/2 for even q
    mult = [1] + [1 if (q % 2 == 0 and ell == half) else 2 for ell in range(1, half + 1)]
    counts = [1] + [0] * wmax
    for _ in range(n):
        nxt = [0] * (wmax + 1)
        for w, c in enumerate(counts):
            if c:
                for ell in range(min(half, wmax - w) + 1):
                    nxt[w + ell] += c * mult[ell]
        counts = nxt
    return counts


def lee_sphere_vectors(q: int, n: int, w: int) -> Iterable[IntVec]:
    """Centered vectors of Lee weight exactly w, in lexicographic order."""
    half = q // 2
    values = list(centered_range(q))
    if w < 0 or w > n * half:
        return

    def rec(i, rem, prefix):
        if i == n:
            if rem == 0:
                yield tuple(prefix)
            return
        slack = (n - i - 1) * half
        for x in values:
            a = abs(x)
            if a <= rem and rem - a <= slack:
                prefix.append(x)
                yield from rec(i + 1, rem - a, prefix)
                prefix.pop()

    yield from rec(0, w, [])
