"""A desk-scale Lee-metric McEliece scheme and a lattice message-recovery attack.

Keys hide a random code behind a signed coordinate permutation, which
preserves Lee weight for every modulus. Decoding is brute force, so keygen
insists on unique decoding (2w < min{q, d_L}).
"""

from __future__ import annotations

import itertools
import json
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import intmat
from .codes import LinearCode, min_lee_distance, nearest_codeword
from .errors import DecodingError, HypothesisError, InfeasibleError
from .lattices import construction_a
from .reductions import BddInstance, LeedpInstance, bdd_to_usvp_embedding, decoding_radius, leedp_to_bdd
from .zq import ZqVec, center_lift, lee_sphere_sizes, lee_weight, reduce_mod_q


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator; ``stream`` gives independent per-worker streams."""
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), stream]))


def _randbelow(rng: np.random.Generator, n: int) -> int:
    """Uniform integer in [0, n) for arbitrarily large n (rejection sampling)."""
    if n <= 0:
        raise ValueError("empty range")
    bits = n.bit_length()
    nbytes = (bits + 7) // 8
    mask = (1 << bits) - 1
    while True:
        x = int.from_bytes(rng.bytes(nbytes), "little") & mask
        if x < n:
            return x


def count_fixed_lee_weight(q: int, n: int, w: int) -> int:
    if w < 0 or w > n * (q // 2):
        return 0
    return lee_sphere_sizes(q, n, w)[w]


def _suffix_counts(q: int, n: int, w: int) -> list[list[int]]:
    # counts[i][v] = number of vectors on coordinates i..n-1 with weight v
    return [lee_sphere_sizes(q, n - i, w) for i in range(n + 1)]


def _residues(q: int, ell: int) -> list[int]:
    return [0] if ell == 0 else sorted({ell, (q - ell) % q})


def sample_fixed_lee_weight(q: int, n: int, w: int, rng: np.random.Generator) -> ZqVec:
    """Uniform vector of Lee weight exactly w: one uniform rank, then unranking."""
    counts = _suffix_counts(q, n, w)
    total = counts[0][w] if w <= n * (q // 2) else 0
    if total == 0:
        raise InfeasibleError(f"no vector of Lee weight {w} in Z_{q}^{n}")
    idx = _randbelow(rng, total)
    out, rem = [], w
    for i in range(n):
        for ell in range(min(q // 2, rem) + 1):
            block = counts[i + 1][rem - ell]
            res = _residues(q, ell)
            if idx < block * len(res):
                out.append(res[idx // block])
                idx %= block
                rem -= ell
                break
            idx -= block * len(res)
    return ZqVec(tuple(out), q)


@dataclass(frozen=True)
class LeeIsometry:
    """x -> y with y_j = s_j * x_{perm[j]}."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm must be a permutation of 0..n-1")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a ±1 vector of length n")

    @classmethod
    def identity(cls, n: int) -> "LeeIsometry":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "LeeIsometry":
        perm = tuple(int(i) for i in rng.permutation(n))
        signs = tuple(int(s) for s in rng.choice([1, -1], size=n))
        return cls(perm, signs)

    @property
    def n(self) -> int:
        return len(self.perm)

    def apply(self, x: ZqVec) -> ZqVec:
        return ZqVec.of([s * x[p] for p, s in zip(self.perm, self.signs)], x.q)

    def inverse(self) -> "LeeIsometry":
        inv = [0] * self.n
        sg = [1] * self.n
        for j, (p, s) in enumerate(zip(self.perm, self.signs)):
            inv[p] = j
            sg[p] = s
        return LeeIsometry(tuple(inv), tuple(sg))

    def apply_rows(self, rows: Sequence[Sequence[int]], q: int) -> tuple[tuple[int, ...], ...]:
        return tuple(self.apply(ZqVec.of(r, q)).values for r in rows)


@dataclass(frozen=True)
class PublicKey:
    q: int
    n: int
    k: int
    w: int
    g_pub: tuple[tuple[int, ...], ...]

    @property
    def code(self) -> LinearCode:
        return LinearCode(self.q, self.g_pub)


@dataclass(frozen=True)
class KeyPair:
    q: int
    n: int
    k: int
    w: int
    g_sec: tuple[tuple[int, ...], ...]
    info_set: tuple[int, ...]
    phi: LeeIsometry
    g_pub: tuple[tuple[int, ...], ...]

    @property
    def public(self) -> PublicKey:
        return PublicKey(self.q, self.n, self.k, self.w, self.g_pub)


@dataclass(frozen=True)
class Ciphertext:
    c: ZqVec


def _columns(g: Sequence[Sequence[int]], cols: Sequence[int]) -> list[list[int]]:
    return [[row[j] for j in cols] for row in g]


def is_information_set(g: Sequence[Sequence[int]], cols: Sequence[int], q: int) -> bool:
    return gcd(intmat.det(_columns(g, cols)) % q, q) == 1


def find_information_set(g: Sequence[Sequence[int]], q: int) -> tuple[int, ...]:
    """First k-subset of columns (lexicographic) with a unit determinant."""
    k, n = len(g), len(g[0])
    for cols in itertools.combinations(range(n), k):
        if is_information_set(g, cols, q):
            return cols
    raise InfeasibleError("generator matrix has no information set over Z_q")


def message_from_codeword(g: Sequence[Sequence[int]], info_set: Sequence[int], c: ZqVec) -> ZqVec:
    inv = intmat.inverse_mod(_columns(g, info_set), c.q)
    sub = [c[j] for j in info_set]
    return ZqVec.of(intmat.vecmat(sub, inv), c.q)


def encode(g: Sequence[Sequence[int]], m: ZqVec) -> ZqVec:
    return ZqVec.of(intmat.vecmat(m.values, g), m.q)


def keygen(q: int, n: int, k: int, w: int, rng: np.random.Generator, max_tries: int = 1000,
           phi: LeeIsometry | None = None) -> KeyPair:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k = {k}, n = {n}")
    if w < 0:
        raise ValueError(f"w must be >= 0, got {w}")
    for _ in range(max_tries):
        g = tuple(tuple(int(x) for x in row) for row in rng.integers(0, q, size=(k, n)))
        cols = tuple(sorted(int(i) for i in rng.permutation(n)[:k]))
        if not is_information_set(g, cols, q):
            continue
        code = LinearCode(q, g)
        if w > 0 and not 2 * w < min(q, min_lee_distance(code)):
            continue
        iso = LeeIsometry.random(n, rng) if phi is None else phi
        return KeyPair(q, n, k, w, g, cols, iso, iso.apply_rows(g, q))
    raise InfeasibleError(f"no key with 2w < min{{q, d_L}} after {max_tries} tries")


def encrypt_with_error(pub: PublicKey, m: ZqVec, rng: np.random.Generator) -> tuple[Ciphertext, ZqVec]:
    if m.q != pub.q or m.n != pub.k:
        raise ValueError(f"message must lie in Z_{pub.q}^{pub.k}")
    e = sample_fixed_lee_weight(pub.q, pub.n, pub.w, rng)
    return Ciphertext(encode(pub.g_pub, m) + e), e


def encrypt(pub: PublicKey, m: ZqVec, rng: np.random.Generator) -> Ciphertext:
    return encrypt_with_error(pub, m, rng)[0]


def decrypt(kp: KeyPair, ct: Ciphertext) -> ZqVec:
    """Undo the isometry, decode in the secret code, read m off the information set."""
    y = kp.phi.inverse().apply(ct.c)
    cw, dist = nearest_codeword(LinearCode(kp.q, kp.g_sec), y)
    if dist > kp.w:
        raise DecodingError(f"nearest codeword is at Lee distance {dist} > w = {kp.w}")
    return message_from_codeword(kp.g_sec, kp.info_set, cw)


def message_recovery_attack(pub: PublicKey, ct: Ciphertext, method: str = "bdd", mu: int = 1) -> ZqVec:
    """Recover m from c using only the public key, through a lattice oracle."""
    code = pub.code
    c = ct.c
    if pub.w == 0:
        cw = c
    elif method == "bdd":
        cw = leedp_to_bdd(LeedpInstance(code, c, pub.w))
    elif method == "usvp":
        lam1 = decoding_radius(code)
        # (4w+1)/(4 lambda_1) is < 1/2 exactly when 2w < lambda_1 and still exceeds w/lambda_1
        alpha = Fraction(4 * pub.w + 1, 4 * lam1)
        if not alpha < Fraction(1, 2):
            raise HypothesisError(f"embedding needs 2w < min{{q, d_L}} = {lam1}")
        inst = BddInstance(construction_a(code).basis, center_lift(c), alpha)
        v = bdd_to_usvp_embedding(inst, mu=mu)
        cw = reduce_mod_q(v, pub.q)
    else:
        raise ValueError(f"unknown attack method {method!r}")
    if lee_weight(c - cw) > pub.w:
        raise DecodingError("recovered codeword is farther than w from the ciphertext")
    return message_from_codeword(pub.g_pub, find_information_set(pub.g_pub, pub.q), cw)


# ---------------------------------------------------------------------------
# JSON


def _mat(rows) -> list[list[int]]:
    return [list(r) for r in rows]


def keypair_to_json(kp: KeyPair) -> str:
    return json.dumps({"q": kp.q, "n": kp.n, "k": kp.k, "w": kp.w, "g_sec": _mat(kp.g_sec),
                       "info_set": list(kp.info_set), "perm": list(kp.phi.perm),
                       "signs": list(kp.phi.signs), "g_pub": _mat(kp.g_pub)}, sort_keys=True)


def keypair_from_json(text: str) -> KeyPair:
    d = json.loads(text)
    to_rows = lambda m: tuple(tuple(int(x) for x in r) for r in m)  # noqa: E731
    return KeyPair(d["q"], d["n"], d["k"], d["w"], to_rows(d["g_sec"]), tuple(d["info_set"]),
                   LeeIsometry(tuple(d["perm"]), tuple(d["signs"])), to_rows(d["g_pub"]))


def public_to_json(pub: PublicKey) -> str:
    return json.dumps({"q": pub.q, "n": pub.n, "k": pub.k, "w": pub.w, "g_pub": _mat(pub.g_pub)},
                      sort_keys=True)


def public_from_json(text: str) -> PublicKey:
    """Accepts either a public key or a full key pair document."""
    d = json.loads(text)
    return PublicKey(d["q"], d["n"], d["k"], d["w"], tuple(tuple(int(x) for x in r) for r in d["g_pub"]))


def ciphertext_to_json(ct: Ciphertext) -> str:
    return json.dumps({"q": ct.c.q, "c": list(ct.c.values)}, sort_keys=True)


def ciphertext_from_json(text: str) -> Ciphertext:
    d = json.loads(text)
    return Ciphertext(ZqVec(tuple(int(x) for x in d["c"]), int(d["q"])))
