"""Oracle-relative reductions between Lee decoding and lattice problems.

Each reduction takes its oracle as a plain callable so that brute-force
solvers can stand in for real ones:

* BDD oracle:   ``(basis, target, alpha) -> lattice vector``
* LeeDP oracle: ``(code, received, t) -> codeword or None``
* uSVP oracle:  ``(basis, gamma) -> shortest vector``
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .codes import LinearCode, min_lee_distance, nearest_codeword, solve_leedp_bruteforce
from .errors import HypothesisError, OracleFailure, PromiseViolation
from .lattices import (LatticeBasis, closest_vector_l1_bruteforce, construction_a, determinant,
                       lambda1_l1, member, solve_bdd, solve_usvp)
from .zq import IntVec, ZqVec, center_lift, l1_dist, lee_weight, reduce_mod_q

BddOracle = Callable[[LatticeBasis, IntVec, Fraction], IntVec]
LeedpOracle = Callable[[LinearCode, ZqVec, int], "ZqVec | None"]
UsvpOracle = Callable[[LatticeBasis, Fraction], IntVec]


@dataclass(frozen=True)
class BddInstance:
    basis: LatticeBasis
    r: IntVec
    alpha: Fraction

    def __post_init__(self):
        if len(self.r) != self.basis.n:
            raise ValueError(f"target length {len(self.r)} != ambient dimension {self.basis.n}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")

    @classmethod
    def of(cls, basis, r, alpha) -> "BddInstance":
        b = basis if isinstance(basis, LatticeBasis) else LatticeBasis.of(basis)
        return cls(b, tuple(int(x) for x in r), Fraction(alpha))


@dataclass(frozen=True)
class LeedpInstance:
    code: LinearCode
    r: ZqVec
    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        if self.r.q != self.code.q or self.r.n != self.code.n:
            raise ValueError("received vector does not match the code's modulus/length")


def brute_force_bdd(basis: LatticeBasis, target: IntVec, alpha) -> IntVec:
    return solve_bdd(basis, target, alpha)


def brute_force_leedp(code: LinearCode, r: ZqVec, t: int) -> ZqVec | None:
    return solve_leedp_bruteforce(code, r, t)


def brute_force_usvp(basis: LatticeBasis, gamma) -> IntVec:
    return solve_usvp(basis, gamma)


def decoding_radius(code: LinearCode) -> int:
    """min{q, d_L(C)}, which is lambda_1 of the Construction A lattice."""
    if code.is_zero():
        return code.q
    return min(code.q, min_lee_distance(code))


def leedp_to_bdd(inst: LeedpInstance, bdd_oracle: BddOracle = brute_force_bdd,
                 alpha=None) -> ZqVec:
    """Solve LeeDP_t on C with one call to a BDD oracle on L_A(C).

    The oracle is asked for BDD with alpha' = (t + 1/2) / min{q, d_L}. Distances
    are integers, so d <= t is the same as d < t + 1/2 and the oracle's strict
    promise holds exactly when the LeeDP promise does.
    """
    code, q, t = inst.code, inst.code.q, inst.t
    dl = None if code.is_zero() else min_lee_distance(code)
    lam1 = q if dl is None else min(q, dl)
    if alpha is not None and Fraction(t) > Fraction(alpha) * lam1:
        raise HypothesisError(f"t = {t} exceeds alpha * min{{q, d_L}} = {Fraction(alpha) * lam1}")
    if t >= lam1:
        if dl is not None and dl > q and t >= q:
            raise HypothesisError(
                f"t = {t} >= q = {q} while d_L = {dl} > q: the shortest vectors of L_A "
                "are the q e_i, so the reduction to BDD does not hold in this regime")
        raise HypothesisError(f"t = {t} must be < min{{q, d_L}} = {lam1}")
    lattice = construction_a(code).basis
    target = center_lift(inst.r)
    alpha_bdd = Fraction(2 * t + 1, 2 * lam1)
    x = bdd_oracle(lattice, target, alpha_bdd)
    c = reduce_mod_q(x, q)
    if not code.contains(c):
        raise OracleFailure("BDD oracle returned a vector outside L_A(C)")
    if lee_weight(inst.r - c) > t:
        raise OracleFailure(f"oracle answer is at Lee distance {lee_weight(inst.r - c)} > t = {t}")
    return c


def code_from_basis(b: LatticeBasis, q: int | None = None) -> LinearCode:
    """The code over Z_q generated by the basis rows mod q.

    q defaults to |det B|. Any q with qZ^n inside L(B) also works (e.g. 7 for
    B = 7I), and is checked.
    """
    if not b.full_rank:
        raise HypothesisError(f"needs a full-rank square basis, got {b.k}x{b.n}")
    d = abs(determinant(b))
    if q is None:
        q = d
    elif not all(member(b, [q * (i == j) for j in range(b.n)])[0] for i in range(b.n)):
        raise HypothesisError(f"qZ^n is not contained in the lattice for q = {q}")
    if q <= 1:
        raise HypothesisError(f"q = {q}: the lattice is Z^n and no nontrivial code exists")
    return LinearCode.from_rows(b.rows, q)


def bdd_integer_radius(alpha: Fraction, lam1: int) -> int:
    """Largest integer strictly below alpha * lambda_1."""
    return math.ceil(Fraction(alpha) * lam1) - 1


def bdd_to_leedp(inst: BddInstance, leedp_oracle: LeedpOracle = brute_force_leedp) -> IntVec:
    """Solve BDD_alpha on a full-rank integer lattice with one LeeDP query."""
    b = inst.basis
    if not b.full_rank:
        raise HypothesisError(f"needs a full-rank square basis, got {b.k}x{b.n}")
    lam1, _ = lambda1_l1(b)
    t = bdd_integer_radius(inst.alpha, lam1)
    if t < 1:
        # only the target itself lies strictly within alpha * lambda_1
        if member(b, inst.r)[0]:
            return inst.r
        raise PromiseViolation(f"target is not within distance {inst.alpha * lam1} of the lattice")
    code = code_from_basis(b)
    r_mod = reduce_mod_q(inst.r, code.q)
    c = leedp_oracle(code, r_mod, t)
    if c is None:
        raise PromiseViolation(f"no codeword within Lee distance {t} of r mod q")
    e = center_lift(r_mod - c)
    v = tuple(a - x for a, x in zip(inst.r, e))
    if not member(b, v)[0]:
        raise OracleFailure(f"reduction produced a non-lattice vector {v}")
    if not l1_dist(v, inst.r) < inst.alpha * lam1:
        raise OracleFailure(f"reduction output at distance {l1_dist(v, inst.r)} breaks the BDD bound")
    return v


def embedding_basis(b: LatticeBasis, r: Sequence[int], mu: int) -> LatticeBasis:
    rows = [tuple(row) + (0,) for row in b.rows] + [tuple(r) + (mu,)]
    return LatticeBasis.of(rows)


def bdd_to_usvp_embedding(inst: BddInstance, usvp_oracle: UsvpOracle = brute_force_usvp,
                          mu: int = 1, gamma=1) -> IntVec:
    """Embedding heuristic: the short vector (r - v, mu) of [B 0; r mu] reveals v."""
    gamma = Fraction(gamma)
    if mu < 1:
        raise ValueError(f"embedding factor must be a positive integer, got {mu}")
    if not inst.alpha < 1 / (2 * gamma):
        raise HypothesisError(f"alpha = {inst.alpha} must be < 1/(2 gamma) = {1 / (2 * gamma)}")
    emb = embedding_basis(inst.basis, inst.r, mu)
    try:
        w = usvp_oracle(emb, gamma)
    except PromiseViolation as exc:
        raise PromiseViolation(f"embedded lattice (mu = {mu}) is not a uSVP_{gamma} instance: {exc}") from exc
    if abs(w[-1]) != mu:
        raise OracleFailure(f"shortest embedded vector has last coordinate {w[-1]}, not ±{mu}")
    sign = 1 if w[-1] == mu else -1
    e = tuple(sign * x for x in w[:-1])
    v = tuple(a - x for a, x in zip(inst.r, e))
    if not member(inst.basis, v)[0]:
        raise OracleFailure(f"recovered vector {v} is not in the lattice")
    return v


# ---------------------------------------------------------------------------
# batch driver: JSON lines in, CSV rows out

CSV_FIELDS = ["index", "kind", "achieved", "oracle", "success", "error"]


def run_instance(item: dict, mu: int = 1) -> dict:
    """One instance. LeeDP lines: q, gen, r, t. BDD lines: basis, r, alpha."""
    kind = item.get("kind") or ("leedp" if "gen" in item else "bdd")
    row = {"kind": kind, "achieved": "", "oracle": "", "success": False, "error": ""}
    try:
        if kind == "leedp":
            code = LinearCode.from_rows(item["gen"], int(item["q"]))
            inst = LeedpInstance(code, reduce_mod_q(item["r"], code.q), int(item["t"]))
            c = leedp_to_bdd(inst)
            _, best = nearest_codeword(code, inst.r)
            row.update(achieved=lee_weight(inst.r - c), oracle=best)
            row["success"] = row["achieved"] == best
        elif kind in ("bdd", "bdd-usvp"):
            inst = BddInstance.of(item["basis"], item["r"], Fraction(str(item["alpha"])))
            v = bdd_to_usvp_embedding(inst, mu=mu) if kind == "bdd-usvp" else bdd_to_leedp(inst)
            _, best = closest_vector_l1_bruteforce(inst.basis, inst.r)
            row.update(achieved=l1_dist(v, inst.r), oracle=best)
            row["success"] = row["achieved"] == best
        else:
            raise ValueError(f"unknown instance kind {kind!r}")
    except (HypothesisError, PromiseViolation, OracleFailure, ValueError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _run_indexed(args):
    i, item, mu = args
    return {"index": i, **run_instance(item, mu)}


def run_batch(lines: Iterable[str], workers: int = 1, mu: int = 1) -> list[dict]:
    specs = [json.loads(ln) for ln in lines if ln.strip()]
    jobs = [(i, s, mu) for i, s in enumerate(specs)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_run_indexed, jobs))
    return [_run_indexed(j) for j in jobs]


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
