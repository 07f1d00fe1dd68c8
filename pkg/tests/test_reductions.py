import json
import random
from fractions import Fraction

import pytest

from leelattice.codes import LinearCode, nearest_codeword
from leelattice.errors import HypothesisError, OracleFailure, PromiseViolation
from leelattice.lattices import LatticeBasis, closest_vector_l1_bruteforce, construction_a, lambda1_l1, member
from leelattice.reductions import (BddInstance, LeedpInstance, bdd_to_leedp, bdd_to_usvp_embedding,
                                   code_from_basis, leedp_to_bdd, rows_to_csv, run_batch)
from leelattice.zq import ZqVec, l1_dist, lee_weight

from planted import planted_bdd, planted_leedp, random_full_rank

C2 = LinearCode.from_rows([[1, 2]], 7)
B2 = LatticeBasis.of([[1, 2], [0, 7]])


def test_leedp_to_bdd_examples():
    r = ZqVec((3, 6), 7)
    assert leedp_to_bdd(LeedpInstance(C2, r, 1)) == r
    r = ZqVec((2, 3), 7)
    got = leedp_to_bdd(LeedpInstance(C2, r, 2), alpha=Fraction(2, 3))
    assert lee_weight(r - got) == nearest_codeword(C2, r)[1] == 1


def test_leedp_to_bdd_hypotheses():
    with pytest.raises(HypothesisError):
        leedp_to_bdd(LeedpInstance(C2, ZqVec((2, 3), 7), 3))
    with pytest.raises(HypothesisError):
        leedp_to_bdd(LeedpInstance(C2, ZqVec((2, 3), 7), 2), alpha=Fraction(1, 2))
    # d_L = 6 > q = 5 and t >= q: the regime where the reduction breaks down
    wide = LinearCode.from_rows([[1, 1, 1, 1, 1, 1]], 5)
    with pytest.raises(HypothesisError, match="does not hold"):
        leedp_to_bdd(LeedpInstance(wide, ZqVec((0,) * 6, 5), 5))


def test_leedp_to_bdd_detects_bad_oracle():
    with pytest.raises(OracleFailure):
        leedp_to_bdd(LeedpInstance(C2, ZqVec((2, 3), 7), 2), bdd_oracle=lambda b, r, a: (1, 0))


def test_leedp_to_bdd_planted():
    rng = random.Random(31)
    for _ in range(200):
        inst = planted_leedp(rng)
        c = leedp_to_bdd(inst)
        w = lee_weight(inst.r - c)
        assert inst.code.contains(c)
        assert w <= inst.t
        assert w == nearest_codeword(inst.code, inst.r)[1]


def test_code_from_basis():
    seven = LatticeBasis.of([[7, 0], [0, 7]])
    full = code_from_basis(seven)
    assert full.q == 49 and full.gen == ((7, 0), (0, 7))
    zero = code_from_basis(seven, q=7)
    assert zero.q == 7 and zero.is_zero()
    for code in (full, zero):
        assert construction_a(code).basis.same_lattice(seven)
    with pytest.raises(HypothesisError):
        code_from_basis(B2, q=5)
    c = code_from_basis(B2)
    assert c.q == 7 and c.gen == ((1, 2), (0, 0))
    assert construction_a(c).basis.same_lattice(construction_a(C2).basis)
    with pytest.raises(HypothesisError):
        code_from_basis(LatticeBasis.of([[1, 0], [0, 1]]))


def test_deconstruction_identity():
    rng = random.Random(32)
    for _ in range(100):
        b = random_full_rank(rng, rng.randint(1, 4))
        assert construction_a(code_from_basis(b)).basis.same_lattice(b)


def test_bdd_to_leedp_examples():
    assert bdd_to_leedp(BddInstance.of(B2, (3, 6), Fraction(1, 2))) == (3, 6)
    v = bdd_to_leedp(BddInstance.of(B2, (2, 3), Fraction(2, 3) + Fraction(1, 100)))
    # (2,4) is one step from (2,3); (1,2) is two steps away
    assert v == (2, 4)
    assert closest_vector_l1_bruteforce(B2, (2, 3)) == ((2, 4), 1)


def test_bdd_to_leedp_planted():
    rng = random.Random(33)
    for _ in range(200):
        inst = planted_bdd(rng)
        v = bdd_to_leedp(inst)
        lam = lambda1_l1(inst.basis)[0]
        assert member(inst.basis, v)[0]
        assert l1_dist(v, inst.r) < inst.alpha * lam
        assert l1_dist(v, inst.r) == closest_vector_l1_bruteforce(inst.basis, inst.r)[1]


def test_embedding_examples():
    assert bdd_to_usvp_embedding(BddInstance.of(B2, (1, 2), Fraction(1, 3))) == (1, 2)
    a2 = construction_a(C2).basis
    r = (1 + 1, 2)
    assert bdd_to_usvp_embedding(BddInstance(a2, r, Fraction(1, 3))) == (1, 2)
    with pytest.raises(HypothesisError):
        bdd_to_usvp_embedding(BddInstance(a2, r, Fraction(1, 2)))


def test_embedding_success_rate():
    rng = random.Random(34)
    insts = [planted_bdd(rng, Fraction(1, 2)) for _ in range(100)]
    rates = {}
    for mu in (1, 2, 3):
        ok = 0
        for inst in insts:
            try:
                v = bdd_to_usvp_embedding(inst, mu=mu)
            except (OracleFailure, PromiseViolation):
                continue
            ok += l1_dist(v, inst.r) == closest_vector_l1_bruteforce(inst.basis, inst.r)[1]
        rates[mu] = ok / len(insts)
    assert max(rates.values()) >= 0.95, rates


def test_batch_driver(tmp_path):
    lines = [
        json.dumps({"q": 7, "gen": [[1, 2]], "r": [2, 3], "t": 2}),
        json.dumps({"basis": [[1, 2], [0, 7]], "r": [2, 3], "alpha": "7/10"}),
        json.dumps({"kind": "bdd-usvp", "basis": [[1, 2], [0, 7]], "r": [2, 2], "alpha": "1/3"}),
        json.dumps({"q": 7, "gen": [[1, 2]], "r": [2, 3], "t": 5}),
    ]
    rows = run_batch(lines)
    assert [r["success"] for r in rows] == [True, True, True, False]
    assert rows[3]["error"].startswith("HypothesisError")
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == "index,kind,achieved,oracle,success,error"
    assert run_batch(lines, workers=2) == rows
