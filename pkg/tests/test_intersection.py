import itertools
import math
import random

import numpy as np
import pytest

from leelattice.codes import LinearCode, enumerate_codewords
from leelattice.intersection import (full_containment_check, intersection_count, minkowski_bound_parts,
                                     minkowski_lower_bound, one_dim_formula, one_dim_intersection, report,
                                     unit_sign_entries)
from leelattice.intmat import gram_det
from leelattice.lattices import construction_ag
from leelattice.repro import example_code


@pytest.mark.parametrize("name,count", [("G1", 7), ("G2", 3), ("G3", 19), ("G4", 17),
                                        ("G5", 5), ("G5'", 3), ("G3''", 9)])
def test_example_counts(name, count):
    assert intersection_count(example_code(name)) == count


def test_g3_prime_count_by_hand():
    # lattice points a(0,1,1) + b(3,0,1) inside the centered box [-3,3]^3:
    # b = 0 gives 7 points, b = ±1 gives 6 each (a + b must stay in range)
    pts = [(3 * b, a, a + b) for a in range(-10, 11) for b in range(-10, 11)
           if all(-3 <= x <= 3 for x in (3 * b, a, a + b))]
    assert len(pts) == 19
    assert intersection_count(example_code("G3'")) == 19


def test_same_code_different_generators():
    codes = [example_code(n) for n in ("G3", "G3'", "G3''")]
    words = [{c.values for c in enumerate_codewords(x)} for x in codes]
    assert words[0] == words[1] == words[2]
    assert intersection_count(codes[0]) != intersection_count(codes[2])


@pytest.mark.parametrize("name,bound", [("G1", 5), ("G2", 3), ("G3", 5), ("G4", 3)])
def test_example_bounds(name, bound):
    assert minkowski_lower_bound(example_code(name)) == bound


def float_bound(code):
    """2 floor(M^k / sqrt(g)) + 1, the printed form (no exactness worries at these sizes)."""
    q, k = code.q, code.k
    M = (q - 1) // 2 if q % 2 else q // 2 - 1
    x = M**k / math.sqrt(gram_det(construction_ag(code).basis.rows))
    m = math.ceil(x) - 1
    return 2 * m + 1 if m >= 1 else 1


def test_bound_below_count_on_random_codes():
    rng = random.Random(21)
    done = 0
    while done < 500:
        q = rng.randint(2, 13)
        n = rng.randint(1, 4)
        k = rng.randint(1, min(2, n))
        code = LinearCode.from_rows([[rng.randrange(q) for _ in range(n)] for _ in range(k)], q)
        try:
            rep = report(code)
        except ValueError:
            continue
        assert rep.bound <= rep.count <= rep.upper_bound == code.size
        assert rep.bound == float_bound(code)
        done += 1


def test_bound_exact_at_integer_boundary():
    # M^k / sqrt(g) = 3 exactly: the largest integer strictly below it is 2
    code = LinearCode.from_rows([[1, 1, 1, 1]], 13)  # M = 6, g = 4
    bound, M, g, vac = minkowski_bound_parts(code)
    assert (M, g) == (6, 4) and bound == 5 and not vac


def test_bound_monotone_in_q():
    rows = [[1, 2, 0], [0, 1, 3]]
    values = [minkowski_lower_bound(LinearCode.from_rows(rows, q)) for q in range(7, 60)]
    assert values == sorted(values)


def test_vacuous_bound():
    bound, _, _, vac = minkowski_bound_parts(LinearCode.from_rows([[3, 3, 3]], 7))
    assert bound == 1 and vac


def test_one_dim_examples():
    assert one_dim_intersection(LinearCode.from_rows([[1, 2]], 11)) == 5
    assert one_dim_intersection(LinearCode.from_rows([[5, -1]], 11)) == 3
    assert one_dim_intersection(LinearCode.from_rows([[1, 1]], 7)) == 7
    assert full_containment_check(LinearCode.from_rows([[1, 1]], 7))
    assert not full_containment_check(LinearCode.from_rows([[1, 2]], 7))
    for q in (3, 5, 9, 13):
        assert full_containment_check(LinearCode.from_rows([[0, 0, -1]], q))


def brute_multiples(q, gens):
    """#{mu in Z : mu g in the centered box}, vectorized over many generators."""
    lo, hi = -((q - 1) // 2), q // 2
    mus = np.arange(-q, q + 1)[:, None, None]
    prods = mus * gens[None, :, :]
    inside = np.all((prods >= lo) & (prods <= hi), axis=2)
    return inside.sum(axis=0)


@pytest.mark.parametrize("q", range(2, 32))
def test_one_dim_closed_form_exhaustive(q):
    n = 4 if q <= 19 else 3
    lo = -((q - 1) // 2)
    gens = np.array([g for g in itertools.product(range(lo, q // 2 + 1), repeat=n) if any(g)])
    expected = brute_multiples(q, gens)
    for g, e in zip(gens, expected):
        assert one_dim_intersection(LinearCode.from_rows([g.tolist()], q)) == e


def test_one_dim_closed_form_against_lattice_count():
    for q in range(2, 12):
        for g in itertools.product(range(q), repeat=2):
            if any(g):
                code = LinearCode(q, (g,))
                assert one_dim_intersection(code) == intersection_count(code)


def test_max_entry_formula_where_it_applies():
    # odd q, or even q with a single-signed generator
    for q in range(2, 16):
        lo = -((q - 1) // 2)
        for g in itertools.product(range(lo, q // 2 + 1), repeat=3):
            if not any(g):
                continue
            if q % 2 == 0 and min(g) < 0 < max(g):
                continue
            code = LinearCode.from_rows([list(g)], q)
            t = max(abs(x) for x in g)
            assert one_dim_formula(q, t) == one_dim_intersection(code)


def test_even_q_mixed_signs_break_max_entry_formula():
    code = LinearCode.from_rows([[1, -1]], 4)
    assert one_dim_formula(4, 1) == 4
    assert one_dim_intersection(code) == intersection_count(code) == 3


def test_unit_sign_criterion_for_full_length_codes():
    for q in (3, 5, 7, 11):
        lo = -((q - 1) // 2)
        for g in itertools.product(range(lo, q // 2 + 1), repeat=2):
            code = LinearCode.from_rows([list(g)], q)
            if code.is_zero() or code.size != q:
                continue
            assert full_containment_check(code) == unit_sign_entries(code)
