import math

import mpmath
import numpy as np
import pytest

from leelattice import distributions as D


def test_beta_closed_forms():
    assert D.solve_beta(3, 0.5) == pytest.approx(math.log(2), abs=1e-10)
    assert D.solve_beta(5, 1.0) == pytest.approx(0.5 * math.log(2), abs=1e-10)
    assert math.exp(D.solve_beta(501, 1.0)) == pytest.approx(1 + math.sqrt(2), abs=1e-3)


def test_beta_rejects_endpoints():
    for T in (0, 2, 2.5, -1):
        with pytest.raises(ValueError):
            D.solve_beta(5, T)


@pytest.mark.parametrize("q", [3, 4, 5, 8, 11, 30])
@pytest.mark.parametrize("frac", [0.05, 0.3, 0.5, 0.7, 0.95])
def test_lee_marginal_invariants(q, frac):
    T = frac * (q // 2)
    m = D.lee_marginal(q, T)
    assert math.fsum(m.probs) == pytest.approx(1, abs=1e-12)
    ws = D.lee_weights(q)
    assert math.fsum(w * p for w, p in zip(ws, m.probs)) == pytest.approx(T, abs=1e-9)
    assert m.c1 == m.probs[0]


def test_negative_beta_branch():
    # mean weight above the uniform mean pushes beta below zero
    m = D.lee_marginal(11, 4.5)
    assert m.beta < 0 and D.nu(m.beta, 11) == 5
    assert D.nu(0.0, 11) == 1


def test_hamming_marginal():
    h = D.hamming_marginal(5, 0.4)
    assert h.probs[0] == pytest.approx(0.6) and h.probs[1] == pytest.approx(0.1)
    assert math.fsum(h.probs) == pytest.approx(1)


def test_renyi_examples():
    assert D.renyi_inf_lee_hamming(5, 1.0, 0.5) == pytest.approx(4 * math.sqrt(2) - 4, abs=1e-9)
    dstar, bound = D.renyi_lower_bound(5, 1.0)
    assert dstar == pytest.approx(0.738796, abs=1e-6)
    assert bound == pytest.approx(1.121320, abs=1e-6)
    grid = np.linspace(0.001, 0.999, 20001)
    vals = [D.renyi_inf_lee_hamming(5, 1.0, d) for d in grid]
    assert min(vals) >= bound - 1e-12
    assert grid[int(np.argmin(vals))] == pytest.approx(dstar, abs=1e-4)
    assert D.renyi_inf_lee_hamming(5, 1.0, dstar) == pytest.approx(bound, abs=1e-9)


@pytest.mark.parametrize("q", [3, 5, 6, 9])
@pytest.mark.parametrize("T_frac", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("delta", [0.1, 0.5, 0.9])
def test_renyi_closed_form_is_max_ratio(q, T_frac, delta):
    T = T_frac * (q // 2)
    m = D.lee_marginal(q, T)
    h = D.hamming_marginal(q, delta)
    direct = max(f / g for f, g in zip(m.probs, h.probs))
    assert D.renyi_inf_lee_hamming(q, T, delta) == pytest.approx(direct, abs=1e-12)
    generic = D.renyi_generic(D.lee_marginal_dist(m), D.hamming_marginal_dist(h), math.inf)
    assert generic == pytest.approx(direct, rel=1e-12)


def test_growth_and_limits():
    rows = D.renyi_divergence_growth(1.0, 0.5, [21, 201, 1001, 2001])
    bounds = [r["bound"] for r in rows]
    assert bounds == sorted(bounds) and len(set(bounds)) == 4
    assert rows[2]["c1"] == pytest.approx(D.limit_c1(1.0), abs=1e-4)
    assert D.limit_c1(1.0) == pytest.approx(math.sqrt(2) / (2 + math.sqrt(2)))
    assert rows[3]["exp_neg_beta"] == pytest.approx(1 / D.limit_exp_beta(1.0), abs=1e-4)


def test_generic_divergences_trivial():
    f = D.discrete_laplace(1.0, 30)
    assert D.renyi_generic(f, f, 2) == pytest.approx(1, abs=1e-12)
    assert D.renyi_generic(f, f, math.inf) == pytest.approx(1, abs=1e-12)
    assert D.kl_generic(f, f) == 0
    with pytest.raises(ValueError):
        D.kl_generic(D.discrete_laplace(1.0, 5), D.discrete_laplace(1.0, 4))
    with pytest.raises(ValueError):
        D.renyi_generic(f, f, 1)


def test_product_rules_q5():
    f = D.lee_marginal_dist(D.lee_marginal(5, 1.0))
    g = D.hamming_marginal_dist(D.hamming_marginal(5, 0.5))
    ff, gg = D.product(f, f), D.product(g, g)
    assert D.renyi_generic(ff, gg, math.inf) == pytest.approx(D.renyi_generic(f, g, math.inf) ** 2, abs=1e-10)
    assert D.renyi_generic(ff, gg, 3) == pytest.approx(D.renyi_generic(f, g, 3) ** 2, abs=1e-10)
    assert D.kl_generic(ff, gg) == pytest.approx(2 * D.kl_generic(f, g), abs=1e-10)


def test_renyi2_laplace_gauss_diverges():
    vals = [D.renyi_generic(D.discrete_laplace(1.0, y), D.discrete_gaussian(1.0, y), 2) for y in (5, 10, 15, 20, 25)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 1e6


def test_continuous_kl():
    assert D.kl_laplace_gauss_continuous(1, math.sqrt(2)) == pytest.approx(D.LOG_PI_MINUS_ONE_HALF, abs=1e-15)
    assert D.LOG_PI_MINUS_ONE_HALF == pytest.approx(0.072365, abs=1e-6)
    assert D.kl_laplace_gauss_continuous(1, 1) == pytest.approx(0.5 * math.log(math.pi / 2), abs=1e-15)
    assert D.kl_laplace_gauss_continuous(2, 3, n=5) == pytest.approx(5 * D.kl_laplace_gauss_continuous(2, 3))
    with pytest.raises(ValueError):
        D.kl_laplace_gauss_continuous(0, 1)


def test_continuous_kl_against_quadrature():
    b, s = 1.3, 2.1
    lap = lambda x: mpmath.exp(-abs(x) / b) / (2 * b)  # noqa: E731
    gau = lambda x: mpmath.exp(-x * x / (2 * s * s)) / (s * mpmath.sqrt(2 * mpmath.pi))  # noqa: E731
    kl = 2 * mpmath.quad(lambda x: lap(x) * mpmath.log(lap(x) / gau(x)), [0, mpmath.inf])
    assert D.kl_laplace_gauss_continuous(b, s) == pytest.approx(float(kl), abs=1e-12)


def test_theta_sums():
    assert D.s1(1.0) == pytest.approx((math.e + 1) / (math.e - 1), abs=1e-12)
    direct = math.fsum(math.exp(-abs(y)) for y in range(-60, 61))
    assert D.s1(1.0) == pytest.approx(direct, abs=1e-14)
    assert D.s2(0.05) == 1.0
    assert D.s2(8.0) == pytest.approx(8 * math.sqrt(2 * math.pi), rel=1e-10)
    for s in (0.3, 1.0, 2.7, 12.0):
        oracle = mpmath.jtheta(3, 0, mpmath.exp(-1 / (2 * s * s)))
        assert D.s2(s) == pytest.approx(float(oracle), rel=1e-14)
        Y = D.theta_cutoff(s)
        assert D.s2_tail_bound(s, Y + 1) < 1e-15 * D.s2(s)


def test_ds2_is_derivative():
    for s in (0.4, 1.5, 6.0):
        h = 1e-6
        fd = (D.s2(s + h) - D.s2(s - h)) / (2 * h)
        assert D.ds2(s) == pytest.approx(fd, rel=1e-6)


def test_discrete_kl_table_points():
    assert D.kl_discrete_laplace_gauss(1.0, 1.35696) == pytest.approx(0.101332, abs=5e-6)
    assert D.kl_discrete_laplace_gauss(0.1, 0.223609) == pytest.approx(7.83e-8, abs=5e-9)


@pytest.mark.parametrize("b", [0.3, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("sigma", [0.5, 1.0, 3.0, 7.0])
def test_discrete_kl_against_generic(b, sigma):
    f = D.discrete_laplace(b, 200)
    g = D.discrete_gaussian(sigma, 200)
    assert D.kl_discrete_laplace_gauss(b, sigma) == pytest.approx(D.kl_generic(f, g), abs=1e-10)


def test_sigma_min_discrete():
    s, kl = D.sigma_min_discrete(4.0)
    assert s == pytest.approx(5.64215, abs=1e-4) and kl == pytest.approx(0.0749139, abs=1e-6)
    s, kl = D.sigma_min_discrete(8.0)
    assert s == pytest.approx(11.3063, abs=1e-3) and kl == pytest.approx(0.0730125, abs=1e-6)
    assert D.sigma_min_discrete(32.0)[1] == pytest.approx(D.LOG_PI_MINUS_ONE_HALF, abs=2e-4)


@pytest.mark.parametrize("b", [0.1, 0.5, 1.0, 3.0, 10.0])
def test_sigma_min_is_local_minimum(b):
    s, kl = D.sigma_min_discrete(b)
    assert D.kl_discrete_laplace_gauss(b, s - 1e-3) > kl
    assert D.kl_discrete_laplace_gauss(b, s + 1e-3) > kl


def test_lee_to_laplace_gap():
    gaps = D.lee_to_laplace_convergence(1.0, [5, 11, 51, 101, 501, 1001])
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] > 0
    with pytest.raises(ValueError):
        D.lee_to_laplace_convergence(1.0, [3])
