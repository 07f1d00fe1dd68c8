"""Marginal Lee/Hamming laws, Laplace vs Gaussian, and Rényi/KL divergences.

All root finding is bisection on a monotone function. Everything is double
precision except :func:`lee_to_laplace_convergence`, whose gaps fall far
below machine epsilon and are computed with mpmath at adaptive precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Sequence

import mpmath
import numpy as np

LOG_PI_MINUS_ONE_HALF = (math.log(math.pi) - 1) / 2


# ---------------------------------------------------------------------------
# marginal laws over Z_q


def lee_weights(q: int) -> list[int]:
    return [min(j, q - j) for j in range(q)]


def _mean_lee_weight(x: float, ws: Sequence[int]) -> float:
    # log-sum-exp shift keeps large |x| finite
    shift = -x * (0 if x >= 0 else max(ws))
    e = [math.exp(-x * w - shift) for w in ws]
    return math.fsum(w * v for w, v in zip(ws, e)) / math.fsum(e)


def solve_beta(q: int, T: float, tol: float = 1e-12) -> float:
    """The tilt beta with mean Lee weight T under p(j) ∝ exp(-beta lwt(j))."""
    half = q // 2
    if not 0 < T < half:
        raise ValueError(f"T must lie strictly inside (0, {half}), got {T}")
    ws = lee_weights(q)
    f = lambda x: _mean_lee_weight(x, ws) - T  # noqa: E731  decreasing in x
    lo, hi = -1.0, 1.0
    while f(lo) < 0:
        lo *= 2
    while f(hi) > 0:
        hi *= 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class LeeMarginal:
    q: int
    T: float
    beta: float
    c1: float
    probs: tuple[float, ...]  # indexed by the standard representative j

    def centered(self) -> dict[int, float]:
        q = self.q
        return {(j - q if j > q // 2 else j): p for j, p in enumerate(self.probs)}


def lee_marginal(q: int, T: float) -> LeeMarginal:
    beta = solve_beta(q, T)
    ws = lee_weights(q)
    e = [math.exp(-beta * w) for w in ws]
    z = math.fsum(e)
    return LeeMarginal(q, T, beta, 1 / z, tuple(v / z for v in e))


@dataclass(frozen=True)
class HammingMarginal:
    q: int
    delta: float
    probs: tuple[float, ...]


def hamming_marginal(q: int, delta: float) -> HammingMarginal:
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    rest = delta / (q - 1)
    return HammingMarginal(q, delta, (1 - delta,) + (rest,) * (q - 1))


def nu(beta: float, q: int) -> int:
    return 1 if beta >= 0 else q // 2


def renyi_inf_lee_hamming(q: int, T: float, delta: float) -> float:
    """Closed-form R_inf(F_T || H_delta)."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    m = lee_marginal(q, T)
    top = m.c1 * math.exp(-m.beta * nu(m.beta, q)) * (q - 1)
    return max(m.c1 / (1 - delta), top / delta)


def renyi_lower_bound(q: int, T: float) -> tuple[float, float]:
    """(minimizing delta, c1 + c1 e^{-beta nu} (q-1))."""
    m = lee_marginal(q, T)
    s = math.exp(-m.beta * nu(m.beta, q)) * (q - 1)
    return s / (1 + s), m.c1 * (1 + s)


def renyi_divergence_growth(T: float, delta: float, q_list: Sequence[int]) -> list[dict]:
    """Lower bound on R_inf(F_T || H_delta) along growing q, with its pieces.

    delta does not enter the bound; it is echoed so rows are self-describing.
    """
    rows = []
    for q in q_list:
        m = lee_marginal(q, T)
        _, bound = renyi_lower_bound(q, T)
        rows.append({"q": q, "T": T, "delta": delta, "beta": m.beta, "c1": m.c1,
                     "exp_neg_beta": math.exp(-m.beta), "bound": bound})
    return rows


def limit_exp_beta(T: float) -> float:
    return (1 + math.sqrt(1 + T * T)) / T


def limit_c1(T: float) -> float:
    r = math.sqrt(1 + T * T)
    return ((1 - T) + r) / ((1 + T) + r)


# ---------------------------------------------------------------------------
# generic finite distributions


@dataclass(frozen=True)
class DiscreteDist:
    """Finite (possibly truncated) distribution stored by log-probability.

    ``tail`` is the probability mass outside ``support`` (0 for exact laws).
    """

    support: tuple[Hashable, ...]
    logp: tuple[float, ...]
    tail: float = 0.0

    @classmethod
    def from_probs(cls, probs: dict, tail: float = 0.0) -> "DiscreteDist":
        items = [(x, p) for x, p in probs.items()]
        return cls(tuple(x for x, _ in items),
                   tuple(math.log(p) if p > 0 else -math.inf for _, p in items), tail)

    def prob(self) -> dict:
        return {x: math.exp(lp) for x, lp in zip(self.support, self.logp)}

    def total(self) -> float:
        return math.fsum(math.exp(lp) for lp in self.logp)


def product(f: DiscreteDist, g: DiscreteDist) -> DiscreteDist:
    sup, lp = [], []
    for x, a in zip(f.support, f.logp):
        for y, b in zip(g.support, g.logp):
            sup.append((x, y))
            lp.append(a + b)
    tail = 1 - (1 - f.tail) * (1 - g.tail)
    return DiscreteDist(tuple(sup), tuple(lp), tail)


def lee_marginal_dist(m: LeeMarginal) -> DiscreteDist:
    return DiscreteDist.from_probs(m.centered())


def hamming_marginal_dist(h: HammingMarginal) -> DiscreteDist:
    q = h.q
    return DiscreteDist.from_probs({(j - q if j > q // 2 else j): p for j, p in enumerate(h.probs)})


def _support_map(f: DiscreteDist, g: DiscreteDist):
    glog = dict(zip(g.support, g.logp))
    pairs = []
    for x, a in zip(f.support, f.logp):
        if a == -math.inf:
            continue
        b = glog.get(x, -math.inf)
        if b == -math.inf:
            raise ValueError(f"Supp(F) not contained in Supp(G): {x!r}")
        pairs.append((a, b))
    return pairs


def renyi_generic(f: DiscreteDist, g: DiscreteDist, a: float) -> float:
    """R_a(F || G) without the logarithm; a = math.inf gives the max ratio."""
    if not a > 1:
        raise ValueError(f"order must lie in (1, inf], got {a}")
    pairs = _support_map(f, g)
    if a == math.inf:
        return math.exp(max(x - y for x, y in pairs))
    terms = np.array([a * x - (a - 1) * y for x, y in pairs])
    top = terms.max()
    lse = top + math.log(math.fsum(np.exp(terms - top)))
    expo = lse / (a - 1)
    return math.inf if expo > 709 else math.exp(expo)


def kl_generic(f: DiscreteDist, g: DiscreteDist) -> float:
    pairs = _support_map(f, g)
    return math.fsum(math.exp(x) * (x - y) for x, y in pairs)


# ---------------------------------------------------------------------------
# Laplace and Gaussian over R and Z


def _check_positive(**kw):
    for name, v in kw.items():
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v}")


def kl_laplace_gauss_continuous(b: float, sigma: float, n: int = 1) -> float:
    """KL(Lap_{R,b} || D_{R,sigma}), times n for n i.i.d. coordinates."""
    _check_positive(b=b, sigma=sigma)
    return n * (math.log(sigma * math.sqrt(math.pi / 2) / b) + b * b / (sigma * sigma) - 1)


def sigma_min_continuous(b: float, tol: float = 1e-15) -> tuple[float, float]:
    """Minimizer of the continuous KL in sigma, by bisection on its derivative."""
    _check_positive(b=b)
    dkl = lambda s: 1 / s - 2 * b * b / s**3  # noqa: E731
    lo, hi = b / 4, 4 * b * math.sqrt(2)
    while dkl(lo) > 0:
        lo /= 2
    while dkl(hi) < 0:
        hi *= 2
    for _ in range(400):
        mid = (lo + hi) / 2
        if dkl(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * hi:
            break
    s = (lo + hi) / 2
    return s, kl_laplace_gauss_continuous(b, s)


def s1(b: float) -> float:
    """sum_{y in Z} exp(-|y|/b) = (e^{1/b}+1)/(e^{1/b}-1)."""
    _check_positive(b=b)
    u = math.exp(-1 / b)
    return (1 + u) / (1 - u)


def theta_cutoff(sigma: float) -> int:
    """Y with exp(-Y^2 / 2 sigma^2) <= 1e-18 (at least 1)."""
    return max(1, math.ceil(sigma * math.sqrt(2 * math.log(1e18)))) + 1


def s2_tail_bound(sigma: float, cutoff: int) -> float:
    y = cutoff
    return 2 * math.exp(-y * y / (2 * sigma * sigma)) / (1 - math.exp(-y / (sigma * sigma)))


def s2(sigma: float, cutoff: int | None = None) -> float:
    """sum_{y in Z} exp(-y^2 / 2 sigma^2), truncated symmetrically at |y| <= cutoff."""
    _check_positive(sigma=sigma)
    Y = theta_cutoff(sigma) if cutoff is None else cutoff
    y = np.arange(Y, 0, -1, dtype=float)
    return 1 + 2 * math.fsum(np.exp(-y * y / (2 * sigma * sigma)))


def ds2(sigma: float, cutoff: int | None = None) -> float:
    """d S_2 / d sigma, term-wise."""
    _check_positive(sigma=sigma)
    Y = theta_cutoff(sigma) if cutoff is None else cutoff
    y = np.arange(Y, 0, -1, dtype=float)
    return 2 * math.fsum(y * y / sigma**3 * np.exp(-y * y / (2 * sigma * sigma)))


def kl_discrete_laplace_gauss(b: float, sigma: float) -> float:
    """Closed-form KL(Lap_{Z,b} || D_{Z,sigma})."""
    _check_positive(b=b, sigma=sigma)
    u = math.exp(-1 / b)
    # e^{1/b}(e^{1/b}+1)/(e^{1/b}-1)^3 = u(1+u)/(1-u)^3 and e^{1/b}/(e^{1/b}-1)^2 = u/(1-u)^2
    second = u * (1 + u) / ((1 - u) ** 3 * sigma * sigma)
    first = 2 * u / (b * (1 - u) ** 2)
    log_s1 = math.log1p(u) - math.log1p(-u)
    log_s2 = math.log(s2(sigma))
    return (log_s2 - log_s1) + (second - first) / s1(b)


def _stationarity(b: float, sigma: float) -> float:
    u = math.exp(-1 / b)
    return ds2(sigma) / s2(sigma) - 2 * u / ((1 - u) ** 2 * sigma**3)


def sigma_min_discrete(b: float, tol: float = 1e-12, max_expansions: int = 60) -> tuple[float, float]:
    """(sigma_min, KL at sigma_min) for the discrete Laplace/Gaussian pair."""
    _check_positive(b=b)
    lo, hi = b / 4, 4 * b * math.sqrt(2)
    for _ in range(max_expansions):
        if _stationarity(b, lo) < 0:
            break
        lo /= 2
    else:
        raise RuntimeError("could not bracket sigma_min from below")
    for _ in range(max_expansions):
        if _stationarity(b, hi) > 0:
            break
        hi *= 2
    else:
        raise RuntimeError("could not bracket sigma_min from above")
    for _ in range(300):
        mid = (lo + hi) / 2
        if _stationarity(b, mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * hi:
            break
    s = (lo + hi) / 2
    return s, kl_discrete_laplace_gauss(b, s)


def discrete_laplace(b: float, radius: int) -> DiscreteDist:
    """Lap_{Z,b} restricted to |x| <= radius (true pmf values, tail recorded)."""
    _check_positive(b=b)
    norm = math.log(s1(b))
    sup = tuple(range(-radius, radius + 1))
    lp = tuple(-abs(x) / b - norm for x in sup)
    tail = 2 * math.exp(-(radius + 1) / b) / (1 - math.exp(-1 / b)) / s1(b)
    return DiscreteDist(sup, lp, tail)


def discrete_gaussian(sigma: float, radius: int) -> DiscreteDist:
    """D_{Z,sigma} restricted to |x| <= radius (true pmf values, tail recorded)."""
    _check_positive(sigma=sigma)
    norm = math.log(s2(sigma, max(radius, theta_cutoff(sigma))))
    sup = tuple(range(-radius, radius + 1))
    lp = tuple(-x * x / (2 * sigma * sigma) - norm for x in sup)
    tail = s2_tail_bound(sigma, radius + 1) / math.exp(norm)
    return DiscreteDist(sup, lp, tail)


def lee_to_laplace_convergence(T: float, q_list: Sequence[int], guard_digits: int = 30) -> list[float]:
    """sup_j |F_T(j) - Lap_{Z,1/beta_inf}(j)| over the centered range of each Z_q."""
    out = []
    for q in q_list:
        half = q // 2
        if not 0 < T < half:
            raise ValueError(f"T must lie strictly inside (0, {half}) for q = {q}")
        b_inf = math.log(limit_exp_beta(T))
        digits = guard_digits + math.ceil(max(b_inf, 1.0) * half / math.log(10))
        with mpmath.workdps(digits):
            out.append(float(_gap_mp(q, mpmath.mpf(T))))
    return out


def _lee_moments_mp(q: int, x):
    """(sum_j e^{-x lwt(j)}, sum_j lwt(j) e^{-x lwt(j)}) via geometric-series closed forms."""
    M = q // 2
    u = mpmath.exp(-x)
    if abs(1 - u) < mpmath.mpf(10) ** (-mpmath.mp.dps // 2):
        ws = lee_weights(q)
        e = [mpmath.exp(-x * w) for w in ws]
        return mpmath.fsum(e), mpmath.fsum(w * v for w, v in zip(ws, e))

    def geo(m):  # sum_{w=1}^m u^w and sum_{w=1}^m w u^w
        a = u * (1 - u**m) / (1 - u)
        b = u * (1 - (m + 1) * u**m + m * u ** (m + 1)) / (1 - u) ** 2
        return a, b

    if q % 2:
        a, b = geo(M)
        return 1 + 2 * a, 2 * b
    a, b = geo(M - 1)
    return 1 + 2 * a + u**M, 2 * b + M * u**M


def _gap_mp(q: int, T):
    def mean_minus_t(x):
        z, s = _lee_moments_mp(q, x)
        return s / z - T

    lo, hi = mpmath.mpf(-1), mpmath.mpf(1)
    while mean_minus_t(lo) < 0:
        lo *= 2
    while mean_minus_t(hi) > 0:
        hi *= 2
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if mean_minus_t(mid) > 0:
            lo = mid
        else:
            hi = mid
    beta = (lo + hi) / 2
    z, _ = _lee_moments_mp(q, beta)
    b_inf = mpmath.log((1 + mpmath.sqrt(1 + T * T)) / T)
    lap_norm = (mpmath.exp(b_inf) + 1) / (mpmath.exp(b_inf) - 1)
    js = range(-((q - 1) // 2), q // 2 + 1)
    return max(abs(mpmath.exp(-beta * abs(j)) / z - mpmath.exp(-b_inf * abs(j)) / lap_norm) for j in js)
