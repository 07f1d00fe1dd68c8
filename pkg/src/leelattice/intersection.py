"""How much of a code sits inside the lattice spanned by its own generator rows."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import isqrt

from .codes import DEFAULT_CAP, LinearCode, codeword_array
from .errors import EnumerationCapError
from .intmat import gram_det
from .lattices import construction_ag


@dataclass(frozen=True)
class IntersectionReport:
    count: int
    bound: int
    upper_bound: int
    q: int
    k: int
    n: int
    gram_det: int
    M: int
    vacuous_bound: bool

    def __post_init__(self):
        assert self.bound <= self.count <= self.upper_bound

    def to_dict(self) -> dict:
        return asdict(self)


def intersection_count(code: LinearCode, cap: int = DEFAULT_CAP) -> int:
    """Number of codewords whose centered lift lies in the A_G lattice (zero included)."""
    hnf = construction_ag(code).basis.hnf
    q = code.q
    count = 0
    for row in codeword_array(code, cap):
        v = tuple(int(x) - q if x > q // 2 else int(x) for x in row)
        if hnf.solve(v) is not None:
            count += 1
    return count


def bound_modulus(q: int) -> int:
    return (q - 1) // 2 if q % 2 else q // 2 - 1


def _largest_m(M: int, k: int, g: int) -> int:
    """Largest integer m >= 0 with m < M^k / sqrt(g), i.e. m^2 g < M^(2k)."""
    top = M ** (2 * k)
    m = isqrt(top // g)
    while m > 0 and m * m * g >= top:
        m -= 1
    while (m + 1) ** 2 * g < top:
        m += 1
    return m


def minkowski_bound_parts(code: LinearCode) -> tuple[int, int, int, bool]:
    """(bound, M, gram_det, vacuous). Vacuous means no positive m exists."""
    ag = construction_ag(code)
    g = gram_det(ag.basis.rows)
    M = bound_modulus(code.q)
    # (2M)^k / (2^k sqrt g) = M^k / sqrt g
    m = _largest_m(M, code.k, g) if M > 0 else 0
    if m < 1:
        return 1, M, g, True
    return 2 * m + 1, M, g, False


def minkowski_lower_bound(code: LinearCode) -> int:
    return minkowski_bound_parts(code)[0]


def _require_one_dim(code: LinearCode):
    if code.k != 1:
        raise ValueError(f"needs a one-dimensional code, got k = {code.k}")


def one_dim_intersection(code: LinearCode) -> int:
    """Closed-form |C ∩ L_AG| for a single generator row.

    A multiple mu*g of the centered generator is counted exactly when it stays
    inside the centered box [-floor((q-1)/2), floor(q/2)]^n. For odd q this is
    2*floor(M/t) + 1 with t the largest entry magnitude; for even q the box is
    lopsided, so positive and negative entries are bounded separately.
    """
    _require_one_dim(code)
    g = code.lifted_gen()[0]
    if not any(g):
        raise ValueError("generator row is zero")
    hi = code.q // 2
    lo = (code.q - 1) // 2
    pos = max((x for x in g if x > 0), default=0)
    neg = max((-x for x in g if x < 0), default=0)

    def fits(limit_pos, limit_neg):
        a = limit_pos // pos if pos else None
        b = limit_neg // neg if neg else None
        return min(x for x in (a, b) if x is not None)

    return 1 + fits(hi, lo) + fits(lo, hi)


def one_dim_formula(q: int, t: int) -> int:
    """The closed form stated in terms of the largest entry magnitude t only."""
    M = q // 2
    if q % 2:
        return 2 * (M // t) + 1
    return M // t + (M - 1) // t + 1


def unit_sign_entries(code: LinearCode) -> bool:
    """All nonzero centered generator entries are +1 or -1."""
    _require_one_dim(code)
    return all(x in (-1, 0, 1) for x in code.lifted_gen()[0])


def full_containment_check(code: LinearCode) -> bool:
    """True iff the whole code lies in L_AG (one-dimensional codes)."""
    _require_one_dim(code)
    return one_dim_intersection(code) == code.size


def report(code: LinearCode, cap: int = DEFAULT_CAP) -> IntersectionReport:
    size = code.size
    if size > cap:
        raise EnumerationCapError(f"|C| = {size} exceeds enumeration cap {cap}")
    bound, M, g, vacuous = minkowski_bound_parts(code)
    return IntersectionReport(
        count=intersection_count(code, cap),
        bound=bound,
        upper_bound=size,
        q=code.q,
        k=code.k,
        n=code.n,
        gram_det=g,
        M=M,
        vacuous_bound=vacuous,
    )
