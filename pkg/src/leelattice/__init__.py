"""Lee-metric codes, Construction A lattices, reductions and divergences."""

from .codes import LinearCode, ParityCheck
from .lattices import LatticeBasis, construction_a, construction_ag
from .zq import ZqVec, center_lift, lee_weight, reduce_mod_q

__version__ = "0.1.0"

__all__ = [
    "LatticeBasis",
    "LinearCode",
    "ParityCheck",
    "ZqVec",
    "center_lift",
    "construction_a",
    "construction_ag",
    "lee_weight",
    "reduce_mod_q",
]
