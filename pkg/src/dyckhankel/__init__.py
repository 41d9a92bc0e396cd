"""Exact Hankel determinants of peak-avoiding Dyck path generating functions."""
from .exact import Poly, QuadEq, RatFun, TruncSeries, solve_quadratic
from .genfun import dseries, fmr_series
from .hankel import detect_periodicity, hankel_det, hankel_sequence
from .paths import DyckPath, HeightSet, count_avoiding
from .tau import tau_chain
from .verify import predict_hankel, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "Poly", "QuadEq", "RatFun", "TruncSeries", "solve_quadratic", "dseries", "fmr_series",
    "detect_periodicity", "hankel_det", "hankel_sequence", "DyckPath", "HeightSet",
    "count_avoiding", "tau_chain", "predict_hankel", "verify_theorem",
]
