"""Higher-order binary optimization: coefficient tensors, annealing, compression."""

from hobo.annealer import AnnealConfig, AnnealResult, anneal
from hobo.compressor import SvdFactors, compressed_cost, svd, truncate
from hobo.evaluator import contract, delta_flip
from hobo.oracle import brute_force_min, full_landscape
from hobo.polynomial import HoboError, ParseError, Polynomial, evaluate, parse_text
from hobo.tensor import HoboTensor, QuboMatrix, build_hobo_tensor, build_qubo_matrix

__all__ = [
    "AnnealConfig", "AnnealResult", "anneal",
    "SvdFactors", "compressed_cost", "svd", "truncate",
    "contract", "delta_flip",
    "brute_force_min", "full_landscape",
    "HoboError", "ParseError", "Polynomial", "evaluate", "parse_text",
    "HoboTensor", "QuboMatrix", "build_hobo_tensor", "build_qubo_matrix",
]
