"""Singular integrals, dyadic cubes, beta numbers and curvature of triples on
discrete 1-regular subsets of the first Heisenberg group."""

from .heis import HPoint, HorizontalLine, dist, koranyi, mul, inv, nh
from .kernels import K1, K2, KernelSpec
from .measure import WeightedPointSet, make_set

__version__ = "0.1.0"

__all__ = [
    "HPoint",
    "HorizontalLine",
    "dist",
    "koranyi",
    "mul",
    "inv",
    "nh",
    "K1",
    "K2",
    "KernelSpec",
    "WeightedPointSet",
    "make_set",
]
