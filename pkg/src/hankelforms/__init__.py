"""Hankel forms, Hankel measures and fractional derivatives on weighted Bergman spaces."""
from .analytic import TaylorSeries, dilate, evaluate, kernel, multiply
from .kernels import BACKEND
from .measures import ComplexMeasure, moments, project
from .weights import Power, Standard, WDerived, constant, omega_plus, parse_weight, weight_W

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ComplexMeasure", "Power", "Standard", "TaylorSeries", "WDerived",
    "constant", "dilate", "evaluate", "kernel", "moments", "multiply", "omega_plus",
    "parse_weight", "project", "weight_W",
]
