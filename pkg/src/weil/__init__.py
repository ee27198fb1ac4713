"""Weil algebras, their Taylor lifts of smooth maps, and checks of the laws they satisfy."""

from .algebra import (
    TensorProduct,
    WeilAlgebra,
    WeilElement,
    WeilMorphism,
    compose,
    new_morphism,
    new_weil_algebra,
    preset,
    tensor,
)
from .errors import WeilError
from .expr import Box, SmoothMap, parse
from .lift import WeilPoint, iterated_lift, lift_map, prolong
from .laws import run_suite
from .limits import WeilDiagram, compute_limit, vertical_weil

__version__ = "0.1.0"

__all__ = [
    "WeilAlgebra", "WeilElement", "WeilMorphism", "TensorProduct", "WeilError",
    "new_weil_algebra", "new_morphism", "compose", "tensor", "preset",
    "Box", "SmoothMap", "parse", "WeilPoint", "lift_map", "iterated_lift", "prolong",
    "run_suite", "WeilDiagram", "compute_limit", "vertical_weil",
]
