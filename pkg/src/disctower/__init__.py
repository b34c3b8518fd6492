"""Discriminant towers (normal systems of equations) over truncated power series."""

__version__ = "0.1.0"

from .kernel import Jet, LinearChange, VarContext  # noqa: E402
from .discriminants import (  # noqa: E402
    GDiscVector,
    UniOverJets,
    count_distinct_roots,
    generalized_discriminants,
)
from .weierstrass import generic_linear_change, weierstrass_prepare  # noqa: E402
from .tower import NormalSystem, TowerConfig, build_tower_function, build_tower_set  # noqa: E402

__all__ = [
    "Jet", "LinearChange", "VarContext", "GDiscVector", "UniOverJets",
    "count_distinct_roots", "generalized_discriminants", "generic_linear_change",
    "weierstrass_prepare", "NormalSystem", "TowerConfig", "build_tower_function",
    "build_tower_set", "__version__",
]
