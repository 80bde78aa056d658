"""Numerical laboratory for mixed Dirichlet-Neumann eigenvalues on the unit disk."""

import logging

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())

from .angles import PiAngle, parse_angle, format_angle  # noqa: E402
from .geometry import (  # noqa: E402
    Arc,
    BoundaryPartition,
    GammaParams,
    Label,
    contains,
    dirichlet_measure,
    make_gamma,
    make_two_component,
    make_uniform,
    partition_from_pairs,
    pure_dirichlet,
    pure_neumann,
)

__all__ = [
    "Arc",
    "BoundaryPartition",
    "GammaParams",
    "Label",
    "PiAngle",
    "contains",
    "dirichlet_measure",
    "format_angle",
    "make_gamma",
    "make_two_component",
    "make_uniform",
    "parse_angle",
    "partition_from_pairs",
    "pure_dirichlet",
    "pure_neumann",
    "__version__",
]
