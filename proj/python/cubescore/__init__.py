"""Hypercube scores, permanents and orthogonal constructions."""

from ._cubescore import *  # noqa: F401,F403
from ._cubescore import (
    CapacityError,
    ConstructionError,
    CubescoreError,
    DegenerateGeneratorError,
    InternalError,
    ParseError,
    PreconditionError,
    ShapeError,
)

__version__ = "0.1.0"
