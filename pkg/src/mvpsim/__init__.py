"""Discrete simulator of a mechanical Boolean matrix-vector processor.

Two interchangeable machine backends (rotating column axes with spring
ladders; sliding walls with row lights) execute Boolean matrix-vector and
matrix-matrix products as sequences of counted mechanical operations. A
brute-force oracle, product drivers with exact operation accounting, and
a CLI for multiplying, benchmarking and self-testing sit on top.
"""

from .bits import (
    BitMatrix,
    BitVector,
    DimensionError,
    ParseError,
    oracle_matmul,
    oracle_matvec,
    parse_matrix,
    parse_vector,
    serialize_matrix,
    serialize_vector,
)
from .contract import MachineStateError, MvpMachine, OpCategory, OpCounts, OpLog
from .axis_ladder import AxisLadderMachine
from .wall_light import WallLightMachine
from .drivers import (
    BACKENDS,
    Mode,
    PARALLEL_PHASES_PER_MATVEC,
    RunReport,
    make_machine,
    matmul,
    matvec,
)

__all__ = [
    "AxisLadderMachine",
    "BACKENDS",
    "BitMatrix",
    "BitVector",
    "DimensionError",
    "MachineStateError",
    "Mode",
    "MvpMachine",
    "OpCategory",
    "OpCounts",
    "OpLog",
    "PARALLEL_PHASES_PER_MATVEC",
    "ParseError",
    "RunReport",
    "WallLightMachine",
    "make_machine",
    "matmul",
    "matvec",
    "oracle_matmul",
    "oracle_matvec",
    "parse_matrix",
    "parse_vector",
    "serialize_matrix",
    "serialize_vector",
]

__version__ = "0.1.0"
