"""Exact counting of square and domino tilings of (2 x n)-boards on {4, q} mosaics."""

from .bipoly import BiPoly, monomial
from .board import BoardSpec, CellGraph, board, board_stats, build_board, cut_edges, mirror, path_board
from .errors import InvariantViolation, OracleLimitError, ParameterError
from .oracle import Tiling, enumerate_tilings, frontier_count, is_breakable_at, unbreakable_count, weighted_count

__all__ = [
    "BiPoly",
    "BoardSpec",
    "CellGraph",
    "InvariantViolation",
    "OracleLimitError",
    "ParameterError",
    "Tiling",
    "board",
    "board_stats",
    "build_board",
    "cut_edges",
    "enumerate_tilings",
    "frontier_count",
    "is_breakable_at",
    "mirror",
    "monomial",
    "path_board",
    "unbreakable_count",
    "weighted_count",
]
__version__ = "0.1.0"
