"""Brute-force enumeration of square/domino tilings of a cell graph.

This is the ground truth for every recurrence in the package, so it is kept
deliberately naive: always cover the lowest-index uncovered cell, first with a
square, then with a domino to each free neighbour in ascending id order.

``frontier_count`` is a faster profile DP used for boards beyond the
enumeration limit.  It is checked against the backtracking counts in the test
suite and is never used as a reference.
"""
from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .bipoly import BiPoly
from .board import CellGraph, Edge, cut_edges
from .errors import OracleLimitError, ParameterError

DEFAULT_LIMIT = 26


@dataclass(frozen=True)
class Tiling:
    """A cover of a cell graph by pieces.

    Each piece is a tuple of cell ids: ``(u,)`` for a square (monomer) or
    ``(u, v)`` with ``u < v`` for a domino (dimer).  Pieces are sorted by their
    smallest cell id.
    """

    pieces: Tuple[Tuple[int, ...], ...]

    @property
    def monomers(self) -> List[int]:
        return [p[0] for p in self.pieces if len(p) == 1]

    @property
    def dimers(self) -> List[Edge]:
        return [p for p in self.pieces if len(p) == 2]  # type: ignore[misc]

    def weight(self) -> BiPoly:
        return BiPoly({(len(self.monomers), len(self.dimers)): 1})

    def to_json(self) -> list:
        return [{"m": p[0]} if len(p) == 1 else {"d": list(p)} for p in self.pieces]

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "Tiling":
        pieces = []
        for item in data:
            if "m" in item:
                pieces.append((int(item["m"]),))
            else:
                u, v = sorted(int(x) for x in item["d"])
                pieces.append((u, v))
        return cls(tuple(sorted(pieces)))


def validate_tiling(graph: CellGraph, tiling: Tiling) -> None:
    seen = set()
    for piece in tiling.pieces:
        if len(piece) == 2 and tuple(piece) not in graph.edges:
            raise ParameterError(f"domino {piece} is not an edge of the board")
        for c in piece:
            if c in seen:
                raise ParameterError(f"cell {c} covered twice")
            seen.add(c)
    if seen != set(range(graph.size)):
        raise ParameterError("tiling does not cover every cell")


def _check_limit(graph: CellGraph, limit: Optional[int]) -> None:
    limit = DEFAULT_LIMIT if limit is None else limit
    if graph.size > limit:
        raise OracleLimitError(graph.size, limit)


def _forward_neighbours(graph: CellGraph) -> List[List[int]]:
    return [[w for w in row if w > v] for v, row in enumerate(graph.neighbours())]


def enumerate_tilings(graph: CellGraph, limit: Optional[int] = None) -> Iterator[Tiling]:
    """Yield every tiling exactly once, in deterministic branch order."""
    _check_limit(graph, limit)
    return _enumerate(graph)


def _enumerate(graph: CellGraph) -> Iterator[Tiling]:
    n = graph.size
    fwd = _forward_neighbours(graph)
    pieces: List[Tuple[int, ...]] = []

    def rec(v: int, covered: int):
        while v < n and covered >> v & 1:
            v += 1
        if v == n:
            # pieces are appended in order of their smallest cell: already canonical
            yield Tiling(tuple(pieces))
            return
        pieces.append((v,))
        yield from rec(v + 1, covered | 1 << v)
        pieces.pop()
        for w in fwd[v]:
            if not covered >> w & 1:
                pieces.append((v, w))
                yield from rec(v + 1, covered | 1 << v | 1 << w)
                pieces.pop()

    yield from rec(0, 0)


@functools.lru_cache(maxsize=256)
def _tally(graph: CellGraph) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Histogram of tilings by dimer count: (all tilings, unbreakable tilings).

    Same search as ``enumerate_tilings`` without materialising pieces.  A
    tiling is unbreakable when its dimers hit the cut set of every position.
    """
    n = graph.size
    fwd = _forward_neighbours(graph)
    crossing = {}
    for pos, es in graph.cuts.items():
        for e in es:
            crossing[e] = crossing.get(e, 0) | 1 << (pos - 1)
    fwd_bits = [[(w, crossing.get((v, w), 0)) for w in row] for v, row in enumerate(fwd)]
    everything = (1 << len(graph.cuts)) - 1
    total = [0] * (n // 2 + 1)
    unbroken = [0] * (n // 2 + 1)

    def rec(v, covered, d, crossed):
        while v < n and covered >> v & 1:
            v += 1
        if v == n:
            total[d] += 1
            if crossed == everything:
                unbroken[d] += 1
            return
        bit = 1 << v
        rec(v + 1, covered | bit, d, crossed)
        for w, cb in fwd_bits[v]:
            if not covered >> w & 1:
                rec(v + 1, covered | bit | 1 << w, d + 1, crossed | cb)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        rec(0, 0, 0, 0)
    finally:
        sys.setrecursionlimit(old)
    return tuple(total), tuple(unbroken)


def _histogram_poly(cells: int, hist: Sequence[int]) -> BiPoly:
    return BiPoly({(cells - 2 * d, d): c for d, c in enumerate(hist) if c})


def weighted_count(graph: CellGraph, limit: Optional[int] = None) -> BiPoly:
    """Sum over tilings of a^(#squares) * b^(#dominoes)."""
    _check_limit(graph, limit)
    total, _ = _tally(graph)
    return _histogram_poly(graph.size, total)


def count(graph: CellGraph, limit: Optional[int] = None) -> int:
    return weighted_count(graph, limit).eval(1, 1)


def is_breakable_at(graph: CellGraph, tiling: Tiling, position: int) -> bool:
    cut = cut_edges(graph, position)
    return not any(d in cut for d in tiling.dimers)


def unbreakable_count(graph: CellGraph, limit: Optional[int] = None) -> BiPoly:
    """Weighted count of tilings that are breakable at no position 1..n-1."""
    _check_limit(graph, limit)
    _, unbroken = _tally(graph)
    return _histogram_poly(graph.size, unbroken)


def _column_order(graph: CellGraph) -> List[int]:
    return [c.id for c in sorted(graph.cells, key=lambda c: (c.column, c.level, c.index))]


def frontier_count(graph: CellGraph, order: Optional[Sequence[int]] = None) -> BiPoly:
    """Weighted tiling count by profile dynamic programming.

    Cells are swept in ``order`` (column by column by default).  The state is
    the set of not-yet-swept cells already covered by a domino, stored as a
    bitmask relative to the current sweep position.
    """
    order = list(_column_order(graph) if order is None else order)
    if sorted(order) != list(range(graph.size)):
        raise ParameterError("order must be a permutation of the cell ids")
    rank = {c: i for i, c in enumerate(order)}
    adj = graph.neighbours()
    ahead = [sorted(rank[w] - i for w in adj[c] if rank[w] > i) for i, c in enumerate(order)]

    states = {0: {0: 1}}  # frontier mask -> {dimer count: tilings}
    for offsets in ahead:
        nxt: dict = {}
        for mask, hist in states.items():
            if mask & 1:
                moves = [(mask >> 1, 0)]
            else:
                moves = [(mask >> 1, 0)]
                moves += [((mask | 1 << k) >> 1, 1) for k in offsets if not mask >> k & 1]
            for new_mask, extra in moves:
                bucket = nxt.setdefault(new_mask, {})
                for d, c in hist.items():
                    bucket[d + extra] = bucket.get(d + extra, 0) + c
        states = nxt
    hist = states.get(0, {})
    return BiPoly({(graph.size - 2 * d, d): c for d, c in hist.items()})
