"""Cell graphs of (2 x n)-boards on the square mosaic {4, q}.

The board is kept purely combinatorial.  Level 1 is the row of squares
``s_1 .. s_n``; level 2 is a path ``t_1 .. t_{n(q-3)}`` split into column
blocks of ``q - 3`` cells.  Block ``i`` starts with the square sitting on top
of ``s_i`` followed by the ``q - 4`` squares of the fan around the vertex
shared with ``s_{i+1}``; ``s_i`` touches only the first cell of its block.

Cell ids are assigned level 1 ascending, then level 2 ascending, so they are
stable across runs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .errors import ParameterError

Edge = Tuple[int, int]

FULL, SUB_A, SUB_B, SUB_C, PATH = "full", "A", "B", "C", "path"
VARIANTS = (FULL, SUB_A, SUB_B, SUB_C, PATH)


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class BoardSpec:
    """Which board to build.

    ``variant`` is one of ``full``, ``A`` (last level-2 cell removed), ``B``
    (last level-1 cell removed), ``C`` (both removed) or ``path``.  A path
    board has ``m`` cells in a row and ignores ``q`` and ``n``.
    """

    q: int = 4
    n: int = 0
    variant: str = FULL
    m: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ParameterError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.variant == PATH:
            if self.m < 0:
                raise ParameterError(f"path length must be >= 0, got m={self.m}")
            return
        if self.q < 4:
            raise ParameterError(f"mosaic parameter q must be >= 4, got q={self.q}")
        if self.n < 0:
            raise ParameterError(f"board length n must be >= 0, got n={self.n}")
        if self.variant != FULL and self.n < 1:
            raise ParameterError(f"variant {self.variant} needs n >= 1, got n={self.n}")

    @classmethod
    def path(cls, m: int) -> "BoardSpec":
        return cls(variant=PATH, m=m)


@dataclass(frozen=True)
class Cell:
    id: int
    level: int
    column: int
    index: int  # position within its level, 1-based: s_index or t_index

    @property
    def label(self) -> str:
        return f"{'s' if self.level == 1 else 't'}{self.index}"


@dataclass(frozen=True)
class CellGraph:
    q: Optional[int]
    n: int
    variant: str
    cells: Tuple[Cell, ...]
    edges: FrozenSet[Edge]
    cuts: Mapping[int, FrozenSet[Edge]] = field(default_factory=dict, hash=False)

    def __len__(self):
        return len(self.cells)

    @property
    def size(self) -> int:
        return len(self.cells)

    def cell(self, label: str) -> Cell:
        for c in self.cells:
            if c.label == label:
                return c
        raise KeyError(label)

    def id_of(self, label: str) -> int:
        return self.cell(label).id

    def neighbours(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in self.cells]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def level_counts(self) -> Tuple[int, int]:
        ones = sum(1 for c in self.cells if c.level == 1)
        return ones, len(self.cells) - ones

    def labelled_edges(self) -> List[Tuple[str, str]]:
        lab = [c.label for c in self.cells]
        return [(lab[u], lab[v]) for u, v in sorted(self.edges)]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "variant": self.variant,
            "cells": [{"id": c.id, "level": c.level, "column": c.column} for c in self.cells],
            "edges": [list(e) for e in sorted(self.edges)],
            "cuts": {str(i): [list(e) for e in sorted(self.cuts[i])] for i in sorted(self.cuts)},
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _assemble(q, n, variant, level1, level2, raw_edges, raw_cuts) -> CellGraph:
    """Build a CellGraph from labelled cells.

    ``level1`` / ``level2`` are lists of (index, column) in left-to-right
    order; edges refer to cells as ("s", index) or ("t", index).
    """
    ids: Dict[Tuple[str, int], int] = {}
    cells = []
    for idx, col in level1:
        ids[("s", idx)] = len(cells)
        cells.append(Cell(len(cells), 1, col, idx))
    for idx, col in level2:
        ids[("t", idx)] = len(cells)
        cells.append(Cell(len(cells), 2, col, idx))

    def resolve(pair):
        u, v = pair
        if u in ids and v in ids:
            return _edge(ids[u], ids[v])
        return None

    edges = frozenset(e for e in map(resolve, raw_edges) if e is not None)
    cuts = {}
    for pos, pairs in raw_cuts.items():
        cuts[pos] = frozenset(e for e in map(resolve, pairs) if e is not None)
    return CellGraph(q, n, variant, tuple(cells), edges, cuts)


def build_board(spec: BoardSpec) -> CellGraph:
    if spec.variant == PATH:
        m = spec.m
        level1 = [(i, i) for i in range(1, m + 1)]
        raw_edges = [(("s", i), ("s", i + 1)) for i in range(1, m)]
        return _assemble(None, m, PATH, level1, [], raw_edges, {})

    q, n = spec.q, spec.n
    w = q - 3  # level-2 cells per column block
    total_t = n * w
    drop_s = spec.variant in (SUB_B, SUB_C)
    drop_t = spec.variant in (SUB_A, SUB_C)

    level1 = [(i, i) for i in range(1, n + 1) if not (drop_s and i == n)]
    level2 = [(k, (k - 1) // w + 1) for k in range(1, total_t + 1) if not (drop_t and k == total_t)]

    raw_edges = [(("s", i), ("s", i + 1)) for i in range(1, n)]
    raw_edges += [(("t", k), ("t", k + 1)) for k in range(1, total_t)]
    raw_edges += [(("s", i), ("t", (i - 1) * w + 1)) for i in range(1, n + 1)]
    raw_cuts = {
        i: [(("s", i), ("s", i + 1)), (("t", i * w), ("t", i * w + 1))] for i in range(1, n)
    }
    return _assemble(q, n, spec.variant, level1, level2, raw_edges, raw_cuts)


def board(q: int, n: int, variant: str = FULL) -> CellGraph:
    """Shorthand for ``build_board(BoardSpec(q, n, variant))``."""
    return build_board(BoardSpec(q, n, variant))


def path_board(m: int) -> CellGraph:
    return build_board(BoardSpec.path(m))


def cut_edges(graph: CellGraph, position: int) -> FrozenSet[Edge]:
    if graph.variant == PATH:
        raise ParameterError("path boards have no cut positions")
    if not 1 <= position <= graph.n - 1:
        raise ParameterError(f"cut position must lie in 1..{graph.n - 1}, got {position}")
    return graph.cuts[position]


def board_stats(graph: CellGraph) -> Tuple[Tuple[int, int], int, int]:
    """(cells per level, edge count, number of cut positions)."""
    return graph.level_counts(), len(graph.edges), len(graph.cuts)


def mirror(graph: CellGraph) -> CellGraph:
    """Relabel the board right-to-left: each level is read in reverse."""
    by_level = {1: [c for c in graph.cells if c.level == 1], 2: [c for c in graph.cells if c.level == 2]}
    cols = graph.n + 1
    new_id = {}
    cells = []
    for level in (1, 2):
        for pos, c in enumerate(reversed(by_level[level]), start=1):
            new_id[c.id] = len(cells)
            cells.append(Cell(len(cells), level, cols - c.column, pos))
    edges = frozenset(_edge(new_id[u], new_id[v]) for u, v in graph.edges)
    cuts = {
        graph.n - i: frozenset(_edge(new_id[u], new_id[v]) for u, v in es)
        for i, es in graph.cuts.items()
    }
    return CellGraph(graph.q, graph.n, graph.variant, tuple(cells), edges, cuts)


def components(graph: CellGraph, removed: Iterable[Edge] = ()) -> List[List[int]]:
    """Connected components (sorted cell ids) after deleting ``removed`` edges."""
    removed = {_edge(*e) for e in removed}
    parent = list(range(len(graph.cells)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in graph.edges:
        if (u, v) not in removed:
            parent[find(u)] = find(v)
    groups: Dict[int, List[int]] = {}
    for c in graph.cells:
        groups.setdefault(find(c.id), []).append(c.id)
    return sorted(groups.values())


def induced(graph: CellGraph, keep: Iterable[int]) -> CellGraph:
    """Subgraph on ``keep`` with ids, indices and columns renumbered from 1/0."""
    keep = sorted(set(keep))
    kept = [graph.cells[i] for i in keep]
    first_col = min((c.column for c in kept), default=1)
    new_id = {}
    cells = []
    for level in (1, 2):
        pos = 0
        for c in kept:
            if c.level == level:
                pos += 1
                new_id[c.id] = len(cells)
                cells.append(Cell(len(cells), level, c.column - first_col + 1, pos))
    edges = frozenset(_edge(new_id[u], new_id[v]) for u, v in graph.edges if u in new_id and v in new_id)
    ncols = len({c.column for c in cells})
    return CellGraph(graph.q, ncols, "induced", tuple(cells), edges, {})
