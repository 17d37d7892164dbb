import json

import pytest

from mosaictile.board import (
    BoardSpec,
    board,
    board_stats,
    build_board,
    components,
    cut_edges,
    induced,
    mirror,
    path_board,
)
from mosaictile.errors import ParameterError


def labels(graph, edges):
    lab = {c.id: c.label for c in graph.cells}
    return {frozenset((lab[u], lab[v])) for u, v in edges}


def pairs(*items):
    return {frozenset(p.split("-")) for p in items}


def test_cell_counts_q7_n4():
    g = board(7, 4)
    assert g.level_counts() == (4, 16)
    assert g.size == 20


def test_q5_single_column_is_three_cell_path():
    g = board(5, 1)
    assert labels(g, g.edges) == pairs("s1-t1", "t1-t2")


def test_q4_is_the_2x2_grid():
    g = board(4, 2)
    assert labels(g, g.edges) == pairs("s1-s2", "t1-t2", "s1-t1", "s2-t2")


def test_ids_are_level_one_first():
    g = board(5, 2)
    assert [c.label for c in g.cells] == ["s1", "s2", "t1", "t2", "t3", "t4"]
    assert [c.column for c in g.cells] == [1, 2, 1, 1, 2, 2]


def test_empty_board():
    g = board(6, 0)
    assert g.size == 0 and not g.edges and not g.cuts


@pytest.mark.parametrize(
    "q,n,pos,expected",
    [
        (5, 3, 2, ("s2-s3", "t4-t5")),
        (4, 2, 1, ("s1-s2", "t1-t2")),
        (6, 2, 1, ("s1-s2", "t3-t4")),
    ],
)
def test_cut_edges(q, n, pos, expected):
    g = board(q, n)
    assert labels(g, cut_edges(g, pos)) == pairs(*expected)


@pytest.mark.parametrize("pos", [0, 3, -1])
def test_cut_position_out_of_range(pos):
    with pytest.raises(ParameterError):
        cut_edges(board(5, 3), pos)


@pytest.mark.parametrize(
    "spec,expected",
    [
        (BoardSpec(4, 3), ((3, 3), 7, 2)),
        (BoardSpec(5, 2), ((2, 4), 6, 1)),
        (BoardSpec.path(5), ((5, 0), 4, 0)),
    ],
)
def test_board_stats(spec, expected):
    assert board_stats(build_board(spec)) == expected


@pytest.mark.parametrize("q", range(4, 10))
@pytest.mark.parametrize("n", range(0, 6))
def test_full_board_invariants(q, n):
    g = board(q, n)
    (l1, l2), n_edges, n_cuts = board_stats(g)
    assert (l1, l2) == (n, n * (q - 3))
    if n:
        assert n_edges == (n - 1) + (n * (q - 3) - 1) + n
    assert n_cuts == max(n - 1, 0)
    for i in range(1, n):
        cut = cut_edges(g, i)
        assert len(cut) == 2
        levels = sorted(g.cells[u].level for u, _ in cut)
        assert levels == [1, 2]
    # one cross edge per column, to the first cell of the block
    cross = [(u, v) for u, v in g.edges if g.cells[u].level != g.cells[v].level]
    assert labels(g, cross) == {frozenset((f"s{i}", f"t{(i - 1) * (q - 3) + 1}")) for i in range(1, n + 1)}


@pytest.mark.parametrize("q", range(4, 10))
def test_single_column_is_a_path(q):
    g = board(q, 1)
    p = path_board(q - 2)
    degrees = sorted(sum(c.id in e for e in g.edges) for c in g.cells)
    assert degrees == sorted(sum(c.id in e for e in p.edges) for c in p.cells)
    assert len(components(g)) == 1 and len(g.edges) == len(p.edges)


@pytest.mark.parametrize("q", range(4, 9))
def test_subboard_sizes_single_column(q):
    assert board(q, 1, "C").size == q - 4
    assert board(q, 1, "B").size == q - 3
    assert board(q, 1, "A").size == q - 3


def test_subboards_drop_the_right_cells():
    full = board(5, 2)
    assert [c.label for c in board(5, 2, "A").cells] == [c.label for c in full.cells if c.label != "t4"]
    assert [c.label for c in board(5, 2, "B").cells] == [c.label for c in full.cells if c.label != "s2"]
    assert [c.label for c in board(5, 2, "C").cells] == [c.label for c in full.cells if c.label not in ("s2", "t4")]


@pytest.mark.parametrize("q", [4, 5, 6])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_mirror_is_a_relabelling(q, n):
    g = board(q, n)
    m = mirror(g)
    assert m.size == g.size and len(m.edges) == len(g.edges)
    assert mirror(m) == g
    assert sorted(m.cuts) == sorted(g.cuts)


@pytest.mark.parametrize("q", [4, 5, 7])
@pytest.mark.parametrize("n", [2, 3, 5])
def test_cutting_splits_into_two_full_boards(q, n):
    g = board(q, n)
    for i in range(1, n):
        parts = components(g, cut_edges(g, i))
        assert len(parts) == 2
        left, right = sorted(parts, key=lambda p: min(g.cells[c].column for c in p))
        assert induced(g, left).edges == board(q, i).edges
        assert induced(g, right).edges == board(q, n - i).edges


@pytest.mark.parametrize(
    "kwargs",
    [dict(q=3, n=2), dict(q=5, n=-1), dict(q=5, n=0, variant="A"), dict(q=5, n=0, variant="C"), dict(variant="X")],
)
def test_invalid_specs(kwargs):
    with pytest.raises(ParameterError):
        BoardSpec(**kwargs)


def test_json_shape_and_stability():
    g = board(5, 2)
    doc = json.loads(g.to_json())
    assert set(doc) == {"q", "n", "variant", "cells", "edges", "cuts"}
    assert doc["cells"][2] == {"id": 2, "level": 2, "column": 1}
    assert doc["cuts"] == {"1": [[0, 1], [3, 4]]}
    assert board(5, 2).to_json() == g.to_json()
