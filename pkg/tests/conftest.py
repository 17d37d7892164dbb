import itertools

import pytest

from mosaictile.bipoly import BiPoly


def matchings_by_subsets(graph):
    """Weighted tiling count by trying every edge subset.

    Shares nothing with the backtracking oracle: a tiling is a matching, the
    unmatched cells are the squares.
    """
    edges = sorted(graph.edges)
    terms = {}
    for k in range(len(graph.cells) // 2 + 1):
        for subset in itertools.combinations(edges, k):
            used = [c for e in subset for c in e]
            if len(set(used)) == len(used):
                key = (len(graph.cells) - 2 * k, k)
                terms[key] = terms.get(key, 0) + 1
    return BiPoly(terms)


@pytest.fixture
def subset_oracle():
    return matchings_by_subsets


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
