import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import c5, digon, k3, k4, k5, petersen
from covdex import (
    BudgetExhausted,
    build,
    chain,
    chromatic_index,
    find_coloring,
    is_proper,
    is_s_dense,
    kempe_swap,
    linked,
    missing,
    present,
)
from covdex.coloring import EdgeColoring
from covdex.oracle import FuzzConfig, random_multigraph


def k3_coloring():
    # edges 0:(0,1) 1:(1,2) 2:(0,2) colored 1,2,3
    return EdgeColoring(3, {0: 1, 1: 2, 2: 3})


def test_present_missing_k3():
    g, c = k3(), k3_coloring()
    for v in range(3):
        assert len(missing(c, g, v)) == 1
        assert present(c, g, v) | missing(c, g, v) == {1, 2, 3}
        assert not present(c, g, v) & missing(c, g, v)


def test_missing_at_isolated_vertex_is_whole_palette():
    g = build(3, [(0, 1)])
    c = EdgeColoring(4, {0: 2})
    assert missing(c, g, 2) == {1, 2, 3, 4}


def test_digon_with_two_colors_misses_nothing():
    g = digon()
    c = EdgeColoring(2, {0: 1, 1: 2})
    assert missing(c, g, 0) == frozenset()
    assert missing(c, g, 1) == frozenset()


def test_chain_path_through_k3():
    g, c = k3(), k3_coloring()
    ch = chain(c, g, 0, 1, 2)
    assert ch.kind == "path"
    assert ch.vertices == (0, 1, 2)
    assert ch.edges == (0, 1)


def test_chain_trivial_when_both_colors_missing():
    g = k3()
    ch = chain(EdgeColoring(5, {0: 1, 1: 2, 2: 3}), g, 0, 4, 5)
    assert ch.is_trivial and ch.vertices == (0,) and ch.kind == "path"


def test_chain_even_cycle():
    g = build(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    c = EdgeColoring(2, {0: 1, 1: 2, 2: 1, 3: 2})
    ch = chain(c, g, 2, 1, 2)
    assert ch.kind == "cycle"
    assert len(ch.edges) == 4
    assert ch.vertices[0] == 0  # canonical rotation


def test_chain_digon_is_two_cycle():
    g = digon()
    c = EdgeColoring(2, {0: 1, 1: 2})
    ch = chain(c, g, 0, 1, 2)
    assert ch.kind == "cycle"
    assert len(ch.edges) == 2


def test_chain_oriented_from():
    g, c = k3(), k3_coloring()
    ch = chain(c, g, 0, 1, 2)
    verts, eids = ch.oriented_from(2)
    assert verts == (2, 1, 0)
    assert eids == (1, 0)
    with pytest.raises(ValueError):
        ch.oriented_from(1)


def test_linked_examples():
    g, c = k3(), k3_coloring()
    assert linked(c, g, 0, 2, 1, 2)  # path 0-1-2 contains both
    assert linked(c, g, 0, 1, 1, 2)
    c2 = EdgeColoring(4, {0: 1, 1: 2, 2: 4})
    assert not linked(c2, g, 0, 2, 1, 3)  # vertex 2 sees neither 1 nor 3


def test_kempe_swap_trivial_chain_is_identity():
    g, c = k3(), k3_coloring()
    ch = chain(EdgeColoring(5, c.assignment), g, 0, 4, 5)
    swapped = kempe_swap(EdgeColoring(5, c.assignment), ch)
    assert swapped.assignment == c.assignment


def test_kempe_swap_involution_and_endpoint_flip():
    g, c = k3(), k3_coloring()
    ch = chain(c, g, 0, 1, 2)
    assert missing(c, g, 0) == {2} and missing(c, g, 2) == {1}
    once = kempe_swap(c, ch)
    assert is_proper(g, once)
    # path endpoints exchange their missing chain color
    assert missing(once, g, 0) == {1} and missing(once, g, 2) == {2}
    twice = kempe_swap(once, ch)
    assert twice.assignment == c.assignment


def test_kempe_swap_rejects_stale_chain():
    g, c = k3(), k3_coloring()
    ch = chain(c, g, 0, 1, 2)
    recolored = c.with_colors({0: 3, 2: 1})
    with pytest.raises(ValueError):
        kempe_swap(recolored, ch)


def test_find_coloring_k3():
    assert find_coloring(k3(), 3) is not None
    assert find_coloring(k3(), 2) is None


def test_find_coloring_petersen():
    g = petersen()
    assert find_coloring(g, 3) is None  # exhaustive: no 3-edge-coloring exists
    four = find_coloring(g, 4)
    assert four is not None and is_proper(g, four)


def test_find_coloring_budget_is_a_distinct_outcome():
    with pytest.raises(BudgetExhausted):
        find_coloring(petersen(), 3, budget=5)


def test_find_coloring_empty_and_zero_palette():
    g = build(3, [])
    assert find_coloring(g, 0) is not None
    assert find_coloring(k3(), 0) is None


@pytest.mark.parametrize(
    "graph,chi",
    [(k3(), 3), (digon(), 2), (k4(), 3), (c5(), 3), (k5(), 5), (petersen(), 4)],
)
def test_chromatic_index_named(graph, chi):
    assert chromatic_index(graph) == chi


def test_is_s_dense():
    assert is_s_dense(k3()) == 3
    assert is_s_dense(k5()) == 5
    assert is_s_dense(k4()) is None  # even order
    assert is_s_dense(build(3, [(0, 1), (1, 2)])) == 2
    assert is_s_dense(build(3, [])) is None  # s = 0 does not count
    assert is_s_dense(c5()) is None  # 2|E|/(n-1) = 10/4


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=9999))
def test_solver_output_is_proper_and_swaps_preserve_it(seed):
    rng = random.Random(seed)
    g = random_multigraph(FuzzConfig(n=rng.randint(3, 8), max_multiplicity=2, seed=seed))
    if not g.edges:
        return
    m = g.max_degree() + 2
    coloring = find_coloring(g, m)
    assert coloring is not None
    assert is_proper(g, coloring)
    v = rng.randrange(g.vertex_count)
    a, b = rng.sample(range(1, m + 1), 2)
    ch = chain(coloring, g, v, a, b)
    swapped = kempe_swap(coloring, ch)
    assert is_proper(g, swapped)
    assert kempe_swap(swapped, ch).assignment == coloring.assignment


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=9999))
def test_chains_partition_two_color_subgraph(seed):
    rng = random.Random(seed)
    g = random_multigraph(FuzzConfig(n=rng.randint(3, 8), max_multiplicity=2, seed=seed))
    if not g.edges:
        return
    m = g.max_degree() + 2  # enough colors for multiplicity 2
    coloring = find_coloring(g, m)
    if m < 2:
        return
    a, b = 1, 2
    covered = set()
    edge_sets = []
    for v in g.vertices():
        ch = chain(coloring, g, v, a, b)
        if ch.is_trivial:
            continue
        if frozenset(ch.edges) not in edge_sets:
            assert not (set(ch.vertices) & covered)
            covered |= set(ch.vertices)
            edge_sets.append(frozenset(ch.edges))
    two_colored = {e.id for e in g.edges if coloring.assignment[e.id] in (a, b)}
    assert set().union(*edge_sets) == two_colored if edge_sets else not two_colored
