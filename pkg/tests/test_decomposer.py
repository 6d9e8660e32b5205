import pytest

from conftest import c5, digon, doubled_triangle, k4, k5, nested_optimal, petersen
from covdex import (
    CoverDecomposition,
    FailureReport,
    StageAssertionFailed,
    boundary_counts,
    build,
    decompose,
    gupta_bound,
    is_connected,
    map_back,
    regularize,
    verify_decomposition,
)
from covdex.decomposer import contract_blocks, puncture
from covdex.multigraph import SplitRecord, SplitTrace
from covdex.oracle import FuzzConfig, random_multigraph


def decomposed_ok(g):
    result = decompose(g)
    assert isinstance(result, CoverDecomposition), getattr(result, "message", None)
    verdict = verify_decomposition(g, [sorted(c) for c in result.covers])
    assert verdict.ok, verdict.problems
    return result


def test_regularize_no_splits_when_already_regular(k4):
    h, trace = regularize(k4, 2)
    assert h is k4 or h.edges == k4.edges
    assert trace.records == ()


def test_regularize_brings_degrees_down_to_k_plus_one():
    # 5-cycle with doubled edges, plus two extra parallel edges at vertex 0:
    # k = 3 and vertex 0 starts at degree k+3.
    base = [(i, (i + 1) % 5) for i in range(5)] * 2
    g = build(5, base + [(0, 1), (0, 4)])
    b = gupta_bound(g)
    assert b.k == 3
    assert g.degree(0) == b.k + 3
    h, trace = regularize(g, b.k)
    assert len(trace.records) == sum(max(0, d - (b.k + 1)) for d in g.degrees())
    for v in range(5):
        assert h.degree(v) == b.k + 1
    for record in trace.records:
        assert h.degree(record.new_vertex) == 1
    assert sum(h.degrees()) == 2 * len(h.edges)


def test_regularize_rejects_low_degree():
    with pytest.raises(StageAssertionFailed):
        regularize(c5(), 2)


def test_puncture_nothing_without_optimal_sets(k4):
    h1, punctures = puncture(k4, 2, 4)
    assert punctures == ()
    assert h1.edges == k4.edges


def test_puncture_removes_one_internal_edge_per_block():
    g = doubled_triangle()
    h1, punctures = puncture(g, 3, 3)
    assert len(punctures) == 1
    p = punctures[0]
    assert p.block == frozenset({0, 1, 2})
    assert p.edge == 0  # smallest internal edge id
    assert (p.x, p.y) == (0, 1)
    internal, _, _ = boundary_counts(h1, p.block)
    assert internal == (3 + 2) * (3 - 1) // 2  # (k+2)(|U|-1)/2


def test_contract_blocks_merges_and_checks_degree():
    g = doubled_triangle()
    h1, punctures = puncture(g, 3, 3)
    h2, vmap, merged, degree_ok = contract_blocks(h1, punctures, 3, True)
    assert h2.vertex_count == 1
    assert h2.edges == ()
    assert merged == [0]
    assert degree_ok
    assert set(vmap.values()) == {0}


@pytest.mark.parametrize(
    "maker,expect_k",
    [
        (c5, 1),
        (k4, 2),
        (k5, 3),
        (digon, 1),
        (petersen, 2),
        (doubled_triangle, 3),
        (nested_optimal, 5),
    ],
)
def test_decompose_named_instances(maker, expect_k):
    g = maker()
    result = decomposed_ok(g)
    assert result.k == expect_k
    assert len(result.covers) == expect_k


def test_decompose_two_disjoint_blocks():
    # two doubled triangles side by side: both vertex sets are optimal, so
    # the pipeline punctures and contracts two blocks at once
    pairs = [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]
    pairs += [(3, 4), (3, 4), (4, 5), (4, 5), (3, 5), (3, 5)]
    g = build(6, pairs)
    result = decomposed_ok(g)
    assert result.k == 3
    assert result.stages["blocks"] == 2


def test_decompose_trivial_inputs():
    assert decompose(build(2, [(0, 1)])).k == 0  # single edge: k = 0
    assert decompose(build(0, [])).covers == ()
    assert decompose(build(3, [(0, 1)])).k == 0  # isolated vertex forces delta 0


def test_decompose_covers_are_original_edge_ids():
    g = nested_optimal()
    result = decomposed_ok(g)
    all_ids = {e.id for e in g.edges}
    used = set()
    for cover in result.covers:
        assert cover <= all_ids
        assert not (cover & used)
        used |= cover


def test_decompose_reports_failure_outside_hypotheses():
    g = random_multigraph(
        FuzzConfig(n=5, max_multiplicity=5, edge_probability=0.7, seed=200000)
    )
    b = gupta_bound(g)
    assert g.max_multiplicity() > 2 and b.k > 6  # outside both hypotheses
    result = decompose(g)
    assert isinstance(result, FailureReport)
    assert result.stage == "special-coloring"
    assert not result.hypotheses_held
    assert result.state is not None
    assert result.to_dict()["failed_stage"] == "special-coloring"


def test_map_back_identity_without_splits():
    sets = [frozenset({1, 2}), frozenset({3})]
    assert map_back(sets, SplitTrace()) == sets


def test_map_back_resolves_chains():
    trace = SplitTrace(
        (
            SplitRecord(new_vertex=5, original_vertex=0, moved_edge=2, new_edge=10),
            SplitRecord(new_vertex=6, original_vertex=1, moved_edge=10, new_edge=11),
        )
    )
    assert map_back([frozenset({11, 3})], trace) == [frozenset({2, 3})]


def test_decompose_handles_disconnected_graphs():
    # two triangles side by side, doubled edges in one of them
    pairs = [(0, 1), (1, 2), (0, 2)] + [(3, 4), (4, 5), (3, 5)] * 2
    g = build(6, pairs)
    assert not is_connected(g)
    result = decomposed_ok(g)
    assert result.k == gupta_bound(g).k


def test_decompose_stage_report_is_deterministic():
    g = nested_optimal()
    first = decompose(g)
    second = decompose(g)
    assert first.to_dict() == second.to_dict()


def test_end_to_end_fuzz_within_hypotheses():
    done = 0
    seed = 31_000
    while done < 150:
        n = 3 + seed % 5
        g = random_multigraph(
            FuzzConfig(n=n, max_multiplicity=2, edge_probability=0.6, seed=seed)
        )
        seed += 1
        if not g.edges:
            continue
        done += 1
        decomposed_ok(g)


def test_end_to_end_fuzz_small_k_hypothesis():
    done = 0
    seed = 77_000
    while done < 100:
        n = 3 + seed % 4
        g = random_multigraph(
            FuzzConfig(n=n, max_multiplicity=3, edge_probability=0.7, seed=seed)
        )
        seed += 1
        if not g.edges or gupta_bound(g).k > 6:
            continue
        done += 1
        decomposed_ok(g)
