"""End-to-end construction of k edge-disjoint edge covers.

Stages: compute the bound k; split high-degree vertices down to degree
k+1; puncture one internal edge of every inclusion-minimal optimal set;
certify the core is (k+2)-edge-colorable; contract the punctured blocks;
recolor the contracted graph so the two reserve colors avoid the block
vertices; color each block and splice; orient the reserve subgraph and
patch the first k color classes into covers; map split edges back.

Every stage re-verifies the counting identities it relies on.  The k-cover
guarantee is proven under either of two hypotheses: maximum multiplicity
at most 2, or k at most 6.  Failures are returned as a report carrying the
failed stage and whether a hypothesis held (a hypothesis-satisfying
failure means a bug; a hypothesis-violating one is a data point on open
territory).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import dense_lift
from .coloring import COLOR_BUDGET_DEFAULT, EdgeColoring, find_coloring, is_proper
from .density import (
    SUBSET_CAP_DEFAULT,
    all_min_optimal_sets,
    codensity,
    gupta_bound,
    min_optimal_containing,
)
from .errors import (
    AugmentationFailed,
    BudgetExhausted,
    CodensityDropped,
    CovdexError,
    DegreeBoundFailed,
    NoInternalEdge,
    StageAssertionFailed,
    TooLarge,
)
from .multigraph import (
    Multigraph,
    SplitTrace,
    boundary_counts,
    contract_set,
    induced_subgraph,
    split_off,
)
from .oracle import verify_decomposition
from .special_coloring import special_coloring


@dataclass(frozen=True)
class Puncture:
    """One optimal set with its removed internal edge (x < y)."""

    block: frozenset[int]
    x: int
    y: int
    edge: int


@dataclass(frozen=True)
class Orientation:
    """Arcs (tail, head, edge id) over the reserve-color subgraph."""

    arcs: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class CoverDecomposition:
    """k pairwise-disjoint edge covers over the original edge ids."""

    k: int
    covers: tuple[frozenset[int], ...]
    stages: Mapping[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "covers": [sorted(c) for c in self.covers],
            "stages": dict(self.stages),
        }


@dataclass(frozen=True)
class FailureReport:
    """A pipeline failure: which stage, why, and under which hypotheses."""

    stage: str
    error: str
    message: str
    hypotheses_held: bool
    stages: Mapping[str, object] = field(default_factory=dict)
    state: Mapping[str, object] | None = None

    def to_dict(self) -> dict:
        out = {
            "failed_stage": self.stage,
            "error": self.error,
            "message": self.message,
            "hypotheses_held": self.hypotheses_held,
            "stages": dict(self.stages),
        }
        if self.state is not None:
            out["state"] = dict(self.state)
        return out


@dataclass(frozen=True)
class DecomposeOptions:
    subset_cap: int = SUBSET_CAP_DEFAULT
    color_budget: int = COLOR_BUDGET_DEFAULT
    step_budget: int | None = None


def _graph_obj(g: Multigraph) -> dict:
    return {"n": g.vertex_count, "edges": [[e.id, e.u, e.v] for e in g.edges]}


def _coloring_obj(c: EdgeColoring) -> dict:
    return {"palette": c.palette, "assignment": sorted(c.assignment.items())}


@dataclass
class PipelineState:
    """Accumulated artifacts of one run, serializable for post-mortems."""

    original: Multigraph
    k: int = 0
    h: Multigraph | None = None
    trace: SplitTrace = SplitTrace()
    punctures: tuple[Puncture, ...] = ()
    h1: Multigraph | None = None
    core_coloring: EdgeColoring | None = None
    h2: Multigraph | None = None
    vertex_map: dict[int, int] | None = None
    contracted_coloring: EdgeColoring | None = None
    lifted_coloring: EdgeColoring | None = None
    orientation: Orientation | None = None
    covers_h1: tuple[frozenset[int], ...] = ()
    covers: tuple[frozenset[int], ...] = ()

    def to_dict(self) -> dict:
        out: dict[str, object] = {"original": _graph_obj(self.original), "k": self.k}
        if self.h is not None:
            out["regularized"] = _graph_obj(self.h)
            out["splits"] = [
                [r.new_vertex, r.original_vertex, r.moved_edge, r.new_edge]
                for r in self.trace.records
            ]
        if self.punctures:
            out["punctures"] = [
                {"block": sorted(p.block), "x": p.x, "y": p.y, "edge": p.edge}
                for p in self.punctures
            ]
        if self.h1 is not None:
            out["punctured"] = _graph_obj(self.h1)
        if self.core_coloring is not None:
            out["core_coloring"] = _coloring_obj(self.core_coloring)
        if self.h2 is not None:
            out["contracted"] = _graph_obj(self.h2)
            out["vertex_map"] = sorted((self.vertex_map or {}).items())
        if self.contracted_coloring is not None:
            out["contracted_coloring"] = _coloring_obj(self.contracted_coloring)
        if self.lifted_coloring is not None:
            out["lifted_coloring"] = _coloring_obj(self.lifted_coloring)
        if self.orientation is not None:
            out["arcs"] = [list(a) for a in self.orientation.arcs]
        if self.covers_h1:
            out["covers_before_mapping"] = [sorted(c) for c in self.covers_h1]
        if self.covers:
            out["covers"] = [sorted(c) for c in self.covers]
        return out


def regularize(
    g: Multigraph, k: int, *, cap: int = SUBSET_CAP_DEFAULT
) -> tuple[Multigraph, SplitTrace]:
    """Split edges off high-degree vertices until every original vertex has
    degree exactly k+1, re-verifying the odd-set bound after each split."""
    n = g.vertex_count
    if g.min_degree() < k + 1:
        raise StageAssertionFailed("regularize", f"minimum degree below {k + 1}")
    h = g
    trace = SplitTrace()
    original = range(n)
    for x in original:
        while h.degree(x) >= k + 2:
            cert = min_optimal_containing(h, x, k, restrict_to=original, cap=cap)
            if cert is None:
                eid = min(e.id for e in h.incident(x))
            else:
                members = cert.as_set()
                partners = sorted(
                    e.other(x) for e in h.incident(x) if e.other(x) in members
                )
                if not partners:
                    raise StageAssertionFailed(
                        "regularize", f"vertex {x} has no neighbor inside {sorted(members)}"
                    )
                y = partners[0]
                eid = min(e.id for e in h.incident(x) if e.touches(y))
            h, record = split_off(h, x, eid)
            trace = trace.extend(record)
            value, witness = codensity(h, restrict_to=original, cap=cap)
            if value is not None and value < k:
                raise CodensityDropped(
                    f"splitting edge {eid} off {x} dropped the odd-set bound: "
                    f"{value} < {k} at {witness.vertices if witness else ()}"
                )
    for v in original:
        if h.degree(v) != k + 1:
            raise StageAssertionFailed("regularize", f"vertex {v} ended at degree {h.degree(v)}")
    return h, trace


def puncture(
    h: Multigraph, k: int, n_original: int, *, cap: int = SUBSET_CAP_DEFAULT
) -> tuple[Multigraph, tuple[Puncture, ...]]:
    """Remove the smallest-id internal edge of every inclusion-minimal
    optimal set, and re-verify the resulting internal edge counts."""
    certs = all_min_optimal_sets(h, k, range(n_original), cap=cap)
    h1 = h
    punctures = []
    for cert in certs:
        members = cert.as_set()
        internal = [e for e in h1.edges if e.u in members and e.v in members]
        if not internal:
            raise NoInternalEdge(f"optimal set {cert.vertices} has no internal edge")
        size = len(members)
        expected_before = (k + 2) * (size - 1) // 2 + 1
        if len(internal) != expected_before:
            raise StageAssertionFailed(
                "puncture",
                f"set {cert.vertices} has {len(internal)} internal edges, "
                f"expected {expected_before}",
            )
        victim = min(internal, key=lambda e: e.id)
        x, y = sorted((victim.u, victim.v))
        h1 = h1.without_edge(victim.id)
        punctures.append(Puncture(members, x, y, victim.id))
    return h1, tuple(punctures)


def contract_blocks(
    h1: Multigraph,
    punctures: Sequence[Puncture],
    k: int,
    hypotheses_held: bool,
) -> tuple[Multigraph, dict[int, int], list[int], bool]:
    """Contract every punctured block; returns the graph, the composed
    vertex map, the merged vertex ids (aligned with punctures), and whether
    every merged vertex met the k/2 degree bound."""
    current = h1
    total_map = {v: v for v in h1.vertices()}
    merged: list[int] = []
    for p in punctures:
        image = {total_map[v] for v in p.block}
        result = contract_set(current, image)
        current = result.graph
        total_map = {v: result.vertex_map[w] for v, w in total_map.items()}
        merged = [result.vertex_map[u] for u in merged]
        merged.append(result.merged_vertex)
    degree_ok = True
    for p, u in zip(punctures, merged):
        _, boundary, _ = boundary_counts(h1, p.block)
        if current.degree(u) != boundary:
            raise StageAssertionFailed(
                "contract", f"merged vertex {u} has degree {current.degree(u)} != {boundary}"
            )
        if 2 * current.degree(u) > k:
            if hypotheses_held:
                raise DegreeBoundFailed(
                    f"block {sorted(p.block)} has boundary {boundary} > k/2 = {k}/2"
                )
            degree_ok = False
    return current, total_map, merged, degree_ok


def orient_and_augment(
    h1: Multigraph,
    psi: EdgeColoring,
    punctures: Sequence[Puncture],
    k: int,
    n_original: int,
) -> tuple[list[frozenset[int]], Orientation]:
    """Orient the two reserve color classes and patch classes 1..k into
    sets that each saturate the original vertices."""
    top = k + 2
    reserve = {
        eid for eid, c in psi.assignment.items() if c in (k + 1, top)
    }
    adj: dict[int, list] = {}
    for eid in sorted(reserve):
        e = h1.edge(eid)
        adj.setdefault(e.u, []).append(e)
        adj.setdefault(e.v, []).append(e)
    x_set = {p.x for p in punctures}
    for x in sorted(x_set):
        if len(adj.get(x, [])) > 1:
            raise AugmentationFailed(
                f"designated vertex {x} has reserve degree {len(adj[x])}"
            )

    arcs: list[tuple[int, int, int]] = []
    seen_edges: set[int] = set()

    def walk(start: int, first) -> tuple[list[int], list[int]]:
        verts, eids = [start], []
        cur, e = start, first
        while True:
            eids.append(e.id)
            cur = e.other(cur)
            verts.append(cur)
            if cur == start:
                return verts, eids
            options = [f for f in adj[cur] if f.id != e.id and f.id not in seen_edges]
            if not options:
                return verts, eids
            e = options[0]

    def emit(verts: list[int], eids: list[int]) -> None:
        for i, eid in enumerate(eids):
            arcs.append((verts[i], verts[i + 1], eid))
            seen_edges.add(eid)

    endpoints = sorted(v for v, es in adj.items() if len(es) == 1)
    for v in endpoints:
        pending = [e for e in adj[v] if e.id not in seen_edges]
        if not pending:
            continue
        verts, eids = walk(v, pending[0])
        head, tail = verts[-1], verts[0]
        if tail in x_set and head in x_set:
            raise AugmentationFailed(
                f"reserve path joins designated vertices {tail} and {head}"
            )
        if tail in x_set or (head not in x_set and tail > head):
            verts.reverse()
            eids.reverse()
        emit(verts, eids)
    for v in sorted(adj):
        pending = [e for e in adj[v] if e.id not in seen_edges]
        if not pending:
            continue
        first = min(
            pending, key=lambda e: (e.other(v), e.id)
        )  # cycle: head toward the smaller neighbor, then smaller edge id
        verts, eids = walk(v, first)
        if verts[-1] != v:
            raise AugmentationFailed(f"leftover reserve component at {v} is not a cycle")
        emit(verts, eids)

    in_arc = {head: eid for _, head, eid in arcs}
    classes: dict[int, set[int]] = {c: set(psi.color_class(c)) for c in range(1, k + 1)}
    present_low: dict[int, set[int]] = {v: set() for v in range(n_original)}
    for eid, c in psi.assignment.items():
        if c > k:
            continue
        e = h1.edge(eid)
        for w in (e.u, e.v):
            if w < n_original:
                present_low[w].add(c)
    y_of = {p.y: p for p in punctures}

    for v in range(n_original):
        gaps = [c for c in range(1, k + 1) if c not in present_low[v]]
        if v in y_of:
            p = y_of[v]
            if len(gaps) > 2:
                raise AugmentationFailed(f"vertex {v} missed by {len(gaps)} classes")
            if len(gaps) == 1:
                classes[gaps[0]].add(p.edge)
            elif len(gaps) == 2:
                if v not in in_arc:
                    raise AugmentationFailed(f"doubly-missed vertex {v} has no in-arc")
                classes[gaps[0]].add(in_arc[v])
                classes[gaps[1]].add(p.edge)
        else:
            if len(gaps) > 1:
                raise AugmentationFailed(f"vertex {v} missed by {len(gaps)} classes")
            if len(gaps) == 1:
                if v not in in_arc:
                    raise AugmentationFailed(f"missed vertex {v} has no in-arc")
                classes[gaps[0]].add(in_arc[v])

    return [frozenset(classes[c]) for c in range(1, k + 1)], Orientation(tuple(arcs))


def map_back(
    sets: Sequence[frozenset[int]], trace: SplitTrace
) -> list[frozenset[int]]:
    """Replace every split-created edge id by the original it descends from."""
    return [frozenset(trace.resolve(eid) for eid in s) for s in sets]


def _extend_to_pendants(
    h1: Multigraph, core: EdgeColoring, palette: int
) -> EdgeColoring:
    colors = dict(core.assignment)
    for e in sorted(h1.edges, key=lambda e: e.id):
        if e.id in colors:
            continue
        used = {
            colors[f.id]
            for w in (e.u, e.v)
            for f in h1.incident(w)
            if f.id in colors
        }
        for c in range(1, palette + 1):
            if c not in used:
                colors[e.id] = c
                break
        else:
            raise StageAssertionFailed("chi-prime", f"no free color for pendant edge {e.id}")
    return EdgeColoring(palette, colors)


def decompose(
    g: Multigraph, options: DecomposeOptions | None = None
) -> CoverDecomposition | FailureReport:
    """Run the whole pipeline; never raises on pipeline-semantic failures.

    TooLarge and BudgetExhausted (resource caps) still propagate, since
    they say nothing about the input graph.
    """
    opts = options or DecomposeOptions()
    bound = gupta_bound(g, cap=opts.subset_cap)
    k = bound.k
    mu = g.max_multiplicity()
    hypotheses_held = mu <= 2 or k <= 6
    stages: dict[str, object] = {
        "delta": bound.delta,
        "codensity": "inf" if bound.codensity is None else str(bound.codensity),
        "k": k,
        "mu": mu,
        "hypothesis_multiplicity": mu <= 2,
        "hypothesis_small_k": k <= 6,
        "hypotheses_held": hypotheses_held,
    }
    state = PipelineState(original=g, k=k)
    if k <= 0:
        stages["blocks"] = 0
        stages["splits"] = 0
        return CoverDecomposition(k=0, covers=(), stages=stages)

    stage = "regularize"
    try:
        h, trace = regularize(g, k, cap=opts.subset_cap)
        state.h, state.trace = h, trace
        stages["splits"] = len(trace.records)

        stage = "puncture"
        h1, punctures = puncture(h, k, g.vertex_count, cap=opts.subset_cap)
        state.h1, state.punctures = h1, punctures
        stages["blocks"] = len(punctures)
        stages["block_sizes"] = sorted(len(p.block) for p in punctures)

        stage = "chi-prime"
        core = induced_subgraph(h1, range(g.vertex_count))
        core_coloring = find_coloring(core, k + 2, opts.color_budget)
        if core_coloring is None:
            raise StageAssertionFailed(
                "chi-prime", f"punctured core admits no {k + 2}-edge-coloring"
            )
        full = _extend_to_pendants(h1, core_coloring, k + 2)
        if not is_proper(h1, full):
            raise StageAssertionFailed("chi-prime", "extended coloring is improper")
        state.core_coloring = full
        for p in punctures:
            seen: set[int] = set()
            for e in h1.edges:
                if (e.u in p.block) != (e.v in p.block):
                    c = full.color_of(e.id)
                    if c in seen:
                        raise StageAssertionFailed(
                            "chi-prime",
                            f"boundary color {c} repeats at block {sorted(p.block)}",
                        )
                    seen.add(c)

        stage = "contract"
        h2, vmap, merged, degree_ok = contract_blocks(h1, punctures, k, hypotheses_held)
        state.h2, state.vertex_map = h2, vmap
        stages["degree_bound_ok"] = degree_ok

        stage = "special-coloring"
        # The proven H1 coloring restricts to a proper coloring of the
        # contracted graph (boundary colors at each block are distinct), so
        # the recoloring loop starts from it instead of solving again.
        h2_start = EdgeColoring(
            k + 2, {e.id: full.color_of(e.id) for e in h2.edges}
        )
        phi2 = special_coloring(
            h2,
            k,
            merged,
            opts.step_budget,
            color_budget=opts.color_budget,
            initial=h2_start,
        )
        state.contracted_coloring = phi2

        stage = "lift"
        blocks = []
        for p in punctures:
            block_start = EdgeColoring(
                k + 2,
                {
                    e.id: full.color_of(e.id)
                    for e in h1.edges
                    if e.u in p.block and e.v in p.block
                },
            )
            bc = dense_lift.make_block(
                h1, sorted(p.block), p.x, p.y, k + 2, opts.color_budget,
                initial=block_start,
            )
            requirements = {
                e.id: phi2.color_of(e.id)
                for e in h1.edges
                if (e.u in p.block) != (e.v in p.block)
            }
            blocks.append(dense_lift.permute_block_palette(bc, requirements, h1, k))
        psi = dense_lift.assemble_lift(h1, phi2, blocks, k)
        state.lifted_coloring = psi

        stage = "augment"
        covers_h1, orientation = orient_and_augment(
            h1, psi, punctures, k, g.vertex_count
        )
        state.covers_h1 = tuple(covers_h1)
        state.orientation = orientation
        stages["reserve_arcs"] = [list(a) for a in orientation.arcs]

        stage = "map-back"
        covers = map_back(covers_h1, trace)
        state.covers = tuple(covers)

        stage = "verify"
        verdict = verify_decomposition(g, covers)
        if not verdict:
            raise AugmentationFailed("; ".join(verdict.problems))
    except (TooLarge, BudgetExhausted):
        raise
    except CovdexError as exc:
        return FailureReport(
            stage=stage,
            error=type(exc).__name__,
            message=str(exc),
            hypotheses_held=hypotheses_held,
            stages=stages,
            state=state.to_dict(),
        )

    stages["covers"] = k
    return CoverDecomposition(k=k, covers=tuple(covers), stages=stages)
