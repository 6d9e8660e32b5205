"""Color punctured dense blocks and splice them into the outer coloring.

A punctured block has exactly s(|U|-1)/2 edges for palette s = k+2, so in
any proper s-coloring every class is a near-perfect matching and the
missing sets of distinct vertices are disjoint.  That freedom is spent in
two ways: a palette bijection aligns each block's missing colors with the
colors its boundary edges received outside, and the class colored k+2 is
steered to miss the block's designated vertex.  The bijection is found by
bipartite matching between constrained global colors and local classes;
infeasibility is dumped, never patched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .coloring import (
    COLOR_BUDGET_DEFAULT,
    EdgeColoring,
    chain,
    find_coloring,
    is_proper,
    missing,
)
from .errors import (
    DensityMismatch,
    LiftInvariantViolated,
    NoFeasiblePermutation,
    PreconditionViolated,
)
from .multigraph import Multigraph, induced_subgraph


@dataclass(frozen=True)
class BlockColoring:
    """A colored punctured block inside a host graph.

    ``vertices`` lists the block's host vertex ids in increasing order;
    position in the list is the local vertex id in ``graph``.  The coloring
    is keyed by host edge ids (induced subgraphs keep them).  ``x`` and
    ``y`` are the endpoints of the punctured edge, as host ids.
    """

    vertices: tuple[int, ...]
    graph: Multigraph
    coloring: EdgeColoring
    x: int
    y: int

    def local_vertex(self, host_vertex: int) -> int:
        return self.vertices.index(host_vertex)

    def host_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


def color_dense_block(
    block: Multigraph,
    s: int,
    budget: int = COLOR_BUDGET_DEFAULT,
    initial: EdgeColoring | None = None,
) -> EdgeColoring:
    """Properly s-color a block with exactly s(|V|-1)/2 edges.

    A caller that already holds a proper s-coloring (a restriction of a
    host coloring) can pass it instead of re-solving.  Either way the
    structural consequences are verified: every class is a near-perfect
    matching, missing sets of distinct vertices are disjoint, and each
    vertex is missed by exactly s - d(v) classes.
    """
    n = block.vertex_count
    if n < 3 or n % 2 == 0 or 2 * len(block.edges) != s * (n - 1):
        raise DensityMismatch(
            f"block has {len(block.edges)} edges on {n} vertices; expected {s}*({n}-1)/2"
        )
    if initial is not None:
        if initial.palette != s or not is_proper(block, initial):
            raise PreconditionViolated("supplied block coloring is not a proper s-coloring")
        coloring = initial
    else:
        coloring = find_coloring(block, s, budget)
    if coloring is None:
        raise LiftInvariantViolated(0, f"dense block admits no {s}-edge-coloring")
    half = (n - 1) // 2
    for c in range(1, s + 1):
        if len(coloring.color_class(c)) != half:
            raise LiftInvariantViolated(0, f"class {c} is not a near-perfect matching")
    miss = {v: missing(coloring, block, v) for v in block.vertices()}
    for v in block.vertices():
        if len(miss[v]) != s - block.degree(v):
            raise LiftInvariantViolated(0, f"vertex {v} missed by {len(miss[v])} classes")
        for w in range(v + 1, n):
            if miss[v] & miss[w]:
                raise LiftInvariantViolated(0, f"vertices {v},{w} share a missing class")
    return coloring


def make_block(
    host: Multigraph, block_vertices: Sequence[int], x: int, y: int, s: int,
    budget: int = COLOR_BUDGET_DEFAULT,
    initial: EdgeColoring | None = None,
) -> BlockColoring:
    """Induce, density-check, and color one block of the host graph."""
    verts = tuple(sorted(block_vertices))
    graph = induced_subgraph(host, verts)
    coloring = color_dense_block(graph, s, budget, initial)
    return BlockColoring(vertices=verts, graph=graph, coloring=coloring, x=x, y=y)


def _max_bipartite_matching(wants: dict[int, frozenset[int]]) -> dict[int, int]:
    """Augmenting-path matching: each key gets one of its allowed targets,
    or {} when no complete matching exists."""
    matched_to: dict[int, int] = {}  # target -> key

    def try_assign(key: int, banned: set[int]) -> bool:
        for t in sorted(wants[key]):
            if t in banned:
                continue
            banned.add(t)
            if t not in matched_to or try_assign(matched_to[t], banned):
                matched_to[t] = key
                return True
        return False

    for key in sorted(wants):
        if not try_assign(key, set()):
            return {}
    return {key: t for t, key in matched_to.items()}


def permute_block_palette(
    bc: BlockColoring,
    boundary_requirements: Mapping[int, int],
    host: Multigraph,
    k: int,
) -> BlockColoring:
    """Apply a palette bijection meeting the boundary and top-color needs.

    ``boundary_requirements`` maps each host boundary edge id to the color
    it carries outside; the bijection must leave that color missing at the
    edge's block endpoint, and must route the top color k+2 to a class that
    misses the designated vertex x.
    """
    s = k + 2
    required = list(boundary_requirements.values())
    if len(required) != len(set(required)):
        raise PreconditionViolated("boundary colors at one block must be distinct")

    local_missing = {
        v: missing(bc.coloring, bc.graph, v) for v in bc.graph.vertices()
    }
    inside = bc.host_set()
    wants: dict[int, frozenset[int]] = {}
    for eid, color in sorted(boundary_requirements.items()):
        edge = host.edge(eid)
        w_host = edge.u if edge.u in inside else edge.v
        allowed = local_missing[bc.local_vertex(w_host)]
        wants[color] = wants.get(color, allowed) & allowed
    top_allowed = local_missing[bc.local_vertex(bc.x)]
    wants[s] = wants.get(s, top_allowed) & top_allowed

    matching = _max_bipartite_matching(wants)
    if not matching:
        detail = {c: sorted(a) for c, a in wants.items()}
        raise NoFeasiblePermutation(f"no palette bijection satisfies {detail}")

    taken = set(matching.values())
    free_local = [c for c in range(1, s + 1) if c not in taken]
    free_global = [c for c in range(1, s + 1) if c not in matching]
    to_global = {local: glob for glob, local in matching.items()}
    to_global.update(dict(zip(free_local, free_global)))

    recolored = EdgeColoring(
        s, {eid: to_global[c] for eid, c in bc.coloring.assignment.items()}
    )
    return BlockColoring(bc.vertices, bc.graph, recolored, bc.x, bc.y)


def assemble_lift(
    h1: Multigraph,
    outer: EdgeColoring,
    blocks: Sequence[BlockColoring],
    k: int,
) -> EdgeColoring:
    """Merge the outer coloring with the permuted block colorings.

    Every edge inside a block takes its block color; every other edge keeps
    the outer color (ids are shared with the contracted graph).  The three
    lift properties are then re-verified globally.
    """
    s = k + 2
    combined: dict[int, int] = {}
    internal: set[int] = set()
    for bc in blocks:
        for eid, c in bc.coloring.assignment.items():
            combined[eid] = c
            internal.add(eid)
    for e in h1.edges:
        if e.id not in internal:
            combined[e.id] = outer.color_of(e.id)
    psi = EdgeColoring(s, combined)
    if not is_proper(h1, psi):
        raise LiftInvariantViolated(0, "assembled coloring is not proper")
    check_lift_properties(h1, psi, blocks, k)
    return psi


def check_lift_properties(
    h1: Multigraph,
    psi: EdgeColoring,
    blocks: Sequence[BlockColoring],
    k: int,
) -> None:
    """Verify the three properties the downstream orientation relies on.

    1. No block boundary edge carries the top color k+2.
    2. A (k+1, k+2)-chain through a boundary edge is a path reaching a
       vertex outside every block, and the block's vertices all present
       color k+1.
    3. The top color class misses each block's designated vertex x.
    """
    s = k + 2
    all_block_vertices: set[int] = set()
    for bc in blocks:
        all_block_vertices |= bc.host_set()

    for bc in blocks:
        inside = bc.host_set()
        boundary = [
            e for e in h1.edges if (e.u in inside) != (e.v in inside)
        ]
        for e in boundary:
            if psi.color_of(e.id) == s:
                raise LiftInvariantViolated(1, f"boundary edge {e.id} carries color {s}")
        for e in boundary:
            if psi.color_of(e.id) != k + 1:
                continue
            anchor = e.u if e.u in inside else e.v
            ch = chain(psi, h1, anchor, k + 1, s)
            if ch.kind != "path":
                raise LiftInvariantViolated(2, f"chain through edge {e.id} is a cycle")
            ends_outside = [p for p in ch.endpoints if p not in all_block_vertices]
            ends_elsewhere = [
                p for p in ch.endpoints if p in all_block_vertices and p not in inside
            ]
            if not ends_outside or ends_elsewhere:
                raise LiftInvariantViolated(
                    2,
                    f"chain through edge {e.id} ends at {ch.endpoints}, "
                    f"not outside the blocks",
                )
            for w in inside:
                if (k + 1) not in {psi.color_of(f.id) for f in h1.incident(w)}:
                    raise LiftInvariantViolated(
                        2, f"block vertex {w} does not present color {k + 1}"
                    )
        top_class = psi.color_class(s)
        for eid in top_class:
            edge = h1.edge(eid)
            if edge.touches(bc.x):
                raise LiftInvariantViolated(3, f"top class touches designated vertex {bc.x}")
