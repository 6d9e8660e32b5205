"""Proper edge colorings: missing sets, two-color chains, Kempe swaps,
and an exact fixed-palette coloring solver.

The solver is plain backtracking with edge ordering, per-vertex color
bitmasks, and color-symmetry breaking; at desk scale it both finds
colorings and proves impossibility, and a node budget keeps either verdict
honest (running out of budget is a distinct outcome, never reported as
impossibility).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import BudgetExhausted
from .multigraph import Edge, Multigraph

COLOR_BUDGET_DEFAULT = 10_000_000


@dataclass(frozen=True)
class EdgeColoring:
    """A total assignment edge id -> color in [1, palette].

    Treated as an immutable value: updates go through with_colors(), which
    returns a new coloring.
    """

    palette: int
    assignment: Mapping[int, int]

    def color_of(self, edge_id: int) -> int:
        return self.assignment[edge_id]

    def with_colors(self, updates: Mapping[int, int]) -> "EdgeColoring":
        merged = dict(self.assignment)
        merged.update(updates)
        return EdgeColoring(self.palette, merged)

    def color_class(self, color: int) -> frozenset[int]:
        return frozenset(e for e, c in self.assignment.items() if c == color)

    def classes(self) -> dict[int, frozenset[int]]:
        return {c: self.color_class(c) for c in range(1, self.palette + 1)}


@dataclass(frozen=True)
class Chain:
    """A connected component of the subgraph spanned by two color classes.

    Paths list vertices end to end; cycles list each vertex once, with
    edges[i] joining vertices[i] and vertices[(i+1) % len].  A vertex seeing
    neither color yields a trivial single-vertex path.
    """

    alpha: int
    beta: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    kind: str  # "path" | "cycle"

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    @property
    def endpoints(self) -> tuple[int, int]:
        if self.kind != "path":
            raise ValueError("cycles have no endpoints")
        return self.vertices[0], self.vertices[-1]

    def oriented_from(self, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Vertex and edge sequences of a path chain, starting at endpoint v."""
        if self.kind != "path":
            raise ValueError("cycles have no orientation anchor")
        if self.vertices[0] == v:
            return self.vertices, self.edges
        if self.vertices[-1] == v:
            return tuple(reversed(self.vertices)), tuple(reversed(self.edges))
        raise ValueError(f"vertex {v} is not an endpoint of this chain")


def is_proper(g: Multigraph, coloring: EdgeColoring) -> bool:
    """True when every edge has a color in range and no vertex repeats one."""
    for e in g.edges:
        c = coloring.assignment.get(e.id)
        if c is None or not (1 <= c <= coloring.palette):
            return False
    for v in g.vertices():
        seen = [coloring.assignment[e.id] for e in g.incident(v)]
        if len(seen) != len(set(seen)):
            return False
    return True


def present(coloring: EdgeColoring, g: Multigraph, v: int) -> frozenset[int]:
    """Colors appearing on edges at v."""
    return frozenset(coloring.assignment[e.id] for e in g.incident(v))


def missing(coloring: EdgeColoring, g: Multigraph, v: int) -> frozenset[int]:
    """Palette colors not appearing at v."""
    return frozenset(range(1, coloring.palette + 1)) - present(coloring, g, v)


def _two_color_incidence(
    coloring: EdgeColoring, g: Multigraph, alpha: int, beta: int
) -> dict[int, list[Edge]]:
    table: dict[int, list[Edge]] = {}
    for e in g.edges:
        if coloring.assignment[e.id] in (alpha, beta):
            table.setdefault(e.u, []).append(e)
            table.setdefault(e.v, []).append(e)
    return table


def chain(coloring: EdgeColoring, g: Multigraph, v: int, alpha: int, beta: int) -> Chain:
    """The two-color component containing v, canonically ordered.

    Paths run from their smaller endpoint; cycles start at their smallest
    vertex and head toward the smaller neighbor (smaller edge id on a tie,
    which covers the two-vertex parallel-edge cycle).
    """
    if alpha == beta:
        raise ValueError("chain colors must differ")
    for c in (alpha, beta):
        if not (1 <= c <= coloring.palette):
            raise ValueError(f"color {c} outside palette [1,{coloring.palette}]")
    table = _two_color_incidence(coloring, g, alpha, beta)
    here = table.get(v, [])
    if not here:
        return Chain(alpha, beta, (v,), (), "path")

    def walk(start_edge: Edge) -> tuple[list[int], list[int], bool]:
        verts = [v]
        eids: list[int] = []
        cur, e = v, start_edge
        while True:
            eids.append(e.id)
            cur = e.other(cur)
            verts.append(cur)
            if cur == v:
                return verts, eids, True
            options = [f for f in table[cur] if f.id != e.id]
            if not options:
                return verts, eids, False
            e = options[0]

    if len(here) == 1:
        verts, eids, closed = walk(here[0])
        assert not closed
        vertices, edges = tuple(verts), tuple(eids)
    else:
        verts1, eids1, closed = walk(here[0])
        if closed:
            cyc_verts = verts1[:-1]
            assert len(eids1) % 2 == 0, "two-color cycles are even"
            return _canonical_cycle(alpha, beta, cyc_verts, eids1)
        verts2, eids2, _ = walk(here[1])
        vertices = tuple(reversed(verts1)) + tuple(verts2[1:])
        edges = tuple(reversed(eids1)) + tuple(eids2)
    if vertices[0] > vertices[-1]:
        vertices = tuple(reversed(vertices))
        edges = tuple(reversed(edges))
    return Chain(alpha, beta, vertices, edges, "path")


def _canonical_cycle(alpha: int, beta: int, verts: list[int], eids: list[int]) -> Chain:
    # verts[i] -- eids[i] -- verts[i+1 mod L]; rotate to the smallest vertex,
    # then pick the direction with the smaller successor (edge id on a tie).
    size = len(verts)
    start = verts.index(min(verts))
    fwd_v = [verts[(start + i) % size] for i in range(size)]
    fwd_e = [eids[(start + i) % size] for i in range(size)]
    bwd_v = [verts[(start - i) % size] for i in range(size)]
    bwd_e = [eids[(start - 1 - i) % size] for i in range(size)]
    if (bwd_v[1], bwd_e[0]) < (fwd_v[1], fwd_e[0]):
        return Chain(alpha, beta, tuple(bwd_v), tuple(bwd_e), "cycle")
    return Chain(alpha, beta, tuple(fwd_v), tuple(fwd_e), "cycle")


def kempe_swap(coloring: EdgeColoring, ch: Chain) -> EdgeColoring:
    """Exchange the chain's two colors along its edges (an involution)."""
    updates: dict[int, int] = {}
    for eid in ch.edges:
        c = coloring.assignment[eid]
        if c == ch.alpha:
            updates[eid] = ch.beta
        elif c == ch.beta:
            updates[eid] = ch.alpha
        else:
            raise ValueError(f"stale chain: edge {eid} now colored {c}")
    return coloring.with_colors(updates)


def linked(
    coloring: EdgeColoring, g: Multigraph, u: int, v: int, alpha: int, beta: int
) -> bool:
    """True iff u and v lie on the same (alpha, beta)-chain."""
    if u == v:
        raise ValueError("linkedness is asked of two distinct vertices")
    return u in chain(coloring, g, v, alpha, beta).vertices


def find_coloring(
    g: Multigraph, m: int, budget: int = COLOR_BUDGET_DEFAULT
) -> EdgeColoring | None:
    """Search for a proper m-edge-coloring.

    Returns a coloring, or None when exhaustive search proves none exists.
    Raises BudgetExhausted when the node budget runs out first.
    """
    if m < 0:
        raise ValueError("palette size must be non-negative")
    if not g.edges:
        return EdgeColoring(m, {})
    if g.max_degree() > m:
        return None  # pigeonhole at a max-degree vertex

    edges = sorted(g.edges, key=lambda e: (-(g.degree(e.u) + g.degree(e.v)), e.id))
    full = (1 << m) - 1
    used = [0] * g.vertex_count
    assign: dict[int, int] = {}
    pending = list(edges)
    nodes = 0

    def select(ncolors: int):
        # Fail-first: fewest admissible colors, then denser endpoints.
        cap = (1 << min(m, ncolors + 1)) - 1
        best = None
        best_key = None
        for pos, e in enumerate(pending):
            allowed = cap & full & ~(used[e.u] | used[e.v])
            count = bin(allowed).count("1")
            key = (count, -(g.degree(e.u) + g.degree(e.v)), e.id)
            if best_key is None or key < best_key:
                best, best_key = (pos, allowed), key
                if count == 0:
                    break
        return best

    def backtrack(ncolors: int) -> bool:
        nonlocal nodes
        if not pending:
            return True
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"coloring search exceeded {budget} nodes")
        pos, allowed = select(ncolors)
        if not allowed:
            return False
        e = pending.pop(pos)
        c = 1
        while allowed:
            if allowed & 1:
                bit = 1 << (c - 1)
                used[e.u] |= bit
                used[e.v] |= bit
                assign[e.id] = c
                if backtrack(max(ncolors, c)):
                    return True
                used[e.u] &= ~bit
                used[e.v] &= ~bit
                del assign[e.id]
            allowed >>= 1
            c += 1
        pending.insert(pos, e)
        return False

    if backtrack(0):
        return EdgeColoring(m, dict(assign))
    return None


def chromatic_index(g: Multigraph, budget: int = COLOR_BUDGET_DEFAULT) -> int:
    """Smallest m admitting a proper m-edge-coloring (exhaustively bracketed)."""
    if not g.edges:
        return 0
    for m in range(g.max_degree(), len(g.edges) + 1):
        if find_coloring(g, m, budget) is not None:
            return m
    raise AssertionError("unreachable: |E| colors always suffice")


def is_s_dense(g: Multigraph) -> int | None:
    """The integer s >= 1 with |E| = s(|V|-1)/2, for odd |V| >= 3; else None."""
    n = g.vertex_count
    if n < 3 or n % 2 == 0:
        return None
    twice = 2 * len(g.edges)
    if twice % (n - 1):
        return None
    s = twice // (n - 1)
    return s if s >= 1 else None
