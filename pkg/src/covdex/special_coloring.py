"""Recolor a (k+2)-edge-coloring so the top color avoids a protected set.

Given Delta(g) <= k+1, a vertex set S whose members have degree at most
k/2, and chromatic index at most k+2, the loop below reaches a proper
(k+2)-coloring where (1) the top color k+2 is missing at every vertex of S
and (2) every (k+1, k+2) path-chain with an endpoint in S ends outside S.

The procedure is a sequence of local moves (single-edge recolorings and
Kempe swaps).  Phase 1 drives the count of S-vertices presenting the top
color to zero: each move either lowers that count or keeps it while
strictly lowering the working chain index, so it terminates.  Phase 2 does
the same for the count of (k+1, k+2) chains joining two S-vertices, using
swap colors drawn from [1, k] only, so phase 1's achievement is never
undone.  A step cap guards against implementation bugs: exceeding it
raises instead of looping forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .coloring import (
    COLOR_BUDGET_DEFAULT,
    EdgeColoring,
    chain,
    find_coloring,
    is_proper,
    kempe_swap,
    missing,
    present,
)
from .errors import BudgetExhausted, PreconditionViolated
from .multigraph import Multigraph


@dataclass(frozen=True)
class Potentials:
    """The two quantities the recoloring drives to zero.

    exposed: S-vertices presenting the top color k+2.
    bridges: (k+1, k+2) path-chains with both endpoints in S.
    """

    exposed: int
    bridges: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.exposed, self.bridges)


StepHook = Callable[[dict], None]
SpendFn = Callable[[dict, EdgeColoring], None]


def potentials(g: Multigraph, coloring: EdgeColoring, k: int, S: Iterable[int]) -> Potentials:
    """Recompute both counters from scratch."""
    protected = sorted(set(S))
    top = k + 2
    exposed = sum(1 for v in protected if top in present(coloring, g, v))
    bridge_ids: set[frozenset[int]] = set()
    for x in protected:
        ch = chain(coloring, g, x, k + 1, top)
        if ch.kind != "path" or ch.is_trivial:
            continue
        p, q = ch.endpoints
        if p in protected and q in protected and p != q:
            bridge_ids.add(frozenset(ch.edges))
    return Potentials(exposed, len(bridge_ids))


def special_coloring(
    g: Multigraph,
    k: int,
    S: Iterable[int],
    budget: int | None = None,
    *,
    color_budget: int = COLOR_BUDGET_DEFAULT,
    initial: EdgeColoring | None = None,
    on_step: StepHook | None = None,
) -> EdgeColoring:
    """Produce a proper (k+2)-coloring with both potentials at zero.

    Raises PreconditionViolated when k < 1, when Delta(g) > k+1, when some
    S-vertex has degree above k/2, or when no (k+2)-coloring exists at all.
    Raises BudgetExhausted if the move cap is hit (a bug indicator, since
    termination is otherwise guaranteed).
    """
    protected = sorted(set(S))
    top = k + 2
    if k < 1:
        raise PreconditionViolated(f"need k >= 1, got {k}")
    if g.max_degree() > k + 1:
        raise PreconditionViolated(f"max degree {g.max_degree()} exceeds k+1 = {k + 1}")
    for v in protected:
        if 2 * g.degree(v) > k:
            raise PreconditionViolated(f"vertex {v} has degree {g.degree(v)} > k/2")

    if initial is not None:
        if initial.palette != top or not is_proper(g, initial):
            raise PreconditionViolated("initial coloring is not a proper (k+2)-coloring")
        cur = initial
    else:
        found = find_coloring(g, top, color_budget)
        if found is None:
            raise PreconditionViolated(f"graph admits no {top}-edge-coloring")
        cur = found

    if budget is None:
        budget = max(1, 10 * len(g.edges) * top * top)
    steps = 0

    def spend(event: dict, after: EdgeColoring) -> None:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExhausted(f"recoloring exceeded {budget} moves")
        if on_step is not None:
            pot = potentials(g, after, k, protected)
            event["step"] = steps
            event["exposed"] = pot.exposed
            event["bridges"] = pot.bridges
            on_step(event)

    while True:
        pot = potentials(g, cur, k, protected)
        if pot.exposed > 0:
            cur = _lower_exposed(g, cur, k, protected, pot, spend)
        elif pot.bridges > 0:
            cur = _lower_bridges(g, cur, k, protected, pot, spend)
        else:
            break

    assert is_proper(g, cur)
    return cur


def _lower_exposed(
    g: Multigraph,
    cur: EdgeColoring,
    k: int,
    protected: list[int],
    pot: Potentials,
    spend: SpendFn,
) -> EdgeColoring:
    """One outer phase-1 round: return a coloring with fewer exposed vertices."""
    top = k + 2
    x = min(v for v in protected if top in present(cur, g, v))
    alpha = min(c for c in missing(cur, g, x) if c <= k)
    start = pot.exposed
    prev_index: int | None = None

    while True:
        ch = chain(cur, g, x, alpha, top)
        verts, eids = ch.oriented_from(x)
        y = verts[-1]
        if y not in protected or top in present(cur, g, y):
            nxt = kempe_swap(cur, ch)
            spend({"phase": 1, "move": "endpoint-swap", "index": None}, nxt)
            return _checked_progress(g, nxt, k, protected, start)

        # y is protected, presents alpha, misses the top color: work inward.
        miss_x = missing(cur, g, x)
        index = None
        beta = None
        for j in range(1, len(verts)):
            common = missing(cur, g, verts[j]) & miss_x
            if common:
                index, beta = j, min(common)
                break
        assert index is not None, "the far endpoint always shares a missing color"
        if prev_index is not None:
            assert index < prev_index, "chain index must drop between rounds"
        prev_index = index

        if index == 1:
            nxt = cur.with_colors({eids[0]: beta})
            spend({"phase": 1, "move": "recolor-first", "index": index}, nxt)
            return _checked_progress(g, nxt, k, protected, start)

        vi, vim1 = verts[index], verts[index - 1]
        gamma = min(missing(cur, g, vim1) - {alpha, beta, top})
        side = chain(cur, g, vi, beta, gamma)
        if vim1 in side.vertices:
            cur = kempe_swap(cur, side)
            spend({"phase": 1, "move": "linked-swap", "index": index}, cur)
            continue

        # Unlinked: one composite move (side swap, edge recolor, and the
        # closing chain swap unless the recolor alone already paid off).
        nxt = kempe_swap(cur, side)
        nxt = nxt.with_colors({eids[index - 1]: gamma})
        if alpha in missing(nxt, g, vim1) or vim1 not in protected:
            tail = chain(nxt, g, x, alpha, top)
            nxt = kempe_swap(nxt, tail)
        spend({"phase": 1, "move": "detach", "index": index}, nxt)
        return _checked_progress(g, nxt, k, protected, start)


def _checked_progress(
    g: Multigraph,
    nxt: EdgeColoring,
    k: int,
    protected: list[int],
    start: int,
) -> EdgeColoring:
    after = potentials(g, nxt, k, protected)
    assert after.exposed < start, "phase-1 round must lower the exposed count"
    assert is_proper(g, nxt)
    return nxt


def _lower_bridges(
    g: Multigraph,
    cur: EdgeColoring,
    k: int,
    protected: list[int],
    pot: Potentials,
    spend: SpendFn,
) -> EdgeColoring:
    """One outer phase-2 round: return a coloring with fewer bridge chains."""
    top = k + 2
    x = None
    for v in protected:
        if (k + 1) not in present(cur, g, v):
            continue
        ch = chain(cur, g, v, k + 1, top)
        if ch.kind != "path":
            continue
        p, q = ch.endpoints
        other = q if p == v else p
        if other in protected and other != v:
            x = v
            break
    assert x is not None, "a positive bridge count implies such a vertex"
    start = pot.bridges
    prev_index: int | None = None

    while True:
        ch = chain(cur, g, x, k + 1, top)
        verts, eids = ch.oriented_from(x)
        miss_x = missing(cur, g, x)
        index = None
        beta = None
        for j in range(1, len(verts)):
            common = {c for c in missing(cur, g, verts[j]) & miss_x if c <= k}
            if common:
                index, beta = j, min(common)
                break
        assert index is not None, "the far endpoint shares a low missing color"
        if prev_index is not None:
            assert index < prev_index, "chain index must drop between rounds"
        prev_index = index

        if index == 1:
            nxt = cur.with_colors({eids[0]: beta})
            spend({"phase": 2, "move": "recolor-first", "index": index}, nxt)
            return _checked_bridge_progress(g, nxt, k, protected, start)

        vi, vim1 = verts[index], verts[index - 1]
        gamma = min(missing(cur, g, vim1))
        assert gamma <= k and gamma != beta, "interior vertices only miss low colors"
        side = chain(cur, g, vi, beta, gamma)
        if vim1 in side.vertices:
            cur = kempe_swap(cur, side)
            spend({"phase": 2, "move": "linked-swap", "index": index}, cur)
            continue

        nxt = kempe_swap(cur, side)
        nxt = nxt.with_colors({eids[index - 1]: gamma})
        spend({"phase": 2, "move": "detach", "index": index}, nxt)
        return _checked_bridge_progress(g, nxt, k, protected, start)


def _checked_bridge_progress(
    g: Multigraph,
    nxt: EdgeColoring,
    k: int,
    protected: list[int],
    start: int,
) -> EdgeColoring:
    after = potentials(g, nxt, k, protected)
    assert after.exposed == 0, "phase 2 must not re-expose the top color"
    assert after.bridges < start, "phase-2 round must lower the bridge count"
    assert is_proper(g, nxt)
    return nxt
