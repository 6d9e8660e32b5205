"""Co-density, the Gupta bound, and optimal odd vertex sets.

All ratios are exact rationals end to end: optimality is an exact equality
test and floor(co-density) feeds an integer bound, so floats would corrupt
both.  Enumeration is exhaustive over odd subsets (by increasing size, then
lexicographic) and capped; the cap guards runtime, not correctness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import BadSet, DisjointnessViolation, TooLarge
from .multigraph import Multigraph

SUBSET_CAP_DEFAULT = 24


@dataclass(frozen=True)
class OddSetCertificate:
    """An odd vertex set with its incident-edge count and exact ratio."""

    vertices: tuple[int, ...]
    e_plus: int
    ratio: Fraction

    @property
    def size(self) -> int:
        return len(self.vertices)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


@dataclass(frozen=True)
class GuptaBound:
    """Minimum degree, exact co-density (None means +infinity), and
    k = min(delta - 1, floor(co-density)) clamped below at 0."""

    delta: int
    codensity: Fraction | None
    k: int


def _edge_masks(g: Multigraph) -> list[int]:
    return [(1 << e.u) | (1 << e.v) for e in g.edges]


def _odd_subsets(universe: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Odd subsets of size >= 3, by increasing size then lexicographic."""
    for size in range(3, len(universe) + 1, 2):
        yield from combinations(universe, size)


def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise TooLarge(f"odd-subset enumeration over {size} vertices exceeds cap {cap}")


def e_plus(g: Multigraph, vertex_set: Iterable[int]) -> int:
    """Number of edges incident to at least one vertex of the set."""
    mask = 0
    for v in vertex_set:
        mask |= 1 << v
    return sum(1 for em in _edge_masks(g) if em & mask)


def codensity(
    g: Multigraph,
    *,
    restrict_to: Sequence[int] | None = None,
    cap: int = SUBSET_CAP_DEFAULT,
) -> tuple[Fraction | None, OddSetCertificate | None]:
    """Minimum of e+(U) / ((|U|+1)/2) over odd U of size >= 3.

    Returns (None, None) when no admissible set exists.  The witness is the
    first minimizer in (size, lexicographic) enumeration order.
    """
    universe = tuple(restrict_to) if restrict_to is not None else tuple(g.vertices())
    _check_cap(len(universe), cap)
    masks = _edge_masks(g)
    best: Fraction | None = None
    witness: OddSetCertificate | None = None
    for subset in _odd_subsets(universe):
        mask = 0
        for v in subset:
            mask |= 1 << v
        count = sum(1 for em in masks if em & mask)
        ratio = Fraction(2 * count, len(subset) + 1)
        if best is None or ratio < best:
            best = ratio
            witness = OddSetCertificate(subset, count, ratio)
    return best, witness


def gupta_bound(g: Multigraph, *, cap: int = SUBSET_CAP_DEFAULT) -> GuptaBound:
    """delta, co-density, and k = min(delta - 1, floor(co-density)), k >= 0."""
    delta = g.min_degree()
    value, _ = codensity(g, cap=cap)
    if value is None:
        k = delta - 1
    else:
        k = min(delta - 1, int(value))  # int() floors a non-negative Fraction
    return GuptaBound(delta=delta, codensity=value, k=max(k, 0))


def is_optimal(g: Multigraph, vertex_set: Iterable[int], k: int) -> bool:
    """True iff e+(U) equals k * (|U|+1) / 2 exactly."""
    subset = sorted(set(vertex_set))
    if len(subset) < 3 or len(subset) % 2 == 0:
        raise BadSet(f"need an odd set of size >= 3, got {len(subset)} vertices")
    return e_plus(g, subset) == k * (len(subset) + 1) // 2


def min_optimal_containing(
    g: Multigraph,
    x: int,
    k: int,
    *,
    restrict_to: Sequence[int] | None = None,
    cap: int = SUBSET_CAP_DEFAULT,
) -> OddSetCertificate | None:
    """The unique minimum-size optimal set containing x, or None.

    Uniqueness at the minimum size is a structural guarantee when k is the
    graph's actual bound; a tie raises DisjointnessViolation rather than
    picking one arbitrarily.
    """
    universe = tuple(restrict_to) if restrict_to is not None else tuple(g.vertices())
    _check_cap(len(universe), cap)
    if x not in universe:
        return None
    rest = tuple(v for v in universe if v != x)
    masks = _edge_masks(g)
    for size in range(3, len(universe) + 1, 2):
        found: list[OddSetCertificate] = []
        for others in combinations(rest, size - 1):
            subset = tuple(sorted((x,) + others))
            mask = 0
            for v in subset:
                mask |= 1 << v
            count = sum(1 for em in masks if em & mask)
            if 2 * count == k * (size + 1):
                found.append(OddSetCertificate(subset, count, Fraction(2 * count, size + 1)))
        if len(found) > 1:
            raise DisjointnessViolation(
                f"two minimum optimal sets of size {size} contain vertex {x}: "
                f"{found[0].vertices} and {found[1].vertices}"
            )
        if found:
            return found[0]
    return None


def all_min_optimal_sets(
    g: Multigraph,
    k: int,
    restrict_to: Sequence[int],
    *,
    cap: int = SUBSET_CAP_DEFAULT,
) -> list[OddSetCertificate]:
    """Inclusion-minimal optimal sets within the given universe.

    Collects min_optimal_containing(x) over the universe and keeps the sets
    that contain no smaller collected set.  Optimal sets can nest (a tight
    set inside a larger tight set), but every optimal set contains an
    inclusion-minimal one, and the inclusion-minimal ones are pairwise
    vertex-disjoint; that disjointness is asserted, not assumed.
    """
    universe = tuple(sorted(set(restrict_to)))
    collected: list[OddSetCertificate] = []
    seen: set[frozenset[int]] = set()
    for x in universe:
        cert = min_optimal_containing(g, x, k, restrict_to=universe, cap=cap)
        if cert is None or cert.as_set() in seen:
            continue
        seen.add(cert.as_set())
        collected.append(cert)
    certs = [
        a
        for a in collected
        if not any(b.as_set() < a.as_set() for b in collected)
    ]
    for i, a in enumerate(certs):
        for b in certs[i + 1:]:
            overlap = a.as_set() & b.as_set()
            if overlap:
                raise DisjointnessViolation(
                    f"optimal sets {a.vertices} and {b.vertices} share {sorted(overlap)}"
                )
    certs.sort(key=lambda c: (c.size, c.vertices))
    return certs
