"""Brute-force ground truth over intersection graphs.

Everything in this module trades speed for obvious correctness: pairwise
O(n^2) graph construction, pivoted Bron-Kerbosch for maximal cliques,
exhaustive branching for the minimum edge clique cover and stable sets.
The exponential operations are guarded by hard instance-size limits and
raise :class:`InstanceTooLargeError` instead of silently taking forever.

These functions are the referee for the sweep algorithm; none of them may
share code with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .schema import AllocationInterval, ResourceSchema

__all__ = [
    "MAX_CLIQUE_VERTICES",
    "MAX_COVER_VERTICES",
    "MAX_COVER_EDGES",
    "MAX_STABLE_VERTICES",
    "InstanceTooLargeError",
    "IntersectionGraph",
    "intervals_conflict",
    "build_graph",
    "enumerate_maximal_cliques",
    "min_edge_clique_cover_size",
    "enumerate_stable_sets",
    "max_stable_set_size",
]

MAX_CLIQUE_VERTICES = 20
MAX_COVER_VERTICES = 10
MAX_COVER_EDGES = 20
MAX_STABLE_VERTICES = 20


class InstanceTooLargeError(ValueError):
    """An exhaustive check was asked for an instance above its guard."""


@dataclass(frozen=True)
class IntersectionGraph:
    """Undirected graph over interval/arc ids; edges stored as ordered pairs."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def has_edge(self, a: str, b: str) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def neighbors(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def intervals_conflict(
    a: AllocationInterval, b: AllocationInterval, period=None
) -> bool:
    """Do two closed intervals (arcs, when a period is given) share a point?

    Periodic endpoints are assumed reduced into ``[0, period)``; an arc with
    start > end wraps and is active at t iff t <= end or t >= start.  Two
    wrapping arcs always meet (both are active at time 0).
    """
    if period is None:
        return a.start <= b.end and b.start <= a.end
    if a.wraps and b.wraps:
        return True
    if a.wraps:
        return b.start <= a.end or b.end >= a.start
    if b.wraps:
        return a.start <= b.end or a.end >= b.start
    return a.start <= b.end and b.start <= a.end


def build_graph(schema: ResourceSchema) -> IntersectionGraph:
    """Intersection graph of a schema by direct pairwise test."""
    intervals = schema.intervals
    vertices = tuple(sorted(iv.id for iv in intervals))
    edges = set()
    for x, y in combinations(intervals, 2):
        if intervals_conflict(x, y, schema.period):
            edges.add((x.id, y.id) if x.id < y.id else (y.id, x.id))
    return IntersectionGraph(vertices, frozenset(edges))


def _guard(condition: bool, what: str) -> None:
    if not condition:
        raise InstanceTooLargeError(what)


def enumerate_maximal_cliques(graph: IntersectionGraph) -> list[tuple[str, ...]]:
    """All inclusion-maximal cliques, isolated vertices included.

    Bron-Kerbosch with pivoting; fine for the guarded sizes.
    """
    _guard(
        len(graph.vertices) <= MAX_CLIQUE_VERTICES,
        f"maximal clique enumeration capped at {MAX_CLIQUE_VERTICES} vertices, "
        f"got {len(graph.vertices)}",
    )
    adj = graph.neighbors()
    cliques: list[frozenset[str]] = []

    def expand(clique: set[str], candidates: set[str], excluded: set[str]) -> None:
        if not candidates and not excluded:
            cliques.append(frozenset(clique))
            return
        pivot = max(candidates | excluded, key=lambda u: len(adj[u] & candidates))
        for v in list(candidates - adj[pivot]):
            expand(clique | {v}, candidates & adj[v], excluded & adj[v])
            candidates.remove(v)
            excluded.add(v)

    if graph.vertices:
        expand(set(), set(graph.vertices), set())
    return sorted(tuple(sorted(c)) for c in cliques)


def min_edge_clique_cover_size(graph: IntersectionGraph) -> int:
    """Minimum number of cliques covering every edge, by exact search.

    Any edge clique cover can be replaced by maximal cliques without growing,
    so the search branches over maximal cliques only: repeatedly pick the
    uncovered edge with the fewest covering cliques and try each.
    """
    _guard(
        len(graph.vertices) <= MAX_COVER_VERTICES,
        f"edge clique cover capped at {MAX_COVER_VERTICES} vertices, "
        f"got {len(graph.vertices)}",
    )
    _guard(
        len(graph.edges) <= MAX_COVER_EDGES,
        f"edge clique cover capped at {MAX_COVER_EDGES} edges, got {len(graph.edges)}",
    )
    edges = sorted(graph.edges)
    if not edges:
        return 0

    cliques = [c for c in enumerate_maximal_cliques(graph) if len(c) >= 2]
    edge_bit = {e: 1 << i for i, e in enumerate(edges)}
    masks = []
    for c in cliques:
        mask = 0
        for a, b in combinations(c, 2):
            mask |= edge_bit[(a, b) if a < b else (b, a)]
        masks.append(mask)
    full = (1 << len(edges)) - 1

    covering = [
        [m for m in masks if m & bit] for bit in (edge_bit[e] for e in edges)
    ]
    best = len(cliques)  # every edge lies in some maximal clique
    seen: dict[int, int] = {}

    def search(covered: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if covered == full:
            best = used
            return
        if seen.get(covered, len(cliques) + 1) <= used:
            return
        seen[covered] = used
        # branch on the uncovered edge with the fewest clique choices
        choice = None
        for i in range(len(edges)):
            if covered >> i & 1:
                continue
            if choice is None or len(covering[i]) < len(choice):
                choice = covering[i]
        assert choice is not None
        for mask in choice:
            search(covered | mask, used + 1)

    search(0, 0)
    return best


def enumerate_stable_sets(graph: IntersectionGraph) -> list[frozenset[str]]:
    """Every vertex subset with no internal edge, the empty set included."""
    _guard(
        len(graph.vertices) <= MAX_STABLE_VERTICES,
        f"stable set enumeration capped at {MAX_STABLE_VERTICES} vertices, "
        f"got {len(graph.vertices)}",
    )
    verts = sorted(graph.vertices)
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    adj_mask = [0] * n
    for a, b in graph.edges:
        adj_mask[index[a]] |= 1 << index[b]
        adj_mask[index[b]] |= 1 << index[a]

    results: list[frozenset[str]] = []

    def extend(i: int, chosen: int) -> None:
        if i == n:
            results.append(
                frozenset(verts[j] for j in range(n) if chosen >> j & 1)
            )
            return
        extend(i + 1, chosen)
        if not adj_mask[i] & chosen:
            extend(i + 1, chosen | (1 << i))

    extend(0, 0)
    return results


def max_stable_set_size(graph: IntersectionGraph) -> int:
    """Maximum cardinality of a stable set.

    Independent branch-and-reduce over bitmasks rather than a pass over
    :func:`enumerate_stable_sets`, so the two can cross-check each other.
    """
    _guard(
        len(graph.vertices) <= MAX_STABLE_VERTICES,
        f"max stable set capped at {MAX_STABLE_VERTICES} vertices, "
        f"got {len(graph.vertices)}",
    )
    verts = sorted(graph.vertices)
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    adj_mask = [0] * n
    for a, b in graph.edges:
        adj_mask[index[a]] |= 1 << index[b]
        adj_mask[index[b]] |= 1 << index[a]

    memo: dict[int, int] = {}

    def mis(available: int) -> int:
        if available == 0:
            return 0
        cached = memo.get(available)
        if cached is not None:
            return cached
        v = (available & -available).bit_length() - 1
        without = mis(available & ~(1 << v))
        with_v = 1 + mis(available & ~(1 << v) & ~adj_mask[v])
        memo[available] = result = max(without, with_v)
        return result

    return mis((1 << n) - 1)
