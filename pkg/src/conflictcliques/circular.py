"""Periodic (circular-arc) conflict cliques via modulo-split linearization.

A wrapping arc is split at the period boundary into a head piece starting
at 0 and a tail piece ending at the period length; the ordinary sweep then
runs over the pieces and piece-cliques are mapped back to their owning
arcs.  Every set this produces is a genuine clique of the circular-arc
graph, but the construction is knowingly incomplete: arcs can be pairwise
intersecting with no common point on the circle, and such cliques never
appear as one open set of the linear sweep.  :func:`find_missed_cliques`
certifies per instance whether anything was missed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import oracle
from .schema import AllocationInterval, ConflictClique, ResourceSchema
from .sweep import find_conflict_cliques

__all__ = [
    "ArcPiece",
    "ArcSegment",
    "split_wrapping",
    "find_conflict_cliques_circular",
    "find_missed_cliques",
]


class ArcPiece(Enum):
    WHOLE = "whole"
    HEAD = "head"
    TAIL = "tail"


@dataclass(frozen=True)
class ArcSegment:
    """One linear piece of an arc: the whole arc, or its head/tail after a split."""

    owner_id: str
    start: Fraction
    end: Fraction
    piece: ArcPiece


def split_wrapping(schema: ResourceSchema) -> list[ArcSegment]:
    """Linear segments of all arcs of a periodic schema.

    Non-wrapping arcs become one ``whole`` segment.  A wrapping arc (start >
    end) becomes a ``head`` segment [0, end] and a ``tail`` segment
    [start, period]; both lie inside [0, period].
    """
    period = schema.period
    if period is None:
        raise ValueError("split_wrapping needs a periodic schema")
    segments: list[ArcSegment] = []
    for iv in schema.intervals:
        if iv.wraps:
            segments.append(ArcSegment(iv.id, Fraction(0), iv.end, ArcPiece.HEAD))
            segments.append(ArcSegment(iv.id, iv.start, period, ArcPiece.TAIL))
        else:
            segments.append(ArcSegment(iv.id, iv.start, iv.end, ArcPiece.WHOLE))
    return segments


def find_conflict_cliques_circular(
    schema: ResourceSchema, *, kernel: str = "auto"
) -> list[ConflictClique]:
    """Conflict cliques of a periodic schema found by the linearized sweep.

    Piece-cliques from the sweep are mapped to their owner arcs, sets
    smaller than two arcs are dropped, and sets dominated by (strictly
    contained in) another result are filtered out, since piece-level
    maximality does not survive the owner collapse.  Results are ordered by
    window, then members.  Soundness holds (every returned set is a clique
    of the circular-arc graph); completeness may not.
    """
    if schema.period is None:
        raise ValueError("schema has no period; use find_conflict_cliques")
    segments = split_wrapping(schema)
    if len(segments) < 2:
        return []

    width = len(str(len(segments)))
    synthetic = ResourceSchema(
        resource_id=schema.resource_id,
        intervals=tuple(
            AllocationInterval(f"{k:0{width}d}", seg.start, seg.end)
            for k, seg in enumerate(segments)
        ),
    )
    owner_of = {iv.id: segments[k].owner_id for k, iv in enumerate(synthetic.intervals)}

    raw: list[ConflictClique] = []
    for piece_clique in find_conflict_cliques(synthetic, kernel=kernel):
        owners = {owner_of[m] for m in piece_clique.members}
        if len(owners) >= 2:
            raw.append(ConflictClique(tuple(owners), piece_clique.window))

    # sweep output always carries a window; order by it, members as tie-break
    raw.sort(key=lambda c: (c.window[1], c.window[0], c.members))

    deduped: list[ConflictClique] = []
    seen: set[frozenset[str]] = set()
    for clique in raw:
        key = clique.member_set
        if key not in seen:
            seen.add(key)
            deduped.append(clique)

    kept = [
        c
        for c in deduped
        if not any(
            c.member_set < other.member_set for other in deduped if other is not c
        )
    ]
    return kept


def find_missed_cliques(schema: ResourceSchema) -> list[tuple[str, ...]]:
    """Maximal cliques of the circular-arc graph the sweep failed to cover.

    Compares against the exhaustive oracle (guarded instance size), so an
    empty result certifies completeness for this instance.  A returned set
    is a maximal clique of size >= 2 that is not contained in any clique
    produced by :func:`find_conflict_cliques_circular`.
    """
    if schema.period is None:
        raise ValueError("find_missed_cliques needs a periodic schema")
    graph = oracle.build_graph(schema)
    maximal = oracle.enumerate_maximal_cliques(graph)
    greedy_sets = [c.member_set for c in find_conflict_cliques_circular(schema)]
    missed = [
        clique
        for clique in maximal
        if len(clique) >= 2
        and not any(frozenset(clique) <= g for g in greedy_sets)
    ]
    return sorted(missed)
