"""Sorted event sweep producing the conflict cliques of a non-periodic resource.

The sweep walks start/end events in time order (starts before ends at equal
times, interval id as the final tie-break), keeps the set of currently open
intervals, and emits that set as a clique at every end event that follows
at least one new start.  Each emitted clique is a maximal clique of the
interval graph and together they form a minimum edge clique cover.

Event times are exact rationals.  Before sweeping they are rescaled by the
common denominator to plain integers, which preserves every ordering and
tie exactly while letting the hot loop run on machine integers.  Two
kernels implement the loop: a compiled extension (preferred, selected at
import) and a pure-Python fallback with identical semantics.  Set
``CONFLICTCLIQUES_KERNEL=pure`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import _kernel_py
from .schema import AllocationInterval, ConflictClique, ResourceSchema

try:
    from . import _kernel  # compiled extension; optional
except ImportError:  # pragma: no cover - depends on the build
    _kernel = None

__all__ = [
    "Event",
    "available_kernels",
    "default_kernel",
    "build_event_list",
    "find_conflict_cliques",
    "clique_window",
]

# int64 event times with headroom; larger scaled values take the pure path
_INT64_SAFE = 2**62


def available_kernels() -> tuple[str, ...]:
    return ("compiled", "pure") if _kernel is not None else ("pure",)


def default_kernel() -> str:
    """Kernel chosen at import: compiled when built, unless overridden."""
    if _kernel is None or os.environ.get("CONFLICTCLIQUES_KERNEL") == "pure":
        return "pure"
    return "compiled"


@dataclass(frozen=True)
class Event:
    """One endpoint of an allocation interval in the sweep order."""

    time: Fraction
    interval_id: str
    is_endtime: bool


def build_event_list(schema: ResourceSchema) -> list[Event]:
    """The 2n sweep events, sorted.

    Ascending by time; at equal times every start precedes every end (so
    touching intervals count as conflicting), and events of the same kind
    are ordered by interval id for reproducibility.
    """
    if schema.is_periodic:
        raise ValueError("event list is defined for non-periodic schemas")
    events = [Event(iv.start, iv.id, False) for iv in schema.intervals]
    events += [Event(iv.end, iv.id, True) for iv in schema.intervals]
    events.sort(key=lambda e: (e.time, e.is_endtime, e.interval_id))
    return events


def _scale_to_integers(values: list[Fraction]) -> tuple[list[int], int]:
    """Multiply by the common denominator; exact, order-preserving."""
    denominators = {v.denominator for v in values}
    denominators.discard(1)
    if not denominators:
        return [v.numerator for v in values], 1
    den = lcm(*denominators)
    return [v.numerator * (den // v.denominator) for v in values], den


def _pick_kernel(kernel: str, scaled: Iterable[int]):
    if kernel == "auto":
        kernel = default_kernel()
    if kernel == "pure":
        return _kernel_py.sweep
    if kernel == "compiled":
        if _kernel is None:
            raise ValueError("compiled kernel requested but the extension is not built")
        if any(abs(v) > _INT64_SAFE for v in scaled):
            return _kernel_py.sweep  # events exceed int64, stay exact
        return _kernel.sweep
    raise ValueError(f"unknown kernel {kernel!r} (use 'auto', 'compiled' or 'pure')")


def find_conflict_cliques(
    schema: ResourceSchema, *, kernel: str = "auto"
) -> list[ConflictClique]:
    """All conflict cliques of a validated non-periodic schema.

    Returned in emission (time) order with sorted member ids.  Every clique
    carries its common window ``[max of member starts, min of member ends]``;
    the emission time is the window end.  The result is exactly the set of
    maximal cliques of size >= 2 of the interval graph, and is a minimum
    edge clique cover.
    """
    if schema.is_periodic:
        raise ValueError(
            "schema has a period; use circular.find_conflict_cliques_circular"
        )
    intervals = schema.intervals
    n = len(intervals)
    if n < 2:
        return []

    by_id = sorted(intervals, key=lambda iv: iv.id)
    ids = [iv.id for iv in by_id]
    scaled, den = _scale_to_integers(
        [iv.start for iv in by_id] + [iv.end for iv in by_id]
    )
    starts, ends = scaled[:n], scaled[n:]

    run = _pick_kernel(kernel, scaled)
    counts, members, window_starts, window_ends = run(starts, ends)

    cliques: list[ConflictClique] = []
    pos = 0
    for k, count in enumerate(counts):
        member_ids = tuple(ids[j] for j in members[pos : pos + count])
        pos += count
        window = (
            Fraction(window_starts[k], den),
            Fraction(window_ends[k], den),
        )
        cliques.append(ConflictClique(member_ids, window))
    return cliques


def clique_window(
    intervals: Iterable[AllocationInterval],
) -> tuple[Fraction, Fraction] | None:
    """Common active window of a set of intervals, if they share one.

    Returns ``[max of starts, min of ends]`` when that segment is nonempty;
    ``None`` otherwise.  Nonempty exactly when the set is a clique of the
    interval graph (the common-point property of intervals on a line).
    """
    items = list(intervals)
    if not items:
        raise ValueError("clique_window needs at least one interval")
    start = max(iv.start for iv in items)
    end = min(iv.end for iv in items)
    if start <= end:
        return (start, end)
    return None
