"""Pure-Python sweep kernel; same contract as the compiled extension.

Input: integer start/end event times, index-aligned, where the index order
is also the tie-break order for simultaneous events of the same kind.
Output: flat clique data ``(counts, members, window_starts, window_ends)``
with member indices sorted within each clique.
"""

from __future__ import annotations

from typing import Sequence


def sweep(
    starts: Sequence[int], ends: Sequence[int]
) -> tuple[list[int], list[int], list[int], list[int]]:
    n = len(starts)
    events = [(starts[i], 0, i) for i in range(n)]
    events += [(ends[i], 1, i) for i in range(n)]
    events.sort()

    open_ids: dict[int, None] = {}  # insertion-ordered set
    new_starttime = False
    last_start = 0
    counts: list[int] = []
    members: list[int] = []
    window_starts: list[int] = []
    window_ends: list[int] = []

    for time, kind, idx in events:
        if kind == 0:
            open_ids[idx] = None
            new_starttime = True
            last_start = time
        else:
            if new_starttime and len(open_ids) > 1:
                counts.append(len(open_ids))
                members.extend(sorted(open_ids))
                window_starts.append(last_start)
                window_ends.append(time)
                new_starttime = False
            del open_ids[idx]

    return counts, members, window_starts, window_ends
