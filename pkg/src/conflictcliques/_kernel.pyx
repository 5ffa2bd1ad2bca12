# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sweep kernel.

Same contract as ``_kernel_py.sweep``: integer event times in, flat clique
data out.  Event times must fit in int64 (the caller checks and falls back
to the pure kernel otherwise).  The open set is a doubly linked list over
interval slots, so start/end handling is O(1) and each emission costs the
size of the emitted clique.
"""

from libc.stdint cimport int32_t, int64_t
from libcpp.algorithm cimport sort
from libcpp.vector cimport vector


cdef struct Event:
    int64_t time
    int32_t kind      # 0 = start, 1 = end; starts sort first at equal times
    int32_t idx


cdef bint _event_before(const Event& a, const Event& b) noexcept nogil:
    if a.time != b.time:
        return a.time < b.time
    if a.kind != b.kind:
        return a.kind < b.kind
    return a.idx < b.idx


def sweep(starts, ends):
    cdef Py_ssize_t n = len(starts)
    cdef vector[Event] events
    cdef Event ev
    cdef Py_ssize_t i

    events.reserve(2 * n)
    for i in range(n):
        ev.time = starts[i]
        ev.kind = 0
        ev.idx = <int32_t> i
        events.push_back(ev)
        ev.time = ends[i]
        ev.kind = 1
        events.push_back(ev)
    sort(events.begin(), events.end(), &_event_before)

    # doubly linked list of open interval slots; slot n is the sentinel
    cdef vector[int32_t] nxt = vector[int32_t](n + 1)
    cdef vector[int32_t] prv = vector[int32_t](n + 1)
    nxt[n] = <int32_t> n
    prv[n] = <int32_t> n

    cdef vector[int32_t] counts
    cdef vector[int32_t] members
    cdef vector[int64_t] window_starts
    cdef vector[int64_t] window_ends

    cdef bint new_starttime = False
    cdef int64_t last_start = 0
    cdef Py_ssize_t open_count = 0
    cdef size_t begin
    cdef int32_t idx, cursor
    cdef Py_ssize_t k

    for k in range(<Py_ssize_t> events.size()):
        ev = events[k]
        idx = ev.idx
        if ev.kind == 0:
            nxt[idx] = <int32_t> n
            prv[idx] = prv[n]
            nxt[prv[n]] = idx
            prv[n] = idx
            open_count += 1
            new_starttime = True
            last_start = ev.time
        else:
            if new_starttime and open_count > 1:
                counts.push_back(<int32_t> open_count)
                begin = members.size()
                cursor = nxt[n]
                while cursor != n:
                    members.push_back(cursor)
                    cursor = nxt[cursor]
                sort(members.begin() + begin, members.end())
                window_starts.push_back(last_start)
                window_ends.push_back(ev.time)
                new_starttime = False
            nxt[prv[idx]] = nxt[idx]
            prv[nxt[idx]] = prv[idx]
            open_count -= 1

    return counts, members, window_starts, window_ends
