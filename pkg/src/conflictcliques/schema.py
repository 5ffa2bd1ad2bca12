"""Domain model for resource allocation schemas.

All times are exact rationals (:class:`fractions.Fraction`).  Whether one
allocation finishes exactly when another starts changes the detected
conflict cliques, so no floating point is allowed anywhere near an event
ordering: decimal strings from input files are converted exactly, and
floats are rejected outright.

An allocation interval is *closed*: it is active at time ``t`` iff
``start <= t <= end``.  On a periodic resource with period ``P`` all
endpoints live in ``[0, P)`` and ``start > end`` encodes an arc that wraps
past the period boundary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "TimeLike",
    "TimeSyntaxError",
    "Violation",
    "ValidationError",
    "AllocationInterval",
    "ResourceSchema",
    "ConflictClique",
    "parse_time",
    "as_time",
    "format_time",
    "is_active",
    "reduce_periodic_endpoints",
    "validate_schema",
]

TimeLike = Union[int, str, Fraction]

# Exact forms only.  Scientific notation is rejected: "1e-3" style input is
# a float habit and a typo magnet in exact data.
_DECIMAL_RE = re.compile(r"^[+-]?\d+(?:\.\d+)?$")
_FRACTION_RE = re.compile(r"^[+-]?\d+/\d+$")


class TimeSyntaxError(ValueError):
    """A time string that is not an exact decimal or ``p/q`` fraction."""


def parse_time(text: str) -> Fraction:
    """Parse a decimal string (or ``p/q``) into an exact rational."""
    if not isinstance(text, str):
        raise TimeSyntaxError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    if _DECIMAL_RE.match(s) or _FRACTION_RE.match(s):
        return Fraction(s)
    raise TimeSyntaxError(
        f"not an exact time literal: {text!r} "
        "(use a plain decimal like '12.5' or a fraction like '1/3'; "
        "scientific notation is not accepted)"
    )


def as_time(value: TimeLike) -> Fraction:
    """Coerce an int, Fraction, or exact string to a Fraction.

    Floats are rejected: they would smuggle rounding into tie-breaks.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TimeSyntaxError("booleans are not time values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TimeSyntaxError(
            f"refusing float time {value!r}: floats are inexact, pass a string or Fraction"
        )
    if isinstance(value, str):
        return parse_time(value)
    raise TimeSyntaxError(f"cannot interpret {value!r} as a time value")


def format_time(value: Fraction) -> str:
    """Render a rational exactly: decimal when the denominator is 2^a*5^b, else ``p/q``.

    The decimal form never carries trailing zeros, so the output is canonical
    and round-trips through :func:`parse_time` unchanged.
    """
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    d = den
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{num}/{den}"
    k = max(twos, fives)
    scaled = abs(num) * (10**k // den)
    digits = str(scaled).rjust(k + 1, "0")
    sign = "-" if num < 0 else ""
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


@dataclass(frozen=True)
class AllocationInterval:
    """One allocation of a resource: an identifier plus a closed time interval.

    ``train`` and ``assignment`` are optional labels tying the interval to a
    0/1 decision variable for constraint emission; they play no role in
    clique detection itself.
    """

    id: str
    start: Fraction
    end: Fraction
    train: str | None = None
    assignment: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", as_time(self.start))
        object.__setattr__(self, "end", as_time(self.end))

    @property
    def wraps(self) -> bool:
        """True for the periodic encoding of an arc crossing the period boundary."""
        return self.start > self.end


@dataclass(frozen=True)
class ResourceSchema:
    """All allocation intervals of one resource.

    A present ``period`` switches the resource to periodic (circular-arc)
    semantics; every endpoint must then lie in ``[0, period)``.
    """

    resource_id: str
    intervals: tuple[AllocationInterval, ...]
    period: Fraction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if self.period is not None:
            object.__setattr__(self, "period", as_time(self.period))

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def id_map(self) -> dict[str, AllocationInterval]:
        """Interval lookup by id.  Built on demand; O(n)."""
        return {iv.id: iv for iv in self.intervals}


@dataclass(frozen=True)
class ConflictClique:
    """A set of pairwise conflicting interval ids.

    ``window`` is the common active time segment when one exists: for
    intervals on a line it equals ``[max of starts, min of ends]``; for the
    periodic case it is the common segment of the linearized arc pieces the
    clique was detected on.  Member ids are kept sorted so output is
    canonical.
    """

    members: tuple[str, ...]
    window: tuple[Fraction, Fraction] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    @property
    def member_set(self) -> frozenset[str]:
        return frozenset(self.members)


def is_active(interval: AllocationInterval, t: TimeLike, period: Fraction | None = None) -> bool:
    """Closed-interval activity test: is the allocation active at time ``t``?

    With a period, ``t`` is reduced modulo the period first and wrap arcs are
    active at ``t`` iff ``t <= end or t >= start``.
    """
    t = as_time(t)
    if period is None:
        return interval.start <= t <= interval.end
    t = t % period
    if interval.wraps:
        return t <= interval.end or t >= interval.start
    return interval.start <= t <= interval.end


@dataclass(frozen=True)
class Violation:
    """One invariant violation found during validation."""

    resource_id: str
    message: str
    interval_id: str | None = None

    def __str__(self) -> str:
        where = f"resource {self.resource_id!r}"
        if self.interval_id is not None:
            where += f", interval {self.interval_id!r}"
        return f"{where}: {self.message}"


class ValidationError(ValueError):
    """Aggregates every violation found in one or more schemas."""

    def __init__(self, violations: Iterable[Violation]):
        self.violations = list(violations)
        super().__init__(
            "; ".join(str(v) for v in self.violations) or "invalid schema"
        )


def reduce_periodic_endpoints(schema: ResourceSchema) -> tuple[ResourceSchema, list[str]]:
    """Reduce out-of-range periodic endpoints modulo the period.

    Returns the (possibly identical) schema plus a note per changed value,
    e.g. an input ``end == period`` becomes ``0`` with wrap semantics.
    Negative values are left for :func:`validate_schema` to reject.  For a
    non-periodic schema this is the identity.
    """
    period = schema.period
    if period is None or period <= 0:
        return schema, []
    notes: list[str] = []
    changed = False
    new_intervals = []
    for iv in schema.intervals:
        start, end = iv.start, iv.end
        if start >= period:
            reduced = start % period
            notes.append(
                f"resource {schema.resource_id!r} interval {iv.id!r}: "
                f"start {format_time(start)} reduced to {format_time(reduced)} "
                f"(mod {format_time(period)})"
            )
            start = reduced
        if end >= period:
            reduced = end % period
            notes.append(
                f"resource {schema.resource_id!r} interval {iv.id!r}: "
                f"end {format_time(end)} reduced to {format_time(reduced)} "
                f"(mod {format_time(period)})"
            )
            end = reduced
        if start is not iv.start or end is not iv.end:
            changed = True
            new_intervals.append(
                AllocationInterval(iv.id, start, end, iv.train, iv.assignment)
            )
        else:
            new_intervals.append(iv)
    if not changed:
        return schema, []
    return (
        ResourceSchema(schema.resource_id, tuple(new_intervals), period),
        notes,
    )


def validate_schema(schema: ResourceSchema) -> ResourceSchema:
    """Check every type invariant, collecting all violations before raising.

    Returns the schema object unchanged when everything holds, so validation
    is idempotent.  Raises :class:`ValidationError` listing every problem;
    it never stops at the first one.
    """
    violations: list[Violation] = []
    rid = schema.resource_id
    period = schema.period

    if period is not None and period <= 0:
        violations.append(Violation(rid, f"period must be positive, got {format_time(period)}"))

    seen: set[str] = set()
    for iv in schema.intervals:
        if iv.id in seen:
            violations.append(Violation(rid, "duplicate interval id", iv.id))
        seen.add(iv.id)

        if iv.start < 0:
            violations.append(
                Violation(rid, f"start {format_time(iv.start)} is negative", iv.id)
            )
        if iv.end < 0:
            violations.append(
                Violation(rid, f"end {format_time(iv.end)} is negative", iv.id)
            )

        if period is None:
            if iv.start > iv.end:
                violations.append(
                    Violation(
                        rid,
                        f"start {format_time(iv.start)} > end {format_time(iv.end)} "
                        "on a non-periodic resource",
                        iv.id,
                    )
                )
        elif period > 0:
            if iv.start >= period:
                violations.append(
                    Violation(
                        rid,
                        f"start {format_time(iv.start)} outside [0, {format_time(period)})",
                        iv.id,
                    )
                )
            if iv.end >= period:
                violations.append(
                    Violation(
                        rid,
                        f"end {format_time(iv.end)} outside [0, {format_time(period)})",
                        iv.id,
                    )
                )

    if violations:
        raise ValidationError(violations)
    return schema
