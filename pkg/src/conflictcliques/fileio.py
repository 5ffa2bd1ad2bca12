"""Allocation files, clique reports, and LP export.

The allocation file is JSON with all times as exact decimal strings (plain
integers are also fine; floats are refused because 0.1 does not survive a
float round-trip).  Writers are deterministic: fixed key order, no
timestamps, canonical number rendering, so identical inputs give
byte-identical outputs and documents survive parse/write cycles unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Mapping

from . import oracle
from .circular import find_conflict_cliques_circular, find_missed_cliques
from .polytope import ConstraintSystem
from .schema import (
    AllocationInterval,
    ConflictClique,
    ResourceSchema,
    TimeSyntaxError,
    ValidationError,
    Violation,
    as_time,
    format_time,
    reduce_periodic_endpoints,
    validate_schema,
)
from .sweep import find_conflict_cliques

__all__ = [
    "FORMAT_VERSION",
    "ParseError",
    "LpWriteError",
    "AllocationDocument",
    "ResourceCliqueResult",
    "parse_allocation_file",
    "loads_allocation",
    "dumps_allocation",
    "collect_clique_results",
    "dumps_cliques",
    "dumps_lp",
]

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed input document; carries position or path context."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class LpWriteError(ValueError):
    """The constraint system cannot be rendered as an LP document."""


@dataclass
class AllocationDocument:
    """Parsed and validated allocation file."""

    schemas: list[ResourceSchema]
    train_assignments: dict[str, int] | None = None
    warnings: list[str] = field(default_factory=list)
    normalizations: list[str] = field(default_factory=list)


def _check_keys(obj: Mapping, allowed: set[str], where: str, strict: bool, warnings: list[str]) -> None:
    unknown = sorted(set(obj) - allowed)
    if not unknown:
        return
    note = f"{where}: unknown field(s) {', '.join(repr(u) for u in unknown)}"
    if strict:
        raise ParseError(note)
    warnings.append(note + " (ignored)")


def _time_field(obj: Mapping, key: str, where: str) -> Fraction:
    if key not in obj:
        raise ParseError(f"{where}: missing required field {key!r}")
    value = obj[key]
    if isinstance(value, float) or isinstance(value, bool):
        raise ParseError(
            f"{where}: field {key!r} must be an exact decimal string, got "
            f"{type(value).__name__} {value!r}"
        )
    try:
        return as_time(value)
    except TimeSyntaxError as exc:
        raise ParseError(f"{where}: field {key!r}: {exc}") from exc


def _str_field(obj: Mapping, key: str, where: str) -> str:
    if key not in obj:
        raise ParseError(f"{where}: missing required field {key!r}")
    value = obj[key]
    if not isinstance(value, str):
        raise ParseError(f"{where}: field {key!r} must be a string")
    return value


def loads_allocation(text: str, *, strict: bool = False) -> AllocationDocument:
    """Parse an allocation document from JSON text and validate it.

    Structural problems raise :class:`ParseError` (with line/column for JSON
    syntax errors); invariant violations are collected across all resources
    and raised together as :class:`ValidationError`.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc

    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    warnings: list[str] = []
    _check_keys(data, {"version", "resources", "train_assignments"}, "top level", strict, warnings)
    if data.get("version") != FORMAT_VERSION:
        raise ParseError(
            f"unsupported or missing format version {data.get('version')!r}; "
            f"expected {FORMAT_VERSION}"
        )
    resources = data.get("resources")
    if not isinstance(resources, list):
        raise ParseError("'resources' must be a list")

    train_assignments = None
    if "train_assignments" in data:
        raw = data["train_assignments"]
        if not isinstance(raw, dict):
            raise ParseError("'train_assignments' must be an object")
        for train, count in raw.items():
            if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                raise ParseError(
                    f"train_assignments[{train!r}] must be a positive integer"
                )
        train_assignments = dict(raw)

    schemas: list[ResourceSchema] = []
    normalizations: list[str] = []
    violations: list[Violation] = []
    seen_resources: set[str] = set()
    for r_index, robj in enumerate(resources):
        where = f"resources[{r_index}]"
        if not isinstance(robj, dict):
            raise ParseError(f"{where}: must be an object")
        _check_keys(robj, {"resource_id", "period", "intervals"}, where, strict, warnings)
        rid = _str_field(robj, "resource_id", where)
        if rid in seen_resources:
            violations.append(Violation(rid, "duplicate resource id"))
        seen_resources.add(rid)
        period = _time_field(robj, "period", where) if "period" in robj else None
        raw_intervals = robj.get("intervals")
        if not isinstance(raw_intervals, list):
            raise ParseError(f"{where}: 'intervals' must be a list")

        intervals = []
        for i_index, iobj in enumerate(raw_intervals):
            iwhere = f"{where}.intervals[{i_index}]"
            if not isinstance(iobj, dict):
                raise ParseError(f"{iwhere}: must be an object")
            _check_keys(
                iobj, {"id", "train", "assignment", "start", "end"}, iwhere, strict, warnings
            )
            iid = _str_field(iobj, "id", iwhere)
            train = None
            if "train" in iobj:
                train = iobj["train"]
                if not isinstance(train, str):
                    raise ParseError(f"{iwhere}: 'train' must be a string")
            assignment = None
            if "assignment" in iobj:
                assignment = iobj["assignment"]
                if isinstance(assignment, bool) or not isinstance(assignment, int):
                    raise ParseError(f"{iwhere}: 'assignment' must be an integer")
            intervals.append(
                AllocationInterval(
                    iid,
                    _time_field(iobj, "start", iwhere),
                    _time_field(iobj, "end", iwhere),
                    train,
                    assignment,
                )
            )

        schema = ResourceSchema(rid, tuple(intervals), period)
        schema, notes = reduce_periodic_endpoints(schema)
        normalizations.extend(notes)
        try:
            schema = validate_schema(schema)
        except ValidationError as exc:
            violations.extend(exc.violations)
        schemas.append(schema)

    if violations:
        raise ValidationError(violations)
    return AllocationDocument(schemas, train_assignments, warnings, normalizations)


def parse_allocation_file(source: str | Path | IO[str], *, strict: bool = False) -> AllocationDocument:
    """Parse from a path or an open text stream."""
    if hasattr(source, "read"):
        return loads_allocation(source.read(), strict=strict)
    return loads_allocation(Path(source).read_text(encoding="utf-8"), strict=strict)


def dumps_allocation(document: AllocationDocument) -> str:
    """Serialize back to canonical JSON (stable key order, exact times)."""
    resources = []
    for schema in document.schemas:
        intervals = []
        for iv in schema.intervals:
            entry: dict[str, object] = {"id": iv.id}
            if iv.train is not None:
                entry["train"] = iv.train
            if iv.assignment is not None:
                entry["assignment"] = iv.assignment
            entry["start"] = format_time(iv.start)
            entry["end"] = format_time(iv.end)
            intervals.append(entry)
        robj: dict[str, object] = {"resource_id": schema.resource_id}
        if schema.period is not None:
            robj["period"] = format_time(schema.period)
        robj["intervals"] = intervals
        resources.append(robj)
    data: dict[str, object] = {"version": FORMAT_VERSION, "resources": resources}
    if document.train_assignments is not None:
        data["train_assignments"] = {
            k: document.train_assignments[k] for k in sorted(document.train_assignments)
        }
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


@dataclass
class ResourceCliqueResult:
    """Cliques of one resource plus the completeness verdict.

    ``complete`` is True for non-periodic resources (the sweep provably
    finds every maximal clique), True/False for periodic ones depending on
    the oracle comparison, and None when the resource is too large for the
    exhaustive check.
    """

    resource_id: str
    periodic: bool
    cliques: list[ConflictClique]
    complete: bool | None
    missed: list[tuple[str, ...]] = field(default_factory=list)


def collect_clique_results(
    schemas: Iterable[ResourceSchema], *, kernel: str = "auto"
) -> list[ResourceCliqueResult]:
    """Run the appropriate clique detector per resource.

    Periodic resources additionally get the missed-clique certificate when
    they fit under the oracle guard.
    """
    results = []
    for schema in schemas:
        if schema.is_periodic:
            cliques = find_conflict_cliques_circular(schema, kernel=kernel)
            try:
                missed = find_missed_cliques(schema)
                complete: bool | None = not missed
            except oracle.InstanceTooLargeError:
                missed = []
                complete = None
            results.append(
                ResourceCliqueResult(schema.resource_id, True, cliques, complete, missed)
            )
        else:
            cliques = find_conflict_cliques(schema, kernel=kernel)
            results.append(
                ResourceCliqueResult(schema.resource_id, False, cliques, True)
            )
    return results


def dumps_cliques(results: Iterable[ResourceCliqueResult]) -> str:
    """Serialize clique results as a deterministic JSON document."""
    out = []
    for res in results:
        cliques = []
        for clique in res.cliques:
            entry: dict[str, object] = {"members": list(clique.members)}
            if clique.window is not None:
                entry["window"] = {
                    "start": format_time(clique.window[0]),
                    "end": format_time(clique.window[1]),
                }
            cliques.append(entry)
        robj: dict[str, object] = {
            "resource_id": res.resource_id,
            "periodic": res.periodic,
            "cliques": cliques,
        }
        if res.complete is not None:
            robj["complete"] = res.complete
        if res.missed:
            robj["missed"] = [list(m) for m in res.missed]
        out.append(robj)
    return json.dumps({"version": FORMAT_VERSION, "resources": out}, indent=2, ensure_ascii=False) + "\n"


def _magnitude(value: Fraction) -> str:
    return format_time(abs(value))


def _term_sequence(terms: Iterable[tuple[str, Fraction]]) -> str:
    parts: list[str] = []
    for var, coef in terms:
        if coef == 0:
            continue
        body = var if abs(coef) == 1 else f"{_magnitude(coef)} {var}"
        if not parts:
            parts.append(f"-{body}" if coef < 0 else body)
        else:
            parts.append(f"- {body}" if coef < 0 else f"+ {body}")
    return " ".join(parts)


def dumps_lp(
    system: ConstraintSystem,
    objective: Mapping[str, Fraction] | None = None,
    *,
    sense: str = "Minimize",
) -> str:
    """Render a constraint system in the plain-text LP dialect.

    Sections in order: objective (a literal 0 when none is supplied),
    ``Subject To`` with one named row per line, ``Bounds`` declaring
    0 <= x <= 1 for every variable, ``Binary`` listing all variables when
    the system is integral, and the ``End`` terminator.  Exact rationals are
    written as decimals when that is exact, as ``p/q`` otherwise.
    """
    if sense not in ("Minimize", "Maximize"):
        raise LpWriteError(f"objective sense must be Minimize or Maximize, got {sense!r}")
    names = system.variable_names()
    declared = set(names)
    if len(declared) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        raise LpWriteError(f"variable name collision after sanitization: {', '.join(dupes)}")
    row_names = [c.name for c in system.constraints]
    if len(set(row_names)) != len(row_names):
        raise LpWriteError("duplicate constraint names")
    for constraint in system.constraints:
        undeclared = sorted({v for v, _ in constraint.terms} - declared)
        if undeclared:
            raise LpWriteError(
                f"constraint {constraint.name!r} references undeclared variable(s) "
                f"{', '.join(undeclared)}"
            )
    if objective:
        undeclared = sorted(set(objective) - declared)
        if undeclared:
            raise LpWriteError(
                f"objective references undeclared variable(s) {', '.join(undeclared)}"
            )

    lines = [sense]
    obj_terms = ""
    if objective:
        obj_terms = _term_sequence((v, objective[v]) for v in names if v in objective)
    lines.append(f" obj: {obj_terms or '0'}")
    lines.append("Subject To")
    for constraint in system.constraints:
        terms = _term_sequence(constraint.terms)
        if not terms:
            raise LpWriteError(f"constraint {constraint.name!r} has no nonzero terms")
        lines.append(
            f" {constraint.name}: {terms} {constraint.sense} {format_time(constraint.rhs)}"
        )
    lines.append("Bounds")
    for name in names:
        lines.append(f" 0 <= {name} <= 1")
    if system.integer:
        lines.append("Binary")
        for name in names:
            lines.append(f" {name}")
    lines.append("End")
    return "\n".join(lines) + "\n"
