"""0/1 constraint systems over train assignment variables.

Two formulations of conflict-freeness are emitted for a set of resources:

* the pairwise form: one ``x_a + x_b <= 1`` inequality per conflicting pair
  of allocations belonging to distinct trains, plus one equality
  ``sum_j x_{i,j} = 1`` per train choosing exactly one assignment;
* the clique form: the same equalities, but conflicts are grouped so each
  detected conflict clique contributes a single ``sum x_v <= 1`` row.

Both systems have the same 0/1 solutions; the clique form has the tighter
linear relaxation.  All arithmetic is exact rationals, so feasibility of a
point is decided, never estimated.  :func:`half_vector_witness` uses that
to certify the known weak spot of the clique relaxation on periodic
resources whose conflict structure is a chordless odd cycle: the all-1/2
point satisfies every clique row yet lies outside the stable set polytope.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import oracle
from .circular import find_conflict_cliques_circular
from .schema import ResourceSchema
from .sweep import find_conflict_cliques

__all__ = [
    "Variable",
    "LinearConstraint",
    "ConstraintSystem",
    "LabelingError",
    "MissingAssignmentError",
    "WitnessPreconditionError",
    "ConstraintCheck",
    "FeasibilityReport",
    "OddCycleWitness",
    "sanitize_label",
    "variable_name",
    "emit_stab1",
    "emit_clique_constraints",
    "resource_clique_system",
    "check_point",
    "half_vector_witness",
]

_SANITIZE_RE = re.compile(r"[^A-Za-z0-9]")


class LabelingError(ValueError):
    """Interval labels inconsistent with the declared train assignments."""


class MissingAssignmentError(KeyError):
    """A point to check leaves some variable without a value."""


class WitnessPreconditionError(ValueError):
    """The schema's conflict graph is not a chordless odd cycle of length >= 5."""


def sanitize_label(label: object) -> str:
    return _SANITIZE_RE.sub("_", str(label))


def variable_name(train: object, assignment: object) -> str:
    return f"x_{sanitize_label(train)}_{sanitize_label(assignment)}"


@dataclass(frozen=True)
class Variable:
    """A 0/1 decision variable; labeled ones mean 'train takes assignment'."""

    name: str
    train: str | None = None
    assignment: int | None = None


@dataclass(frozen=True)
class LinearConstraint:
    """``sum coef * var  (<= | =)  rhs`` with exact rational numbers."""

    name: str
    terms: tuple[tuple[str, Fraction], ...]
    sense: str  # "<=" or "="
    rhs: Fraction
    resources: tuple[str, ...] = ()  # provenance, for deduplicated rows

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        return sum((coef * point[var] for var, coef in self.terms), Fraction(0))


@dataclass
class ConstraintSystem:
    """Variables plus ordered constraints; ``integer`` flags the 0/1 requirement."""

    variables: list[Variable]
    constraints: list[LinearConstraint]
    integer: bool = True

    def variable_names(self) -> list[str]:
        return [v.name for v in self.variables]


def _labeled_variables(
    schemas: Iterable[ResourceSchema], train_assignments: Mapping[str, int]
) -> tuple[list[Variable], dict[tuple[str, int], str]]:
    """Build the variable table and check label consistency, collecting all errors."""
    problems: list[str] = []
    for train, count in train_assignments.items():
        if not isinstance(count, int) or count < 1:
            problems.append(f"train {train!r}: assignment count must be a positive integer")

    names: dict[str, tuple[str, int]] = {}
    variables: list[Variable] = []
    lookup: dict[tuple[str, int], str] = {}
    for train in sorted(train_assignments, key=str):
        count = train_assignments[train]
        if not isinstance(count, int) or count < 1:
            continue
        for j in range(1, count + 1):
            name = variable_name(train, j)
            if name in names and names[name] != (train, j):
                problems.append(
                    f"variable name collision after sanitization: {name!r} for "
                    f"{names[name]} and {(train, j)}"
                )
            names[name] = (train, j)
            variables.append(Variable(name, str(train), j))
            lookup[(str(train), j)] = name

    for schema in schemas:
        for iv in schema.intervals:
            where = f"resource {schema.resource_id!r} interval {iv.id!r}"
            if iv.train is None or iv.assignment is None:
                problems.append(f"{where}: missing train/assignment label")
                continue
            if iv.train not in train_assignments:
                problems.append(f"{where}: unknown train {iv.train!r}")
                continue
            m = train_assignments[iv.train]
            if not isinstance(m, int) or not 1 <= iv.assignment <= m:
                problems.append(
                    f"{where}: assignment {iv.assignment} out of range 1..{m} "
                    f"for train {iv.train!r}"
                )
    if problems:
        raise LabelingError("; ".join(problems))
    return variables, lookup


def _one_assignment_equalities(
    train_assignments: Mapping[str, int], lookup: Mapping[tuple[str, int], str]
) -> list[LinearConstraint]:
    rows = []
    for k, train in enumerate(sorted(train_assignments, key=str), start=1):
        terms = tuple(
            (lookup[(str(train), j)], Fraction(1))
            for j in range(1, train_assignments[train] + 1)
        )
        rows.append(LinearConstraint(f"t{k}", terms, "=", Fraction(1)))
    return rows


def emit_stab1(
    schemas: Iterable[ResourceSchema], train_assignments: Mapping[str, int]
) -> ConstraintSystem:
    """Pairwise conflict formulation.

    One equality per train, one ``x + y <= 1`` row per conflicting pair of
    allocations of distinct trains, deduplicated across resources.  The
    emission is syntactic: an infeasible system is emitted as-is.
    """
    schemas = list(schemas)
    variables, lookup = _labeled_variables(schemas, train_assignments)
    constraints = _one_assignment_equalities(train_assignments, lookup)

    pair_resources: dict[tuple[str, str], list[str]] = {}
    for schema in schemas:
        graph = oracle.build_graph(schema)
        ivs = schema.id_map()
        for a, b in sorted(graph.edges):
            ia, ib = ivs[a], ivs[b]
            if ia.train == ib.train:
                continue  # same-train exclusion is carried by the equality row
            va = lookup[(str(ia.train), ia.assignment)]
            vb = lookup[(str(ib.train), ib.assignment)]
            if va == vb:
                continue
            pair = (va, vb) if va < vb else (vb, va)
            pair_resources.setdefault(pair, [])
            if schema.resource_id not in pair_resources[pair]:
                pair_resources[pair].append(schema.resource_id)

    for k, pair in enumerate(sorted(pair_resources), start=1):
        va, vb = pair
        constraints.append(
            LinearConstraint(
                f"p{k}",
                ((va, Fraction(1)), (vb, Fraction(1))),
                "<=",
                Fraction(1),
                resources=tuple(pair_resources[pair]),
            )
        )
    return ConstraintSystem(variables, constraints, integer=True)


def emit_clique_constraints(
    schemas: Iterable[ResourceSchema], train_assignments: Mapping[str, int]
) -> ConstraintSystem:
    """Clique conflict formulation.

    Per resource, each detected conflict clique becomes one row over the
    member variables (the linear sweep for plain resources, the circular
    variant for periodic ones).  Members of the same clique sharing a
    variable collapse to a single unit coefficient; rows left with fewer
    than two variables are dropped; identical rows from different resources
    are emitted once, with all source resources recorded.
    """
    schemas = list(schemas)
    variables, lookup = _labeled_variables(schemas, train_assignments)
    constraints = _one_assignment_equalities(train_assignments, lookup)

    clique_rows: dict[frozenset[str], list[str]] = {}
    order: list[frozenset[str]] = []
    for schema in schemas:
        if schema.is_periodic:
            cliques = find_conflict_cliques_circular(schema)
        else:
            cliques = find_conflict_cliques(schema)
        ivs = schema.id_map()
        for clique in cliques:
            var_names = frozenset(
                lookup[(str(ivs[m].train), ivs[m].assignment)] for m in clique.members
            )
            if len(var_names) < 2:
                continue
            if var_names not in clique_rows:
                clique_rows[var_names] = []
                order.append(var_names)
            if schema.resource_id not in clique_rows[var_names]:
                clique_rows[var_names].append(schema.resource_id)

    for k, var_names in enumerate(order, start=1):
        terms = tuple((v, Fraction(1)) for v in sorted(var_names))
        constraints.append(
            LinearConstraint(
                f"c{k}", terms, "<=", Fraction(1), resources=tuple(clique_rows[var_names])
            )
        )
    return ConstraintSystem(variables, constraints, integer=True)


def resource_clique_system(schema: ResourceSchema, *, kernel: str = "auto") -> ConstraintSystem:
    """Clique rows of a single resource over one variable per interval.

    No train equalities and no integrality: this is the clique relaxation of
    the resource's stable set polytope, as used by the odd-cycle witness.
    """
    variables = [
        Variable(f"x_{sanitize_label(iv.id)}") for iv in schema.intervals
    ]
    names = [v.name for v in variables]
    if len(set(names)) != len(names):
        raise LabelingError(
            f"variable name collision after sanitizing interval ids of "
            f"resource {schema.resource_id!r}"
        )
    by_id = {iv.id: f"x_{sanitize_label(iv.id)}" for iv in schema.intervals}
    if schema.is_periodic:
        cliques = find_conflict_cliques_circular(schema, kernel=kernel)
    else:
        cliques = find_conflict_cliques(schema, kernel=kernel)
    constraints = [
        LinearConstraint(
            f"c{k}",
            tuple((by_id[m], Fraction(1)) for m in clique.members),
            "<=",
            Fraction(1),
            resources=(schema.resource_id,),
        )
        for k, clique in enumerate(cliques, start=1)
    ]
    return ConstraintSystem(variables, constraints, integer=False)


@dataclass(frozen=True)
class ConstraintCheck:
    """Evaluation of one constraint at a point; slack is rhs - lhs."""

    name: str
    lhs: Fraction
    sense: str
    rhs: Fraction
    satisfied: bool

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs


@dataclass
class FeasibilityReport:
    feasible: bool
    violations: list[ConstraintCheck] = field(default_factory=list)


def check_point(
    system: ConstraintSystem, point: Mapping[str, Fraction | int]
) -> FeasibilityReport:
    """Evaluate every constraint exactly at the given point.

    The point must assign a value in [0, 1] to every declared variable.
    Violated constraints are reported with their slack.
    """
    values: dict[str, Fraction] = {}
    missing = []
    for name in system.variable_names():
        if name not in point:
            missing.append(name)
            continue
        values[name] = Fraction(point[name])
    if missing:
        raise MissingAssignmentError(
            f"point assigns no value to: {', '.join(sorted(missing))}"
        )
    out_of_range = [n for n, v in values.items() if not 0 <= v <= 1]
    if out_of_range:
        raise ValueError(
            f"point values outside [0, 1] for: {', '.join(sorted(out_of_range))}"
        )

    violations = []
    for constraint in system.constraints:
        lhs = constraint.evaluate(values)
        ok = lhs <= constraint.rhs if constraint.sense == "<=" else lhs == constraint.rhs
        if not ok:
            violations.append(
                ConstraintCheck(constraint.name, lhs, constraint.sense, constraint.rhs, False)
            )
    return FeasibilityReport(feasible=not violations, violations=violations)


@dataclass
class OddCycleWitness:
    """Report that the all-1/2 point beats the clique rows but not stability.

    ``clique_rows_satisfied`` covers every emitted clique constraint at the
    all-1/2 point; ``half_total`` is the point's coordinate sum (2k+1)/2 and
    ``stable_bound`` the exhaustive maximum stable set size k.  The witness
    is established when the rows hold and the sum exceeds the bound, placing
    the point outside the stable set polytope.
    """

    resource_id: str
    cycle_length: int
    stable_bound: int
    half_total: Fraction
    clique_row_count: int
    clique_rows_satisfied: bool
    exceeds_stable_bound: bool

    @property
    def established(self) -> bool:
        return self.clique_rows_satisfied and self.exceeds_stable_bound


def half_vector_witness(schema: ResourceSchema) -> OddCycleWitness:
    """Certify the all-1/2 point against a chordless-odd-cycle resource.

    Requires a periodic schema whose intersection graph is a chordless odd
    cycle of length 2k+1 >= 5 (every vertex degree 2, connected, odd order;
    a triangle does not qualify since its single clique row already cuts the
    point).  Raises :class:`WitnessPreconditionError` otherwise.
    """
    if schema.period is None:
        raise WitnessPreconditionError(
            "odd-cycle witness needs a periodic schema; a chordless cycle of "
            "length >= 5 has no interval realization on a line"
        )
    graph = oracle.build_graph(schema)
    n = len(graph.vertices)
    adj = graph.neighbors()
    if n < 5 or n % 2 == 0:
        raise WitnessPreconditionError(
            f"conflict graph has {n} vertices; need an odd count >= 5"
        )
    bad_degree = [v for v in graph.vertices if len(adj[v]) != 2]
    if bad_degree:
        raise WitnessPreconditionError(
            f"not a cycle: vertex degree != 2 at {', '.join(sorted(bad_degree))}"
        )
    seen = {graph.vertices[0]}
    frontier = [graph.vertices[0]]
    while frontier:
        v = frontier.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    if len(seen) != n:
        raise WitnessPreconditionError("not a cycle: conflict graph is disconnected")
    # connected, every degree 2, n vertices and n edges: a chordless n-cycle

    system = resource_clique_system(schema)
    half = Fraction(1, 2)
    report = check_point(system, {name: half for name in system.variable_names()})
    alpha = oracle.max_stable_set_size(graph)
    total = Fraction(n, 2)
    return OddCycleWitness(
        resource_id=schema.resource_id,
        cycle_length=n,
        stable_bound=alpha,
        half_total=total,
        clique_row_count=len(system.constraints),
        clique_rows_satisfied=report.feasible,
        exceeds_stable_bound=total > alpha,
    )
