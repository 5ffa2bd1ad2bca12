"""Command-line surface: clique detection, LP export, verification, witness.

Exit codes: 0 success, 1 I/O or parse error, 2 validation error, 3
verification mismatch, 4 oracle guard exceeded where a check was
explicitly requested.  The documented incompleteness of the periodic
detector is not a mismatch: ``verify`` reports it and still exits 0.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import __version__, oracle
from .circular import find_conflict_cliques_circular, find_missed_cliques
from .fileio import (
    AllocationDocument,
    LpWriteError,
    ParseError,
    collect_clique_results,
    dumps_cliques,
    dumps_lp,
    parse_allocation_file,
)
from .polytope import (
    LabelingError,
    WitnessPreconditionError,
    emit_clique_constraints,
    emit_stab1,
    half_vector_witness,
)
from .schema import ResourceSchema, ValidationError, format_time
from .sweep import default_kernel, find_conflict_cliques

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_MISMATCH = 3
EXIT_GUARD = 4

# sampled sub-instance checks for resources too large for the full oracle
SAMPLE_ROUNDS = 20
SAMPLE_SIZE = 10


class VerificationMismatch(Exception):
    """An oracle cross-check disagreed with the sweep output."""


def _read_document(args) -> AllocationDocument:
    if args.input == "-":
        doc = parse_allocation_file(sys.stdin, strict=args.strict)
    else:
        doc = parse_allocation_file(args.input, strict=args.strict)
    for note in doc.warnings + doc.normalizations:
        print(f"note: {note}", file=sys.stderr)
    return doc


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_cliques(args) -> int:
    doc = _read_document(args)
    results = collect_clique_results(doc.schemas)
    _write_output(dumps_cliques(results), args.out)
    return EXIT_OK


def cmd_lp(args) -> int:
    doc = _read_document(args)
    if doc.train_assignments is None:
        raise LabelingError(
            "input file has no 'train_assignments' section; LP emission needs it"
        )
    emit = emit_stab1 if args.formulation == "pairwise" else emit_clique_constraints
    system = emit(doc.schemas, doc.train_assignments)
    _write_output(dumps_lp(system), args.out)
    return EXIT_OK


def _verify_full_nonperiodic(schema: ResourceSchema) -> str:
    cliques = find_conflict_cliques(schema)
    got = {c.member_set for c in cliques}
    graph = oracle.build_graph(schema)
    expected = {
        frozenset(c) for c in oracle.enumerate_maximal_cliques(graph) if len(c) >= 2
    }
    if got != expected:
        raise VerificationMismatch(
            f"resource {schema.resource_id!r}: sweep cliques differ from the "
            f"oracle's maximal cliques ({len(got)} vs {len(expected)})"
        )
    for a, b in graph.edges:
        if not any(a in c and b in c for c in got):
            raise VerificationMismatch(
                f"resource {schema.resource_id!r}: conflicting pair ({a}, {b}) "
                "not covered by any clique"
            )
    detail = f"{len(cliques)} cliques = all maximal cliques"
    if (
        len(graph.vertices) <= oracle.MAX_COVER_VERTICES
        and len(graph.edges) <= oracle.MAX_COVER_EDGES
    ):
        cover = oracle.min_edge_clique_cover_size(graph)
        if len(cliques) != cover:
            raise VerificationMismatch(
                f"resource {schema.resource_id!r}: emitted {len(cliques)} cliques, "
                f"minimum edge clique cover is {cover}"
            )
        detail += f", cover minimal ({cover})"
    return detail


def _soundness_circular(schema: ResourceSchema) -> list:
    """Pairwise conflict check of every returned set; needs no oracle guard."""
    cliques = find_conflict_cliques_circular(schema)
    by_id = schema.id_map()
    for clique in cliques:
        members = list(clique.members)
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                if not oracle.intervals_conflict(by_id[a], by_id[b], schema.period):
                    raise VerificationMismatch(
                        f"resource {schema.resource_id!r}: returned set "
                        f"{members} is not a clique ({a} and {b} do not conflict)"
                    )
    return cliques


def _verify_full_periodic(schema: ResourceSchema) -> tuple[str, bool]:
    cliques = _soundness_circular(schema)
    covered = {c.member_set for c in cliques}
    missed = find_missed_cliques(schema)
    graph = oracle.build_graph(schema)
    for a, b in graph.edges:
        pair_ok = any(a in c and b in c for c in covered) or any(
            a in m and b in m for m in missed
        )
        if not pair_ok:
            raise VerificationMismatch(
                f"resource {schema.resource_id!r}: conflicting pair ({a}, {b}) "
                "neither covered nor flagged as missed"
            )
    if missed:
        sets = ", ".join("{" + ", ".join(m) + "}" for m in missed)
        return (
            f"{len(cliques)} cliques, complete=false (known periodic "
            f"incompleteness), missed: {sets}",
            False,
        )
    return f"{len(cliques)} cliques, complete=true", True


def _verify_sampled(schema: ResourceSchema, rng: random.Random) -> str:
    """Sub-instance spot checks for resources above the oracle guard."""
    for _ in range(SAMPLE_ROUNDS):
        subset = rng.sample(schema.intervals, min(SAMPLE_SIZE, len(schema.intervals)))
        sub = ResourceSchema(schema.resource_id, tuple(subset), schema.period)
        if schema.is_periodic:
            _soundness_circular(sub)
        else:
            _verify_full_nonperiodic(sub)
    return f"spot-checked {SAMPLE_ROUNDS} random sub-instances of size {SAMPLE_SIZE}"


def cmd_verify(args) -> int:
    doc = _read_document(args)
    rng = random.Random(args.seed)
    guard_skips = []
    for schema in doc.schemas:
        n = len(schema.intervals)
        if n <= oracle.MAX_CLIQUE_VERTICES:
            if schema.is_periodic:
                detail, _complete = _verify_full_periodic(schema)
            else:
                detail = _verify_full_nonperiodic(schema)
            print(f"resource {schema.resource_id}: OK ({detail})")
        else:
            if schema.is_periodic:
                _soundness_circular(schema)
            detail = _verify_sampled(schema, rng)
            guard_skips.append(schema.resource_id)
            print(
                f"resource {schema.resource_id}: {n} intervals exceed the oracle "
                f"guard ({oracle.MAX_CLIQUE_VERTICES}); {detail}"
            )
    if guard_skips and args.all_checks:
        print(
            "full oracle verification skipped for: " + ", ".join(guard_skips),
            file=sys.stderr,
        )
        return EXIT_GUARD
    return EXIT_OK


def cmd_witness(args) -> int:
    doc = _read_document(args)
    status = EXIT_OK
    for schema in doc.schemas:
        witness = half_vector_witness(schema)
        print(f"resource {witness.resource_id}: chordless odd cycle, "
              f"length {witness.cycle_length}")
        print(
            f"  all-1/2 point vs {witness.clique_row_count} clique rows: "
            + ("satisfied" if witness.clique_rows_satisfied else "VIOLATED")
        )
        print(
            f"  coordinate sum {format_time(witness.half_total)} vs max stable "
            f"set {witness.stable_bound}: "
            + ("exceeds" if witness.exceeds_stable_bound else "does NOT exceed")
        )
        if witness.established:
            print("  witness established: point is outside the stable set polytope")
        else:
            print("  witness NOT established", file=sys.stderr)
            status = EXIT_MISMATCH
    return status


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conflictcliques",
        description=(
            "Detect conflict cliques among resource allocation intervals and "
            "emit stable-set ILP constraint systems."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="allocation file (JSON), or '-' for stdin")
    common.add_argument(
        "--strict", action="store_true", help="reject unknown fields in the input"
    )
    common.add_argument(
        "--seed", type=int, default=0, help="seed for randomized verification sampling"
    )

    p = sub.add_parser(
        "cliques", parents=[common], help="detect conflict cliques per resource"
    )
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser(
        "lp", parents=[common], help="emit the stable-set constraint system as an LP file"
    )
    p.add_argument(
        "--formulation",
        choices=("pairwise", "clique"),
        required=True,
        help="pairwise conflict rows or one row per conflict clique",
    )
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser(
        "verify", parents=[common], help="cross-check clique output against the oracle"
    )
    p.add_argument(
        "--all-checks",
        action="store_true",
        help="fail (exit 4) when a resource exceeds the oracle guard instead of sampling",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "witness-oddcycle",
        parents=[common],
        help="certify the all-1/2 fractional point on an odd-cycle instance",
    )
    p.set_defaults(func=cmd_witness)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, LabelingError, WitnessPreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except LpWriteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except VerificationMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except oracle.InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
