"""
clusterlab command line.

  clusterlab seed build --type A1 --framed
  clusterlab seed build --cartan c.json --word "[1,-1]" --out dot
  clusterlab seed build --type A2 --auto-word
  clusterlab mutate --type A2 --framed --path 1,3
  clusterlab verify sl2 --samples 100 --seed 42
  clusterlab membership --type A1 --expr "A0^-1" --sigma all
  clusterlab monoid gl2 --k 1
  clusterlab export schema

Exit codes: 0 success, 1 failed check, 2 usage or input error.
Reports go to stdout, logs to stderr.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from clusterlab import __version__
from clusterlab.config import DEFAULT_DEPTH, LOG_LEVEL
from clusterlab.models.documents import CartanDocument, OutputFormat, SpecializationDocument, write_seed_schema_to_file
from clusterlab.services.cartan import RootDatum, datum_of_type, root_datum
from clusterlab.services.cluster_engine import initial_state, mutate_along
from clusterlab.services.dbc_seed import DBCSeed, build_seed, double_word, framed_seed, levi_seed, to_dot
from clusterlab.services.errors import ClusterLabError, DefectError, InputError
from clusterlab.services.export_service import (
    cartan_document,
    cartan_from_document,
    membership_report,
    minor_text,
    presentation_document,
    seed_document,
)
from clusterlab.services.expression import membership_query
from clusterlab.services.monoid_lab import (
    build_dotted_cartan,
    gl2_cartan,
    gl2_family,
    sl2_env_presentation,
    sl2_torus_family,
)
from clusterlab.services.verify_service import default_config, run_suite, suite_names
from clusterlab.utils.logging import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info("wrote %s", path)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"Cannot read {path}: {exc}") from exc


def _parse_ints(text: str) -> list[int]:
    text = text.strip()
    try:
        if text.startswith("["):
            values = json.loads(text)
        else:
            values = [int(x) for x in text.split(",") if x.strip()]
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"Expected a list of integers, got {text!r}") from exc
    if not all(isinstance(x, int) for x in values):
        raise InputError(f"Expected a list of integers, got {text!r}")
    return values


def _load_datum(args: argparse.Namespace) -> RootDatum:
    if args.type and args.cartan:
        raise InputError("Give either --type or --cartan, not both")
    if args.type:
        return datum_of_type(args.type)
    if args.cartan:
        try:
            doc = CartanDocument.model_validate(_read_json(args.cartan))
        except ValidationError as exc:
            raise InputError(f"Invalid Cartan document {args.cartan}: {exc}") from exc
        levi = _parse_ints(args.levi) if getattr(args, "levi", None) else None
        return root_datum(cartan_from_document(doc), levi=levi, name=doc.name or "")
    raise InputError("Give --type or --cartan")


def _load_seed(args: argparse.Namespace) -> DBCSeed:
    datum = _load_datum(args)
    if sum(map(bool, (args.framed, args.word, args.auto_word))) > 1:
        raise InputError("Give at most one of --framed, --word and --auto-word")
    if args.framed:
        return framed_seed(datum)
    if args.word:
        return build_seed(double_word(datum, _parse_ints(args.word)))
    return levi_seed(datum)


def _add_seed_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", help="Cartan type, e.g. A1, B2, G2")
    p.add_argument("--cartan", help='Cartan JSON file {"labels": [...], "matrix": [[...]]}')
    p.add_argument("--word", help="Double reduced word, e.g. '[1,-1]' or '1,-1'")
    p.add_argument("--framed", action="store_true", help="Framed seed of the datum")
    p.add_argument("--auto-word", action="store_true", help="Unshuffled word of (w0, w0) on the Levi set (the default)")
    p.add_argument("--levi", help="Levi index set for --cartan, e.g. '1,2'")


# -----------------------------------------------------------------------------
# Commands
# -----------------------------------------------------------------------------


def cmd_seed_build(args: argparse.Namespace) -> int:
    built = _load_seed(args)
    doc = seed_document(built)
    if args.out == OutputFormat.DOT.value:
        _emit(to_dot(built.seed, built.datum.name or "seed"), args.output)
    elif args.out == OutputFormat.TEXT.value:
        seed = built.seed
        lines = [f"word {list(built.word.letters)}"]
        for v in doc.vertices:
            kind = "frozen" if v.frozen else "mutable"
            lines.append(f"{v.name:>4} vertex {v.id:>3} level {v.level} {kind} {minor_text(built.labels[v.id])}")
        lines.append(f"mutable: {[seed.names[v] for v in seed.mutable_vertices]}")
        _emit("\n".join(lines), args.output)
    else:
        _emit(doc.model_dump_json(indent=2), args.output)
    return EXIT_OK


def cmd_mutate(args: argparse.Namespace) -> int:
    built = _load_seed(args)
    path = _parse_ints(args.path) if args.path else []
    state = mutate_along(initial_state(built.seed), path)
    seed = state.seed
    if args.out == OutputFormat.DOT.value:
        _emit(to_dot(seed, f"path {path}"), args.output)
        return EXIT_OK
    variables = {seed.names[v]: state.vars[v].to_text() for v in seed.vertices}
    if args.out == OutputFormat.TEXT.value:
        _emit("\n".join(f"{name} = {text}" for name, text in variables.items()), args.output)
        return EXIT_OK
    data = {
        "path": path,
        "vertices": list(seed.vertices),
        "mutable": [seed.names[v] for v in seed.mutable_vertices],
        "epsilon": [[[x.numerator, x.denominator] for x in row] for row in seed.epsilon],
        "variables": variables,
    }
    _emit(_dump(data), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    config = default_config(args.suite, args.seed, args.depth, args.samples, args.k)
    report = run_suite(args.suite, config)
    _emit(_dump(report.to_dict()), args.output)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_membership(args: argparse.Namespace) -> int:
    if bool(args.expr) == bool(args.expr_file):
        raise InputError("Give exactly one of --expr and --expr-file")
    if args.expr_file:
        try:
            text = Path(args.expr_file).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise InputError(f"Cannot read {args.expr_file}: {exc}") from exc
    else:
        text = args.expr
    if not (args.type or args.cartan):
        args.type = "A1"
    if not (args.word or args.auto_word):
        args.framed = True
    built = _load_seed(args)
    sigma = [s for s in args.sigma.split(",")] if args.sigma else None
    f, vertices, result = membership_query(text, built, sigma, args.depth)
    _emit(membership_report(result, f, text, built, vertices).model_dump_json(indent=2), args.output)
    return EXIT_OK


def cmd_monoid(args: argparse.Namespace) -> int:
    if args.family == "sl2":
        doc = presentation_document(sl2_env_presentation(), [[2, -1], [-1, 2]])
    elif args.family == "gl2":
        doc = presentation_document(gl2_family(args.k), gl2_cartan(args.k))
    elif args.family == "torus":
        k = args.k if args.k else 1
        doc = presentation_document(sl2_torus_family(k), [[2, -2 * k], [-2 * k, 2]])
    else:
        if not args.cartan or not args.spec:
            raise InputError("monoid dotted needs --cartan and --spec")
        try:
            cartan = cartan_from_document(CartanDocument.model_validate(_read_json(args.cartan)))
            spec = SpecializationDocument.model_validate(_read_json(args.spec))
        except ValidationError as exc:
            raise InputError(f"Invalid input document: {exc}") from exc
        dotted = build_dotted_cartan(cartan, spec.entries)
        _emit(cartan_document(dotted).model_dump_json(indent=2), args.output)
        return EXIT_OK
    _emit(doc.model_dump_json(indent=2), args.output)
    return EXIT_FAILED if doc.verified is False else EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    path = write_seed_schema_to_file(args.path)
    sys.stdout.write(f"{path}\n")
    return EXIT_OK


# -----------------------------------------------------------------------------
# Parser
# -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterlab", description="Exact cluster-algebra and Vinberg-monoid laboratory")
    parser.add_argument("--version", action="version", version=f"clusterlab {__version__}")
    parser.add_argument("--log-level", default=LOG_LEVEL, help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    formats = [f.value for f in OutputFormat]

    seed = sub.add_parser("seed", help="Seeds of double reduced words")
    seed_sub = seed.add_subparsers(dest="action", required=True)
    build = seed_sub.add_parser("build", help="Build a seed and print it")
    _add_seed_source(build)
    build.add_argument("--out", choices=formats, default="json")
    build.add_argument("--output", help="Write to this file instead of stdout")
    build.set_defaults(func=cmd_seed_build)

    mutate = sub.add_parser("mutate", help="Mutate a seed along a path and print the result")
    _add_seed_source(mutate)
    mutate.add_argument("--path", help="Mutation path of signed vertex ids, e.g. '1,3'")
    mutate.add_argument("--out", choices=formats, default="json")
    mutate.add_argument("--output", help="Write to this file instead of stdout")
    mutate.set_defaults(func=cmd_mutate)

    verify = sub.add_parser("verify", help="Run an acceptance suite")
    verify.add_argument("suite", choices=suite_names())
    verify.add_argument("--samples", type=int, help="Random points per check")
    verify.add_argument("--seed", type=int, help="RNG seed")
    verify.add_argument("--depth", type=int, help="Mutation depth")
    verify.add_argument("--k", type=int, help="GL2 family parameter")
    verify.add_argument("--output", help="Write the report to this file")
    verify.set_defaults(func=cmd_verify)

    member = sub.add_parser("membership", help="Decide membership in the partially compactified upper cluster algebra")
    _add_seed_source(member)
    member.add_argument("--expr", help="Laurent expression in the seed's variable names")
    member.add_argument("--expr-file", help="File holding the expression")
    member.add_argument("--sigma", help="Comma-separated frozen names in Σ, or 'all'; default the framed Σ")
    member.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    member.add_argument("--output", help="Write the report to this file")
    member.set_defaults(func=cmd_membership)

    monoid = sub.add_parser("monoid", help="Monoid presentations and dotted Cartan matrices")
    monoid.add_argument("family", choices=["sl2", "gl2", "torus", "dotted"])
    monoid.add_argument("--k", type=int, default=0, help="Family parameter")
    monoid.add_argument("--cartan", help="Cartan JSON file (dotted)")
    monoid.add_argument("--spec", help="Specialization JSON file with 'entries' (dotted)")
    monoid.add_argument("--output", help="Write to this file instead of stdout")
    monoid.set_defaults(func=cmd_monoid)

    export = sub.add_parser("export", help="Export the seed JSON schema")
    export.add_argument("what", choices=["schema"])
    export.add_argument("--path", help="Destination (default schemas/seed_schema.json)")
    export.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(level=args.log_level)
    try:
        return args.func(args)
    except DefectError as exc:
        logger.error("check failed: %s: %s", type(exc).__name__, exc)
        return EXIT_FAILED
    except ClusterLabError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
