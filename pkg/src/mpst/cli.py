"""The ``mpst`` command line tool.

Subcommands: ``check`` (well-formedness), ``project`` (EFSM export as
JSON or DOT, after label splitting), ``generate`` (typestate APIs),
``compose`` (bounded product-composition analysis). Exit codes: 0
success, 1 analysis/projection/generation failure, 2 I/O or parse
failure. Diagnostics and logs go to stderr; stdout carries only
machine-readable output. Verbosity: MPST_LOG=error|warn|info|debug.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .ast import ScribbleModule
from .codegen import CodegenError, generate_package
from .compose import ExplosionLimit, compose_check
from .efsm import export_dot, export_efsm_json, split_labels, to_efsm
from .parser import ParseError, parse_module
from .projector import ProjectError, project
from .validate import check_well_formed, has_errors

_LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def _setup_logging() -> None:
    level = _LOG_LEVELS.get(os.environ.get("MPST_LOG", "warn").lower(), logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )


def _load(path: str) -> ScribbleModule:
    """Read and parse, exiting with code 2 on failure."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error[IO] {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None
    try:
        return parse_module(text)
    except ParseError as exc:
        print(
            f"error[PARSE] {path}:{exc.span.line + 1}:{exc.span.col + 1} {exc.message}",
            file=sys.stderr,
        )
        raise SystemExit(2) from None


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def cmd_check(args: argparse.Namespace) -> int:
    module = _load(args.file)
    diags = check_well_formed(module)
    for diag in diags:
        print(diag.render(args.file), file=sys.stderr)
    return 1 if has_errors(diags) else 0


def cmd_project(args: argparse.Namespace) -> int:
    module = _load(args.file)
    diags = check_well_formed(module)
    if has_errors(diags):
        for diag in diags:
            print(diag.render(args.file), file=sys.stderr)
        return 1
    try:
        machine = split_labels(
            to_efsm(project(module, args.protocol, args.role), args.protocol, args.role)
        )
    except ProjectError as exc:
        print(
            f"error[PROJECT] {args.file}:{exc.span.line + 1}:{exc.span.col + 1} "
            f"{exc.message}",
            file=sys.stderr,
        )
        return 1
    text = export_dot(machine) if args.format == "dot" else export_efsm_json(machine)
    _emit(text, args.output)
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    module = _load(args.file)
    diags = check_well_formed(module)
    if has_errors(diags):
        for diag in diags:
            print(diag.render(args.file), file=sys.stderr)
        return 1
    import_map = None
    if args.import_map:
        try:
            doc = json.loads(Path(args.import_map).read_text(encoding="utf-8"))
            import_map = dict(doc["aliases"])
        except (OSError, KeyError, ValueError, TypeError) as exc:
            print(f"error[IO] bad import map {args.import_map}: {exc}", file=sys.stderr)
            return 2
    try:
        artifact = generate_package(
            module,
            args.protocol,
            module_name=args.module_name,
            roles=(args.role,) if args.role else None,
            import_map=import_map,
        )
    except (ProjectError, CodegenError) as exc:
        print(f"error[CODEGEN] {exc}", file=sys.stderr)
        return 1
    out_dir = Path(args.output_dir)
    for rel in sorted(artifact.files):
        target = out_dir / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(artifact.files[rel], encoding="utf-8")
        print(target)
    return 0


def cmd_compose(args: argparse.Namespace) -> int:
    module = _load(args.file)
    diags = check_well_formed(module)
    if has_errors(diags):
        for diag in diags:
            print(diag.render(args.file), file=sys.stderr)
        return 1
    try:
        report = compose_check(module, args.protocol, args.bound, args.state_cap)
    except (ProjectError, ExplosionLimit) as exc:
        print(f"error[COMPOSE] {exc}", file=sys.stderr)
        return 1
    doc = {
        "result": report.result,
        "explored_states": report.explored_states,
        "message": report.message,
        "trace": [
            {"event": e.kind, "from": e.as_triple()[0], "to": e.as_triple()[1],
             "label": e.label}
            for e in report.trace
        ],
    }
    print(json.dumps(doc, indent=2))
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpst", description="Scribble protocol toolchain"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate a protocol module")
    p_check.add_argument("file")
    p_check.set_defaults(fn=cmd_check)

    p_project = sub.add_parser("project", help="project a role to an EFSM")
    p_project.add_argument("file")
    p_project.add_argument("--protocol", required=True)
    p_project.add_argument("--role", required=True)
    p_project.add_argument("--format", choices=("json", "dot"), default="json")
    p_project.add_argument("-o", "--output", default=None)
    p_project.set_defaults(fn=cmd_project)

    p_gen = sub.add_parser("generate", help="generate typestate APIs")
    p_gen.add_argument("file")
    p_gen.add_argument("--protocol", required=True)
    p_gen.add_argument("--role", default=None, help="one role (default: all)")
    p_gen.add_argument("--import-map", default=None)
    p_gen.add_argument("--module-name", default="gen")
    p_gen.add_argument("-o", "--output-dir", default=".")
    p_gen.set_defaults(fn=cmd_generate)

    p_comp = sub.add_parser("compose", help="explore the composed state space")
    p_comp.add_argument("file")
    p_comp.add_argument("--protocol", required=True)
    p_comp.add_argument("--bound", type=int, default=1)
    p_comp.add_argument("--state-cap", type=int, default=10**6)
    p_comp.set_defaults(fn=cmd_compose)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
