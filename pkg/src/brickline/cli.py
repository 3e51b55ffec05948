"""Command-line entry point.

Exit codes: 0 success, 1 usage or file errors, 2 parse errors,
3 validation errors (or an unrepairable model).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import builder, inventory as inventory_mod, ldraw, scorer, sequencer, triz
from .catalog import Catalog, CatalogError, load_catalog
from .model import Model, flatten, total_parts
from .validator import validate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INVALID = 3

SPEC_SUFFIXES = (".bspec", ".spec")


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _load_catalog(args) -> Catalog:
    parts = args.catalog or os.environ.get("BRICKLINE_CATALOG")
    palette = args.palette or os.environ.get("BRICKLINE_PALETTE")
    try:
        return load_catalog(parts, palette)
    except OSError as exc:
        raise _Failure(EXIT_USAGE, f"catalog: {exc}")
    except CatalogError as exc:
        raise _Failure(EXIT_PARSE, f"catalog: {exc}")


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _Failure(EXIT_USAGE, str(exc))


def _load_model(path: str, catalog: Catalog) -> tuple[Model, int]:
    """Read a build spec or an LDraw file; returns (model, parse defects)."""
    text = _read_text(path)
    if path.endswith(SPEC_SUFFIXES):
        try:
            return builder.compile(builder.parse_spec(text), catalog), 0
        except builder.BuildError as exc:
            raise _Failure(EXIT_PARSE, f"{path}: {exc}")
    try:
        doc = ldraw.parse(text)
    except ldraw.LdrawError as exc:
        raise _Failure(EXIT_PARSE, f"{path}: {exc}")
    return ldraw.to_model(doc, catalog), len(doc.defects)


def _load_inventory(path: str | None):
    if path is None:
        return None
    try:
        return inventory_mod.load_inventory(path)
    except OSError as exc:
        raise _Failure(EXIT_USAGE, str(exc))
    except ValueError as exc:
        raise _Failure(EXIT_PARSE, f"{path}: {exc}")


def _emit(text: str, out_path: str | None) -> None:
    if out_path and out_path != "-":
        try:
            with open(out_path, "w", encoding="utf-8") as handle:
                handle.write(text if text.endswith("\n") or not text
                             else text + "\n")
        except OSError as exc:
            raise _Failure(EXIT_USAGE, str(exc))
    else:
        # serialized documents carry their own trailing newline
        print(text[:-1] if text.endswith("\n") else text)


def _machine(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


# -- subcommands ---------------------------------------------------------------

def _cmd_compile(args) -> int:
    catalog = _load_catalog(args)
    try:
        model = builder.compile(builder.parse_spec(_read_text(args.path)),
                                catalog)
        if args.pack:
            model = builder.pack_steps(model, args.pack)
    except builder.BuildError as exc:
        raise _Failure(EXIT_PARSE, f"{args.path}: {exc}")
    doc = ldraw.document_from_model(model, catalog)
    _emit(ldraw.serialize(doc), args.output)
    return EXIT_OK


def _cmd_validate(args) -> int:
    catalog = _load_catalog(args)
    model, defects = _load_model(args.path, catalog)
    inv = _load_inventory(args.inventory)
    report = validate(model, catalog, inv)
    if args.format == "machine":
        payload = report.to_dict()
        payload["parse_defects"] = defects
        _emit(_machine(payload), args.output)
    else:
        text = report.to_table()
        if defects:
            text += f"\n  parse defects: {defects}"
        _emit(text, args.output)
    return EXIT_INVALID if report.errors else EXIT_OK


def _score_payload(args, catalog: Catalog) -> dict:
    model, defects = _load_model(args.path, catalog)
    inv = _load_inventory(args.inventory)
    thresholds = scorer.Thresholds(d_warn=args.d_warn, m_warn=args.m_warn,
                                   page_density=args.page_density)
    result = scorer.score(model, catalog, inv, thresholds,
                          parse_defects=defects)
    placements = flatten(model)
    return {
        "model": model.name or os.path.basename(args.path),
        "parts": len(placements),
        "steps": len(model.steps),
        "colors": len({p.color for p in placements}),
        "part_types": len({p.part for p in placements}),
        "pages": sequencer.estimate_pages(len(placements),
                                          args.page_density),
        "d": result.d,
        "m": result.m,
        "i": result.i,
        "composite": result.composite,
        "partial_credit": result.partial_credit,
        "issue_summary": result.issue_summary,
    }


def _cmd_score(args) -> int:
    payload = _score_payload(args, _load_catalog(args))
    if args.format == "machine":
        _emit(_machine(payload), args.output)
        return EXIT_OK
    headers = ["Parts", "Steps", "Colors", "Part Types", "Pages", "Score"]
    values = [str(payload["parts"]), str(payload["steps"]),
              str(payload["colors"]), str(payload["part_types"]),
              str(payload["pages"]),
              f"D{payload['d']} M{payload['m']} I{payload['i']}"
              f" {payload['composite']}/9"]
    widths = [max(len(h), len(v)) for h, v in zip(headers, values)]
    lines = [payload["model"],
             "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
             "  ".join(v.ljust(w) for v, w in zip(values, widths)).rstrip()]
    _emit("\n".join(lines), args.output)
    return EXIT_OK


def _cmd_bom(args) -> int:
    catalog = _load_catalog(args)
    model, _ = _load_model(args.path, catalog)
    rows = inventory_mod.bom(model, catalog)
    if args.format == "machine":
        _emit(_machine([row.__dict__ for row in rows]), args.output)
    elif args.format == "dsv":
        _emit(inventory_mod.bom_dsv(rows, args.delimiter), args.output)
    else:
        _emit(inventory_mod.bom_table(rows), args.output)
    return EXIT_OK


def _cmd_steps(args) -> int:
    catalog = _load_catalog(args)
    model, _ = _load_model(args.path, catalog)
    rows = sequencer.step_summary(model)
    if args.format == "machine":
        _emit(_machine(rows), args.output)
        return EXIT_OK
    lines = []
    for row in rows:
        added = ", ".join(f"{part} x{n}" for part, n in row["added"].items())
        phase = f"  [{row['phase']}]" if row["phase"] else ""
        lines.append(f"step {row['step']:>3}  +{row['count']:<3}"
                     f" total {row['cumulative']:<5} {added}{phase}")
    _emit("\n".join(lines) if lines else "no steps", args.output)
    return EXIT_OK


def _cmd_repair(args) -> int:
    catalog = _load_catalog(args)
    model, _ = _load_model(args.path, catalog)
    try:
        repaired = sequencer.repair_order(model, catalog)
    except sequencer.Unrepairable as exc:
        raise _Failure(EXIT_INVALID, str(exc))
    doc = ldraw.document_from_model(repaired, catalog)
    _emit(ldraw.serialize(doc), args.output)
    return EXIT_OK


def _cmd_credit(args) -> int:
    catalog = _load_catalog(args)
    model, _ = _load_model(args.path, catalog)
    inv = _load_inventory(args.inventory)
    value = scorer.partial_credit(model, catalog, inv)
    if args.format == "machine":
        _emit(_machine({"partial_credit": value,
                        "parts": total_parts(model)}), args.output)
    else:
        _emit(f"{value:.4f}", args.output)
    return EXIT_OK


def _cmd_usage(args) -> int:
    catalog = _load_catalog(args)
    corpus = [_load_model(path, catalog)[0] for path in args.paths]
    try:
        ranking = inventory_mod.usage_ranking(corpus)
    except inventory_mod.EmptyCorpus as exc:
        raise _Failure(EXIT_USAGE, str(exc))
    if args.format == "machine":
        _emit(_machine([{"part": p, "uses": n} for p, n in ranking]),
              args.output)
    else:
        width = max(len(p) for p, _ in ranking)
        _emit("\n".join(f"{p.ljust(width)}  {n}" for p, n in ranking),
              args.output)
    return EXIT_OK


def _cmd_triz(args) -> int:
    if args.principle is not None:
        try:
            entry = triz.principle(args.principle)
        except triz.UnknownParameter as exc:
            raise _Failure(EXIT_USAGE, str(exc))
        if args.format == "machine":
            _emit(_machine(entry), args.output)
        else:
            text = f"{entry['number']}. {entry['name']}"
            if entry["note"]:
                text += f"\n   {entry['note']}"
            _emit(text, args.output)
        return EXIT_OK
    if args.improve is None or args.worsen is None:
        raise _Failure(EXIT_USAGE,
                       "triz needs --improve and --worsen, or --principle")
    try:
        result = triz.lookup(args.improve, args.worsen)
    except triz.UnknownParameter as exc:
        raise _Failure(EXIT_USAGE, str(exc))
    if args.format == "machine":
        if isinstance(result, tuple):
            payload = {"improve": args.improve, "worsen": args.worsen,
                       "principles": list(result)}
        else:
            payload = {"improve": args.improve, "worsen": args.worsen,
                       "principles": [], "note": repr(result)}
        _emit(_machine(payload), args.output)
    else:
        _emit(triz.cell_text(result), args.output)
    return EXIT_OK


def _cmd_compare(args) -> int:
    try:
        plan = json.loads(_read_text(args.path))
        result = inventory_mod.compare_provisioning(plan["tools"],
                                                    plan["modular"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise _Failure(EXIT_PARSE, f"{args.path}: {exc}")
    except inventory_mod.ZeroPrintTime as exc:
        raise _Failure(EXIT_USAGE, str(exc))
    if args.format == "machine":
        _emit(_machine(result), args.output)
    else:
        _emit(inventory_mod.comparison_table(result), args.output)
    return EXIT_OK


# -- argument wiring -----------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser,
                formats: tuple[str, ...] = ("human", "machine")) -> None:
    parser.add_argument("--catalog", help="part catalog file"
                        " (default: $BRICKLINE_CATALOG or bundled)")
    parser.add_argument("--palette", help="color palette file"
                        " (default: $BRICKLINE_PALETTE or bundled)")
    parser.add_argument("--format", choices=formats, default="human")
    parser.add_argument("-o", "--output", help="write to file instead of"
                        " stdout ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brickline",
        description="Compile, validate, and score brick-built models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a build spec to LDraw")
    p.add_argument("path")
    p.add_argument("--pack", type=int, metavar="N",
                   help="re-pack steps toward N parts per step")
    _add_common(p)
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("validate", help="run geometry and order checks")
    p.add_argument("path")
    p.add_argument("--inventory", help="inventory file to check against")
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("score", help="tier scores and summary row")
    p.add_argument("path")
    p.add_argument("--inventory")
    p.add_argument("--d-warn", type=float, default=0.02)
    p.add_argument("--m-warn", type=float, default=0.02)
    p.add_argument("--page-density", type=int, default=10)
    _add_common(p)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("bom", help="bill of materials")
    p.add_argument("path")
    p.add_argument("--delimiter", default="\t")
    _add_common(p, formats=("human", "machine", "dsv"))
    p.set_defaults(func=_cmd_bom)

    p = sub.add_parser("steps", help="per-step part deltas")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(func=_cmd_steps)

    p = sub.add_parser("repair", help="reorder placements bottom-up")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(func=_cmd_repair)

    p = sub.add_parser("credit", help="replay-based partial credit")
    p.add_argument("path")
    p.add_argument("--inventory")
    _add_common(p)
    p.set_defaults(func=_cmd_credit)

    p = sub.add_parser("usage", help="part usage ranking across models")
    p.add_argument("paths", nargs="+")
    _add_common(p)
    p.set_defaults(func=_cmd_usage)

    p = sub.add_parser("triz", help="contradiction matrix lookup")
    p.add_argument("--improve", type=int)
    p.add_argument("--worsen", type=int)
    p.add_argument("--principle", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_triz)

    p = sub.add_parser("compare", help="print-vs-modular provisioning")
    p.add_argument("path", help="JSON plan with tools and modular entries")
    _add_common(p)
    p.set_defaults(func=_cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "page_density", 1) < 1:
        print("error: --page-density must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
