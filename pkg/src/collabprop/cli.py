"""Command-line entry point: ``validate``, ``analyze`` and ``simulate``.

Exit codes: 0 success, 1 data error, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report
from .corpus import DEFAULT_DOC_TYPES, RecordError, filter_doc_types, parse_corpus, scan_corpus
from .pipeline import EmptyPopulationError, analyze
from .roster import (attribute_explicit, attribute_heuristic, load_roster, scan_attributions,
                     scan_roster)
from .stats import DEFAULT_STARS, stars as apply_stars
from .synth import (GenConfig, GenerationError, compare_with_pipeline, demo_config, generate,
                    oracle_recount, skew_report)

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2
HEURISTIC_BANNER = ("WARNING: no attribution file given; publications were attributed with the "
                    "heuristic surname/initials/university matcher")


class UsageError(Exception):
    pass


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.replace(":", "-").split("-"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like 2006-2010, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError("window start after end")
    return lo, hi


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _tokens(text: str) -> frozenset[str]:
    return frozenset(t.strip().lower() for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="collabprop", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--home-country", default="IT")
    common.add_argument("--window", type=_window, default=(2006, 2010))
    common.add_argument("--doc-types", type=_tokens, default=DEFAULT_DOC_TYPES,
                        help="comma-separated document types to keep")

    analysis = argparse.ArgumentParser(add_help=False)
    analysis.add_argument("--sds-threshold", type=float, default=0.5)
    analysis.add_argument("--stars", type=_floats, default=DEFAULT_STARS,
                          help="p-value cutoffs for *, **, *** (default 0.05,0.01,0.001)")
    analysis.add_argument("--format", choices=report.FORMATS, default="csv")
    analysis.add_argument("--workers", type=int, default=1)
    analysis.add_argument("--out", type=Path, required=True)

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--corpus", type=Path, required=True)
    inputs.add_argument("--roster", type=Path, required=True)
    inputs.add_argument("--attributions", type=Path)

    sub.add_parser("validate", parents=[common, inputs], help="check input files")
    sub.add_parser("analyze", parents=[common, inputs, analysis],
                   help="compute profiles and tables 1-5")
    sim = sub.add_parser("simulate", parents=[common, analysis],
                         help="generate a synthetic dataset, analyze it and cross-check")
    sim.add_argument("--config", type=Path, help="GenConfig JSON (default: shipped demo)")
    sim.add_argument("--seed", type=int)
    sim.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    return ap


def _check_paths(*paths) -> None:
    for p in paths:
        if p is not None and not p.is_file():
            raise UsageError(f"file not found: {p}")


def _check_analysis_args(args) -> None:
    if not 0 <= args.sds_threshold <= 1:
        raise UsageError(f"--sds-threshold must lie in [0, 1], got {args.sds_threshold}")
    try:
        apply_stars(1.0, args.stars)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    if not args.doc_types:
        raise UsageError("--doc-types must not be empty")


def cmd_validate(args) -> int:
    _check_paths(args.corpus, args.roster, args.attributions)
    with open(args.corpus, "rb") as fh:
        corpus, corpus_errors = scan_corpus(fh, args.window, args.home_country)
    with open(args.roster, "rb") as fh:
        roster, roster_errors = scan_roster(fh)
    link_errors, duplicates = [], 0
    if args.attributions:
        with open(args.attributions, "rb") as fh:
            links, link_errors, duplicates = scan_attributions(corpus, roster, fh)
        ambiguity = "n/a (explicit attributions)"
    else:
        links = attribute_heuristic(corpus, roster)
        ambiguity = str(links.ambiguous)
    kept, removed = filter_doc_types(corpus, args.doc_types)

    out = [
        f"corpus: {len(corpus)} publications accepted, {len(corpus_errors)} rejected lines, "
        f"{removed} outside doc-type allowlist",
        f"roster: {len(roster)} academics accepted, {len(roster_errors)} rejected lines",
        f"attributions: {len(links)} links, {len(link_errors)} rejected lines, "
        f"{duplicates} duplicates",
        f"ambiguous byline matches: {ambiguity}",
    ]
    for label, errors in (("corpus", corpus_errors), ("roster", roster_errors),
                          ("attributions", link_errors)):
        out += [f"{label}: {e}" for e in errors]
    print("\n".join(out))
    return EXIT_DATA if corpus_errors or roster_errors or link_errors else EXIT_OK


def write_outputs(analysis, out_dir: Path, fmt: str, notes=()) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for table in report.all_tables(analysis):
        table.notes.extend(notes)
        path = out_dir / f"{table.name}.{fmt}"
        path.write_bytes(report.export(table, fmt))
        written.append(path)
    for table in (report.profile_table(analysis), report.coverage_table(analysis.coverage)):
        path = out_dir / f"{table.name}.csv"
        path.write_bytes(report.export(table, "csv"))
        written.append(path)
    return written


def _summary(analysis, notes, extra=()) -> str:
    lines = list(notes) + [
        f"publications analyzed: {len(analysis.corpus)}",
        f"publications removed by doc-type filter: {analysis.removed_doc_types}",
        f"attribution links: {len(analysis.attributions)}",
        f"ambiguous byline matches: {analysis.attributions.ambiguous}",
        f"SDS included: {len(analysis.included_sds)} of {len(analysis.coverage)}",
        f"academics in included SDSs: {len(analysis.included())}",
        f"productive academics: {len(analysis.profiles)}",
    ] + list(extra)
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    _check_paths(args.corpus, args.roster, args.attributions)
    _check_analysis_args(args)
    with open(args.corpus, "rb") as fh:
        corpus = parse_corpus(fh, args.window, args.home_country)
    with open(args.roster, "rb") as fh:
        roster = load_roster(fh)
    notes = []
    if args.attributions:
        with open(args.attributions, "rb") as fh:
            links = attribute_explicit(corpus, roster, fh)
    else:
        links = attribute_heuristic(corpus, roster)
        notes.append(HEURISTIC_BANNER)
        print(HEURISTIC_BANNER, file=sys.stderr)
    result = analyze(corpus, roster, links, home_country=args.home_country,
                     sds_threshold=args.sds_threshold, doc_types=args.doc_types,
                     star_thresholds=args.stars, workers=args.workers)
    write_outputs(result, args.out, args.format, notes)
    (args.out / "summary.txt").write_text(_summary(result, notes), encoding="utf-8")
    print(f"wrote {len(result.profiles)} profiles and 5 tables to {args.out}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    _check_paths(args.config)
    _check_analysis_args(args)
    try:
        config = GenConfig.load(args.config) if args.config else demo_config()
    except (TypeError, ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"invalid GenConfig: {exc}")
    if args.seed is not None:
        config.seed = args.seed
    try:
        data = generate(config)
    except (GenerationError, ValueError) as exc:
        raise UsageError(f"infeasible GenConfig: {exc}")

    home = config.home_country
    data.write(args.out / "data")
    result = analyze(data.corpus, data.roster, data.attributions, home_country=home,
                     sds_threshold=args.sds_threshold, doc_types=args.doc_types,
                     star_thresholds=args.stars, workers=args.workers)
    if args.tamper and result.profiles:
        # negative control: corrupt one profile so the cross-check must fail
        aid, pr = next(iter(result.profiles.items()))
        from dataclasses import replace
        result.profiles[aid] = replace(pr, cp=pr.cp - 1 if pr.cp else pr.cp + 1,
                                       cip=0, cedp=0, cefp=0)

    write_outputs(result, args.out, args.format)
    skew = skew_report(data.roster, result.profiles)
    (args.out / "skew.json").write_text(json.dumps(skew.to_dict(), indent=2, sort_keys=True) + "\n",
                                        encoding="utf-8")
    oracle = oracle_recount(data.roster, result.corpus, result.attributions, home)
    problems = compare_with_pipeline(oracle, result.profiles,
                                     {a.academic_id for a in result.included()})
    verdict = ("oracle agreement: OK" if not problems
               else f"oracle agreement: FAILED ({len(problems)} mismatches)")
    extra = [f"seed: {config.seed} ({data.truth.rng})",
             f"top-23% output share: {float(skew.share_at('23/100')):.4f}", verdict]
    extra += problems[:20]
    (args.out / "summary.txt").write_text(_summary(result, [], extra), encoding="utf-8")
    print(verdict)
    return EXIT_DATA if problems else EXIT_OK


COMMANDS = {"validate": cmd_validate, "analyze": cmd_analyze, "simulate": cmd_simulate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RecordError, EmptyPopulationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
