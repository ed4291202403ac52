"""curate: command-line entry point for the toolkit.

Subcommands: normalize, consensus, stats, eval, kappa, ab-report, pareto,
serve. Batch output is deterministic: identical invocations on identical
inputs produce byte-identical files (timestamps appear only in logs and the
service journal).
"""

import argparse
import json
import os
import sys

from . import __version__
from .consensus import ROUTE_REVIEW, Hypothesis, _vote_degraded, review_flags, vote
from .evaluation import (
    MODES,
    ParetoPoint,
    cohens_kappa,
    evaluate,
    aggregate_ab,
    pareto_export,
    read_ab_judgments_csv,
    write_pareto_csv,
)
from .lexicon import Lexicon, load_default_lexicon
from .manifest import ManifestEntry, read_manifest, stats, write_manifest
from .normalizer import (
    POLICIES,
    SENSE_WORDS,
    NormConfig,
    bundled_translit_path,
    is_complex,
    load_translit,
    normalize,
)


def _norm_config(args) -> NormConfig:
    lexicon = (
        Lexicon.from_file(args.lexicon) if getattr(args, "lexicon", None)
        else load_default_lexicon()
    )
    translit = load_translit(getattr(args, "translit", None) or bundled_translit_path())
    return NormConfig(
        lexicon=lexicon,
        translit=translit,
        numeric_policy=getattr(args, "policy", "auto"),
        symbol_default=getattr(args, "symbol_default", "range"),
    )


def cmd_normalize(args):
    config = _norm_config(args)
    result = read_manifest(args.infile, fail_fast=not args.skip_errors)
    out_lines = []
    flag_lines = []
    for entry in result.entries:
        normalized = normalize(entry.text, config)
        out_lines.append(
            ManifestEntry(
                entry.audio_filepath,
                entry.duration,
                normalized.text,
                entry.source,
                entry.dialect,
            ).to_json_line()
        )
        if normalized.flags:
            flag_lines.append(
                json.dumps(
                    {
                        "audio_filepath": entry.audio_filepath,
                        "text": normalized.text,
                        "flags": [f.to_dict() for f in normalized.flags],
                    },
                    ensure_ascii=False,
                )
            )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("".join(line + "\n" for line in out_lines))
    with open(args.out + ".flags.jsonl", "w", encoding="utf-8") as fh:
        fh.write("".join(line + "\n" for line in flag_lines))
    for err in result.errors:
        print(f"warning: {args.infile}: {err}", file=sys.stderr)
    return 0


def _read_hypotheses(path):
    return {e.audio_filepath: e for e in read_manifest(path).entries}


def cmd_consensus(args):
    if len(args.hyps) != 3:
        print("error: --hyps takes exactly three files", file=sys.stderr)
        return 2
    ids = args.ids.split(",") if args.ids else None
    if ids is None:
        ids = [os.path.splitext(os.path.basename(p))[0] for p in args.hyps]
    if len(set(ids)) != 3:
        print(f"error: backend ids must be three distinct names, got {ids}",
              file=sys.stderr)
        return 2
    if args.authoritative not in ids:
        print(f"error: authoritative {args.authoritative!r} not among {ids}",
              file=sys.stderr)
        return 2

    config = _norm_config(args)
    tables = [_read_hypotheses(p) for p in args.hyps]
    refs = sorted(set().union(*tables))
    compare_normalized = not args.raw_compare

    lines = []
    for ref in refs:
        present = [
            Hypothesis(backend_id, table[ref].text)
            for backend_id, table in zip(ids, tables)
            if ref in table
        ]
        duration = next(
            float(table[ref].duration) for table in tables if ref in table
        )
        if len(present) == 3:
            result = vote(present, args.authoritative, compare_normalized, config)
        elif len(present) == 2:
            result = _vote_degraded(present, args.authoritative, compare_normalized,
                                    config)
        else:
            lines.append(json.dumps(
                {"audio_filepath": ref, "error": "fewer than two hypotheses"},
                ensure_ascii=False,
            ))
            continue
        normalized = normalize(result.text, config)
        complex_report = is_complex(result.text, config.whitelist)
        lines.append(json.dumps(
            {
                "audio_filepath": ref,
                "duration": duration,
                "text": result.text,
                "agreement": result.agreement,
                "chosen_backend": result.chosen_backend,
                "degraded": result.degraded,
                "route": "review_queue" if complex_report.complex else "clean_store",
                "proposed_text": normalized.text,
                "flags": review_flags(normalized),
            },
            ensure_ascii=False,
        ))
    payload = "".join(line + "\n" for line in lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def cmd_stats(args):
    result = read_manifest(args.infile)
    report = stats(result.entries, None if args.group_by == "none" else args.group_by)
    print(report.format_table())
    return 0


def cmd_eval(args):
    refs = read_manifest(args.ref).entries
    hyps = {e.audio_filepath: e.text for e in read_manifest(args.hyp).entries}
    pairs = []
    for entry in refs:
        if entry.audio_filepath not in hyps:
            print(f"warning: no hypothesis for {entry.audio_filepath}", file=sys.stderr)
            continue
        pairs.append((entry.audio_filepath, entry.text, hyps[entry.audio_filepath]))
    mode = args.mode.replace("-", "_")
    config = _norm_config(args) if mode != "raw" else None
    report = evaluate(pairs, mode, config, strip_spaces=args.strip_spaces)
    print(json.dumps(report.to_dict(), ensure_ascii=False, indent=2))
    return 0


def _read_labels(path):
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def cmd_kappa(args):
    a = _read_labels(args.a)
    b = _read_labels(args.b)
    kappa = cohens_kappa(a, b)
    print(json.dumps({"kappa": kappa, "items": len(a)}))
    return 0


def cmd_ab_report(args):
    judgments = read_ab_judgments_csv(args.judgments)
    counts = aggregate_ab(judgments, args.reference)
    print(json.dumps(
        {
            "reference": args.reference,
            "competitors": {k: v.to_dict() for k, v in sorted(counts.items())},
        },
        ensure_ascii=False,
        indent=2,
    ))
    return 0


def cmd_pareto(args):
    import csv

    points = []
    with open(args.points, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            points.append(
                ParetoPoint(row["model"], float(row["gflops"]), float(row["cer"]))
            )
    rows = pareto_export(points, args.baseline)
    write_pareto_csv(rows, sys.stdout)
    return 0


def cmd_serve(args):
    import uvicorn

    from .journal import Journal
    from .review import AbItem, DuplicateIdError, ReviewStore, ReviewTask, outcome_task_id
    from .server import create_app

    config = _norm_config(args)
    store = ReviewStore(Journal(args.journal), norm_config=config)

    if args.seed_tasks:
        seeded = skipped = 0
        with open(args.seed_tasks, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                if obj.get("route") != ROUTE_REVIEW:
                    continue
                task = ReviewTask(
                    id=outcome_task_id(obj["audio_filepath"], obj["proposed_text"]),
                    entry=ManifestEntry(obj["audio_filepath"], obj.get("duration", 0),
                                        obj.get("text", "")),
                    proposed_text=obj["proposed_text"],
                    source_text=obj.get("text", ""),
                    flags=obj.get("flags", []),
                )
                try:
                    store.enqueue(task)
                    seeded += 1
                except DuplicateIdError:
                    skipped += 1
        print(f"seeded {seeded} task(s), {skipped} duplicate(s)", file=sys.stderr)

    if args.seed_ab:
        with open(args.seed_ab, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    store.add_ab_item(AbItem.from_dict(json.loads(line)))
                except DuplicateIdError:
                    pass

    app = create_app(store, audio_root=args.audio_root, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curate",
        description="Thai ASR corpus curation and evaluation toolkit",
    )
    parser.add_argument("--version", action="version", version=f"curate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_norm_flags(p, policy=True):
        p.add_argument("--lexicon", help="word-per-line lexicon file "
                                         "(default: bundled, or $CURATE_LEXICON)")
        p.add_argument("--translit", help="tab-separated transliteration table")
        if policy:
            p.add_argument("--policy", choices=POLICIES, default="auto",
                           help="numeric reading policy")
            p.add_argument("--symbol-default", dest="symbol_default",
                           choices=sorted(SENSE_WORDS), default="range",
                           help="sense for digit-digit '-'")

    p = sub.add_parser("normalize", help="rewrite manifest text into canonical form")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--skip-errors", action="store_true",
                   help="collect bad manifest lines instead of failing")
    add_norm_flags(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("consensus", help="vote over pre-computed hypothesis files")
    p.add_argument("--hyps", nargs=3, required=True, metavar="FILE",
                   help="three hypothesis manifests (audio_filepath + text)")
    p.add_argument("--ids", help="comma-separated backend ids (default: file stems)")
    p.add_argument("--authoritative", required=True)
    p.add_argument("--raw-compare", action="store_true",
                   help="compare hypotheses byte-for-byte instead of normalized")
    p.add_argument("--out", help="outcome JSONL path (default: stdout)")
    add_norm_flags(p)
    p.set_defaults(func=cmd_consensus)

    p = sub.add_parser("stats", help="mixture report over a manifest")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--group-by", dest="group_by",
                   choices=["source", "dialect", "none"], default="none")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("eval", help="character error rate report")
    p.add_argument("--ref", required=True, help="reference manifest")
    p.add_argument("--hyp", required=True, help="hypothesis manifest")
    p.add_argument("--mode", choices=[m.replace("_", "-") for m in MODES],
                   default="raw")
    p.add_argument("--strip-spaces", action="store_true",
                   help="remove spaces before scoring")
    add_norm_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("kappa", help="Cohen's kappa between two raters")
    p.add_argument("--a", required=True, help="labels of rater A, one per line")
    p.add_argument("--b", required=True, help="labels of rater B, one per line")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("ab-report", help="win/tie/loss aggregation of A/B judgments")
    p.add_argument("--judgments", required=True, help="CSV of judgments")
    p.add_argument("--reference", required=True, help="reference system name")
    p.set_defaults(func=cmd_ab_report)

    p = sub.add_parser("pareto", help="efficiency table with speedups vs a baseline")
    p.add_argument("--points", required=True, help="CSV with model,gflops,cer")
    p.add_argument("--baseline", required=True)
    p.set_defaults(func=cmd_pareto)

    p = sub.add_parser("serve", help="run the review service")
    env = os.environ
    p.add_argument("--host", default=env.get("CURATE_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(env.get("CURATE_PORT", "8765")))
    p.add_argument("--journal", default=env.get("CURATE_JOURNAL"),
                   required="CURATE_JOURNAL" not in env,
                   help="event journal path (or $CURATE_JOURNAL)")
    p.add_argument("--audio-root", dest="audio_root",
                   default=env.get("CURATE_AUDIO_ROOT"),
                   help="directory audio paths resolve under (or $CURATE_AUDIO_ROOT)")
    p.add_argument("--ui-dir", dest="ui_dir", help="static files for the review UI")
    p.add_argument("--seed-tasks", dest="seed_tasks",
                   help="consensus outcome JSONL to import as review tasks")
    p.add_argument("--seed-ab", dest="seed_ab", help="A/B item JSONL to import")
    add_norm_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
