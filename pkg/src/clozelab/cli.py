"""Operator command line: ingest, simulate, analyze, serve, report.

Settings come from defaults, then an optional key=value config file, then
flags, in that order. Every command is deterministic given its inputs and
seed; stored timestamps are the only wall-clock artifact.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import figure_data, read_analysis_csv, result_csv, result_summary, run_analysis
from .corpus import ALPHABETS, length_distribution, load_fragment
from .engine import Config, GameEngine, GameState
from .errors import ClozelabError, IoFailure
from .simulate import run_simulation

CONFIG_KEYS = (
    "alphabet", "min_word_len", "type_mix", "seed", "z",
    "fit_range_chars", "fit_range_syllables", "min_bucket_trials",
    "log", "decoy_fallback",
)


def read_config_file(path: str) -> dict:
    """Flat key=value file; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise IoFailure(f"{path}:{lineno}: expected key=value")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise IoFailure(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    return values


def parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return (int(lo), int(hi))


def load_word_list(path: str) -> list[str]:
    """One word per line; a TAB-separated count column is allowed and ignored."""
    words = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.partition("\t")[0].strip()
        if word:
            words.append(word)
    return words


def build_config(args) -> tuple[Config, str]:
    file_values = read_config_file(args.config) if args.config else {}

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            return file_values[key]
        return default

    alphabet_name = str(pick(args.alphabet, "alphabet", "russian")).lower()
    if alphabet_name not in ALPHABETS:
        raise IoFailure(f"unknown alphabet {alphabet_name!r}")
    mix_raw = pick(getattr(args, "type_mix", None), "type_mix", None)
    if mix_raw is None:
        mix = (1 / 3, 1 / 3, 1 / 3)
    else:
        parts = [float(p) for p in str(mix_raw).split(",")]
        if len(parts) != 3:
            raise IoFailure("type_mix needs three comma-separated weights")
        mix = tuple(parts)
    fallback_path = pick(getattr(args, "decoy_fallback", None), "decoy_fallback", None)
    config = Config(
        alphabet=ALPHABETS[alphabet_name],
        min_word_len=int(pick(args.min_word_len, "min_word_len", 5)),
        type_mix=mix,
        seed=int(pick(args.seed, "seed", 0)),
        z=float(pick(getattr(args, "z", None), "z", 1.0)),
        fit_range_chars=parse_range(str(pick(None, "fit_range_chars", "5:14"))),
        fit_range_syllables=parse_range(str(pick(None, "fit_range_syllables", "1:5"))),
        min_bucket_trials=int(pick(getattr(args, "min_bucket_trials", None),
                                   "min_bucket_trials", 30)),
        decoy_fallback=load_word_list(fallback_path) if fallback_path else None,
    )
    log_path = pick(args.log, "log", "events.ndjson")
    return config, str(log_path)


def cmd_ingest(args) -> int:
    config, log_path = build_config(args)
    engine = GameEngine.open(log_path, config)
    added = 0
    duplicates = 0
    tokens = []
    for path in args.paths:
        fragment = load_fragment(path)
        if engine.ingest_fragment(fragment):
            added += 1
        else:
            duplicates += 1
        tokens.extend(engine._tokens[fragment.id])
    dist = length_distribution(tokens, "chars")
    summary = {
        "fragments_added": added,
        "duplicates_skipped": duplicates,
        "fragments_total": len(engine.state.fragments),
        "eligible_tokens": len(tokens),
        "length_distribution": {str(k): v for k, v in sorted(dist.counts.items())},
        "distinct_types": dist.total_types,
    }
    print(json.dumps(summary, ensure_ascii=False, indent=2))
    engine.close()
    return 0


def cmd_simulate(args) -> int:
    config, log_path = build_config(args)
    engine = GameEngine.open(log_path, config)
    trial_type = None if args.trial_type == "all" else int(args.trial_type)
    report = run_simulation(
        engine, args.subject, args.n_trials, config.seed, trial_type=trial_type,
    )
    print(json.dumps(report, ensure_ascii=False, indent=2))
    engine.close()
    return 0


def cmd_analyze(args) -> int:
    config, log_path = build_config(args)
    state = GameState.from_log(log_path)
    trial_type = None if args.trial_type == "all" else int(args.trial_type)
    fit_range = parse_range(args.fit_range) if args.fit_range else config.fit_range(args.unit)
    result = run_analysis(
        state, unit=args.unit, kind=args.kind, trial_type=trial_type,
        z=config.z, fit_range=fit_range,
        min_bucket_trials=config.min_bucket_trials, config=config,
    )
    csv_text = result_csv(result)
    if args.csv:
        Path(args.csv).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    summary = result_summary(result)
    if args.json:
        Path(args.json).write_text(
            json.dumps(summary, ensure_ascii=False, indent=2) + "\n", encoding="utf-8",
        )
    if args.unit == "syllables":
        print(f"# excluded {result.n_excluded} record(s) with vowel-less targets",
              file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config, log_path = build_config(args)
    engine = GameEngine.open(log_path, config)
    uvicorn.run(create_app(engine), host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_report(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    figures = [
        ("all_chars", args.all_chars, "fig1_chars_all.dat"),
        ("all_syllables", args.all_syllables, "fig2_syllables_all.dat"),
        ("prose_chars", args.prose_chars, "fig3_chars_prose.dat"),
    ]
    written = []
    for _, csv_path, out_name in figures:
        rows = read_analysis_csv(csv_path)
        out_path = out_dir / out_name
        out_path.write_text(figure_data(rows), encoding="utf-8")
        written.append(str(out_path))
    print(json.dumps({"written": written}, indent=2))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clozelab",
        description="Cloze-trial platform: measure word predictability in context.",
    )
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--log", help="event log path (default events.ndjson)")
    parser.add_argument("--seed", type=int, help="root random seed")
    parser.add_argument("--alphabet", choices=sorted(ALPHABETS),
                        help="letter set for word extraction")
    parser.add_argument("--min-word-len", type=int, dest="min_word_len",
                        help="minimum target word length in letters (default 5)")
    parser.add_argument("--decoy-fallback", dest="decoy_fallback",
                        help="word list used as decoys while the pool is empty")
    parser.add_argument("--type-mix", dest="type_mix",
                        help="trial type weights, e.g. 1,1,1")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="add corpus files to the event log")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("simulate", help="run an algorithmic subject")
    p.add_argument("--subject", required=True,
                   help="oracle | uniform | frequency:PATH | ngram[:k=v,..] | planted[:RATE]")
    p.add_argument("--n-trials", type=int, required=True, dest="n_trials")
    p.add_argument("--trial-type", choices=["1", "2", "3", "all"], default="all",
                   dest="trial_type")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="bucket guesses by word length, fit the line")
    p.add_argument("--unit", choices=["chars", "syllables"], default="chars")
    p.add_argument("--kind", choices=["poetry", "prose", "all"], default="all")
    p.add_argument("--trial-type", choices=["1", "2", "3", "all"], default="1",
                   dest="trial_type")
    p.add_argument("--fit-range", dest="fit_range", help="MIN:MAX length bounds")
    p.add_argument("--z", type=float, dest="z",
                   help="CI multiplier (default 1.0; 1.96 for 95%%)")
    p.add_argument("--min-bucket-trials", type=int, dest="min_bucket_trials")
    p.add_argument("--csv", help="write the bucket table here instead of stdout")
    p.add_argument("--json", help="write the JSON summary here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("report", help="turn analyze CSVs into plot-ready figure data")
    p.add_argument("--all-chars", required=True, dest="all_chars")
    p.add_argument("--all-syllables", required=True, dest="all_syllables")
    p.add_argument("--prose-chars", required=True, dest="prose_chars")
    p.add_argument("--out-dir", default="figures", dest="out_dir")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ClozelabError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: IoFailure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
