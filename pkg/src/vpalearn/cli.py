"""Command-line front end.

Subcommands: learn, generate, eval, check, benchmark, convert.

Exit codes are a stable contract:
    0  success
    2  malformed input (files, unknown grammar, bad flags)
    3  data inconsistency (conflicting labels)
    4  no well-matched samples left after filtering
    5  generation failure (balanced-mode retry budget exhausted)

Every run prints a manifest; commands that write files also write it next
to their main output. Manifests carry no timestamps, so identical inputs
and seeds produce identical output bytes.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import benchgen, formats
from .automata import AlphabetError, Vdpa, render_dot
from .benchgen import GenConfig, GenerationError, GroundTruth, builtin
from .papni import NoWellMatchedSamplesError, PapniConfig, papni_learn
from .preprocess import DatasetError, PreprocessReport
from .rpni import edsm_learn, rpni_learn

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFLICT = 3
EXIT_NO_SAMPLES = 4
EXIT_GENERATION = 5

DEFAULT_SEED = 1


class _CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _manifest(entries: list[tuple[str, object]], out_path: Optional[Path]) -> None:
    text = "".join(f"{key}: {value}\n" for key, value in entries)
    sys.stdout.write(text)
    if out_path is not None:
        out_path.write_text(text)


def _load_dataset(path: str):
    try:
        dataset = formats.load_dataset(path)
    except FileNotFoundError:
        raise _CliError(EXIT_INPUT, f"cannot read dataset {path!r}")
    except DatasetError as exc:
        raise _CliError(EXIT_CONFLICT, str(exc))
    except formats.FormatError as exc:
        raise _CliError(EXIT_INPUT, str(exc))
    if not dataset.samples:
        raise _CliError(EXIT_INPUT, f"dataset {path!r} is empty")
    return dataset


def _load_alphabet(path: str):
    try:
        return formats.load_alphabet(path)
    except FileNotFoundError:
        raise _CliError(EXIT_INPUT, f"cannot read alphabet {path!r}")
    except formats.FormatError as exc:
        raise _CliError(EXIT_INPUT, str(exc))


def _ground_truth(args) -> GroundTruth:
    if args.grammar:
        try:
            return builtin(args.grammar)
        except KeyError as exc:
            raise _CliError(EXIT_INPUT, str(exc))
    try:
        model = formats.load_automaton(args.automaton)
    except FileNotFoundError:
        raise _CliError(EXIT_INPUT, f"cannot read automaton {args.automaton!r}")
    except formats.FormatError as exc:
        raise _CliError(EXIT_INPUT, str(exc))
    if not isinstance(model, Vdpa):
        raise _CliError(EXIT_INPUT, "ground-truth automaton must be a vdpa")
    return GroundTruth(Path(args.automaton).stem, model, model.alphabet)


def cmd_learn(args) -> int:
    dataset = _load_dataset(args.dataset)
    alphabet = _load_alphabet(args.alphabet)
    for sym in dataset.symbols():
        if sym not in alphabet.symbols:
            raise _CliError(EXIT_INPUT, f"dataset symbol {sym!r} not in alphabet")
    report = PreprocessReport(kept=len(dataset))
    if args.mode == "vdpa":
        try:
            model, report = papni_learn(dataset, alphabet, PapniConfig(backend=args.backend))
        except NoWellMatchedSamplesError as exc:
            raise _CliError(EXIT_NO_SAMPLES, str(exc))
        except DatasetError as exc:
            raise _CliError(EXIT_CONFLICT, str(exc))
    else:
        learn = rpni_learn if args.backend == "rpni" else edsm_learn
        try:
            model = learn(dataset)
        except DatasetError as exc:
            raise _CliError(EXIT_CONFLICT, str(exc))
    out = Path(args.out)
    formats.save_automaton(model, out)
    out.with_suffix(out.suffix + ".dot").write_text(render_dot(model))
    print(f"model size: {model.size}")
    for line in report.lines():
        print(line)
    _manifest(
        [("command", "learn"), ("dataset", args.dataset), ("alphabet", args.alphabet),
         ("backend", args.backend), ("mode", args.mode), ("output", str(out)),
         ("model_size", model.size), ("kept", report.kept),
         ("dropped_positive", report.dropped_positive),
         ("dropped_negative", report.dropped_negative)],
        out.with_suffix(out.suffix + ".manifest"))
    return EXIT_OK


def cmd_generate(args) -> int:
    gt = _ground_truth(args)
    cfg = GenConfig(total=args.total, len_min=args.len_min, len_max=args.len_max,
                    seed=args.seed, mode=args.mode)
    try:
        dataset = benchgen.generate_dataset(gt, cfg)
    except GenerationError as exc:
        raise _CliError(EXIT_GENERATION, str(exc))
    out = Path(args.out)
    outputs: list[Path] = []
    if args.split:
        train, evl = benchgen.split_dataset(dataset, seed=args.seed)
        for part, suffix in ((train, ".train"), (evl, ".eval")):
            path = out.with_suffix(out.suffix + suffix)
            formats.save_dataset(part, path)
            outputs.append(path)
    else:
        formats.save_dataset(dataset, out)
        outputs.append(out)
    positives = len(dataset.positives())
    _manifest(
        [("command", "generate"), ("grammar", gt.name), ("total", cfg.total),
         ("len_min", cfg.len_min), ("len_max", cfg.len_max), ("seed", cfg.seed),
         ("mode", cfg.mode), ("positives", positives),
         ("negatives", len(dataset) - positives),
         ("outputs", " ".join(str(p) for p in outputs))],
        out.with_suffix(out.suffix + ".manifest"))
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        model = formats.load_automaton(args.model)
    except FileNotFoundError:
        raise _CliError(EXIT_INPUT, f"cannot read model {args.model!r}")
    except formats.FormatError as exc:
        raise _CliError(EXIT_INPUT, str(exc))
    dataset = _load_dataset(args.dataset)
    metrics = benchgen.evaluate(model, dataset)
    entries = [
        ("command", "eval"), ("model", args.model), ("dataset", args.dataset),
        ("tp", metrics.tp), ("fp", metrics.fp), ("fn", metrics.fn), ("tn", metrics.tn),
        ("precision", f"{metrics.precision:.6f}"), ("recall", f"{metrics.recall:.6f}"),
        ("f1", f"{metrics.f1:.6f}"),
    ]
    if metrics.undefined:
        entries.append(("undefined", " ".join(metrics.undefined)))
    _manifest(entries, None)
    return EXIT_OK


def cmd_check(args) -> int:
    from .preprocess import is_well_matched

    try:
        dataset = formats.load_dataset(args.dataset)
    except FileNotFoundError:
        raise _CliError(EXIT_INPUT, f"cannot read dataset {args.dataset!r}")
    except DatasetError as exc:
        raise _CliError(EXIT_CONFLICT, str(exc))
    except formats.FormatError as exc:
        raise _CliError(EXIT_INPUT, str(exc))
    alphabet = _load_alphabet(args.alphabet)
    matched = unmatched = 0
    for sample in dataset:
        try:
            ok = is_well_matched(sample.word, alphabet)
        except AlphabetError as exc:
            raise _CliError(EXIT_INPUT, str(exc))
        matched += ok
        unmatched += not ok
        mark = "+" if sample.label else "-"
        verdict = "well-matched" if ok else "not-well-matched"
        print(" ".join((mark,) + sample.word) + f" -> {verdict}")
    _manifest([("command", "check"), ("dataset", args.dataset),
               ("alphabet", args.alphabet), ("well_matched", matched),
               ("not_well_matched", unmatched)], None)
    return EXIT_OK


def cmd_benchmark(args) -> int:
    grammars = [g for part in args.grammars for g in part.split(",") if g]
    rows = []
    for grammar in grammars:
        try:
            gt = builtin(grammar)
        except KeyError as exc:
            raise _CliError(EXIT_INPUT, str(exc))
        stats = {"rpni": {"f1": [], "size": [], "time": 0.0},
                 "papni": {"f1": [], "size": [], "time": 0.0}}
        for repeat in range(args.repeats):
            run_seed = args.seed * 100003 + hash_free_index(grammar) * 1009 + repeat
            cfg = GenConfig(total=args.total, seed=run_seed, mode=args.mode)
            try:
                dataset = benchgen.generate_dataset(gt, cfg)
                train, evl = benchgen.split_dataset(dataset, seed=run_seed)
            except (GenerationError, ValueError) as exc:
                raise _CliError(EXIT_GENERATION, f"{grammar}: {exc}")
            t0 = time.perf_counter()
            dfa = rpni_learn(train)
            stats["rpni"]["time"] += time.perf_counter() - t0
            stats["rpni"]["f1"].append(benchgen.evaluate(dfa, evl).f1)
            stats["rpni"]["size"].append(dfa.size)
            t0 = time.perf_counter()
            try:
                vdpa, _ = papni_learn(train, gt.alphabet, PapniConfig(backend=args.backend))
            except NoWellMatchedSamplesError as exc:
                raise _CliError(EXIT_NO_SAMPLES, f"{grammar}: {exc}")
            stats["papni"]["time"] += time.perf_counter() - t0
            stats["papni"]["f1"].append(benchgen.evaluate(vdpa, evl).f1)
            stats["papni"]["size"].append(vdpa.size)
        for learner in ("rpni", "papni"):
            f1s, sizes = stats[learner]["f1"], stats[learner]["size"]
            rows.append({
                "grammar": grammar,
                "learner": learner,
                "mean_f1": statistics.fmean(f1s),
                "std_f1": statistics.pstdev(f1s),
                "mean_model_size": statistics.fmean(sizes),
                "wall_time_s": stats[learner]["time"],
            })
    header = f"{'grammar':<18} {'learner':<7} {'mean_f1':>8} {'std_f1':>8} {'mean_size':>10} {'time_s':>8}"
    print(header)
    for row in rows:
        print(f"{row['grammar']:<18} {row['learner']:<7} {row['mean_f1']:>8.4f} "
              f"{row['std_f1']:>8.4f} {row['mean_model_size']:>10.1f} {row['wall_time_s']:>8.3f}")
    if args.out:
        blocks = []
        for row in rows:
            blocks.append("\n".join(
                [f"grammar: {row['grammar']}", f"learner: {row['learner']}",
                 f"mean_f1: {row['mean_f1']:.6f}", f"std_f1: {row['std_f1']:.6f}",
                 f"mean_model_size: {row['mean_model_size']:.2f}",
                 f"wall_time_s: {row['wall_time_s']:.3f}"]))
        Path(args.out).write_text("\n\n".join(blocks) + "\n")
    _manifest([("command", "benchmark"), ("grammars", ",".join(grammars)),
               ("repeats", args.repeats), ("seed", args.seed),
               ("total", args.total), ("out", args.out or "-")], None)
    return EXIT_OK


def hash_free_index(name: str) -> int:
    """Stable small integer for a grammar name (no PYTHONHASHSEED effects)."""
    value = 0
    for ch in name:
        value = (value * 31 + ord(ch)) % 1000003
    return value


def cmd_convert(args) -> int:
    if args.to != "dot":
        raise _CliError(EXIT_INPUT, f"unknown target format {args.to!r}")
    try:
        model = formats.load_automaton(args.model)
    except FileNotFoundError:
        raise _CliError(EXIT_INPUT, f"cannot read model {args.model!r}")
    except formats.FormatError as exc:
        raise _CliError(EXIT_INPUT, str(exc))
    dot = render_dot(model)
    if args.out:
        Path(args.out).write_text(dot)
    else:
        sys.stdout.write(dot)
    _manifest([("command", "convert"), ("model", args.model), ("to", args.to),
               ("out", args.out or "-")], None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vpalearn",
        description="Passive automata learning for DFAs and visibly deterministic pushdown automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="learn a model from a labeled dataset")
    p.add_argument("dataset")
    p.add_argument("alphabet")
    p.add_argument("--backend", choices=["rpni", "edsm"], default="rpni")
    p.add_argument("--mode", choices=["dfa", "vdpa"], default="vdpa")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("generate", help="generate a labeled dataset from a ground truth")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--grammar", metavar="NAME")
    src.add_argument("--automaton", metavar="PATH")
    p.add_argument("--total", type=int, default=10000)
    p.add_argument("--len-min", type=int, default=4)
    p.add_argument("--len-max", type=int, default=50)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--mode", choices=["uniform", "balanced"], default="uniform")
    p.add_argument("--split", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("eval", help="evaluate a model against a labeled dataset")
    p.add_argument("model")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="report well-matchedness of every sample")
    p.add_argument("dataset")
    p.add_argument("alphabet")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("benchmark", help="compare plain RPNI against the pushdown pipeline")
    p.add_argument("--grammars", nargs="+", required=True)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--total", type=int, default=10000)
    p.add_argument("--mode", choices=["uniform", "balanced"], default="uniform")
    p.add_argument("--backend", choices=["rpni", "edsm"], default="rpni")
    p.add_argument("--out")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("convert", help="convert a textual model to DOT")
    p.add_argument("model")
    p.add_argument("--to", default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
