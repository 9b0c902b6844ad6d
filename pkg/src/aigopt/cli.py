"""Command-line interface.

Subcommands: datagen, correlate, train, eval, predict, optimize, bench.
Exit codes: 0 success, 1 usage error, 2 data error (bad inputs or files),
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from .aig import AigerError
from .features import FeatureConfig, feature_names
from .fixtures import FIXTURE_NAMES, load_fixture
from .gbdt import (DESK_PROFILE, REFERENCE_PROFILE, GbdtHyperparams,
                   ModelFormatError, load_model)
from .library import default_library, load_library
from .pipeline import (DatagenConfig, cmd_bench, cmd_correlate, cmd_datagen,
                       cmd_eval, cmd_optimize, cmd_predict, cmd_train,
                       export_fronts, export_timings, export_trajectories,
                       format_bench, format_flow_report, load_manifest)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


def parse_config_file(path):
    """key = value lines; '#' comments; values parsed as int/float/str."""
    out = {}
    for ln in pathlib.Path(path).read_text().splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        if "=" not in ln:
            raise ValueError("bad config line: %r" % ln)
        key, val = (s.strip() for s in ln.split("=", 1))
        for cast in (int, float):
            try:
                out[key] = cast(val)
                break
            except ValueError:
                continue
        else:
            out[key] = val
    return out


def _hyperparams(args):
    base = dict(REFERENCE_PROFILE if args.profile == "reference"
                else DESK_PROFILE)
    if args.config:
        cfg = parse_config_file(args.config)
        for k in ("learning_rate", "max_depth", "n_estimators", "subsample",
                  "min_samples_leaf"):
            if k in cfg:
                base[k] = cfg[k]
    return GbdtHyperparams(seed=args.seed, **base)


def _library(args):
    if args.library:
        return load_library(pathlib.Path(args.library).read_text())
    return default_library()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    p = _Parser(prog="aigopt",
                description="AIG optimization workbench: corpus generation, "
                            "delay-model training, and annealing flows")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--library", help="cell library file (default: built-in)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("datagen", help="generate and label an AIG corpus")
    d.add_argument("source", help="source AIGER file or fixture name (%s)"
                                  % ",".join(FIXTURE_NAMES))
    d.add_argument("--out", required=True)
    d.add_argument("--count", type=int, default=2000)
    d.add_argument("--min-seq", type=int, default=2)
    d.add_argument("--max-seq", type=int, default=20)
    d.add_argument("--no-dedup", action="store_true")
    d.add_argument("--cumulative", action="store_true",
                   help="chain sequences instead of restarting from source")
    d.add_argument("--tag")

    c = sub.add_parser("correlate", help="level-vs-delay correlation report")
    c.add_argument("manifest")

    t = sub.add_parser("train", help="fit the delay model on a dataset")
    t.add_argument("dataset")
    t.add_argument("--out", required=True, help="model file to write")
    t.add_argument("--profile", choices=["desk", "reference"],
                   default="desk")
    t.add_argument("--config", help="hyperparameter overrides (key=value)")
    t.add_argument("--hold-out", action="append", default=[],
                   help="design tag excluded from training (repeatable)")

    e = sub.add_parser("eval", help="accuracy report for a trained model")
    e.add_argument("model")
    e.add_argument("dataset")
    e.add_argument("--hold-out", action="append", default=[])

    r = sub.add_parser("predict", help="predict post-mapping delay")
    r.add_argument("model")
    r.add_argument("aiger")

    o = sub.add_parser("optimize", help="compare the three annealing flows")
    o.add_argument("aiger", help="AIGER file or fixture name")
    o.add_argument("--out", required=True)
    o.add_argument("--model", help="trained model (required for ml flow)")
    o.add_argument("--iterations", type=int, default=2000)

    b = sub.add_parser("bench", help="per-iteration oracle timing table")
    b.add_argument("designs", nargs="+",
                   help="AIGER files or fixture names")
    b.add_argument("--model", required=True)
    b.add_argument("--iterations", type=int, default=1000)
    return p


def _read_design_text(name):
    if name in FIXTURE_NAMES:
        from .aig import emit_aiger
        return emit_aiger(load_fixture(name)), name
    return pathlib.Path(name).read_text(), pathlib.Path(name).stem


def _run(args):
    lib = _library(args)
    if args.command == "datagen":
        out = pathlib.Path(args.out)
        if args.source in FIXTURE_NAMES:
            out.mkdir(parents=True, exist_ok=True)
            src = out / (args.source + ".aag")
            from .aig import emit_aiger
            src.write_text(emit_aiger(load_fixture(args.source)))
            source = str(src)
        else:
            source = args.source
        cfg = DatagenConfig(source=source, count=args.count,
                            min_seq=args.min_seq, max_seq=args.max_seq,
                            seed=args.seed, dedup=not args.no_dedup,
                            cumulative=args.cumulative)
        manifest = cmd_datagen(cfg, lib, args.out, tag=args.tag)
        print("wrote %d rows to %s" % (manifest["count"], args.out))
        return EXIT_OK

    if args.command == "correlate":
        rep = cmd_correlate(load_manifest(args.manifest))
        print("rows: %d" % rep.rows)
        print("pearson(level, delay): %s"
              % (rep.level_delay_correlation
                 if rep.level_delay_correlation is not None
                 else "undefined"))
        print("min-delay index %d, min-level index %d, coincide: %s"
              % (rep.min_delay_index, rep.min_level_index,
                 rep.min_delay_is_min_level))
        for name in feature_names(FeatureConfig()):
            r = rep.feature_correlations[name]
            print("  %-32s %s" % (name, "%.4f" % r if r is not None
                                  else "undefined"))
        return EXIT_OK

    if args.command == "train":
        text = cmd_train(pathlib.Path(args.dataset).read_text(),
                         _hyperparams(args), held_out_tags=args.hold_out)
        pathlib.Path(args.out).write_text(text)
        print("model written to %s" % args.out)
        return EXIT_OK

    if args.command == "eval":
        train_rep, test_rep = cmd_eval(
            pathlib.Path(args.model).read_text(),
            pathlib.Path(args.dataset).read_text(),
            held_out_tags=args.hold_out)
        for label, rep in (("train", train_rep), ("held-out", test_rep)):
            if rep is None:
                continue
            print("%s: mean %.3f%% max %.3f%% std %.3f%%"
                  % (label, rep.mean_abs_pct_error, rep.max_abs_pct_error,
                     rep.std_abs_pct_error))
            for tag, sub in sorted(rep.per_tag.items()):
                print("  %-12s mean %.3f%% max %.3f%%"
                      % (tag, sub.mean_abs_pct_error, sub.max_abs_pct_error))
        return EXIT_OK

    if args.command == "predict":
        text, _ = _read_design_text(args.aiger)
        value = cmd_predict(pathlib.Path(args.model).read_text(), text)
        print("%r" % value)
        return EXIT_OK

    if args.command == "optimize":
        text, _ = _read_design_text(args.aiger)
        model_text = (pathlib.Path(args.model).read_text()
                      if args.model else None)
        report = cmd_optimize(text, lib, model_text=model_text,
                              iterations=args.iterations, seed=args.seed)
        out = pathlib.Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.txt").write_text(format_flow_report(report))
        (out / "fronts.csv").write_text(export_fronts(report))
        (out / "trajectories.csv").write_text(export_trajectories(report))
        (out / "timings.csv").write_text(export_timings(report))
        print(format_flow_report(report), end="")
        return EXIT_OK

    if args.command == "bench":
        model = load_model(pathlib.Path(args.model).read_text())
        designs = []
        for name in args.designs:
            text, tag = _read_design_text(name)
            from .aig import parse_aiger
            designs.append((tag, parse_aiger(text, name=tag)))
        rows = cmd_bench(designs, lib, model, iterations=args.iterations)
        print(format_bench(rows), end="")
        return EXIT_OK

    raise AssertionError("unhandled command %r" % args.command)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _run(args)
    except (AigerError, ModelFormatError, ValueError, OSError,
            json.JSONDecodeError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DATA
    except AssertionError as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
