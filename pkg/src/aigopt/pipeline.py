"""Corpus generation, labeling, correlation studies, and flow comparison.

These functions back the command-line entry points but are importable on
their own; everything is seeded and produces deterministic artifacts
(timing fields excepted, which is why trajectory exports split timing
columns from decision columns).
"""

from __future__ import annotations

import json
import pathlib
import random
import time
import warnings
from dataclasses import dataclass

import numpy as np

from .aig import Aig, compute_stats, emit_aiger, parse_aiger
from .features import FeatureConfig, extract, feature_names
from .gbdt import (Dataset, GbdtHyperparams, evaluate, fit, load_model,
                   parse_dataset, save_dataset, save_model)
from .library import CellLibrary
from .optimizer import FLOW_MODES, compare_flows
from .techmap import ground_truth
from .transforms import apply, default_catalog


@dataclass(frozen=True)
class DatagenConfig:
    source: str
    count: int = 2000
    min_seq: int = 2
    max_seq: int = 20
    seed: int = 0
    dedup: bool = True
    cumulative: bool = False

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not 1 <= self.min_seq <= self.max_seq:
            raise ValueError("need 1 <= min_seq <= max_seq")


class SaturationWarning(UserWarning):
    pass


def generate_corpus(source: Aig, cfg: DatagenConfig, catalog=None,
                    max_stall: int = 200):
    """Unique transform-sequence variants of a source AIG.

    Yields (aig, sequence) pairs, starting with the unmodified source.
    Stops early with a SaturationWarning when dedup cannot find a new
    structure after max_stall consecutive attempts.
    """
    if catalog is None:
        catalog = default_catalog()
    rng = random.Random(cfg.seed)
    seen = {source.canonical_hash()}
    out = [(source, [])]
    current = source
    stall = 0
    while len(out) < cfg.count:
        if not cfg.cumulative:
            current = source
        seq_len = rng.randint(cfg.min_seq, cfg.max_seq)
        sequence = []
        aig = current
        for _ in range(seq_len):
            t = catalog[rng.randrange(len(catalog))]
            step_seed = rng.getrandbits(32)
            aig = apply(t, aig, step_seed)
            sequence.append((t.name, step_seed))
        h = aig.canonical_hash()
        if cfg.dedup and h in seen:
            stall += 1
            if stall >= max_stall:
                warnings.warn(
                    "corpus saturated at %d unique AIGs (target %d)"
                    % (len(out), cfg.count), SaturationWarning)
                break
            continue
        seen.add(h)
        stall = 0
        out.append((aig, sequence))
        if cfg.cumulative:
            current = aig
    return out


def cmd_datagen(cfg: DatagenConfig, lib: CellLibrary, out_dir,
                tag: str = None, feature_cfg=FeatureConfig()):
    """Generate, label, and store a corpus; returns the manifest dict."""
    out = pathlib.Path(out_dir)
    (out / "aigs").mkdir(parents=True, exist_ok=True)
    source = parse_aiger(pathlib.Path(cfg.source).read_text())
    if tag is None:
        tag = pathlib.Path(cfg.source).stem
    corpus = generate_corpus(source, cfg)
    names = feature_names(feature_cfg)
    rows, labels, areas, entries = [], [], [], []
    for i, (aig, sequence) in enumerate(corpus):
        path = "aigs/%s_%05d.aag" % (tag, i)
        (out / path).write_text(emit_aiger(aig))
        gt = ground_truth(aig, lib)
        row = extract(aig, feature_cfg).to_row()
        st = compute_stats(aig)
        rows.append(row)
        labels.append(gt.delay)
        areas.append(gt.area)
        entries.append({
            "hash": aig.canonical_hash(),
            "path": path,
            "features": row,
            "delay": gt.delay,
            "area": gt.area,
            "level": st.level,
            "node_count": st.node_count,
            "sequence": [[name, seed] for name, seed in sequence],
        })
    manifest = {
        "version": 1,
        "tag": tag,
        "seed": cfg.seed,
        "count": len(entries),
        "feature_names": names,
        "entries": entries,
    }
    dataset = Dataset(np.array(rows).reshape(len(rows), len(names)),
                      labels, [tag] * len(rows))
    (out / "dataset.csv").write_text(save_dataset(dataset, names))
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    (out / "areas.json").write_text(json.dumps(areas) + "\n")
    return manifest


def load_manifest(path):
    return json.loads(pathlib.Path(path).read_text())


def pearson(xs, ys):
    """Pearson r; None when either column has zero variance."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.std() == 0.0 or y.std() == 0.0:
        return None
    return float(np.corrcoef(x, y)[0, 1])


@dataclass
class CorrelationReport:
    level_delay_correlation: float
    feature_correlations: dict
    min_delay_index: int
    min_level_index: int
    min_delay_is_min_level: bool
    rows: int


def cmd_correlate(manifest) -> CorrelationReport:
    entries = manifest["entries"]
    if len(entries) < 30:
        raise ValueError("need at least 30 corpus rows to correlate")
    delays = [e["delay"] for e in entries]
    levels = [e["level"] for e in entries]
    names = manifest["feature_names"]
    feats = np.array([e["features"] for e in entries])
    per_feature = {n: pearson(feats[:, i], delays)
                   for i, n in enumerate(names)}
    min_delay_i = min(range(len(entries)), key=lambda i: delays[i])
    min_level_i = min(range(len(entries)), key=lambda i: levels[i])
    return CorrelationReport(
        level_delay_correlation=pearson(levels, delays),
        feature_correlations=per_feature,
        min_delay_index=min_delay_i,
        min_level_index=min_level_i,
        min_delay_is_min_level=(levels[min_delay_i] == levels[min_level_i]
                                and min_delay_i == min_level_i),
        rows=len(entries),
    )


def split_by_tag(data: Dataset, held_out_tags):
    held = set(held_out_tags)
    train_mask = [t not in held for t in data.tags]
    test_mask = [t in held for t in data.tags]
    if not any(train_mask) or not any(test_mask):
        raise ValueError("tag split leaves an empty side")
    return data.subset(np.array(train_mask)), data.subset(np.array(test_mask))


def cmd_train(dataset_text: str, hp: GbdtHyperparams,
              held_out_tags=()) -> str:
    data, names = parse_dataset(dataset_text)
    if held_out_tags:
        data, _ = split_by_tag(data, held_out_tags)
    model = fit(data, hp, feature_header=names)
    return save_model(model)


def cmd_eval(model_text: str, dataset_text: str, held_out_tags=()):
    """Returns (train_report_or_None, test_report_or_None)."""
    data, names = parse_dataset(dataset_text)
    model = load_model(model_text, expect_header=names)
    if not held_out_tags:
        return evaluate(model, data), None
    train, test = split_by_tag(data, held_out_tags)
    return evaluate(model, train), evaluate(model, test)


def cmd_predict(model_text: str, aiger_text: str) -> float:
    model = load_model(model_text)
    aig = parse_aiger(aiger_text)
    return float(model.predict_row(extract(aig).to_row()))


def cmd_optimize(aiger_text: str, lib: CellLibrary, model_text=None,
                 grid=None, iterations: int = 100, seed: int = 0):
    aig = parse_aiger(aiger_text)
    model = load_model(model_text) if model_text else None
    return compare_flows(aig, lib, model, grid=grid, iterations=iterations,
                         base_seed=seed)


@dataclass
class BenchRow:
    design: str
    node_count: int
    proxy_s: float
    mapping_sta_s: float
    ml_inference_s: float
    ml_vs_ground_truth_pct: float


def cmd_bench(designs, lib: CellLibrary, model, iterations: int = 1000,
              feature_cfg=FeatureConfig()):
    """Per-iteration oracle stage times for the three flows."""
    rows = []
    for name, aig in designs:
        t0 = time.perf_counter()
        for _ in range(iterations):
            compute_stats(aig)
        proxy = (time.perf_counter() - t0) / iterations

        t0 = time.perf_counter()
        for _ in range(iterations):
            ground_truth(aig, lib)
        gt = (time.perf_counter() - t0) / iterations

        t0 = time.perf_counter()
        for _ in range(iterations):
            model.predict_row(extract(aig, feature_cfg).to_row())
        ml = (time.perf_counter() - t0) / iterations

        pct = (ml - gt) / gt * 100.0 if gt > 0 else float("nan")
        rows.append(BenchRow(name, aig.num_ands, proxy, gt, ml, pct))
    return rows


def format_bench(rows) -> str:
    out = ["design nodes proxy_s mapping_sta_s ml_inference_s ml_vs_gt_pct"]
    for r in rows:
        out.append("%s %d %.6g %.6g %.6g %.2f"
                   % (r.design, r.node_count, r.proxy_s, r.mapping_sta_s,
                      r.ml_inference_s, r.ml_vs_ground_truth_pct))
    return "\n".join(out) + "\n"


def export_trajectories(report) -> str:
    """Decision columns only (deterministic; timing exported separately)."""
    lines = ["mode,run,iteration,move,cost,accepted"]
    for mode in FLOW_MODES:
        for ri, run in enumerate(report.runs.get(mode, [])):
            for t in run.trajectory:
                lines.append("%s,%d,%d,%s,%s,%d"
                             % (mode, ri, t.iteration, t.move,
                                repr(t.cost), int(t.accepted)))
    return "\n".join(lines) + "\n"


def export_timings(report) -> str:
    lines = ["mode,run,iteration,time_graph,time_mapping,time_inference"]
    for mode in FLOW_MODES:
        for ri, run in enumerate(report.runs.get(mode, [])):
            for t in run.trajectory:
                lines.append("%s,%d,%d,%r,%r,%r"
                             % (mode, ri, t.iteration, t.time_graph,
                                t.time_mapping, t.time_inference))
    return "\n".join(lines) + "\n"


def export_fronts(report) -> str:
    lines = ["mode,delay,area"]
    for mode in FLOW_MODES:
        front = report.fronts.get(mode)
        if front is None:
            continue
        for p in front.points:
            lines.append("%s,%s,%s" % (mode, repr(p[0]), repr(p[1])))
    return "\n".join(lines) + "\n"


def format_flow_report(report) -> str:
    out = ["flow comparison (ground-truth scored)",
           "reference point: (%.6g, %.6g)" % report.ref_point]
    for mode in FLOW_MODES:
        if mode not in report.fronts:
            continue
        front = report.fronts[mode]
        tg, tm, ti = report.stage_times[mode]
        out.append("%-13s front=%d hypervolume=%.6g "
                   "t_graph=%.3gs t_map=%.3gs t_infer=%.3gs"
                   % (mode, len(front.points), report.hypervolumes[mode],
                      tg, tm, ti))
    return "\n".join(out) + "\n"
