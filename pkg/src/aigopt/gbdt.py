"""Gradient-boosted regression trees with a squared-error objective.

Pure-numpy trainer and predictor, plus a versioned text model format.
Splits are found by exact greedy search over sorted unique feature
values; ties in gain break toward the lowest feature index, then the
lowest threshold, so training is fully deterministic for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

MODEL_FORMAT_VERSION = 1

DESK_PROFILE = dict(learning_rate=0.05, max_depth=8, n_estimators=500,
                    subsample=0.8)
REFERENCE_PROFILE = dict(learning_rate=0.01, max_depth=16, n_estimators=5000,
                         subsample=0.8)


class ModelFormatError(ValueError):
    pass


@dataclass(frozen=True)
class GbdtHyperparams:
    learning_rate: float = 0.05
    max_depth: int = 8
    n_estimators: int = 500
    subsample: float = 0.8
    min_samples_leaf: int = 5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must be in (0, 1]")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        if not 0.0 < self.subsample <= 1.0:
            raise ValueError("subsample must be in (0, 1]")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")


class Dataset:
    """Feature matrix with labels and a per-row design tag."""

    def __init__(self, rows, labels, tags):
        self.x = np.asarray(rows, dtype=np.float64)
        self.y = np.asarray(labels, dtype=np.float64)
        self.tags = list(tags)
        if self.x.ndim != 2:
            raise ValueError("rows must be a 2-D matrix")
        if len(self.y) != len(self.x) or len(self.tags) != len(self.x):
            raise ValueError("rows, labels, and tags must align")
        if not (np.isfinite(self.x).all() and np.isfinite(self.y).all()):
            raise ValueError("dataset contains non-finite values")

    def __len__(self):
        return len(self.x)

    @property
    def dimension(self):
        return self.x.shape[1]

    def subset(self, mask):
        idx = np.asarray(mask)
        return Dataset(self.x[idx], self.y[idx],
                       [self.tags[i] for i in np.flatnonzero(idx)]
                       if idx.dtype == bool else
                       [self.tags[i] for i in idx])


def save_dataset(data: Dataset, header) -> str:
    if len(header) != data.dimension:
        raise ValueError("header width mismatch")
    lines = [",".join(list(header) + ["label", "design_tag"])]
    for row, y, tag in zip(data.x, data.y, data.tags):
        lines.append(",".join([repr(float(v)) for v in row]
                              + [repr(float(y)), tag]))
    return "\n".join(lines) + "\n"


def parse_dataset(text: str):
    """Returns (dataset, feature_header)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty dataset file")
    header = lines[0].split(",")
    if header[-2:] != ["label", "design_tag"]:
        raise ValueError("dataset header must end with label,design_tag")
    names = header[:-2]
    rows, labels, tags = [], [], []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(header):
            raise ValueError("dataset row width mismatch")
        rows.append([float(v) for v in parts[:-2]])
        labels.append(float(parts[-2]))
        tags.append(parts[-1])
    return Dataset(np.array(rows, dtype=np.float64).reshape(len(rows),
                                                            len(names)),
                   labels, tags), names


# A tree is a flat node list; node i is (feature, threshold, left, right)
# for a split or (-1, value, -1, -1) for a leaf.  x <= threshold goes left.

def _best_split(x, y, min_leaf):
    """Exact greedy split minimizing SSE; None if no valid split exists."""
    n = len(y)
    if n < 2 * min_leaf:
        return None
    total = y.sum()
    best = None  # (sse, feature, threshold)
    for f in range(x.shape[1]):
        col = x[:, f]
        order = np.argsort(col, kind="stable")
        cs = col[order]
        prefix = np.cumsum(y[order])
        prefix2 = np.cumsum(y[order] ** 2)
        # candidate boundaries: positions where the sorted value changes
        i = np.flatnonzero(cs[:-1] < cs[1:]) + 1
        i = i[(i >= min_leaf) & (n - i >= min_leaf)]
        if len(i) == 0:
            continue
        sl, sl2 = prefix[i - 1], prefix2[i - 1]
        sr, sr2 = total - sl, prefix2[-1] - sl2
        sse = (sl2 - sl * sl / i) + (sr2 - sr * sr / (n - i))
        thr = (cs[i - 1] + cs[i]) / 2.0
        # the midpoint of two adjacent floats can round up to the larger
        # one, which would leave the right partition empty
        thr = np.where(thr < cs[i], thr, cs[i - 1])
        j = np.lexsort((thr, sse))[0]
        key = (float(sse[j]), f, float(thr[j]))
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return best[1], best[2]


def _build_tree(x, y, max_depth, min_leaf):
    nodes = []

    def rec(idx, depth):
        yi = y[idx]
        if depth >= max_depth or len(idx) < 2 * min_leaf:
            nodes.append((-1, float(yi.mean()), -1, -1))
            return len(nodes) - 1
        found = _best_split(x[idx], yi, min_leaf)
        if found is None:
            nodes.append((-1, float(yi.mean()), -1, -1))
            return len(nodes) - 1
        f, thr = found
        me = len(nodes)
        nodes.append(None)
        left = rec(idx[x[idx, f] <= thr], depth + 1)
        right = rec(idx[x[idx, f] > thr], depth + 1)
        nodes[me] = (f, thr, left, right)
        return me

    rec(np.arange(len(y)), 0)
    return nodes


def _eval_tree(nodes, row):
    i = 0
    while True:
        f, thr, left, right = nodes[i]
        if f < 0:
            return thr
        i = left if row[f] <= thr else right


def _eval_tree_batch(nodes, x):
    out = np.empty(len(x))
    stack = [(0, np.arange(len(x)))]
    while stack:
        i, idx = stack.pop()
        f, thr, left, right = nodes[i]
        if f < 0:
            out[idx] = thr
            continue
        mask = x[idx, f] <= thr
        stack.append((left, idx[mask]))
        stack.append((right, idx[~mask]))
    return out


class GbdtModel:
    def __init__(self, base_prediction, trees, hyperparams, feature_header):
        self.base_prediction = float(base_prediction)
        self.trees = trees
        self.hyperparams = hyperparams
        self.feature_header = list(feature_header)

    def predict_row(self, row):
        row = np.asarray(row, dtype=np.float64)
        if row.shape != (len(self.feature_header),):
            raise ValueError("feature width does not match model header")
        acc = self.base_prediction
        lr = self.hyperparams.learning_rate
        for nodes in self.trees:
            acc += lr * _eval_tree(nodes, row)
        return acc

    def predict(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 1:
            return self.predict_row(x)
        if x.shape[1] != len(self.feature_header):
            raise ValueError("feature width does not match model header")
        acc = np.full(len(x), self.base_prediction)
        lr = self.hyperparams.learning_rate
        for nodes in self.trees:
            acc += lr * _eval_tree_batch(nodes, x)
        return acc


def fit(data: Dataset, hp: GbdtHyperparams = GbdtHyperparams(),
        feature_header=None) -> GbdtModel:
    if len(data) < 2:
        raise ValueError("need at least 2 rows to fit")
    header = (list(feature_header) if feature_header is not None
              else ["f%d" % i for i in range(data.dimension)])
    if len(header) != data.dimension:
        raise ValueError("feature header width mismatch")
    rng = np.random.default_rng(hp.seed)
    n = len(data)
    take = max(1, math.ceil(hp.subsample * n))
    current = np.full(n, data.y.mean())
    base = float(data.y.mean())
    trees = []
    for _ in range(hp.n_estimators):
        residual = data.y - current
        if take < n:
            idx = np.sort(rng.choice(n, size=take, replace=False))
        else:
            idx = np.arange(n)
        nodes = _build_tree(data.x[idx], residual[idx], hp.max_depth,
                            hp.min_samples_leaf)
        trees.append(nodes)
        current = current + hp.learning_rate * _eval_tree_batch(nodes, data.x)
    return GbdtModel(base, trees, hp, header)


@dataclass(frozen=True)
class AccuracyReport:
    mean_abs_pct_error: float
    max_abs_pct_error: float
    std_abs_pct_error: float
    per_tag: dict = field(default_factory=dict)


def _pct_stats(err):
    return (float(err.mean()), float(err.max()), float(err.std()))


def evaluate(model: GbdtModel, data: Dataset) -> AccuracyReport:
    if (data.y <= 0).any():
        raise ValueError("percentage error undefined for non-positive labels")
    pred = model.predict(data.x)
    err = np.abs(data.y - pred) / data.y * 100.0
    per_tag = {}
    for tag in sorted(set(data.tags)):
        mask = np.array([t == tag for t in data.tags])
        m, mx, sd = _pct_stats(err[mask])
        per_tag[tag] = AccuracyReport(m, mx, sd)
    m, mx, sd = _pct_stats(err)
    return AccuracyReport(m, mx, sd, per_tag)


def save_model(model: GbdtModel) -> str:
    hp = model.hyperparams
    out = ["gbdt-model v%d" % MODEL_FORMAT_VERSION,
           "features %s" % ",".join(model.feature_header),
           "hyperparams %s %d %d %s %d %d" % (
               hp.learning_rate.hex(), hp.max_depth, hp.n_estimators,
               hp.subsample.hex(), hp.min_samples_leaf, hp.seed),
           "base %s" % model.base_prediction.hex(),
           "trees %d" % len(model.trees)]
    for nodes in model.trees:
        out.append("tree %d" % len(nodes))
        for f, thr, left, right in nodes:
            out.append("%d %s %d %d" % (f, float(thr).hex(), left, right))
    return "\n".join(out) + "\n"


def load_model(text: str, expect_header=None) -> GbdtModel:
    lines = text.splitlines()
    try:
        tag, ver = lines[0].split()
        if tag != "gbdt-model" or int(ver[1:]) != MODEL_FORMAT_VERSION:
            raise ModelFormatError("unsupported model version: %s" % lines[0])
        header = lines[1].split(" ", 1)[1].split(",")
        hp_parts = lines[2].split()[1:]
        hp = GbdtHyperparams(float.fromhex(hp_parts[0]), int(hp_parts[1]),
                             int(hp_parts[2]), float.fromhex(hp_parts[3]),
                             int(hp_parts[4]), int(hp_parts[5]))
        base = float.fromhex(lines[3].split()[1])
        n_trees = int(lines[4].split()[1])
        trees = []
        pos = 5
        for _ in range(n_trees):
            count = int(lines[pos].split()[1])
            pos += 1
            nodes = []
            for _ in range(count):
                f, thr, left, right = lines[pos].split()
                nodes.append((int(f), float.fromhex(thr), int(left),
                              int(right)))
                pos += 1
            trees.append(nodes)
    except ModelFormatError:
        raise
    except (IndexError, ValueError) as exc:
        raise ModelFormatError("malformed or truncated model file: %s"
                               % exc) from exc
    if expect_header is not None and list(expect_header) != header:
        raise ModelFormatError("model feature header does not match data")
    return GbdtModel(base, trees, hp, header)
