"""Graph-level feature extraction for post-mapping delay prediction.

The feature row is: node count, graph level, then three per-PO depth
families (unit, fanout-weighted, binary-weighted; top-n each), fanout
statistics over all nodes and over critical-path nodes, and per-PO path
counts (top-n, stored as log1p in the numeric row).

Depth convention: a path's weight sum counts the PI pseudo-node and every
AND node up to and including the PO's driver; the PO marker itself adds
nothing.  Binary weights are 1 for nodes with fanout >= 2, else 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .aig import Aig, fanout_counts, node_levels

PATH_COUNT_CAP = 1 << 53


@dataclass(frozen=True)
class FeatureConfig:
    n_depth: int = 3
    n_paths: int = 3

    def __post_init__(self):
        if self.n_depth < 1 or self.n_paths < 1:
            raise ValueError("top-n parameters must be >= 1")

    @property
    def dimension(self) -> int:
        return 10 + 3 * self.n_depth + self.n_paths


@dataclass(frozen=True)
class FeatureVector:
    number_of_node: int
    aig_level: int
    long_path_depth: tuple
    weighted_path_depth: tuple
    binary_weighted_path_depth: tuple
    fanout_mean: float
    fanout_max: float
    fanout_std: float
    fanout_sum: float
    lp_fanout_mean: float
    lp_fanout_max: float
    lp_fanout_std: float
    lp_fanout_sum: float
    num_of_paths: tuple

    def to_row(self):
        """Numeric row in header order; path counts are log1p-compressed."""
        return (
            [float(self.number_of_node), float(self.aig_level)]
            + [float(x) for x in self.long_path_depth]
            + [float(x) for x in self.weighted_path_depth]
            + [float(x) for x in self.binary_weighted_path_depth]
            + [self.fanout_mean, self.fanout_max, self.fanout_std,
               self.fanout_sum]
            + [self.lp_fanout_mean, self.lp_fanout_max, self.lp_fanout_std,
               self.lp_fanout_sum]
            + [math.log1p(float(x)) for x in self.num_of_paths]
        )


def feature_names(config: FeatureConfig = FeatureConfig()):
    names = ["number_of_node", "aig_level"]
    for fam in ("long_path_depth", "weighted_path_depth",
                "binary_weighted_path_depth"):
        names += ["aig_%s_%d" % (fam, i + 1) for i in range(config.n_depth)]
    names += ["fanout_mean", "fanout_max", "fanout_std", "fanout_sum"]
    names += ["lp_fanout_mean", "lp_fanout_max", "lp_fanout_std",
              "lp_fanout_sum"]
    names += ["num_of_paths_%d" % (i + 1) for i in range(config.n_paths)]
    return names


def top_n(values, n: int):
    """Descending top-n with zero padding."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ranked = sorted(values, reverse=True)[:n]
    return tuple(ranked + [0] * (n - len(ranked)))


def _node_weights(aig: Aig, fo, weighting: str):
    if weighting == "unit":
        return [1] * aig.num_nodes
    if weighting == "fanout":
        return list(fo)
    if weighting == "binary":
        return [1 if f >= 2 else 0 for f in fo]
    raise ValueError("unknown weighting %r" % weighting)


def node_depths(aig: Aig, weighting: str):
    """Per-PO maximum path weight sum under the stated convention."""
    fo = fanout_counts(aig)
    w = _node_weights(aig, fo, weighting)
    depth = [0] * aig.num_nodes
    for p in range(1, aig.num_pis + 1):
        depth[p] = w[p]
    base = aig.num_pis + 1
    for i in range(aig.num_ands):
        n = base + i
        a = depth[aig.fanin0[i] >> 1]
        b = depth[aig.fanin1[i] >> 1]
        depth[n] = (a if a >= b else b) + w[n]
    return [depth[po >> 1] for po in aig.pos]


def count_paths(aig: Aig):
    """Per-PO count of distinct PI-to-driver paths (saturating)."""
    paths = [0] * aig.num_nodes
    for p in range(1, aig.num_pis + 1):
        paths[p] = 1
    base = aig.num_pis + 1
    for i in range(aig.num_ands):
        c = paths[aig.fanin0[i] >> 1] + paths[aig.fanin1[i] >> 1]
        paths[base + i] = c if c < PATH_COUNT_CAP else PATH_COUNT_CAP
    return [paths[po >> 1] for po in aig.pos]


def long_path_nodes(aig: Aig):
    """Nodes (PIs and ANDs) lying on some path that achieves the level."""
    lv = node_levels(aig)
    level = max((lv[po >> 1] for po in aig.pos), default=0)
    # tail[n]: max AND nodes strictly after n on any path to a PO
    tail = [-1] * aig.num_nodes
    for po in aig.pos:
        n = po >> 1
        if tail[n] < 0:
            tail[n] = 0
    base = aig.num_pis + 1
    for i in range(aig.num_ands - 1, -1, -1):
        n = base + i
        if tail[n] < 0:
            continue
        t = tail[n] + 1
        for e in (aig.fanin0[i], aig.fanin1[i]):
            m = e >> 1
            if t > tail[m]:
                tail[m] = t
    out = set()
    for n in range(1, aig.num_nodes):
        if tail[n] >= 0 and lv[n] + tail[n] == level:
            out.add(n)
    return out


def _stats(values):
    n = len(values)
    if n == 0:
        return (0.0, 0.0, 0.0, 0.0)
    total = float(sum(values))
    mean = total / n
    var = sum((v - mean) ** 2 for v in values) / n
    return (mean, float(max(values)), math.sqrt(var), total)


def fanout_stats(aig: Aig, scope: str = "all"):
    """(mean, max, std, sum) of fanouts; population std, PO refs counted."""
    fo = fanout_counts(aig)
    if scope == "all":
        nodes = range(1, aig.num_nodes)
    elif scope == "long-path":
        nodes = sorted(long_path_nodes(aig))
    else:
        raise ValueError("unknown scope %r" % scope)
    return _stats([fo[n] for n in nodes])


def extract(aig: Aig, config: FeatureConfig = FeatureConfig()) -> FeatureVector:
    lv = node_levels(aig)
    level = max((lv[po >> 1] for po in aig.pos), default=0)
    all_stats = fanout_stats(aig, "all")
    lp_stats = fanout_stats(aig, "long-path")
    return FeatureVector(
        number_of_node=aig.num_ands,
        aig_level=level,
        long_path_depth=top_n(node_depths(aig, "unit"), config.n_depth),
        weighted_path_depth=top_n(node_depths(aig, "fanout"), config.n_depth),
        binary_weighted_path_depth=top_n(node_depths(aig, "binary"),
                                         config.n_depth),
        fanout_mean=all_stats[0],
        fanout_max=all_stats[1],
        fanout_std=all_stats[2],
        fanout_sum=all_stats[3],
        lp_fanout_mean=lp_stats[0],
        lp_fanout_max=lp_stats[1],
        lp_fanout_std=lp_stats[2],
        lp_fanout_sum=lp_stats[3],
        num_of_paths=top_n(count_paths(aig), config.n_paths),
    )
