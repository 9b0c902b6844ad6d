"""Simulated-annealing optimization over the transform catalog.

Three interchangeable cost oracles score candidate AIGs: proxy (graph
level and node count), ground-truth (technology mapping plus static
timing), and ml (regression-model delay estimate plus node count).
A sweep runs a grid of weight ratios, decay rates, and seeds; Pareto
extraction and hypervolume compare the resulting fronts, always on
ground-truth metrics so flows are compared apples-to-apples.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .aig import Aig, compute_stats
from .features import extract
from .techmap import ground_truth
from .transforms import apply, default_catalog

DEFAULT_WEIGHT_RATIOS = ((4.0, 1.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0),
                         (1.0, 4.0))
DEFAULT_DECAYS = (0.95, 0.99, 0.999)
DEFAULT_NUM_SEEDS = 3


@dataclass(frozen=True)
class CostConfig:
    mode: str = "proxy"
    w_delay: float = 1.0
    w_area: float = 1.0

    def __post_init__(self):
        if self.mode not in ("proxy", "ground-truth", "ml"):
            raise ValueError("unknown cost mode %r" % self.mode)
        if self.w_delay < 0 or self.w_area < 0 or \
                self.w_delay + self.w_area <= 0:
            raise ValueError("weights must be non-negative, not both zero")


@dataclass(frozen=True)
class SaConfig:
    initial_temp: float
    decay: float = 0.99
    iterations: int = 100
    seed: int = 0
    shortlist: int = 5  # candidates verified with ground truth at the end

    def __post_init__(self):
        if self.initial_temp <= 0:
            raise ValueError("initial_temp must be positive")
        if not 0.0 < self.decay < 1.0:
            raise ValueError("decay must be in (0, 1)")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.shortlist < 1:
            raise ValueError("shortlist must be >= 1")


@dataclass
class TrajectoryPoint:
    iteration: int
    move: str
    cost: float
    accepted: bool
    time_graph: float
    time_mapping: float
    time_inference: float


@dataclass
class SaRun:
    best_aig: Aig
    best_cost: float
    best_metrics: tuple  # (delay_est, area_est, gt_delay, gt_area)
    trajectory: list
    cost_cfg: CostConfig
    sa_cfg: SaConfig
    verified: list = None  # [(gt_delay, gt_area), ...] for the shortlist


class CostOracle:
    """Scores AIGs under one mode, normalized by the initial AIG."""

    def __init__(self, cfg: CostConfig, library=None, model=None,
                 area_model=None, cache=None):
        if cfg.mode == "ground-truth" and library is None:
            raise ValueError("ground-truth mode requires a cell library")
        if cfg.mode == "ml" and model is None:
            raise ValueError("ml mode requires a trained model")
        self.cfg = cfg
        self.library = library
        self.model = model
        self.area_model = area_model
        self.cache = cache
        self._delay0 = None
        self._area0 = None
        self._level0 = None
        self._nodes0 = None

    def raw_metrics(self, aig: Aig):
        """(delay estimate, area estimate, (t_map, t_infer)).

        When a cache dict is attached, repeated structures are scored
        once; cache hits report zero stage time.
        """
        if self.cache is not None:
            key = aig.canonical_hash()
            hit = self.cache.get(key)
            if hit is not None:
                return hit[0], hit[1], (0.0, 0.0)
            delay, area, times = self._raw_metrics(aig)
            self.cache[key] = (delay, area)
            return delay, area, times
        return self._raw_metrics(aig)

    def _raw_metrics(self, aig: Aig):
        mode = self.cfg.mode
        if mode == "proxy":
            st = compute_stats(aig)
            return float(st.level), float(st.node_count), (0.0, 0.0)
        if mode == "ground-truth":
            t0 = time.perf_counter()
            gt = ground_truth(aig, self.library)
            dt = time.perf_counter() - t0
            return gt.delay, gt.area, (dt, 0.0)
        t0 = time.perf_counter()
        row = extract(aig).to_row()
        delay = float(self.model.predict_row(row))
        if self.area_model is not None:
            area = float(self.area_model.predict_row(row))
        else:
            area = float(aig.num_ands)
        dt = time.perf_counter() - t0
        return delay, area, (0.0, dt)

    # weight of the graph-stat tie-breaker in ml mode; small enough that
    # any real prediction difference dominates it
    TIEBREAK = 0.02

    def cost(self, aig: Aig):
        """(cost, (delay, area), (t_map, t_infer)); first call sets scale."""
        delay, area, times = self.raw_metrics(aig)
        if self._delay0 is None:
            self._delay0 = delay if delay > 0 else 1.0
            self._area0 = area if area > 0 else 1.0
        c = (self.cfg.w_delay * delay / self._delay0
             + self.cfg.w_area * area / self._area0)
        if self.cfg.mode == "ml":
            # tree models are piecewise constant, so nearby structures
            # often predict identically; without an order on those
            # plateaus the annealer accepts every such move and random
            # walks.  Graph stats break the tie at negligible cost.
            st = compute_stats(aig)
            if self._level0 is None:
                self._level0 = max(st.level, 1)
                self._nodes0 = max(st.node_count, 1)
            c += self.TIEBREAK * (
                self.cfg.w_delay * st.level / self._level0
                + self.cfg.w_area * st.node_count / self._nodes0)
        return c, (delay, area), times


def accept(delta: float, temperature: float, rng: random.Random) -> bool:
    if delta <= 0:
        return True
    if temperature <= 0:
        return False
    return rng.random() < math.exp(-delta / temperature)


def calibrate_temperature(initial: Aig, catalog, oracle: CostOracle,
                          seed: int, probes: int = 100,
                          target_accept: float = 0.8) -> float:
    """Temperature at which the median probe-move |Δcost| is accepted
    with the target probability."""
    rng = random.Random(seed ^ 0x5CA1AB1E)
    base, _, _ = oracle.cost(initial)
    deltas = []
    for _ in range(probes):
        t = catalog[rng.randrange(len(catalog))]
        cand = apply(t, initial, rng.getrandbits(32))
        c, _, _ = oracle.cost(cand)
        d = abs(c - base)
        if d > 0:
            deltas.append(d)
    if not deltas:
        return 0.1
    deltas.sort()
    med = deltas[len(deltas) // 2]
    return med / -math.log(target_accept)


def anneal(initial: Aig, catalog, oracle: CostOracle, sa_cfg: SaConfig,
           gt_cache=None) -> SaRun:
    """One annealing run; every flow verifies its shortlist identically.

    The run tracks the lowest-oracle-cost structures it evaluates and,
    when a library is available, re-scores that shortlist with the
    mapper and timer; the true best of the shortlist is reported and
    every verified (delay, area) pair is kept on the run for front
    extraction.  This keeps run selection honest under estimated costs:
    the structure an approximate oracle likes most is, by selection
    bias, the one it is most likely to have under-estimated.
    """
    rng = random.Random(sa_cfg.seed)
    current = initial
    cur_cost, cur_metrics, _ = oracle.cost(initial)
    best, best_cost, best_metrics = initial, cur_cost, cur_metrics
    shortlist = {initial.canonical_hash(): (cur_cost, initial, cur_metrics)}
    temp = sa_cfg.initial_temp
    trajectory = []

    def remember(aig, cost, metrics):
        key = aig.canonical_hash()
        if key not in shortlist:
            shortlist[key] = (cost, aig, metrics)
            if len(shortlist) > sa_cfg.shortlist:
                del shortlist[max(shortlist, key=lambda k: shortlist[k][0])]

    for it in range(sa_cfg.iterations):
        t0 = time.perf_counter()
        transform = catalog[rng.randrange(len(catalog))]
        candidate = apply(transform, current, rng.getrandbits(32))
        t_graph = time.perf_counter() - t0
        cand_cost, cand_metrics, (t_map, t_inf) = oracle.cost(candidate)
        remember(candidate, cand_cost, cand_metrics)
        ok = accept(cand_cost - cur_cost, temp, rng)
        if ok:
            current, cur_cost, cur_metrics = candidate, cand_cost, \
                cand_metrics
            if cand_cost < best_cost:
                best, best_cost, best_metrics = candidate, cand_cost, \
                    cand_metrics
        trajectory.append(TrajectoryPoint(it, transform.name, cand_cost, ok,
                                          t_graph, t_map, t_inf))
        temp *= sa_cfg.decay

    if oracle.library is None:
        metrics = (best_metrics[0], best_metrics[1], float("nan"),
                   float("nan"))
        return SaRun(best, best_cost, metrics, trajectory, oracle.cfg,
                     sa_cfg)

    if gt_cache is None:
        gt_cache = {}

    def true_metrics(aig, key):
        hit = gt_cache.get(key)
        if hit is None:
            gt = ground_truth(aig, oracle.library)
            hit = (gt.delay, gt.area)
            gt_cache[key] = hit
        return hit

    d0, a0 = true_metrics(initial, initial.canonical_hash())
    d0, a0 = d0 or 1.0, a0 or 1.0
    picked = None
    verified = []
    for key in sorted(shortlist):  # stable order for deterministic ties
        cost, aig, metrics = shortlist[key]
        delay, area = true_metrics(aig, key)
        verified.append((delay, area))
        true_cost = (oracle.cfg.w_delay * delay / d0
                     + oracle.cfg.w_area * area / a0)
        if picked is None or true_cost < picked[0]:
            picked = (true_cost, aig, cost, metrics, delay, area)
    _, best, best_cost, best_metrics, gt_delay, gt_area = picked
    metrics = (best_metrics[0], best_metrics[1], gt_delay, gt_area)
    return SaRun(best, best_cost, metrics, trajectory, oracle.cfg, sa_cfg,
                 verified=verified)


def default_grid(num_seeds: int = DEFAULT_NUM_SEEDS,
                 ratios=DEFAULT_WEIGHT_RATIOS, decays=DEFAULT_DECAYS):
    return [(wd, wa, dc, s)
            for wd, wa in ratios for dc in decays for s in range(num_seeds)]


def sweep(initial: Aig, mode: str, grid=None, library=None, model=None,
          area_model=None, iterations: int = 100, catalog=None,
          base_seed: int = 0, gt_cache=None, shortlist: int = 5):
    if grid is None:
        grid = default_grid()
    if not grid:
        raise ValueError("empty sweep grid")
    if catalog is None:
        catalog = default_catalog()
    runs = []
    cache = {}
    temps = {}  # temperature depends only on the cost scale, so the
    # calibration is shared across decay rates and seeds of one ratio
    for gi, (wd, wa, decay, seed) in enumerate(grid):
        cfg = CostConfig(mode, wd, wa)
        oracle = CostOracle(cfg, library=library, model=model,
                            area_model=area_model, cache=cache)
        if (wd, wa) not in temps:
            temps[(wd, wa)] = calibrate_temperature(
                initial, catalog, oracle, base_seed * 1000003 + gi)
        sa = SaConfig(initial_temp=max(temps[(wd, wa)], 1e-9), decay=decay,
                      iterations=iterations,
                      seed=(base_seed * 1000003 + gi) ^ seed,
                      shortlist=shortlist)
        runs.append(anneal(initial, catalog, oracle, sa,
                           gt_cache=gt_cache))
    return runs


@dataclass
class ParetoFront:
    points: list  # (delay, area, payload), sorted by delay ascending


def pareto(points) -> ParetoFront:
    """Non-dominated subset under minimization of both axes.

    A point is dropped if another point is <= in both coordinates and
    < in at least one; exact ties on both axes keep the earliest.
    """
    items = list(points)
    keep = []
    for i, p in enumerate(items):
        dominated = False
        for j, q in enumerate(items):
            if j == i:
                continue
            if q[0] <= p[0] and q[1] <= p[1] and (q[0] < p[0]
                                                  or q[1] < p[1]):
                dominated = True
                break
            if q[0] == p[0] and q[1] == p[1] and j < i:
                dominated = True
                break
        if not dominated:
            keep.append(p)
    keep.sort(key=lambda p: (p[0], p[1]))
    return ParetoFront(keep)


def pareto_of_runs(runs) -> ParetoFront:
    """Front over every verified shortlist point of every run.

    Runs scored without a library carry no verification; those fall
    back to the run's own best metrics.
    """
    pts = []
    for r in runs:
        if r.verified:
            pts.extend((d, a, r) for d, a in r.verified)
        else:
            pts.append((r.best_metrics[2], r.best_metrics[3], r))
    return pareto(pts)


def hypervolume(front: ParetoFront, ref_point) -> float:
    """Dominated area between the front and the reference point."""
    rx, ry = ref_point
    total = 0.0
    prev_y = ry
    for x, y, *_ in front.points:
        if x >= rx or y >= prev_y:
            continue
        total += (rx - x) * (prev_y - y)
        prev_y = y
    return total


def reference_point(fronts):
    xs = [p[0] for f in fronts for p in f.points]
    ys = [p[1] for f in fronts for p in f.points]
    if not xs:
        return (1.0, 1.0)
    return (1.1 * max(xs), 1.1 * max(ys))


@dataclass
class FlowReport:
    fronts: dict            # mode -> ParetoFront
    hypervolumes: dict      # mode -> float
    ref_point: tuple
    stage_times: dict       # mode -> (mean graph, mean mapping, mean infer)
    runs: dict = field(default_factory=dict)


FLOW_MODES = ("proxy", "ground-truth", "ml")


def compare_flows(initial: Aig, library, model, area_model=None,
                  grid=None, iterations: int = 100, base_seed: int = 0,
                  shortlist: int = 5, repeats: int = 1) -> FlowReport:
    """Run every flow over the same grid and compare gt-scored fronts.

    With repeats > 1 the whole grid is re-run at consecutive base
    seeds and each mode's runs are pooled before front extraction,
    which damps the run-to-run spread of the small default grid.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    fronts, stage_times, all_runs = {}, {}, {}
    modes = FLOW_MODES if model is not None else ("proxy", "ground-truth")
    gt_cache = {}  # shortlist verification shared across flows
    for mode in modes:
        runs = []
        for rep in range(repeats):
            runs += sweep(initial, mode, grid=grid, library=library,
                          model=model if mode == "ml" else None,
                          area_model=area_model if mode == "ml" else None,
                          iterations=iterations, base_seed=base_seed + rep,
                          gt_cache=gt_cache, shortlist=shortlist)
        all_runs[mode] = runs
        fronts[mode] = pareto_of_runs(runs)
        pts = [tp for r in runs for tp in r.trajectory]
        n = max(len(pts), 1)
        stage_times[mode] = (sum(t.time_graph for t in pts) / n,
                             sum(t.time_mapping for t in pts) / n,
                             sum(t.time_inference for t in pts) / n)
    ref = reference_point(fronts.values())
    hv = {m: hypervolume(f, ref) for m, f in fronts.items()}
    return FlowReport(fronts, hv, ref, stage_times, all_runs)
