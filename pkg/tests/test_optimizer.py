import math
import random

import pytest

from aigopt.library import default_library
from aigopt.optimizer import (
    CostConfig,
    CostOracle,
    SaConfig,
    accept,
    anneal,
    calibrate_temperature,
    default_grid,
    hypervolume,
    pareto,
    reference_point,
    sweep,
)
from aigopt.transforms import check_equivalence, default_catalog


@pytest.fixture(scope="module")
def library():
    return default_library()


class TestCost:
    def test_normalization_identity(self, fixture8, library):
        for mode in ("proxy", "ground-truth"):
            cfg = CostConfig(mode, w_delay=2.0, w_area=3.0)
            oracle = CostOracle(cfg, library=library)
            c, _, _ = oracle.cost(fixture8)
            assert c == pytest.approx(5.0)

    def test_proxy_tracks_level_when_area_zero(self, fixture8):
        oracle = CostOracle(CostConfig("proxy", w_delay=1.0, w_area=0.0))
        c0, (d0, _), _ = oracle.cost(fixture8)
        assert d0 == 4.0
        assert c0 == pytest.approx(1.0)

    def test_mode_requirements(self):
        with pytest.raises(ValueError):
            CostOracle(CostConfig("ground-truth"))
        with pytest.raises(ValueError):
            CostOracle(CostConfig("ml"))
        with pytest.raises(ValueError):
            CostConfig("proxy", w_delay=0.0, w_area=0.0)
        with pytest.raises(ValueError):
            CostConfig("simulated")


class TestAccept:
    def test_always_accept_improvement(self):
        rng = random.Random(0)
        assert all(accept(-0.5, 1e-9, rng) for _ in range(100))
        assert accept(0.0, 1e-9, rng)

    def test_acceptance_probability_3_sigma(self):
        # delta == T so the theoretical rate is exactly 1/e
        rng = random.Random(123)
        trials = 10_000
        hits = sum(accept(1.0, 1.0, rng) for _ in range(trials))
        p = math.exp(-1.0)
        sigma = math.sqrt(trials * p * (1 - p))
        assert abs(hits - trials * p) <= 3 * sigma

    def test_greedy_limit_rejects_uphill(self):
        rng = random.Random(0)
        assert not any(accept(1e-6, 0.0, rng) for _ in range(100))


class TestAnneal:
    def test_greedy_accepted_costs_non_increasing(self, fixture8, library):
        oracle = CostOracle(CostConfig("proxy"), library=library)
        sa = SaConfig(initial_temp=1e-12, decay=0.5, iterations=60, seed=3)
        run = anneal(fixture8, default_catalog(), oracle, sa)
        accepted = [t.cost for t in run.trajectory if t.accepted]
        assert all(b <= a + 1e-12 for a, b in zip(accepted, accepted[1:]))

    def test_deterministic(self, fixture8, library):
        def go():
            oracle = CostOracle(CostConfig("proxy"), library=library)
            sa = SaConfig(initial_temp=0.05, decay=0.98, iterations=40,
                          seed=7)
            return anneal(fixture8, default_catalog(), oracle, sa)

        r1, r2 = go(), go()
        assert [(t.cost, t.accepted, t.move) for t in r1.trajectory] == \
            [(t.cost, t.accepted, t.move) for t in r2.trajectory]
        assert r1.best_aig == r2.best_aig
        assert r1.best_metrics == r2.best_metrics

    def test_best_preserves_function_and_is_rescored(self, fixture8,
                                                     library):
        oracle = CostOracle(CostConfig("proxy"), library=library)
        sa = SaConfig(initial_temp=0.1, decay=0.95, iterations=50, seed=11)
        run = anneal(fixture8, default_catalog(), oracle, sa)
        assert check_equivalence(fixture8, run.best_aig).status == "exact"
        from aigopt.techmap import ground_truth
        gt = ground_truth(run.best_aig, library)
        assert run.best_metrics[2] == gt.delay
        assert run.best_metrics[3] == gt.area

    def test_best_cost_bounds_later_accepted(self, fixture8, library):
        oracle = CostOracle(CostConfig("proxy"), library=library)
        sa = SaConfig(initial_temp=0.2, decay=0.9, iterations=80, seed=5)
        run = anneal(fixture8, default_catalog(), oracle, sa)
        assert all(run.best_cost <= t.cost + 1e-12
                   for t in run.trajectory if t.accepted
                   and t.cost < run.best_cost)


class TestCalibration:
    def test_probe_median_maps_to_target(self, fixture8, library):
        oracle = CostOracle(CostConfig("proxy"), library=library)
        t = calibrate_temperature(fixture8, default_catalog(), oracle,
                                  seed=0)
        assert t > 0


class TestSweep:
    def test_default_grid_shape(self):
        grid = default_grid()
        assert len(grid) == 5 * 3 * 3
        assert len(set(grid)) == len(grid)

    def test_single_point_grid(self, fixture8, library):
        runs = sweep(fixture8, "proxy", grid=[(1.0, 1.0, 0.95, 0)],
                     library=library, iterations=10)
        assert len(runs) == 1
        assert not math.isnan(runs[0].best_metrics[2])

    def test_empty_grid_rejected(self, fixture8):
        with pytest.raises(ValueError):
            sweep(fixture8, "proxy", grid=[])


class TestPareto:
    def test_worked_example(self):
        front = pareto([(1, 3), (2, 2), (3, 1), (2.5, 2.5)])
        assert [(p[0], p[1]) for p in front.points] == [(1, 3), (2, 2),
                                                        (3, 1)]

    def test_single_point(self):
        assert pareto([(5, 5)]).points == [(5, 5)]

    def test_exact_tie_keeps_first(self):
        front = pareto([(1.0, 1.0, "a"), (1.0, 1.0, "b")])
        assert front.points == [(1.0, 1.0, "a")]

    def test_matches_brute_force_on_1000_points(self):
        rng = random.Random(99)
        pts = [(rng.random(), rng.random()) for _ in range(1000)]
        expected = set()
        for p in pts:
            if not any(q != p and q[0] <= p[0] and q[1] <= p[1]
                       for q in pts):
                expected.add(p)
        got = {(p[0], p[1]) for p in pareto(pts).points}
        assert got == expected

    def test_sorted_delay_up_area_down(self):
        rng = random.Random(7)
        pts = [(rng.random(), rng.random()) for _ in range(200)]
        front = pareto(pts).points
        for a, b in zip(front, front[1:]):
            assert a[0] < b[0] and a[1] > b[1]


class TestHypervolume:
    def test_rectangle(self):
        front = pareto([(1.0, 1.0)])
        assert hypervolume(front, (3.0, 2.0)) == pytest.approx(2.0)

    def test_staircase(self):
        front = pareto([(1, 3), (2, 2), (3, 1)])
        # ref (4, 4): (4-1)(4-3) + (4-2)(3-2) + (4-3)(2-1) = 6
        assert hypervolume(front, (4.0, 4.0)) == pytest.approx(6.0)

    def test_dominating_front_has_larger_volume(self):
        f1 = pareto([(1, 1)])
        f2 = pareto([(2, 2)])
        ref = reference_point([f1, f2])
        assert hypervolume(f1, ref) > hypervolume(f2, ref)

    def test_point_outside_ref_ignored(self):
        front = pareto([(5.0, 5.0)])
        assert hypervolume(front, (4.0, 4.0)) == 0.0
