"""Run the simulated-annealing optimizer under its three cost oracles and
compare the delay/area trade-off fronts they reach.

A reduced sweep grid keeps the timed (ground-truth) flow quick; the
model here is trained on the fly from a small corpus of the same design.
"""

import numpy as np

from aigopt import (Dataset, DatagenConfig, GbdtHyperparams, compare_flows,
                    default_library, extract, fit, generate_corpus,
                    ground_truth, load_fixture)

lib = default_library()
src = load_fixture("adder3x6")

corpus = generate_corpus(src, DatagenConfig(source="adder3x6", count=250,
                                            seed=3))
rows = np.array([extract(a).to_row() for a, _ in corpus])
delays = np.array([ground_truth(a, lib).delay for a, _ in corpus])
model = fit(Dataset(rows, delays, ["adder3x6"] * len(delays)),
            GbdtHyperparams(n_estimators=150))

grid = [(wd, wa, 0.95, s) for wd, wa in ((0.8, 0.2), (0.5, 0.5), (0.2, 0.8))
        for s in range(2)]
report = compare_flows(src, lib, model, grid=grid, iterations=25)

for mode in report.fronts:
    front = report.fronts[mode]
    pts = ", ".join("(%.1f, %.0f)" % (p[0], p[1]) for p in front.points)
    print("%-12s hypervolume %10.1f  front: %s"
          % (mode, report.hypervolumes[mode], pts))
    g, m, i = report.stage_times[mode]
    print("             per-move time: graph %.4fs, mapping+sta %.4fs, "
          "inference %.4fs" % (g, m, i))
