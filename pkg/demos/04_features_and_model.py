"""Generate a labelled corpus of circuit variants, train the boosted-tree
delay model on it, and check prediction error on held-out samples.

Uses a small corpus and tree count so it finishes in under a minute;
the pipeline CLI runs the full-size version of the same flow.
"""

import numpy as np

from aigopt import (Dataset, DatagenConfig, GbdtHyperparams, default_library,
                    evaluate, extract, fit, generate_corpus, ground_truth,
                    load_fixture)

lib = default_library()
src = load_fixture("prio16")
corpus = generate_corpus(src, DatagenConfig(source="prio16", count=300,
                                            seed=1))

rows = np.array([extract(a).to_row() for a, _ in corpus])
delays = np.array([ground_truth(a, lib).delay for a, _ in corpus])
print("corpus: %d variants, delay range %.1f .. %.1f"
      % (len(delays), delays.min(), delays.max()))

split = int(0.8 * len(delays))
train = Dataset(rows[:split], delays[:split], ["train"] * split)
test = Dataset(rows[split:], delays[split:], ["test"] * (len(delays) - split))

model = fit(train, GbdtHyperparams(n_estimators=150))
for name, part in (("train", train), ("test", test)):
    rep = evaluate(model, part)
    print("%s error: mean %.2f%%  max %.2f%%"
          % (name, rep.mean_abs_pct_error, rep.max_abs_pct_error))
