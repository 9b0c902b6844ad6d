"""Apply the transformation catalog to a design and confirm every move
preserves the circuit's function."""

from aigopt import (apply, check_equivalence, compute_stats,
                    default_catalog, load_fixture)

aig = load_fixture("randcone")
st = compute_stats(aig)
print("source: %d nodes, level %d" % (st.node_count, st.level))

for t in default_catalog():
    out = apply(t, aig, seed=1)
    verdict = check_equivalence(aig, out)
    so = compute_stats(out)
    print("%-20s -> %4d nodes, level %2d  [%s]"
          % (t.name, so.node_count, so.level, verdict.status))
    assert verdict.status == "exact"
