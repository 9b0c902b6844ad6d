"""Map a design onto the standard-cell library and read its timing.

The mapped delay is the ground truth the rest of the toolkit tries to
predict cheaply: graph depth alone orders these designs differently.
"""

from aigopt import compute_stats, default_library, ground_truth, load_fixture
from aigopt.fixtures import FIXTURE_NAMES

lib = default_library()
print("%-10s %6s %6s %10s %8s" % ("design", "nodes", "level", "delay",
                                  "area"))
for name in FIXTURE_NAMES:
    aig = load_fixture(name)
    st = compute_stats(aig)
    gt = ground_truth(aig, lib)
    print("%-10s %6d %6d %10.2f %8.1f"
          % (name, st.node_count, st.level, gt.delay, gt.area))
