import pytest

from aigopt.aig import Aig, parse_aiger


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

# 8-gate hand-written fixture; levels: n5,n6,n10 = 1, n7,n8,n11 = 2,
# n9 = 3, n12 = 4.  POs: n12, !n9, n7.
FIXTURE8_TEXT = """aag 12 4 0 3 8
2
4
6
8
24
19
14
10 2 4
12 6 8
14 10 13
16 11 12
18 15 17
20 2 7
22 20 9
24 18 22
"""


@pytest.fixture
def fixture8() -> Aig:
    return parse_aiger(FIXTURE8_TEXT, name="fixture8")


def naive_eval(aig: Aig, assignment):
    """Independent recursive evaluator (oracle for bit-parallel simulation)."""

    def value(node):
        if node == 0:
            return 0
        if aig.is_pi(node):
            return assignment[node - 1]
        f0, f1 = aig.fanins(node)
        a = value(f0 >> 1) ^ (f0 & 1)
        b = value(f1 >> 1) ^ (f1 & 1)
        return a & b

    return [value(po >> 1) ^ (po & 1) for po in aig.pos]


def po_truth_tables(aig: Aig):
    """Exhaustive per-PO truth tables via the naive evaluator."""
    n = aig.num_pis
    tts = [0] * aig.num_pos
    for m in range(1 << n):
        assignment = [(m >> i) & 1 for i in range(n)]
        for j, v in enumerate(naive_eval(aig, assignment)):
            if v:
                tts[j] |= 1 << m
    return tts


def enumerate_po_paths(aig: Aig, po: int):
    """All PI-to-PO-driver paths as node-id lists (brute-force oracle)."""
    paths = []

    def walk(node, suffix):
        if node == 0:
            return
        if aig.is_pi(node):
            paths.append([node] + suffix)
            return
        f0, f1 = aig.fanins(node)
        walk(f0 >> 1, [node] + suffix)
        walk(f1 >> 1, [node] + suffix)

    walk(po >> 1, [])
    return paths
