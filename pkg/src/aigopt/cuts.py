"""k-feasible cut enumeration with per-cut truth tables.

A cut is (leaves, tt): a sorted tuple of leaf node ids and the function of
the cut root over those leaves.  Every node keeps its trivial cut and,
for AND nodes, the direct fanin-pair cut is always retained so that a
library with just INV+NAND2 can cover any graph.
"""

from __future__ import annotations

from .aig import fanout_counts
from .synth import tt_shrink

_EXPAND_CACHE: dict = {}


def _expand(tt: int, placement: tuple, ulen: int) -> int:
    """Re-express tt (over len(placement) vars) over ulen vars.

    placement[j] is the position of source variable j in the union.
    """
    key = (tt, placement, ulen)
    hit = _EXPAND_CACHE.get(key)
    if hit is not None:
        return hit
    out = 0
    for m in range(1 << ulen):
        idx = 0
        for j, p in enumerate(placement):
            if (m >> p) & 1:
                idx |= 1 << j
        if (tt >> idx) & 1:
            out |= 1 << m
    _EXPAND_CACHE[key] = out
    return out


def _merge_leaves(a: tuple, b: tuple):
    if a == b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            out.append(x)
            i += 1
            j += 1
        elif x < y:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def merge_cuts(c0, c1, compl0, compl1, k):
    """Conjunction of two cuts; None if the union exceeds k leaves."""
    leaves0, tt0 = c0
    leaves1, tt1 = c1
    leaves = _merge_leaves(leaves0, leaves1)
    n = len(leaves)
    if n > k:
        return None
    mask = (1 << (1 << n)) - 1
    if leaves0 == leaves:
        t0 = tt0
    else:
        t0 = _expand(tt0, tuple(leaves.index(x) for x in leaves0), n)
    if compl0:
        t0 ^= mask
    if leaves1 == leaves:
        t1 = tt1
    else:
        t1 = _expand(tt1, tuple(leaves.index(x) for x in leaves1), n)
    if compl1:
        t1 ^= mask
    tt = t0 & t1
    # drop leaves outside the support
    tt2, kept = tt_shrink(tt, leaves, n)
    if len(kept) != n:
        leaves = tuple(leaves[i] for i in kept)
        tt = tt2
    return (leaves, tt)


TRIVIAL_TT = 0b10  # the identity function of one variable


def enumerate_cuts(aig, k: int = 4, limit: int = 8):
    """Per-node cut sets, pruned to `limit` by (leaf count, area flow).

    Returns (cuts, area_flow) where cuts[node] is a list of (leaves, tt)
    with the trivial cut first, and area_flow[node] is the flow estimate
    of the node's best cut.
    """
    if k not in (2, 3, 4):
        raise ValueError("cut size k must be 2, 3 or 4")
    fo = fanout_counts(aig)
    nn = aig.num_nodes
    cuts = [None] * nn
    flow = [0.0] * nn
    cuts[0] = [((), 0)]
    for p in range(1, aig.num_pis + 1):
        cuts[p] = [((p,), TRIVIAL_TT)]
    base = aig.num_pis + 1
    for i in range(aig.num_ands):
        node = base + i
        l0, l1 = aig.fanin0[i], aig.fanin1[i]
        n0, n1 = l0 >> 1, l1 >> 1
        c0s = cuts[n0]
        c1s = cuts[n1]
        cand = {}
        for c0 in c0s:
            for c1 in c1s:
                mc = merge_cuts(c0, c1, l0 & 1, l1 & 1, k)
                if mc is not None and mc[0] not in cand:
                    cand[mc[0]] = mc
        pair_key = tuple(sorted({n0, n1} - {0}))

        def af(cut):
            total = 1.0
            for leaf in cut[0]:
                total += flow[leaf] / max(fo[leaf], 1)
            return total

        ranked = sorted(cand.values(), key=lambda c: (len(c[0]), af(c)))
        kept = ranked[:limit]
        if pair_key in cand and cand[pair_key] not in kept:
            kept.append(cand[pair_key])
        flow[node] = min((af(c) for c in kept), default=1.0)
        cuts[node] = [((node,), TRIVIAL_TT)] + kept
    return cuts, flow


def expand_cuts_of_node(aig, node: int, k: int = 4, max_cuts: int = 32):
    """All k-feasible cuts of a single node by leaf expansion (local)."""
    seen = {(node,)}
    work = [(node,)]
    out = []
    while work and len(out) < max_cuts:
        cut = work.pop(0)
        out.append(cut)
        for leaf in cut:
            if not aig.is_and(leaf):
                continue
            f0, f1 = aig.fanins(leaf)
            repl = {f0 >> 1, f1 >> 1} - {0}
            new = tuple(sorted((set(cut) - {leaf}) | repl))
            if len(new) <= k and new not in seen:
                seen.add(new)
                work.append(new)
    return out
