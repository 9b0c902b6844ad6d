"""Truth-table manipulation and AND/INV structure synthesis.

Truth tables are plain ints: bit i holds f(x) for the input minterm whose
j-th bit assigns variable j.  Functions of up to 8 variables are supported
(the refactoring cone bound); the rewriting path uses 4-variable tables.

synthesize() returns a memoized plan (nested tuples) built by recursive
Shannon decomposition, trying every support variable at each level and
keeping the cheapest expansion, with special cases for constant cofactors
and XOR-shaped pairs.  Plans are instantiated into a strashing builder.
"""

from __future__ import annotations

from functools import lru_cache


def tt_mask(nvars: int) -> int:
    return (1 << (1 << nvars)) - 1


@lru_cache(maxsize=None)
def tt_var(var: int, nvars: int) -> int:
    v = 0
    for m in range(1 << nvars):
        if (m >> var) & 1:
            v |= 1 << m
    return v


@lru_cache(maxsize=None)
def _mask_var0(var: int, nvars: int) -> int:
    # bits of the table where variable `var` is 0
    v = 0
    for m in range(1 << nvars):
        if not (m >> var) & 1:
            v |= 1 << m
    return v


def tt_cofactors(tt: int, var: int, nvars: int):
    """Negative and positive cofactors, expressed over the same nvars."""
    m0 = _mask_var0(var, nvars)
    half = 1 << var
    f0 = tt & m0
    f0 |= f0 << half
    f1 = (tt >> half) & m0
    f1 |= f1 << half
    return f0, f1


def tt_support(tt: int, nvars: int):
    sup = []
    for v in range(nvars):
        f0, f1 = tt_cofactors(tt, v, nvars)
        if f0 != f1:
            sup.append(v)
    return sup


def tt_shrink(tt: int, leaves, nvars: int):
    """Drop non-support variables; returns (tt', kept_leaf_indices)."""
    sup = tt_support(tt, nvars)
    if len(sup) == nvars:
        return tt, list(range(nvars))
    out = 0
    for m in range(1 << len(sup)):
        full = 0
        for j, v in enumerate(sup):
            if (m >> j) & 1:
                full |= 1 << v
        if (tt >> full) & 1:
            out |= 1 << m
    return out, sup


def tt_eval_cone(aig, root: int, leaves) -> int:
    """Truth table of node `root` over the given leaf nodes (<= 8)."""
    nvars = len(leaves)
    vals = {leaf: tt_var(j, nvars) for j, leaf in enumerate(leaves)}
    vals[0] = 0
    mask = tt_mask(nvars)

    def go(node):
        v = vals.get(node)
        if v is not None:
            return v
        f0, f1 = aig.fanins(node)
        a = go(f0 >> 1)
        if f0 & 1:
            a ^= mask
        b = go(f1 >> 1)
        if f1 & 1:
            b ^= mask
        v = a & b
        vals[node] = v
        return v

    return go(root)


# plans: ("c", bit) | ("v", var, compl) | ("a", plan, plan, out_compl)

def _neg(plan):
    op = plan[0]
    if op == "c":
        return ("c", plan[1] ^ 1)
    if op == "v":
        return ("v", plan[1], plan[2] ^ 1)
    return ("a", plan[1], plan[2], plan[3] ^ 1)


_SYN_CACHE: dict = {}


def synthesize(tt: int, nvars: int):
    """Best-found AND/INV plan for tt; returns (cost_in_ands, plan)."""
    mask = tt_mask(nvars)
    tt &= mask
    key = (nvars, tt)
    hit = _SYN_CACHE.get(key)
    if hit is not None:
        return hit
    if tt == 0:
        res = (0, ("c", 0))
    elif tt == mask:
        res = (0, ("c", 1))
    else:
        res = None
        for v in range(nvars):
            tv = tt_var(v, nvars)
            if tt == tv:
                res = (0, ("v", v, 0))
                break
            if tt == tv ^ mask:
                res = (0, ("v", v, 1))
                break
        if res is None:
            best = None
            for v in tt_support(tt, nvars):
                f0, f1 = tt_cofactors(tt, v, nvars)
                pv = ("v", v, 0)
                nv = ("v", v, 1)
                if f0 == 0:
                    c1, p1 = synthesize(f1, nvars)
                    cand = (c1 + 1, ("a", pv, p1, 0))
                elif f0 == mask:
                    c1, p1 = synthesize(f1, nvars)
                    cand = (c1 + 1, ("a", pv, _neg(p1), 1))
                elif f1 == 0:
                    c0, p0 = synthesize(f0, nvars)
                    cand = (c0 + 1, ("a", nv, p0, 0))
                elif f1 == mask:
                    c0, p0 = synthesize(f0, nvars)
                    cand = (c0 + 1, ("a", nv, _neg(p0), 1))
                elif f1 == f0 ^ mask:
                    c0, p0 = synthesize(f0, nvars)
                    # v xor f0
                    left = ("a", pv, _neg(p0), 1)
                    right = ("a", nv, p0, 1)
                    cand = (c0 + 3, ("a", left, right, 1))
                else:
                    c0, p0 = synthesize(f0, nvars)
                    c1, p1 = synthesize(f1, nvars)
                    left = ("a", pv, p1, 1)
                    right = ("a", nv, p0, 1)
                    cand = (c0 + c1 + 3, ("a", left, right, 1))
                if best is None or cand[0] < best[0]:
                    best = cand
            res = best
    _SYN_CACHE[key] = res
    return res


def instantiate(builder, plan, leaf_lits):
    """Materialize a plan in a builder; leaf_lits[i] realizes variable i."""
    op = plan[0]
    if op == "c":
        return plan[1]
    if op == "v":
        return leaf_lits[plan[1]] ^ plan[2]
    a = instantiate(builder, plan[1], leaf_lits)
    b = instantiate(builder, plan[2], leaf_lits)
    return builder.and_(a, b) ^ plan[3]
