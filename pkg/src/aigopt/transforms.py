"""Function-preserving AIG transformations and equivalence checking.

The catalog holds five primitives plus fixed compositions; every entry is
a pure function of (aig, seed).  Primitives:

  strash    rebuild through the hashing builder (redundancy removal)
  balance   collapse single-fanout AND chains and rebuild them as
            level-balanced trees
  demorgan  collapse single-fanout OR chains (complemented-edge AND
            patterns) and rebuild them balanced, normalizing inverters
  rewrite   replace one node's 4-input cut cone with a table-synthesized
            structure when that does not increase the node count
  refactor  collapse one fanout-free cone (<= 8 leaves) to a truth table
            and rebuild it by Shannon decomposition
  reshape   resynthesize one random cone under a random leaf order;
            accepts non-improving results, providing structural diversity
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from random import Random

from .aig import (Aig, AigBuilder, exhaustive_patterns, fanout_counts, lit,
                  lit_not, rebuild, simulate)
from .cuts import expand_cuts_of_node
from .synth import instantiate, synthesize, tt_eval_cone

MAX_EXHAUSTIVE_PIS = 20
RANDOM_PATTERNS = 10000


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str                 # "exact" | "probabilistic" | "fail"
    counterexample: tuple | None = None

    def __bool__(self):
        return self.status != "fail"


def _find_diff(outs_a, outs_b, num_pis, offset, nbits):
    for x, y in zip(outs_a, outs_b):
        d = x ^ y
        if d:
            bit = (d & -d).bit_length() - 1
            m = offset + bit
            return tuple((m >> i) & 1 for i in range(num_pis))
    return None


def check_equivalence(a: Aig, b: Aig, seed: int = 0) -> EquivalenceVerdict:
    """Exhaustive for <= 20 PIs, else 10,000 seeded random patterns."""
    if a.num_pis != b.num_pis or a.num_pos != b.num_pos:
        raise ValueError("PI/PO arity mismatch")
    n = a.num_pis
    if n <= MAX_EXHAUSTIVE_PIS:
        total = 1 << n
        chunk = min(total, 1 << 16)
        for off in range(0, total, chunk):
            pv = exhaustive_patterns(n, off, chunk)
            cex = _find_diff(simulate(a, pv, chunk), simulate(b, pv, chunk),
                             n, off, chunk)
            if cex is not None:
                return EquivalenceVerdict("fail", cex)
        return EquivalenceVerdict("exact")
    rng = Random(seed)
    nbits = RANDOM_PATTERNS
    pv = [rng.getrandbits(nbits) for _ in range(n)]
    oa = simulate(a, pv, nbits)
    ob = simulate(b, pv, nbits)
    for x, y in zip(oa, ob):
        d = x ^ y
        if d:
            bit = (d & -d).bit_length() - 1
            cex = tuple((pv[i] >> bit) & 1 for i in range(n))
            return EquivalenceVerdict("fail", cex)
    return EquivalenceVerdict("probabilistic")


# ---------------------------------------------------------------- primitives

def strash(aig: Aig, seed: int = 0) -> Aig:
    return rebuild(aig)


def _balanced_reduce(builder, lits, levels, combine):
    """Combine mapped literals pairwise, lowest level first."""
    heap = [(levels.get(l >> 1, 0), l) for l in lits]
    heapq.heapify(heap)
    while len(heap) > 1:
        la, a = heapq.heappop(heap)
        lb, b = heapq.heappop(heap)
        r = combine(a, b)
        if r >> 1 not in levels:
            levels[r >> 1] = max(la, lb) + 1
        heapq.heappush(heap, (levels[r >> 1], r))
    return heap[0][1]


def _rebuild_collapsed(aig: Aig, mode: str) -> Aig:
    """Shared engine for balance (AND chains) and demorgan (OR chains)."""
    fo = fanout_counts(aig)
    b = AigBuilder(aig.num_pis)
    mapping = [lit(i) for i in range(aig.num_pis + 1)]
    levels = {i: 0 for i in range(aig.num_pis + 1)}

    def new_level(l):
        return levels.get(l >> 1, 0)

    for n in aig.and_nodes():
        f0, f1 = aig.fanins(n)
        conj = True
        if mode == "and":
            # gather conjuncts through uncomplemented single-fanout edges
            leaves = []
            stack = [f1, f0]
            while stack:
                e = stack.pop()
                m = e >> 1
                if (e & 1) == 0 and aig.is_and(m) and fo[m] == 1:
                    g0, g1 = aig.fanins(m)
                    stack.append(g1)
                    stack.append(g0)
                else:
                    leaves.append(e)
        else:
            # view !n as a disjunction: !n = !f0 | !f1; a disjunct !m can be
            # expanded the same way when m is a single-fanout AND that holds
            # at least one inverted fanin (an OR-shaped node)
            def expandable(e):
                m = e >> 1
                if not ((e & 1) and aig.is_and(m) and fo[m] == 1):
                    return False
                g0, g1 = aig.fanins(m)
                return bool((g0 & 1) or (g1 & 1))

            leaves = []
            stack = [lit_not(f1), lit_not(f0)]
            while stack:
                e = stack.pop()
                if expandable(e):
                    g0, g1 = aig.fanins(e >> 1)
                    stack.append(lit_not(g1))
                    stack.append(lit_not(g0))
                else:
                    leaves.append(e)
            if len(leaves) > 2:
                conj = False
            else:
                leaves = [f0, f1]
        mapped = [mapping[e >> 1] ^ (e & 1) for e in leaves]
        combine = b.and_ if conj else b.or_
        seen = set()
        uniq = []
        for l in mapped:
            if l in seen:
                continue
            seen.add(l)
            uniq.append(l)
        if any(lit_not(l) in seen for l in uniq):
            # x & !x inside a conjunction is constant false; x | !x true
            result = 0 if conj else 1
        else:
            result = _balanced_reduce(b, uniq, levels, combine)
        if not conj:
            # the gathered disjunction realizes !n
            result = lit_not(result)
        mapping.append(result)
    for po in aig.pos:
        b.add_po(mapping[po >> 1] ^ (po & 1))
    return b.build(name=aig.name)


def balance(aig: Aig, seed: int = 0) -> Aig:
    return _rebuild_collapsed(aig, "and")


def demorgan(aig: Aig, seed: int = 0) -> Aig:
    return _rebuild_collapsed(aig, "or")


def _rebuild_replace(aig: Aig, target: int, leaves, plan) -> Aig:
    b = AigBuilder(aig.num_pis)
    mapping = [lit(i) for i in range(aig.num_pis + 1)]
    for n in aig.and_nodes():
        if n == target:
            leaf_lits = [mapping[x] for x in leaves]
            ml = instantiate(b, plan, leaf_lits)
        else:
            f0, f1 = aig.fanins(n)
            ml = b.and_(mapping[f0 >> 1] ^ (f0 & 1),
                        mapping[f1 >> 1] ^ (f1 & 1))
        mapping.append(ml)
    for po in aig.pos:
        b.add_po(mapping[po >> 1] ^ (po & 1))
    return b.build(name=aig.name)


def _mffc_size(aig: Aig, root: int, leaf_set, fo) -> int:
    refs = {}
    count = 0
    stack = [root]
    first = True
    while stack:
        node = stack.pop()
        count += 1
        for e in aig.fanins(node):
            m = e >> 1
            if m in leaf_set or not aig.is_and(m):
                continue
            r = refs.get(m, fo[m]) - 1
            refs[m] = r
            if r == 0:
                stack.append(m)
        first = False
    return count


def rewrite(aig: Aig, seed: int = 0, tries: int = 5) -> Aig:
    """Cut rewriting at one randomly chosen node; never increases size."""
    if aig.num_ands == 0:
        return aig
    rng = Random(seed)
    fo = fanout_counts(aig)
    nodes = list(aig.and_nodes())
    for _ in range(tries):
        n = nodes[rng.randrange(len(nodes))]
        best = None
        for cut in expand_cuts_of_node(aig, n, k=4, max_cuts=16):
            if len(cut) < 2 or cut == (n,):
                continue
            tt = tt_eval_cone(aig, n, cut)
            cost, plan = synthesize(tt, len(cut))
            gain = _mffc_size(aig, n, set(cut), fo) - cost
            if gain >= 0 and (best is None or gain > best[0]):
                best = (gain, cut, plan)
        if best is None:
            continue
        _, cut, plan = best
        new = _rebuild_replace(aig, n, cut, plan)
        if new.num_ands <= aig.num_ands:
            return new
    return aig


def refactor(aig: Aig, seed: int = 0, max_support: int = 8,
             tries: int = 5) -> Aig:
    """Collapse one fanout-free cone to a truth table and resynthesize."""
    if aig.num_ands == 0:
        return aig
    rng = Random(seed)
    fo = fanout_counts(aig)
    nodes = list(aig.and_nodes())
    for _ in range(tries):
        root = nodes[rng.randrange(len(nodes))]
        cone = {root}
        cone_refs = {}
        leaves = set()
        for e in aig.fanins(root):
            m = e >> 1
            if m:
                leaves.add(m)
                cone_refs[m] = cone_refs.get(m, 0) + 1
        while True:
            cands = [m for m in leaves
                     if aig.is_and(m) and cone_refs.get(m) == fo[m]]
            grown = False
            for m in sorted(cands, reverse=True):
                new_kids = {e >> 1 for e in aig.fanins(m)} - {0}
                if len((leaves - {m}) | (new_kids - cone)) > max_support:
                    continue
                leaves.discard(m)
                cone.add(m)
                for x in new_kids:
                    cone_refs[x] = cone_refs.get(x, 0) + 1
                    if x not in cone:
                        leaves.add(x)
                grown = True
                break
            if not grown:
                break
        if len(cone) < 2 or not leaves:
            continue
        cut = tuple(sorted(leaves))
        tt = tt_eval_cone(aig, root, cut)
        cost, plan = synthesize(tt, len(cut))
        if cost > len(cone):
            continue
        new = _rebuild_replace(aig, root, cut, plan)
        if new.num_ands <= aig.num_ands:
            return new
    return aig


def reshape(aig: Aig, seed: int = 0, max_support: int = 6,
            tries: int = 5) -> Aig:
    """Resynthesize one random cut cone under a random leaf order.

    Unlike rewrite, the replacement is accepted even when it does not
    shrink the graph (growth is capped), so repeated applications walk
    through distinct equivalent structures instead of converging.
    """
    if aig.num_ands == 0:
        return aig
    rng = Random(seed)
    fo = fanout_counts(aig)
    nodes = list(aig.and_nodes())
    for _ in range(tries):
        n = nodes[rng.randrange(len(nodes))]
        cuts = [c for c in expand_cuts_of_node(aig, n, k=max_support,
                                               max_cuts=16)
                if 2 <= len(c) and c != (n,)]
        if not cuts:
            continue
        cut = list(cuts[rng.randrange(len(cuts))])
        rng.shuffle(cut)
        tt = tt_eval_cone(aig, n, tuple(cut))
        cost, plan = synthesize(tt, len(cut))
        budget = _mffc_size(aig, n, set(cut), fo) + 3
        if cost > budget:
            continue
        new = _rebuild_replace(aig, n, tuple(cut), plan)
        if new.num_ands <= aig.num_ands + 3:
            return new
    return aig


PRIMITIVES = {
    "strash": strash,
    "balance": balance,
    "demorgan": demorgan,
    "rewrite": rewrite,
    "refactor": refactor,
    "reshape": reshape,
}


@dataclass(frozen=True)
class Transform:
    name: str
    steps: tuple

    def __post_init__(self):
        for s in self.steps:
            if s not in PRIMITIVES:
                raise ValueError("unknown primitive %r" % s)


def _t(*steps):
    return Transform(";".join(steps), tuple(steps))


def default_catalog():
    """Primitives plus fixed 2-4 step compositions (ABC-script style)."""
    return [
        _t("strash"),
        _t("balance"),
        _t("demorgan"),
        _t("rewrite"),
        _t("refactor"),
        _t("reshape"),
        _t("reshape", "reshape"),
        _t("reshape", "balance"),
        _t("rewrite", "reshape"),
        _t("balance", "rewrite"),
        _t("rewrite", "balance"),
        _t("rewrite", "rewrite"),
        _t("refactor", "balance"),
        _t("balance", "refactor"),
        _t("refactor", "rewrite"),
        _t("demorgan", "balance"),
        _t("rewrite", "demorgan", "balance"),
        _t("balance", "rewrite", "refactor"),
        _t("rewrite", "refactor", "balance"),
        _t("balance", "rewrite", "rewrite", "balance"),
        _t("refactor", "rewrite", "demorgan", "balance"),
        _t("balance", "demorgan", "rewrite", "refactor"),
    ]


def catalog_by_name(catalog=None):
    catalog = default_catalog() if catalog is None else catalog
    return {t.name: t for t in catalog}


def apply(transform: Transform, aig: Aig, seed: int = 0) -> Aig:
    """Apply a catalog entry; pure in (transform, aig, seed)."""
    rng = Random(seed)
    for step in transform.steps:
        aig = PRIMITIVES[step](aig, rng.getrandbits(32))
    return aig


def random_move(catalog, aig: Aig, seed: int = 0):
    """Uniformly pick a catalog entry and apply it."""
    if not catalog:
        raise ValueError("empty catalog")
    rng = Random(seed)
    t = catalog[rng.randrange(len(catalog))]
    return t, apply(t, aig, rng.getrandbits(32))
