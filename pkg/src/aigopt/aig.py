"""And-inverter graph core: representation, construction, AIGER I/O, simulation.

Nodes are identified by dense integer ids: id 0 is the constant-false node,
ids 1..num_pis are the primary inputs, and the AND nodes follow in
topological order.  Signals are encoded as literals `2*node + complement`,
exactly as in the AIGER format.
"""

from __future__ import annotations

import hashlib


def lit(node: int, compl: int = 0) -> int:
    return 2 * node + compl


def lit_node(l: int) -> int:
    return l >> 1


def lit_compl(l: int) -> int:
    return l & 1


def lit_not(l: int) -> int:
    return l ^ 1


CONST0 = 0  # literal for constant false
CONST1 = 1


class Aig:
    """Immutable-after-build AIG.

    fanin0/fanin1 hold the fanin literals of AND node `num_pis + 1 + i`
    at index i.  pos is the list of output literals.
    """

    __slots__ = ("name", "num_pis", "fanin0", "fanin1", "pos")

    def __init__(self, num_pis, fanin0, fanin1, pos, name=""):
        self.num_pis = num_pis
        self.fanin0 = list(fanin0)
        self.fanin1 = list(fanin1)
        self.pos = list(pos)
        self.name = name

    @property
    def num_ands(self) -> int:
        return len(self.fanin0)

    @property
    def num_pos(self) -> int:
        return len(self.pos)

    @property
    def num_nodes(self) -> int:
        """Total node count including constant and PIs."""
        return 1 + self.num_pis + self.num_ands

    def is_pi(self, node: int) -> bool:
        return 1 <= node <= self.num_pis

    def is_and(self, node: int) -> bool:
        return node > self.num_pis

    def and_index(self, node: int) -> int:
        return node - self.num_pis - 1

    def fanins(self, node: int):
        i = node - self.num_pis - 1
        return self.fanin0[i], self.fanin1[i]

    def and_nodes(self):
        return range(self.num_pis + 1, self.num_pis + 1 + self.num_ands)

    def validate(self):
        """Check the structural invariants; raises AssertionError on breakage."""
        n0 = self.num_pis + 1
        seen = {}
        for i, (f0, f1) in enumerate(zip(self.fanin0, self.fanin1)):
            node = n0 + i
            assert lit_node(f0) < node and lit_node(f1) < node, (
                "fanin of node %d not topologically earlier" % node)
            key = (f0, f1) if f0 <= f1 else (f1, f0)
            assert key not in seen, "structural hash violation at node %d" % node
            seen[key] = node
        for po in self.pos:
            assert lit_node(po) < self.num_nodes, "dangling PO literal"

    def structural_key(self):
        return (self.num_pis, tuple(self.fanin0), tuple(self.fanin1),
                tuple(self.pos))

    def __eq__(self, other):
        if not isinstance(other, Aig):
            return NotImplemented
        return self.structural_key() == other.structural_key()

    def __hash__(self):
        return hash(self.structural_key())

    def canonical_hash(self) -> str:
        """SHA-256 of the emitted AIGER body; used for corpus dedup."""
        return hashlib.sha256(emit_aiger(self).encode()).hexdigest()


class AigStats:
    __slots__ = ("node_count", "level")

    def __init__(self, node_count, level):
        self.node_count = node_count
        self.level = level

    def __repr__(self):
        return "AigStats(node_count=%d, level=%d)" % (self.node_count, self.level)

    def __eq__(self, other):
        return (self.node_count, self.level) == (other.node_count, other.level)


class AigBuilder:
    """Mutable construction buffer with structural hashing.

    and_() applies the constant/identity simplifications and returns an
    existing literal when the normalized fanin pair is already present.
    Builders are single-owner; build() garbage-collects dead nodes and
    returns a compacted Aig.
    """

    def __init__(self, num_pis: int):
        self.num_pis = num_pis
        self.fanin0 = []
        self.fanin1 = []
        self.pos = []
        self._strash = {}

    def pi_lit(self, i: int) -> int:
        if not 0 <= i < self.num_pis:
            raise IndexError("PI index out of range")
        return lit(1 + i)

    def and_(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        # constant and identity simplifications
        if a == CONST0 or a == lit_not(b):
            return CONST0
        if a == CONST1:
            return b
        if a == b:
            return a
        key = (a, b)
        node = self._strash.get(key)
        if node is None:
            node = self.num_pis + 1 + len(self.fanin0)
            self.fanin0.append(a)
            self.fanin1.append(b)
            self._strash[key] = node
        return lit(node)

    def or_(self, a: int, b: int) -> int:
        return lit_not(self.and_(lit_not(a), lit_not(b)))

    def xor_(self, a: int, b: int) -> int:
        return self.or_(self.and_(a, lit_not(b)), self.and_(lit_not(a), b))

    def mux_(self, sel: int, t: int, e: int) -> int:
        return self.or_(self.and_(sel, t), self.and_(lit_not(sel), e))

    def add_po(self, l: int):
        self.pos.append(l)

    def build(self, name: str = "") -> Aig:
        # mark live nodes from the POs
        live = bytearray(self.num_pis + 1 + len(self.fanin0))
        stack = [lit_node(po) for po in self.pos]
        while stack:
            n = stack.pop()
            if n <= self.num_pis or live[n]:
                continue
            live[n] = 1
            i = n - self.num_pis - 1
            stack.append(lit_node(self.fanin0[i]))
            stack.append(lit_node(self.fanin1[i]))
        # compact, preserving topological order
        remap = list(range(self.num_pis + 1))
        f0, f1 = [], []
        nxt = self.num_pis + 1
        remap_full = {}
        for i in range(len(self.fanin0)):
            node = self.num_pis + 1 + i
            if not live[node]:
                continue
            a, b = self.fanin0[i], self.fanin1[i]

            def m(l):
                n = lit_node(l)
                nn = n if n <= self.num_pis else remap_full[n]
                return lit(nn, lit_compl(l))

            f0.append(m(a))
            f1.append(m(b))
            remap_full[node] = nxt
            nxt += 1
        pos = []
        for po in self.pos:
            n = lit_node(po)
            nn = n if n <= self.num_pis else remap_full[n]
            pos.append(lit(nn, lit_compl(po)))
        return Aig(self.num_pis, f0, f1, pos, name=name)


def rebuild(aig: Aig, name: str | None = None) -> Aig:
    """Push an Aig back through a strashing builder (redundancy removal)."""
    b = AigBuilder(aig.num_pis)
    mapping = [lit(n) for n in range(aig.num_pis + 1)]
    for n in aig.and_nodes():
        f0, f1 = aig.fanins(n)
        a = mapping[lit_node(f0)] ^ lit_compl(f0)
        c = mapping[lit_node(f1)] ^ lit_compl(f1)
        mapping.append(b.and_(a, c))
    for po in aig.pos:
        b.add_po(mapping[lit_node(po)] ^ lit_compl(po))
    return b.build(name=aig.name if name is None else name)


def node_levels(aig: Aig):
    """Per-node level in AND nodes (constant and PIs are level 0)."""
    lv = [0] * aig.num_nodes
    base = aig.num_pis + 1
    for i in range(aig.num_ands):
        a = lv[aig.fanin0[i] >> 1]
        b = lv[aig.fanin1[i] >> 1]
        lv[base + i] = (a if a >= b else b) + 1
    return lv


def compute_stats(aig: Aig) -> AigStats:
    lv = node_levels(aig)
    level = max((lv[po >> 1] for po in aig.pos), default=0)
    return AigStats(aig.num_ands, level)


def fanout_counts(aig: Aig):
    """Edge references per node, POs included."""
    fo = [0] * aig.num_nodes
    for f0, f1 in zip(aig.fanin0, aig.fanin1):
        fo[f0 >> 1] += 1
        fo[f1 >> 1] += 1
    for po in aig.pos:
        fo[po >> 1] += 1
    return fo


def simulate_nodes(aig: Aig, pi_values, nbits: int):
    """Bit-parallel simulation; returns per-node packed values.

    pi_values is a list of num_pis ints packing nbits patterns each.
    """
    if len(pi_values) != aig.num_pis:
        raise ValueError("pattern width %d != PI count %d"
                         % (len(pi_values), aig.num_pis))
    mask = (1 << nbits) - 1
    vals = [0] + [v & mask for v in pi_values]
    f0s, f1s = aig.fanin0, aig.fanin1
    for i in range(aig.num_ands):
        l0, l1 = f0s[i], f1s[i]
        a = vals[l0 >> 1]
        if l0 & 1:
            a ^= mask
        c = vals[l1 >> 1]
        if l1 & 1:
            c ^= mask
        vals.append(a & c)
    return vals


def simulate(aig: Aig, pi_values, nbits: int):
    """Bit-parallel simulation returning per-PO packed values."""
    mask = (1 << nbits) - 1
    vals = simulate_nodes(aig, pi_values, nbits)
    out = []
    for po in aig.pos:
        v = vals[po >> 1]
        if po & 1:
            v ^= mask
        out.append(v)
    return out


_PERIODIC_CACHE: dict = {}


def _periodic_pattern(i: int, nbits: int) -> int:
    key = (i, nbits)
    v = _PERIODIC_CACHE.get(key)
    if v is None:
        period = 1 << (i + 1)
        half = 1 << i
        unit = ((1 << half) - 1) << half
        reps = nbits // period
        v = unit * (((1 << (reps * period)) - 1) // ((1 << period) - 1))
        _PERIODIC_CACHE[key] = v
    return v


def exhaustive_patterns(num_pis: int, offset: int = 0, nbits: int | None = None):
    """Counting patterns for PIs: PI i toggles with period 2^(i+1).

    offset/nbits select a chunk out of the full 2^num_pis pattern space;
    nbits must be a power of two and offset a multiple of nbits.
    """
    if nbits is None:
        nbits = 1 << num_pis
    if nbits & (nbits - 1) or offset % nbits:
        raise ValueError("chunk must be power-of-two sized and aligned")
    vals = []
    for i in range(num_pis):
        if (1 << (i + 1)) <= nbits:
            vals.append(_periodic_pattern(i, nbits))
        else:
            vals.append(((1 << nbits) - 1) if (offset >> i) & 1 else 0)
    return vals


class AigerError(ValueError):
    """Malformed AIGER input; carries the 1-based offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


def parse_aiger(text: str, name: str = "") -> Aig:
    """Parse a combinational AIGER ASCII ("aag") document."""
    lines = text.splitlines()
    if not lines:
        raise AigerError("empty document", 1)
    head = lines[0].split()
    if len(head) != 6 or head[0] != "aag":
        raise AigerError("malformed header, expected 'aag M I L O A'", 1)
    try:
        m, i_cnt, l_cnt, o_cnt, a_cnt = (int(x) for x in head[1:])
    except ValueError:
        raise AigerError("non-integer header field", 1) from None
    if l_cnt != 0:
        raise AigerError("latches are not supported (combinational only)", 1)

    def body_line(idx):
        if idx >= len(lines):
            raise AigerError("unexpected end of document", len(lines))
        return lines[idx], idx + 1

    ln = 1
    in_lits = []
    for _ in range(i_cnt):
        raw, nxt = body_line(ln)
        try:
            v = int(raw.strip())
        except ValueError:
            raise AigerError("malformed input literal %r" % raw, ln + 1) from None
        if v % 2 or v == 0 or v > 2 * m + 1:
            raise AigerError("invalid input literal %d" % v, ln + 1)
        in_lits.append(v)
        ln = nxt
    if len(set(in_lits)) != len(in_lits):
        raise AigerError("duplicate input literal", ln)
    out_lits = []
    for _ in range(o_cnt):
        raw, nxt = body_line(ln)
        try:
            v = int(raw.strip())
        except ValueError:
            raise AigerError("malformed output literal %r" % raw, ln + 1) from None
        if v > 2 * m + 1:
            raise AigerError("output literal %d out of range" % v, ln + 1)
        out_lits.append(v)
        ln = nxt
    ands = []
    and_lines = []
    for _ in range(a_cnt):
        raw, nxt = body_line(ln)
        parts = raw.split()
        if len(parts) != 3:
            raise AigerError("malformed and-gate line %r" % raw, ln + 1)
        try:
            lhs, r0, r1 = (int(x) for x in parts)
        except ValueError:
            raise AigerError("malformed and-gate line %r" % raw, ln + 1) from None
        if lhs % 2 or lhs == 0 or lhs > 2 * m + 1:
            raise AigerError("invalid and-gate lhs %d" % lhs, ln + 1)
        if r0 > 2 * m + 1 or r1 > 2 * m + 1:
            raise AigerError("and-gate fanin literal out of range", ln + 1)
        ands.append((lhs, r0, r1))
        and_lines.append(ln + 1)
        ln = nxt

    in_vars = [v >> 1 for v in in_lits]
    defined = {0}
    defined.update(in_vars)
    and_def = {}
    for idx, (lhs, r0, r1) in enumerate(ands):
        var = lhs >> 1
        if var in defined or var in and_def:
            raise AigerError("literal %d defined twice" % lhs, and_lines[idx])
        if var in in_vars:
            raise AigerError("input literal %d redefined as and" % lhs,
                             and_lines[idx])
        and_def[var] = idx

    for idx, (lhs, r0, r1) in enumerate(ands):
        for r in (r0, r1):
            var = r >> 1
            if var not in defined and var not in and_def:
                raise AigerError("dangling literal reference %d" % r,
                                 and_lines[idx])
    for po in out_lits:
        var = po >> 1
        if var not in defined and var not in and_def:
            raise AigerError("dangling output literal %d" % po, ln)

    # stable topological ordering of the and definitions (detects cycles)
    order = []
    placed = set(defined)
    pending = list(range(len(ands)))
    while pending:
        rest = []
        progress = False
        for idx in pending:
            lhs, r0, r1 = ands[idx]
            if (r0 >> 1) in placed and (r1 >> 1) in placed:
                order.append(idx)
                placed.add(lhs >> 1)
                progress = True
            else:
                rest.append(idx)
        if not progress:
            raise AigerError("cyclic and-gate definition", and_lines[rest[0]])
        pending = rest

    var_map = {0: 0}
    for j, var in enumerate(in_vars):
        var_map[var] = 1 + j
    nxt = i_cnt + 1
    f0, f1 = [], []
    for idx in order:
        lhs, r0, r1 = ands[idx]
        f0.append(lit(var_map[r0 >> 1], r0 & 1))
        f1.append(lit(var_map[r1 >> 1], r1 & 1))
        var_map[lhs >> 1] = nxt
        nxt += 1
    pos = [lit(var_map[po >> 1], po & 1) for po in out_lits]
    return Aig(i_cnt, f0, f1, pos, name=name)


def emit_aiger(aig: Aig, comment: str | None = None) -> str:
    """Emit the canonical AIGER ASCII form (dense literals, topological)."""
    m = aig.num_pis + aig.num_ands
    out = ["aag %d %d 0 %d %d" % (m, aig.num_pis, aig.num_pos, aig.num_ands)]
    for i in range(aig.num_pis):
        out.append(str(2 * (i + 1)))
    for po in aig.pos:
        out.append(str(po))
    base = aig.num_pis + 1
    for i in range(aig.num_ands):
        out.append("%d %d %d" % (2 * (base + i), aig.fanin0[i], aig.fanin1[i]))
    if comment:
        out.append("c")
        out.append(comment)
    return "\n".join(out) + "\n"


def load_aiger(path) -> Aig:
    with open(path) as fh:
        text = fh.read()
    import os
    return parse_aiger(text, name=os.path.splitext(os.path.basename(str(path)))[0])


def save_aiger(aig: Aig, path):
    with open(path, "w") as fh:
        fh.write(emit_aiger(aig))
