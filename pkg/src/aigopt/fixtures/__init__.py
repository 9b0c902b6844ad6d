"""Bundled benchmark circuits.

Four self-contained combinational designs used by the test suite and the
demo scripts: an 8x8 multiplier slice, a three-operand adder tree, a
16-input priority encoder, and a seeded random logic cone.  Each is
committed as an AIGER file; the builder functions regenerate them
bit-identically (see tests).
"""

from __future__ import annotations

import importlib.resources
import random

from ..aig import Aig, AigBuilder, emit_aiger, parse_aiger

FIXTURE_NAMES = ("mult8", "adder3x6", "prio16", "randcone")


def _full_adder(b, x, y, cin):
    s = b.xor_(b.xor_(x, y), cin)
    c = b.or_(b.and_(x, y), b.and_(cin, b.xor_(x, y)))
    return s, c


def _ripple_add(b, xs, ys, cin=0):
    """Bitwise sum of two equal-width vectors; returns width+1 bits."""
    out = []
    c = cin
    for x, y in zip(xs, ys):
        s, c = _full_adder(b, x, y, c)
        out.append(s)
    out.append(c)
    return out


def build_mult8() -> Aig:
    """Middle slice (product bits 4..10) of an 8x8 array multiplier."""
    b = AigBuilder(num_pis=16)
    a = [b.pi_lit(i) for i in range(8)]
    w = [b.pi_lit(8 + i) for i in range(8)]
    cols = [[] for _ in range(16)]
    for i in range(8):
        for j in range(8):
            cols[i + j].append(b.and_(a[i], w[j]))
    product = []
    carries = []
    for k in range(16):
        items = cols[k] + carries
        carries = []
        while len(items) > 1:
            if len(items) >= 3:
                s, c = _full_adder(b, items[0], items[1], items[2])
                items = [s] + items[3:]
            else:
                s, c = _full_adder(b, items[0], items[1], 0)
                items = [s]
            carries.append(c)
        product.append(items[0] if items else 0)
    for k in range(4, 11):
        b.add_po(product[k])
    return b.build(name="mult8")


def build_adder3x6() -> Aig:
    """Sum of three 6-bit operands; POs are result bits 0..5."""
    b = AigBuilder(num_pis=18)
    xs = [b.pi_lit(i) for i in range(6)]
    ys = [b.pi_lit(6 + i) for i in range(6)]
    zs = [b.pi_lit(12 + i) for i in range(6)]
    partial = _ripple_add(b, xs, ys)
    total = _ripple_add(b, partial[:6], zs)
    for bit in total[:6]:
        b.add_po(bit)
    return b.build(name="adder3x6")


def build_prio16() -> Aig:
    """16-input priority encoder: 4-bit index of highest set bit + valid."""
    b = AigBuilder(num_pis=16)
    req = [b.pi_lit(i) for i in range(16)]
    valid = 0
    for r in req:
        valid = b.or_(valid, r)
    idx = [0, 0, 0, 0]
    # scan from lowest to highest so later (higher) bits override
    for i, r in enumerate(req):
        for bit in range(4):
            idx[bit] = b.mux_(r, 1 if (i >> bit) & 1 else 0, idx[bit])
    for bit in idx:
        b.add_po(bit)
    b.add_po(valid)
    return b.build(name="prio16")


def build_randcone(seed: int = 2026, min_nodes: int = 560) -> Aig:
    """Seeded random 16-PI logic cone with a deliberately long AND chain."""
    rng = random.Random(seed)
    b = AigBuilder(num_pis=16)
    lits = [b.pi_lit(i) for i in range(16)]
    pool = list(lits)
    made = []
    while len(b.fanin0) < min_nodes - 350:
        x = rng.choice(pool) ^ rng.getrandbits(1)
        y = rng.choice(pool) ^ rng.getrandbits(1)
        op = rng.randrange(3)
        r = b.and_(x, y) if op == 0 else (
            b.or_(x, y) if op == 1 else b.xor_(x, y))
        if r > 1:
            made.append(r)
            pool.append(r)
    # long unbalanced conjunction chain (gives balance something to do)
    chain = b.or_(made[-1], 1 ^ made[-2])
    for i in range(40):
        chain = b.and_(chain, b.or_(made[-(i % 12) - 1], lits[i % 16]))
    b.add_po(chain)
    # parity / disjunction tree reductions over everything generated so
    # far, so garbage collection cannot trim the random interior; trees
    # keep these POs shallow so the chain dominates the graph level
    for k, combine in enumerate((b.xor_, b.or_, b.xor_)):
        items = [lit ^ (k & 1) for lit in made[k::3]]
        while len(items) > 1:
            items = [combine(items[i], items[i + 1])
                     if i + 1 < len(items) else items[i]
                     for i in range(0, len(items), 2)]
        b.add_po(items[0])
    aig = b.build(name="randcone")
    if aig.num_ands < min_nodes:
        raise AssertionError("random cone came out too small")
    return aig


BUILDERS = {
    "mult8": build_mult8,
    "adder3x6": build_adder3x6,
    "prio16": build_prio16,
    "randcone": build_randcone,
}


def load_fixture(name: str) -> Aig:
    if name not in FIXTURE_NAMES:
        raise KeyError("unknown fixture %r" % name)
    text = (importlib.resources.files(__package__)
            .joinpath(name + ".aag").read_text())
    return parse_aiger(text, name=name)


def regenerate(directory) -> None:
    """Write all fixture AIGER files into a directory."""
    import pathlib
    d = pathlib.Path(directory)
    for name, builder in BUILDERS.items():
        (d / (name + ".aag")).write_text(emit_aiger(builder()))
