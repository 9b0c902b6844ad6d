from collections import Counter
from random import Random

import pytest

from aigopt.aig import AigBuilder, compute_stats, parse_aiger
from aigopt.transforms import (PRIMITIVES, apply, balance, check_equivalence,
                               default_catalog, demorgan, random_move,
                               rewrite, strash)
from conftest import po_truth_tables


def chain_and(width):
    b = AigBuilder(width)
    acc = b.pi_lit(0)
    for i in range(1, width):
        acc = b.and_(acc, b.pi_lit(i))
    b.add_po(acc)
    return b.build(name="chain%d" % width)


def test_check_equivalence_self(fixture8):
    assert check_equivalence(fixture8, fixture8).status == "exact"


def test_check_equivalence_and_vs_or():
    band = AigBuilder(2)
    band.add_po(band.and_(band.pi_lit(0), band.pi_lit(1)))
    a_and = band.build()
    bor = AigBuilder(2)
    bor.add_po(bor.or_(bor.pi_lit(0), bor.pi_lit(1)))
    a_or = bor.build()
    verdict = check_equivalence(a_and, a_or)
    assert verdict.status == "fail"
    x, y = verdict.counterexample
    assert (x & y) != (x | y)


def test_check_equivalence_arity_mismatch(fixture8):
    with pytest.raises(ValueError):
        check_equivalence(fixture8, chain_and(3))


def test_balance_reduces_chain_depth():
    chained = chain_and(4)
    assert compute_stats(chained).level == 3
    flat = balance(chained)
    st = compute_stats(flat)
    assert st.level == 2 and st.node_count == 3
    assert check_equivalence(chained, flat).status == "exact"


def test_balanced_vs_unbalanced_conjunction_equivalent():
    b = AigBuilder(4)
    left = b.and_(b.pi_lit(0), b.pi_lit(1))
    right = b.and_(b.pi_lit(2), b.pi_lit(3))
    b.add_po(b.and_(left, right))
    tree = b.build()
    assert check_equivalence(chain_and(4), tree).status == "exact"


def test_demorgan_identity_without_complemented_edges():
    chained = chain_and(5)
    assert demorgan(chained) == chained


def test_demorgan_flattens_or_chain():
    b = AigBuilder(4)
    acc = b.pi_lit(0)
    for i in range(1, 4):
        acc = b.or_(acc, b.pi_lit(i))
    b.add_po(acc)
    chained = b.build()
    flat = demorgan(chained)
    assert check_equivalence(chained, flat).status == "exact"
    assert compute_stats(flat).level < compute_stats(chained).level


def test_every_catalog_entry_preserves_single_and():
    band = AigBuilder(2)
    band.add_po(band.and_(band.pi_lit(0), band.pi_lit(1)))
    aig = band.build()
    for t in default_catalog():
        out = apply(t, aig, seed=7)
        assert check_equivalence(aig, out).status == "exact", t.name


def test_apply_deterministic(fixture8):
    for t in default_catalog():
        assert apply(t, fixture8, seed=123) == apply(t, fixture8, seed=123)


def test_random_move_deterministic(fixture8):
    catalog = default_catalog()
    t1, a1 = random_move(catalog, fixture8, seed=99)
    t2, a2 = random_move(catalog, fixture8, seed=99)
    assert t1 == t2 and a1 == a2


def test_random_move_equivalence_fixture8(fixture8):
    catalog = default_catalog()
    aig = fixture8
    ref_tts = po_truth_tables(fixture8)
    for seed in range(200):
        _, aig = random_move(catalog, aig, seed=seed)
        assert check_equivalence(fixture8, aig).status == "exact", seed
    assert po_truth_tables(aig) == ref_tts


def test_move_selection_roughly_uniform(fixture8):
    catalog = default_catalog()
    n = 3000
    rng = Random(1)
    counts = Counter()
    for _ in range(n):
        seed = rng.getrandbits(32)
        r = Random(seed)
        counts[r.randrange(len(catalog))] += 1
    p = 1 / len(catalog)
    sigma = (n * p * (1 - p)) ** 0.5
    for i in range(len(catalog)):
        assert abs(counts[i] - n * p) <= 4 * sigma


def test_rewrite_reduces_redundant_structure():
    # x = a&b built twice with different association: rewrite can shrink it
    b = AigBuilder(3)
    a, c, d = b.pi_lit(0), b.pi_lit(1), b.pi_lit(2)
    n1 = b.and_(a, c)
    n2 = b.and_(n1, d)
    n3 = b.and_(c, d)
    n4 = b.and_(a, n3)
    b.add_po(b.and_(n2, n4))  # == a&c&d
    aig = b.build()
    found = False
    for seed in range(20):
        out = rewrite(aig, seed=seed)
        assert check_equivalence(aig, out).status == "exact"
        if out.num_ands < aig.num_ands:
            found = True
    assert found


def test_primitives_all_preserve_fixture8(fixture8):
    for name, fn in PRIMITIVES.items():
        out = fn(fixture8, 5)
        assert check_equivalence(fixture8, out).status == "exact", name
        out.validate()


def test_strash_idempotent(fixture8):
    once = strash(fixture8)
    assert strash(once) == once
