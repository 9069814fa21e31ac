import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from interlab.logic import models, parse_formula
from interlab.revision import (
    DistanceModel,
    bar,
    check_hd_product,
    check_hd_projection,
    distance,
    is_generalized_hamming_distance,
    minimal_distances,
    parikh_revise,
)
from interlab.space import CoordSplit, ModelSet, Partition, Signature

PQ = Signature.boolean("p", "q")
ABCD = Signature.boolean("a", "b", "c", "d")
DS = DistanceModel.set_variant()
DC = DistanceModel.counting()


def nonempty_subsets(universe):
    out = []
    elems = sorted(universe)
    for r in range(1, len(elems) + 1):
        out.extend(frozenset(c) for c in combinations(elems, r))
    return out


# ------------------------------------------------------------------ distance

def test_set_distance_identity():
    assert distance(DS, PQ, (1, 1), (1, 1)) == frozenset()


def test_set_distance_components():
    assert distance(DS, PQ, (1, 1), (0, 1)) == {"p"}


def test_counting_weighted():
    d = DistanceModel.counting(weights={"p": 1, "q": 2})
    assert distance(d, PQ, (1, 1), (0, 0)) == 3


def test_counting_value_metric():
    sig = Signature.of(("a", 3))
    d = DistanceModel.counting(value_metrics={("a", 0, 2): 5})
    assert distance(d, sig, (0,), (2,)) == 5
    assert distance(d, sig, (2,), (0,)) == 5
    assert distance(d, sig, (0,), (1,)) == 1


def test_distance_length_mismatch():
    with pytest.raises(ValueError):
        distance(DC, PQ, (1,), (0, 0))


def test_weights_positive():
    with pytest.raises(ValueError):
        DistanceModel.counting(weights={"p": 0})


@given(st.sampled_from(sorted(ABCD.tuples())), st.sampled_from(sorted(ABCD.tuples())))
def test_distance_symmetry(x, y):
    assert distance(DS, ABCD, x, y) == distance(DS, ABCD, y, x)
    assert distance(DC, ABCD, x, y) == distance(DC, ABCD, y, x)


# ----------------------------------------------------------------------- bar

def test_bar_intersection_wins():
    x = ModelSet.of(PQ, [(1, 1), (0, 0)])
    y = ModelSet.of(PQ, [(0, 0), (0, 1)])
    for d in (DS, DC):
        assert bar(x, y, d).tuples == {(0, 0)}


def test_bar_counting_example():
    x = ModelSet.of(PQ, [(1, 1)])
    y = ModelSet.of(PQ, [(0, 1), (0, 0)])
    assert bar(x, y, DC).tuples == {(0, 1)}


def test_bar_set_incomparable_minima():
    x = ModelSet.of(PQ, [(1, 1)])
    y = ModelSet.of(PQ, [(1, 0), (0, 1)])
    assert bar(x, y, DS).tuples == {(1, 0), (0, 1)}
    # the counting variant keeps both as well (both at distance 1)
    assert bar(x, y, DC).tuples == {(1, 0), (0, 1)}


def test_bar_rejects_empty():
    with pytest.raises(ValueError):
        bar(ModelSet.empty(PQ), ModelSet.full(PQ), DC)


def test_bar_subset_and_nonempty_random():
    rng = random.Random(1)
    universe = sorted(ABCD.tuples())
    for _ in range(80):
        x = ModelSet.of(ABCD, rng.sample(universe, rng.randint(1, 6)))
        y = ModelSet.of(ABCD, rng.sample(universe, rng.randint(1, 6)))
        for d in (DS, DC):
            out = bar(x, y, d)
            assert out.tuples and out.tuples <= y.tuples


def test_counting_bar_refines_set_bar():
    # cardinality-minimal pairs are inclusion-minimal, so the counting bar
    # is always contained in the set bar (unit weights)
    rng = random.Random(2)
    universe = sorted(ABCD.tuples())
    for _ in range(120):
        x = ModelSet.of(ABCD, rng.sample(universe, rng.randint(1, 5)))
        y = ModelSet.of(ABCD, rng.sample(universe, rng.randint(1, 5)))
        count_bar = bar(x, y, DC)
        set_bar = bar(x, y, DS)
        assert count_bar.tuples <= set_bar.tuples
        min_count = minimal_distances(x, y, DC)[0]
        for v in minimal_distances(x, y, DS):
            assert len(v) >= min_count


# ---------------------------------------------------- distance compatibility

def test_ghd_counting_nondegenerate():
    report = is_generalized_hamming_distance(DC, PQ, CoordSplit.cover(PQ, {"p"}))
    assert not report.strict_iff
    assert report.compositional
    w = report.strict_witness
    assert w is not None and "pair_1" in w  # totally ordered, the iff breaks


def test_ghd_set_nondegenerate():
    report = is_generalized_hamming_distance(DS, PQ, CoordSplit.cover(PQ, {"p"}))
    assert not report.strict_iff
    assert report.compositional
    assert "incomparable_values" in report.strict_witness


def test_ghd_degenerate_split():
    sig = PQ
    report = is_generalized_hamming_distance(DC, sig, CoordSplit.cover(sig, {"p", "q"}))
    assert report.strict_iff and report.compositional


def test_ghd_set_single_coordinate_total():
    sig = Signature.boolean("p")
    report = is_generalized_hamming_distance(DS, sig, CoordSplit.cover(sig, {"p"}))
    assert report.strict_iff


def test_ghd_weighted_counting_compositional():
    d = DistanceModel.counting(weights={"a": 2, "b": 1, "c": 3, "d": 1})
    report = is_generalized_hamming_distance(
        d, ABCD, CoordSplit.cover(ABCD, {"a", "b"})
    )
    assert report.compositional and not report.strict_iff


# ------------------------------------------------------------ product fact

def test_hd_product_example():
    s1 = ModelSet.of(PQ, [(1, 1)])
    s2 = ModelSet.of(PQ, [(0, 1), (0, 0)])  # {0} x {0,1}
    report = check_hd_product(s1, s2, DC, CoordSplit.cover(PQ, {"p"}))
    assert report.mode == "product"
    assert report.equal
    assert report.lhs.tuples == {(0, 1)}


def test_hd_product_singleton():
    s = ModelSet.of(PQ, [(1, 0)])
    report = check_hd_product(s, s, DS, CoordSplit.cover(PQ, {"p"}))
    assert report.mode == "product" and report.equal
    assert report.lhs == s


def test_hd_product_exhaustive_two_plus_two():
    split = CoordSplit.cover(ABCD, {"a", "b"})
    part = Partition.of(split.left, split.right)
    sub_l = ABCD.subsignature(split.left)
    sub_r = ABCD.subsignature(split.right)
    left_sets = nonempty_subsets(sub_l.tuples())
    right_sets = nonempty_subsets(sub_r.tuples())
    rng = random.Random(3)
    pool = [(l1, r1) for l1 in left_sets for r1 in right_sets]
    sample = rng.sample(pool, 60)
    for d in (DS, DC):
        for l1, r1 in sample:
            s1 = ModelSet.of(ABCD, [a + b for a in l1 for b in r1])
            for l2, r2 in rng.sample(pool, 25):
                s2 = ModelSet.of(ABCD, [a + b for a in l2 for b in r2])
                report = check_hd_product(s1, s2, d, split)
                assert report.mode == "product"
                assert report.equal, (sorted(s1.tuples), sorted(s2.tuples), d.variant)


def test_hd_product_general_mode_side_conditions():
    rng = random.Random(4)
    universe = sorted(ABCD.tuples())
    split = CoordSplit.cover(ABCD, {"a", "b"})
    checked_equal = 0
    for _ in range(300):
        s1 = ModelSet.of(ABCD, rng.sample(universe, rng.randint(1, 9)))
        s2 = ModelSet.of(ABCD, rng.sample(universe, rng.randint(1, 9)))
        for d in (DS, DC):
            report = check_hd_product(s1, s2, d, split)
            if report.mode != "general" or report.side_conditions is None:
                continue
            if all(report.side_conditions.values()):
                assert report.equal, (sorted(s1.tuples), sorted(s2.tuples), d.variant)
                checked_equal += 1
    assert checked_equal > 10


# ------------------------------------------------------------ projection fact

def test_hd_projection_subset_degenerate():
    s = ModelSet.of(PQ, [(1, 0)])
    g = ModelSet.of(PQ, [(1, 0), (0, 0)])
    report = check_hd_projection(s, g, DC, CoordSplit.cover(PQ, {"p"}))
    assert report.antecedent and report.consequent and report.implication


def test_hd_projection_vacuous():
    s = ModelSet.of(PQ, [(1, 0)])
    g = ModelSet.of(PQ, [(0, 0)])
    report = check_hd_projection(s, g, DC, CoordSplit.cover(PQ, {"p"}))
    assert not report.antecedent and report.implication


def test_hd_projection_never_falsified_exhaustive():
    split = CoordSplit.cover(ABCD, {"a", "b"})
    universe = sorted(ABCD.tuples())
    rng = random.Random(5)
    for _ in range(400):
        s = ModelSet.of(ABCD, rng.sample(universe, rng.randint(1, 8)))
        g_tuples = set(rng.sample(universe, rng.randint(0, 10)))
        if rng.random() < 0.5:
            g_tuples |= set(s.tuples)  # exercise true antecedents often
        g = ModelSet.of(ABCD, g_tuples)
        for d in (DS, DC):
            assert check_hd_projection(s, g, d, split).implication


# -------------------------------------------------------------------- revise

def test_parikh_revise_example():
    report = parikh_revise(parse_formula("p & q"), parse_formula("!p"), DC)
    sig = Signature.boolean("p", "q")
    assert report.result == models(parse_formula("!p & q"), sig)
    assert report.min_distance == [1]


def test_parikh_revise_consistent_case():
    sig = Signature.boolean("p", "q")
    report = parikh_revise(parse_formula("p | q"), parse_formula("q"), DC, sig=sig)
    assert report.result == models(parse_formula("q"), sig)
    assert report.min_distance == [0]


def test_parikh_revise_decomposes():
    report = parikh_revise(
        parse_formula("p & q"),
        parse_formula("!p & !q"),
        DC,
        split=CoordSplit.of({"p"}, {"q"}),
    )
    assert report.decomposed
    assert report.result.tuples == {(0, 0)}


def test_parikh_revise_inconsistent_rejected():
    with pytest.raises(ValueError):
        parikh_revise(parse_formula("p & !p"), parse_formula("q"), DC)


def test_parikh_revise_set_variant_reports_sets():
    report = parikh_revise(
        parse_formula("p & q"), parse_formula("!p | !q"), DS
    )
    assert report.result.tuples == {(0, 1), (1, 0)}
    assert report.min_distance == [frozenset({"p"}), frozenset({"q"})]


def test_parikh_revise_modelset_operands():
    k = ModelSet.of(PQ, [(1, 1)])
    phi = ModelSet.of(PQ, [(0, 0), (0, 1)])
    report = parikh_revise(k, phi, DC)
    assert report.result.tuples == {(0, 1)}
