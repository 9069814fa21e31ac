import random

import pytest
from hypothesis import given, strategies as st

from interlab.errors import PreconditionError
from interlab.interpolate import (
    block_relevance_identity,
    parallel_interpolant_left,
    parallel_interpolant_right,
    semantic_interpolant,
)
from interlab.logic import models, parse_formula
from interlab.space import (
    ModelSet,
    Partition,
    Signature,
    all_subsets,
    product,
    relevant,
    reorder,
    restrict,
)

PQ = Signature.boolean("p", "q")
PQR = Signature.boolean("p", "q", "r")


def test_semantic_interpolant_example():
    s_prime = models(parse_formula("p & q"), PQR)
    s = models(parse_formula("p | r"), PQR)
    out = semantic_interpolant(s_prime, s)
    assert out == models(parse_formula("p"), PQR)


def test_semantic_interpolant_identity():
    s = models(parse_formula("p <-> q"), PQ)
    assert semantic_interpolant(s, s) == s


def test_semantic_interpolant_empty():
    s = ModelSet.full(PQ)
    assert len(semantic_interpolant(ModelSet.empty(PQ), s)) == 0


def test_semantic_interpolant_precondition():
    s_prime = models(parse_formula("p"), PQ)
    s = models(parse_formula("q"), PQ)
    with pytest.raises(PreconditionError) as e:
        semantic_interpolant(s_prime, s)
    assert e.value.witness == (1, 0)


def sandwich_ok(s_prime, out, s):
    return s_prime.issubset(out) and out.issubset(s)


@pytest.mark.parametrize("sig", [PQ, PQR, Signature.of(("a", 3), ("b", 3))])
def test_sandwich_and_vocabulary_exhaustive(sig):
    universe = [ModelSet(sig, t) for t in all_subsets(sig.tuples())]
    for s in universe:
        for sp_tuples in all_subsets(sorted(s.tuples)):
            s_prime = ModelSet(sig, sp_tuples)
            out = semantic_interpolant(s_prime, s)
            assert sandwich_ok(s_prime, out, s)
            assert relevant(out) <= relevant(s) & relevant(s_prime)


@st.composite
def nested_pair(draw):
    domains = draw(st.sampled_from([(2, 2, 2, 2), (3, 3, 3), (4, 4)]))
    names = ["a", "b", "c", "d"][: len(domains)]
    sig = Signature.of(*zip(names, domains))
    univ = sorted(sig.tuples())
    big = draw(st.sets(st.sampled_from(univ)))
    small = draw(st.sets(st.sampled_from(sorted(big)))) if big else set()
    return ModelSet.of(sig, small), ModelSet.of(sig, big)


@given(nested_pair())
def test_sandwich_random(pair):
    s_prime, s = pair
    out = semantic_interpolant(s_prime, s)
    assert sandwich_ok(s_prime, out, s)
    assert relevant(out) <= relevant(s) & relevant(s_prime)


# ------------------------------------------------------------- parallel left

def test_parallel_left_example():
    sig = PQ
    part = Partition.of({"p"}, {"q"})
    factors = [
        ModelSet.of(Signature.boolean("p"), [(1,)]),
        ModelSet.of(Signature.boolean("q"), [(1,)]),
    ]
    s = models(parse_formula("p"), sig)
    out = parallel_interpolant_left(factors, part, s)
    assert out == s  # q gets liberated


def test_parallel_left_full():
    part = Partition.of({"p"}, {"q"})
    factors = [ModelSet.full(Signature.boolean("p")), ModelSet.full(Signature.boolean("q"))]
    out = parallel_interpolant_left(factors, part, ModelSet.full(PQ))
    assert out.is_full()


def test_parallel_left_single_block_matches_plain():
    rng = random.Random(7)
    sig = PQR
    univ = sorted(sig.tuples())
    for _ in range(30):
        s_tuples = {t for t in univ if rng.random() < 0.6}
        sp_tuples = {t for t in s_tuples if rng.random() < 0.6}
        s = ModelSet.of(sig, s_tuples)
        s_prime = ModelSet.of(sig, sp_tuples)
        part = Partition.of(set(sig.names))
        out = parallel_interpolant_left([s_prime], part, s)
        assert out == semantic_interpolant(s_prime, s)


def test_parallel_left_precondition():
    part = Partition.of({"p"}, {"q"})
    factors = [ModelSet.full(Signature.boolean("p")), ModelSet.full(Signature.boolean("q"))]
    with pytest.raises(PreconditionError):
        parallel_interpolant_left(factors, part, models(parse_formula("p"), PQ))


def random_partition(rng, sig, blocks=2):
    names = list(sig.names)
    rng.shuffle(names)
    cut = rng.randint(1, len(names) - 1)
    return Partition.of(set(names[:cut]), set(names[cut:]))


def random_subset(rng, items, p=0.5):
    return {x for x in items if rng.random() < p}


@pytest.mark.parametrize("domains", [(2, 2, 2, 2), (3, 3, 3), (4, 4)])
def test_parallel_left_random(domains):
    rng = random.Random(13)
    names = ["a", "b", "c", "d"][: len(domains)]
    sig = Signature.of(*zip(names, domains))
    for _ in range(60):
        part = random_partition(rng, sig)
        factors = []
        for block in part.blocks:
            sub = sig.subsignature(block)
            factors.append(ModelSet.of(sub, random_subset(rng, sorted(sub.tuples()), 0.7)))
        prod = reorder(product(factors), sig)
        extra = random_subset(rng, sorted(sig.tuples()), 0.3)
        s = ModelSet.of(sig, set(prod.tuples) | extra)
        out = parallel_interpolant_left(factors, part, s)
        assert sandwich_ok(prod, out, s)
        # output is a product over the partition
        rebuilt = reorder(
            product([restrict(out, b) for b in part.blocks]), sig
        )
        assert rebuilt == out


# ------------------------------------------------------------ parallel right

def test_parallel_right_example():
    part = Partition.of({"p"}, {"q"})
    factors = [
        ModelSet.of(Signature.boolean("p"), [(1,)]),
        ModelSet.of(Signature.boolean("q"), [(1,)]),
    ]
    s_prime = ModelSet.of(PQ, [(1, 1)])
    out = parallel_interpolant_right(s_prime, factors, part)
    assert out == s_prime


def test_parallel_right_full_factors():
    part = Partition.of({"p"}, {"q"})
    factors = [ModelSet.full(Signature.boolean("p")), ModelSet.full(Signature.boolean("q"))]
    s_prime = ModelSet.of(PQ, [(0, 1)])
    out = parallel_interpolant_right(s_prime, factors, part)
    assert out.is_full()


def test_parallel_right_empty():
    part = Partition.of({"p"}, {"q"})
    factors = [ModelSet.full(Signature.boolean("p")), ModelSet.full(Signature.boolean("q"))]
    out = parallel_interpolant_right(ModelSet.empty(PQ), factors, part)
    assert len(out) == 0


def test_parallel_right_precondition():
    part = Partition.of({"p"}, {"q"})
    factors = [
        ModelSet.of(Signature.boolean("p"), [(1,)]),
        ModelSet.of(Signature.boolean("q"), [(1,)]),
    ]
    with pytest.raises(PreconditionError) as e:
        parallel_interpolant_right(ModelSet.of(PQ, [(0, 0)]), factors, part)
    assert e.value.witness == (0, 0)


@pytest.mark.parametrize("domains", [(2, 2, 2, 2), (3, 3, 3), (4, 4)])
def test_parallel_right_random(domains):
    rng = random.Random(29)
    names = ["a", "b", "c", "d"][: len(domains)]
    sig = Signature.of(*zip(names, domains))
    for _ in range(60):
        part = random_partition(rng, sig)
        factors = []
        for block in part.blocks:
            sub = sig.subsignature(block)
            factors.append(ModelSet.of(sub, random_subset(rng, sorted(sub.tuples()), 0.7)))
        prod = reorder(product(factors), sig)
        s_prime = ModelSet.of(sig, random_subset(rng, sorted(prod.tuples), 0.6))
        out = parallel_interpolant_right(s_prime, factors, part)
        assert sandwich_ok(s_prime, out, prod)
        if all(len(f) > 0 for f in factors):
            assert block_relevance_identity(factors, part)


def test_block_identity_for_products():
    rng = random.Random(3)
    sig = Signature.boolean("a", "b", "c", "d")
    for _ in range(40):
        part = random_partition(rng, sig)
        factors = []
        for block in part.blocks:
            sub = sig.subsignature(block)
            tuples = random_subset(rng, sorted(sub.tuples()), 0.6) or {sorted(sub.tuples())[0]}
            factors.append(ModelSet.of(sub, tuples))
        assert block_relevance_identity(factors, part)
