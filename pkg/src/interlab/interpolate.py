"""Monotone semantic interpolation between nested model sets.

Given S' <= S, the interpolant keeps S' on the coordinates relevant to both
sets and liberates everything else; the result always sits between the two
sets.  The parallel variants do the same blockwise when one side is a
product over a coordinate partition.
"""
from __future__ import annotations

from typing import Sequence

from .errors import PreconditionError
from .space import (
    ModelSet,
    Partition,
    expand,
    liberate,
    product,
    relevant,
    reorder,
    restrict,
)


def semantic_interpolant(s_prime: ModelSet, s: ModelSet) -> ModelSet:
    """Interpolant S'' with S' <= S'' <= S and R(S'') <= R(S) & R(S')."""
    if s_prime.sig != s.sig:
        raise ValueError("signature mismatch")
    w = s_prime.subset_witness(s)
    if w is not None:
        raise PreconditionError(f"not a subset: {w} is in S' but not in S", witness=w)
    kept = relevant(s) & relevant(s_prime)
    return liberate(s_prime, set(s.sig.names) - kept)


def _check_factors(factors: Sequence[ModelSet], partition: Partition, sig) -> None:
    partition.validate_for(sig)
    if len(factors) != len(partition.blocks):
        raise ValueError("one factor per partition block required")
    for f, block in zip(factors, partition.blocks):
        if f.sig != sig.subsignature(block):
            raise ValueError(
                f"factor signature {f.sig.names} does not match block {sorted(block)}"
            )


def parallel_interpolant_left(
    factors: Sequence[ModelSet], partition: Partition, s: ModelSet
) -> ModelSet:
    """Blockwise interpolant when S' is a product over the partition.

    Each block factor is restricted to the coordinates relevant to both the
    factor and S, the rest of the block is liberated, and the blocks are
    multiplied back together (re-ordered to S's layout).
    """
    _check_factors(factors, partition, s.sig)
    prod = reorder(product(factors), s.sig)
    w = prod.subset_witness(s)
    if w is not None:
        raise PreconditionError(
            f"product of factors is not contained in S: witness {w}", witness=w
        )
    rel_s = relevant(s)
    blocks = []
    for f, block in zip(factors, partition.blocks):
        kept = rel_s & relevant(f)
        blocks.append(liberate(f, set(block) - kept))
    return reorder(product(blocks), s.sig)


def parallel_interpolant_right(
    s_prime: ModelSet, factors: Sequence[ModelSet], partition: Partition
) -> ModelSet:
    """Blockwise interpolant when S is a product over the partition."""
    sig = s_prime.sig
    _check_factors(factors, partition, sig)
    prod = reorder(product(factors), sig)
    w = s_prime.subset_witness(prod)
    if w is not None:
        raise PreconditionError(
            f"S' is not contained in the product of factors: witness {w}", witness=w
        )
    rel_sp = relevant(s_prime)
    blocks = []
    for f, block in zip(factors, partition.blocks):
        kept = rel_sp & relevant(f)  # relevant(f) <= block
        piece = restrict(s_prime, kept)
        block_sig = sig.subsignature(block)
        free = block_sig.subsignature(set(block) - kept)
        blocks.append(reorder(expand(piece, free), block_sig))
    return reorder(product(blocks), sig)


def block_relevance_identity(
    factors: Sequence[ModelSet], partition: Partition
) -> bool:
    """For a product of nonempty factors: R(factor_K) equals R(product) & K.

    Requires every factor nonempty (otherwise the product is empty and the
    factors are no longer its restrictions).
    """
    if any(len(f) == 0 for f in factors):
        raise ValueError("block relevance identity needs nonempty factors")
    prod = product(factors)
    rel_total = relevant(prod)
    for f, block in zip(factors, partition.blocks):
        if relevant(f) != rel_total & block:
            return False
    return True
