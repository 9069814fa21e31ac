"""Vectorized sweeps over every subset of a small model space.

Subsets of the tuple universe are packed into integer bitmasks (bit i =
i-th tuple in sorted order) so that a minimization operator can be tabulated
for all 2^n subsets at once with numpy.  Used by the rule checkers when the
space is small enough to sweep exhaustively.
"""
from __future__ import annotations

import numpy as np

MAX_BITS = 20


class MaskSpace:
    """Bitmask coding of subsets of a signature's tuple universe."""

    def __init__(self, sig):
        self.sig = sig
        self.elems = sorted(sig.tuples())
        self.n = len(self.elems)
        if self.n > MAX_BITS:
            raise ValueError(f"space too large for mask sweeps ({self.n} tuples)")
        self.pos = {t: i for i, t in enumerate(self.elems)}

    def mask(self, tuples) -> int:
        m = 0
        for t in tuples:
            m |= 1 << self.pos[t]
        return m

    def tuples(self, mask: int) -> frozenset:
        return frozenset(t for i, t in enumerate(self.elems) if mask >> i & 1)

    def pred_masks(self, strict) -> list[int]:
        """pred_masks[i] = bits of the tuples strictly below elems[i]."""
        out = [0] * self.n
        for (a, b) in strict:
            out[self.pos[b]] |= 1 << self.pos[a]
        return out

    def fibers(self, names) -> tuple["MaskSpace", list[int]]:
        """Component space on `names` plus, per component tuple, the mask of
        full-space tuples projecting onto it."""
        sub = self.sig.subsignature(names)
        comp = MaskSpace(sub)
        idx = [self.sig.index(n) for n in sub.names]
        fib = [0] * comp.n
        for t, i in self.pos.items():
            fib[comp.pos[tuple(t[k] for k in idx)]] |= 1 << i
        return comp, fib


def mu_all(space: MaskSpace, strict) -> np.ndarray:
    """Minimal-element mask for every subset mask of the space."""
    preds = space.pred_masks(strict)
    idx = np.arange(1 << space.n, dtype=np.uint32)
    mu = np.zeros_like(idx)
    for x in range(space.n):
        member = (idx >> np.uint32(x)) & np.uint32(1)
        alive = (idx & np.uint32(preds[x])) == 0
        mu |= (member & alive.astype(np.uint32)) << np.uint32(x)
    return mu


def project_all(masks: np.ndarray, fibers: list[int]) -> np.ndarray:
    out = np.zeros_like(masks)
    for j, fm in enumerate(fibers):
        out |= ((masks & np.uint32(fm)) != 0).astype(np.uint32) << np.uint32(j)
    return out


def expand_table(fibers: list[int]) -> np.ndarray:
    """Cylinder mask for every component mask: union of the selected fibers."""
    m = len(fibers)
    table = np.zeros(1 << m, dtype=np.uint32)
    for s in range(1 << m):
        acc = 0
        for j in range(m):
            if s >> j & 1:
                acc |= fibers[j]
        table[s] = acc
    return table


def projected_mu_failures(
    rel_strict, sig, kept_names, comp_strict=None
) -> tuple[list[int], "MaskSpace"]:
    """Masks of the sets S violating  mu_comp(S|kept) <= mu(S)|kept.

    With comp_strict given, the component operator is minimization by that
    block relation; otherwise it minimizes through the cylinder that
    liberates every coordinate outside `kept_names`.
    """
    space = MaskSpace(sig)
    mu = mu_all(space, rel_strict)
    comp, fib = space.fibers(kept_names)
    idx = np.arange(1 << space.n, dtype=np.uint32)
    proj_sigma = project_all(idx, fib)
    if comp_strict is not None:
        comp_mu = mu_all(comp, comp_strict)
        lhs = comp_mu[proj_sigma]
    else:
        exp = expand_table(fib)
        lhs = project_all(mu[exp[proj_sigma]], fib)
    rhs = project_all(mu, fib)
    bad = np.nonzero(lhs & ~rhs)[0]
    return [int(b) for b in bad], space


def smoothness_failures(rel_strict, sig) -> tuple[list[int], "MaskSpace"]:
    """Masks of the sets S containing a non-minimal element with no minimal
    element directly below it."""
    space = MaskSpace(sig)
    mu = mu_all(space, rel_strict)
    preds = space.pred_masks(rel_strict)
    idx = np.arange(1 << space.n, dtype=np.uint32)
    bad = np.zeros(1 << space.n, dtype=bool)
    for x in range(space.n):
        member = (idx >> np.uint32(x) & np.uint32(1)) == 1
        dominated = (idx & np.uint32(preds[x])) != 0
        rescued = (mu & np.uint32(preds[x])) != 0
        bad |= member & dominated & ~rescued
    return [int(b) for b in np.nonzero(bad)[0]], space
