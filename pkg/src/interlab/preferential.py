"""Preference relations over model spaces: minimization, smoothness,
Hamming relations, abstract size, and the product rules.

A preference structure is an arbitrary irreflexive set of strict pairs
(sigma, tau) read "sigma is preferred to tau"; transitivity and smoothness
are checked properties, never assumptions.  The minimization operator mu
picks the undominated elements of a set and generates the principal filter
of its big subsets: A is big in S when mu(S) <= A, small when the
complement is big, medium otherwise.

Component spaces.  The product rules compare minimization on the full
space with minimization on the two blocks of a coordinate split.  The
block relation is read off pairs that agree outside the block; when those
votes are coherent (always the case for relations composed blockwise, i.e.
Hamming relations) the component operator is minimization by that
restriction.  When the votes conflict the restriction does not exist, and
the block is minimized through its cylinder instead: W <= Pi' goes to
mu(W x Pi'')|X'.  Either way the operator shrinks its argument, which is
all the size-rule equivalences need, and both the S-form and the mu-form
of every rule go through the same operator.  Each oriented rule is
verified for both orientations of the given split (the blocks' roles are
interchangeable).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional

from .errors import PreconditionError, RestrictionUndefinedError
from .space import CoordSplit, ModelSet, Signature, all_subsets

try:
    from . import _masks
except Exception:  # pragma: no cover - numpy is a hard dependency in practice
    _masks = None

_FAST_MIN_TUPLES = 10  # below this the plain loops win


@dataclass(frozen=True)
class PreferenceStructure:
    """Irreflexive strict preference over the tuples of a signature."""

    sig: Signature
    strict: frozenset[tuple[tuple[int, ...], tuple[int, ...]]]

    def __post_init__(self):
        universe = frozenset(self.sig.tuples())
        for a, b in self.strict:
            if a == b:
                raise ValueError(f"reflexive pair {a}")
            if a not in universe or b not in universe:
                raise ValueError(f"pair ({a}, {b}) outside the space")

    @classmethod
    def of(cls, sig: Signature, pairs: Iterable) -> "PreferenceStructure":
        return cls(sig, frozenset((tuple(a), tuple(b)) for a, b in pairs))

    def weak(self, a, b) -> bool:
        return a == b or (a, b) in self.strict


@lru_cache(maxsize=512)
def _preds(rel: PreferenceStructure) -> dict:
    out: dict = {}
    for a, b in rel.strict:
        out.setdefault(b, set()).add(a)
    return {k: frozenset(v) for k, v in out.items()}


def _mu_tuples(rel: PreferenceStructure, s: frozenset) -> frozenset:
    preds = _preds(rel)
    empty: frozenset = frozenset()
    return frozenset(x for x in s if preds.get(x, empty).isdisjoint(s))


def mu(rel: PreferenceStructure, s: ModelSet) -> ModelSet:
    """Minimal elements of S: nothing in S strictly below them."""
    if rel.sig != s.sig:
        raise ValueError("signature mismatch between relation and model set")
    return ModelSet(s.sig, _mu_tuples(rel, s.tuples))


# ----------------------------------------------------------------- smoothness

@dataclass(frozen=True)
class SmoothCheck:
    smooth: bool
    witness: Optional[tuple[frozenset, tuple]]  # (set S, stranded element x)
    exhaustive: bool
    checked: int


@dataclass(frozen=True)
class Budget:
    """Enumeration bounds: sweep exhaustively up to `exhaustive` subsets,
    otherwise draw `samples` random subsets with the given seed."""

    exhaustive: int = 1 << 16
    samples: int = 10_000
    seed: int = 0

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _iter_subsets(elems, budget: Budget, rng) -> tuple[Iterator[frozenset], bool]:
    n = len(elems)
    if 2 ** n <= budget.exhaustive:
        return all_subsets(elems), True

    def sample():
        for _ in range(budget.samples):
            yield frozenset(x for x in elems if rng.random() < 0.5)

    return sample(), False


def is_smooth(
    rel: PreferenceStructure,
    budget: Optional[Budget] = None,
    family: Optional[Iterable[frozenset]] = None,
) -> SmoothCheck:
    """Every non-minimal element of any nonempty set has a minimal element
    of that set strictly below it.

    Exhaustive over all subsets when the space fits the budget, else over
    `family` (if given) or a sampled family.
    """
    budget = budget or Budget()
    preds = _preds(rel)
    empty: frozenset = frozenset()

    def stranded(s: frozenset):
        m = _mu_tuples(rel, s)
        for x in sorted(s - m):
            if preds.get(x, empty).isdisjoint(m):
                return x
        return None

    universe = sorted(rel.sig.tuples())
    if family is None and _masks is not None and len(universe) >= _FAST_MIN_TUPLES \
            and 2 ** len(universe) <= budget.exhaustive:
        bad, space = _masks.smoothness_failures(rel.strict, rel.sig)
        if not bad:
            return SmoothCheck(True, None, True, 2 ** len(universe))
        best = min(bad, key=lambda m: (bin(m).count("1"), sorted(space.tuples(m))))
        s = space.tuples(best)
        return SmoothCheck(False, (s, stranded(s)), True, 2 ** len(universe))

    if family is not None:
        sets: Iterable[frozenset] = (frozenset(s) for s in family)
        exhaustive = False
    else:
        sets, exhaustive = _iter_subsets(universe, budget, budget.rng())
    checked = 0
    for s in sets:
        checked += 1
        if not s:
            continue
        x = stranded(s)
        if x is not None:
            return SmoothCheck(False, (s, x), exhaustive, checked)
    return SmoothCheck(True, None, exhaustive, checked)


# --------------------------------------------------------- Hamming relations

def restrict_relation(rel: PreferenceStructure, names: Iterable[str]) -> PreferenceStructure:
    """Block relation read off pairs that agree outside the block.

    For (a, b) over the block, every completion by a shared rest-tuple must
    vote the same way; mixed votes raise RestrictionUndefinedError.
    """
    sub = rel.sig.subsignature(names)
    rest = [n for n in rel.sig.names if n not in set(sub.names)]
    rest_sub = rel.sig.subsignature(rest)
    idx = [rel.sig.index(n) for n in sub.names]
    rest_idx = [rel.sig.index(n) for n in rest_sub.names]

    def merge(block_t, rest_t):
        t = [0] * len(rel.sig)
        for i, v in zip(idx, block_t):
            t[i] = v
        for i, v in zip(rest_idx, rest_t):
            t[i] = v
        return tuple(t)

    rest_tuples = sorted(rest_sub.tuples())
    pairs = set()
    for a in sub.tuples():
        for b in sub.tuples():
            if a == b:
                continue
            votes = {(merge(a, r), merge(b, r)) in rel.strict for r in rest_tuples}
            if len(votes) > 1:
                raise RestrictionUndefinedError(
                    f"restriction to {sorted(sub.names)} is not well-defined at ({a}, {b})",
                    witness=(a, b),
                )
            if votes == {True}:
                pairs.add((a, b))
    return PreferenceStructure(sub, frozenset(pairs))


def compose_hamming(
    left: PreferenceStructure,
    right: PreferenceStructure,
    order: Optional[Signature] = None,
) -> PreferenceStructure:
    """The unique Hamming relation over the combined signature:
    weakly related iff both block parts are, strict when unequal."""
    sig = left.sig.concat(right.sig)
    pairs = set()
    for a1 in left.sig.tuples():
        for b1 in left.sig.tuples():
            if not left.weak(a1, b1):
                continue
            for a2 in right.sig.tuples():
                for b2 in right.sig.tuples():
                    if (a1, a2) != (b1, b2) and right.weak(a2, b2):
                        pairs.add((a1 + a2, b1 + b2))
    out = PreferenceStructure(sig, frozenset(pairs))
    if order is not None:
        out = reorder_relation(out, order)
    return out


def reorder_relation(rel: PreferenceStructure, target: Signature) -> PreferenceStructure:
    if sorted(rel.sig.coords) != sorted(target.coords):
        raise ValueError("target signature is not a permutation of the source")
    idx = [rel.sig.index(n) for n in target.names]

    def re(t):
        return tuple(t[i] for i in idx)

    return PreferenceStructure(target, frozenset((re(a), re(b)) for a, b in rel.strict))


@dataclass(frozen=True)
class HammingCheck:
    holds: bool
    witness: Optional[tuple[tuple, tuple]]


def is_hamming_relation(
    rel: PreferenceStructure,
    left: PreferenceStructure,
    right: PreferenceStructure,
) -> HammingCheck:
    """Weak biconditional check: sigma <= tau iff both block parts are <=."""
    names = set(left.sig.names) | set(right.sig.names)
    if set(rel.sig.names) != names or set(left.sig.names) & set(right.sig.names):
        raise ValueError("factor signatures must split the relation's signature")
    li = [rel.sig.index(n) for n in left.sig.names]
    ri = [rel.sig.index(n) for n in right.sig.names]
    universe = sorted(rel.sig.tuples())
    for a in universe:
        for b in universe:
            lhs = rel.weak(a, b)
            rhs = left.weak(tuple(a[i] for i in li), tuple(b[i] for i in li)) and \
                right.weak(tuple(a[i] for i in ri), tuple(b[i] for i in ri))
            if lhs != rhs:
                return HammingCheck(False, (a, b))
    return HammingCheck(True, None)


# ------------------------------------------------------------- size calculus

class SizeClass(str, Enum):
    BIG = "big"
    SMALL = "small"
    MEDIUM = "medium"


def classify_subset(a: ModelSet, s: ModelSet, rel: PreferenceStructure) -> SizeClass:
    """A <= S is big iff mu(S) <= A, small iff mu(S) misses A, else medium."""
    if a.sig != s.sig or s.sig != rel.sig:
        raise ValueError("signature mismatch")
    w = a.subset_witness(s)
    if w is not None:
        raise PreconditionError(f"A is not a subset of S: witness {w}", witness=w)
    m = _mu_tuples(rel, s.tuples)
    if m <= a.tuples:
        return SizeClass.BIG
    if m.isdisjoint(a.tuples):
        return SizeClass.SMALL
    return SizeClass.MEDIUM


# ------------------------------------------------------------- rule checking

@dataclass(frozen=True)
class Verdict:
    rule: str
    status: str  # "holds" | "fails"
    witness: Optional[dict]
    exhaustive: bool
    checked: int

    @property
    def holds(self) -> bool:
        return self.status == "holds"


@lru_cache(maxsize=1024)
def _try_restrict(rel: PreferenceStructure, names: tuple) -> Optional[PreferenceStructure]:
    try:
        return restrict_relation(rel, names)
    except RestrictionUndefinedError:
        return None


class _Ctx:
    """Oriented split context: X' = kept/projected side `left`."""

    def __init__(self, rel: PreferenceStructure, left_names: Iterable[str]):
        self.rel = rel
        self.sig = rel.sig
        left_set = set(left_names)
        self.left = rel.sig.subsignature(left_set)
        self.right = rel.sig.subsignature(set(rel.sig.names) - left_set)
        self.li = [rel.sig.index(n) for n in self.left.names]
        self.ri = [rel.sig.index(n) for n in self.right.names]
        self.pi = sorted(rel.sig.tuples())
        self.left_elems = sorted(self.left.tuples())
        self.right_elems = sorted(self.right.tuples())
        self.left_rel = _try_restrict(rel, self.left.names)

    def proj_left(self, t):
        return tuple(t[i] for i in self.li)

    def proj_right(self, t):
        return tuple(t[i] for i in self.ri)

    def merge(self, lt, rt):
        t = [0] * len(self.sig)
        for i, v in zip(self.li, lt):
            t[i] = v
        for i, v in zip(self.ri, rt):
            t[i] = v
        return tuple(t)

    def prod(self, ls, rs) -> frozenset:
        return frozenset(self.merge(a, b) for a in ls for b in rs)

    def cyl_left(self, w) -> frozenset:
        """W x Pi'' inside the full space."""
        return frozenset(t for t in self.pi if self.proj_left(t) in w)

    def mu_full(self, s: frozenset) -> frozenset:
        return _mu_tuples(self.rel, s)

    def comp_mu_left(self, w: frozenset) -> frozenset:
        """Component minimization: by the block restriction when it exists,
        through the cylinder otherwise."""
        if self.left_rel is not None:
            return _mu_tuples(self.left_rel, w)
        return frozenset(self.proj_left(t) for t in self.mu_full(self.cyl_left(w)))

    def restrict_left(self, s: frozenset) -> frozenset:
        return frozenset(self.proj_left(t) for t in s)

    def restrict_right(self, s: frozenset) -> frozenset:
        return frozenset(self.proj_right(t) for t in s)

    def big_full(self, a: frozenset, s: frozenset) -> bool:
        return self.mu_full(s) <= a

    def big_left(self, t: frozenset, w: frozenset) -> bool:
        return self.comp_mu_left(w) <= t


def projected_mu(rel: PreferenceStructure, kept: Iterable[str], w: frozenset) -> frozenset:
    """Component mu on the block `kept` (restriction when coherent, cylinder
    otherwise; see the module docstring)."""
    return _Ctx(rel, kept).comp_mu_left(frozenset(w))


def _sorted_sets(x: frozenset) -> list:
    return sorted(x)


def _witness(orient_left, **sets) -> dict:
    out = {"projected_side": sorted(orient_left)}
    for k, v in sets.items():
        out[k] = _sorted_sets(v) if isinstance(v, (set, frozenset)) else v
    return out


def _cyl_mu_left(ctx: _Ctx, w: frozenset) -> frozenset:
    """mu(W x Pi'')|X' with the full-space relation (no block restriction)."""
    return frozenset(ctx.proj_left(t) for t in ctx.mu_full(ctx.cyl_left(w)))


def _check_mu_projection(ctx: _Ctx, budget: Budget, component: bool):
    """Sweep of  lhs(S|kept) <= mu(S)|kept  over all S.

    With component=True the left side is the block operator (this decides
    (mu*2): the consequent is monotone in Gamma, so the hardest instance
    Gamma = mu(S) decides the universally quantified rule).  With
    component=False the left side is mu of the cylinder under the full
    relation, which is (mu*3) verbatim with kept = X''.
    """
    n = len(ctx.pi)
    kept = ctx.left.names
    lhs_fn = ctx.comp_mu_left if component else (lambda w: _cyl_mu_left(ctx, w))
    if _masks is not None and n >= _FAST_MIN_TUPLES and 2 ** n <= budget.exhaustive:
        comp_strict = None
        if component and ctx.left_rel is not None:
            comp_strict = ctx.left_rel.strict
        bad, space = _masks.projected_mu_failures(ctx.rel.strict, ctx.sig, kept, comp_strict)
        if not bad:
            return None, True, 2 ** n
        best = min(bad, key=lambda m: (bin(m).count("1"), sorted(space.tuples(m))))
        sigma = space.tuples(best)
        return sigma, True, 2 ** n
    sets, exhaustive = _iter_subsets(ctx.pi, budget, budget.rng())
    checked = 0
    for sigma in sets:
        checked += 1
        lhs = lhs_fn(ctx.restrict_left(sigma))
        rhs = ctx.restrict_left(ctx.mu_full(sigma))
        if not lhs <= rhs:
            return sigma, exhaustive, checked
    return None, exhaustive, checked


def _rule_mu2(ctx: _Ctx, budget: Budget):
    sigma, exhaustive, checked = _check_mu_projection(ctx, budget, component=True)
    if sigma is None:
        return None, exhaustive, checked
    gamma = ctx.mu_full(sigma)
    w = _witness(
        ctx.left.names,
        sigma=sigma,
        gamma=gamma,
        lhs=ctx.comp_mu_left(ctx.restrict_left(sigma)),
        rhs=ctx.restrict_left(gamma),
    )
    return w, exhaustive, checked


def _rule_mu3(ctx: _Ctx, budget: Budget):
    # mu(Pi' x S|X'')|X'' <= mu(S)|X'' : kept side is X'', so run the sweep
    # in the mirrored context.
    mirrored = _Ctx(ctx.rel, ctx.right.names)
    sigma, exhaustive, checked = _check_mu_projection(mirrored, budget, component=False)
    if sigma is None:
        return None, exhaustive, checked
    w = _witness(
        ctx.left.names,
        sigma=sigma,
        lhs=_cyl_mu_left(mirrored, mirrored.restrict_left(sigma)),
        rhs=mirrored.restrict_left(mirrored.mu_full(sigma)),
    )
    return w, exhaustive, checked


def _rule_mu1(ctx: _Ctx, budget: Budget):
    rctx = _Ctx(ctx.rel, ctx.right.names)
    total = 2 ** len(ctx.left_elems) * 2 ** len(ctx.right_elems)
    rng = budget.rng()
    if total <= budget.exhaustive:
        pairs = ((l, r) for l in all_subsets(ctx.left_elems) for r in all_subsets(ctx.right_elems))
        exhaustive = True
        checked = total
    else:
        pairs = (
            (frozenset(x for x in ctx.left_elems if rng.random() < 0.5),
             frozenset(x for x in ctx.right_elems if rng.random() < 0.5))
            for _ in range(budget.samples)
        )
        exhaustive = False
        checked = budget.samples
    for ls, rs in pairs:
        lhs = ctx.mu_full(ctx.prod(ls, rs))
        rhs = ctx.prod(ctx.comp_mu_left(ls), rctx.comp_mu_left(rs))
        if lhs != rhs:
            w = _witness(ctx.left.names, sigma_left=ls, sigma_right=rs, lhs=lhs, rhs=rhs)
            return w, exhaustive, checked
    return None, exhaustive, checked


def _rule_s1(ctx: _Ctx, budget: Budget):
    rctx = _Ctx(ctx.rel, ctx.right.names)
    nl, nr = len(ctx.left_elems), len(ctx.right_elems)
    rng = budget.rng()

    def instantiations():
        if 2 ** nl * 2 ** nr * 2 ** (nl * nr) <= budget.exhaustive:
            for ls in all_subsets(ctx.left_elems):
                for rs in all_subsets(ctx.right_elems):
                    p = ctx.prod(ls, rs)
                    for delta in all_subsets(sorted(p)):
                        yield ls, rs, p, delta, True
        else:
            for _ in range(budget.samples):
                ls = frozenset(x for x in ctx.left_elems if rng.random() < 0.5)
                rs = frozenset(x for x in ctx.right_elems if rng.random() < 0.5)
                p = ctx.prod(ls, rs)
                delta = frozenset(x for x in p if rng.random() < 0.5)
                yield ls, rs, p, delta, False

    checked = 0
    exhaustive = True
    for ls, rs, p, delta, exh in instantiations():
        checked += 1
        exhaustive &= exh
        lhs = ctx.big_full(delta, p)
        mu_l = ctx.comp_mu_left(ls)
        mu_r = rctx.comp_mu_left(rs)
        rhs = any(
            mu_l <= gl and mu_r <= gr and ctx.prod(gl, gr) <= delta
            for gl in all_subsets(sorted(ls))
            for gr in all_subsets(sorted(rs))
        )
        if lhs != rhs:
            w = _witness(ctx.left.names, sigma_left=ls, sigma_right=rs, delta=delta,
                         big=lhs, product_decomposition=rhs)
            return w, exhaustive, checked
    return None, exhaustive, checked


def _rule_s1p(ctx: _Ctx, budget: Budget):
    # The weakened product rule; the biconditional presumes a nonempty
    # second block (over the empty cylinder every subset is big, which
    # would contradict the unweakened rule it is meant to follow from).
    nl, nr = len(ctx.left_elems), len(ctx.right_elems)
    rng = budget.rng()

    def instantiations():
        if 2 ** nl * 2 ** nr * 2 ** nl <= budget.exhaustive:
            for ls in all_subsets(ctx.left_elems):
                for rs in all_subsets(ctx.right_elems):
                    if not rs:
                        continue
                    for gl in all_subsets(sorted(ls)):
                        yield ls, rs, gl, True
        else:
            for _ in range(budget.samples):
                ls = frozenset(x for x in ctx.left_elems if rng.random() < 0.5)
                rs = frozenset(x for x in ctx.right_elems if rng.random() < 0.5)
                if not rs:
                    continue
                gl = frozenset(x for x in ls if rng.random() < 0.5)
                yield ls, rs, gl, False

    checked = 0
    exhaustive = True
    for ls, rs, gl, exh in instantiations():
        checked += 1
        exhaustive &= exh
        lhs = ctx.big_full(ctx.prod(gl, rs), ctx.prod(ls, rs))
        rhs = ctx.big_left(gl, ls)
        if lhs != rhs:
            w = _witness(ctx.left.names, sigma_left=ls, sigma_right=rs, gamma_left=gl,
                         big_product=lhs, big_component=rhs)
            return w, exhaustive, checked
    return None, exhaustive, checked


def _rule_s2(ctx: _Ctx, budget: Budget):
    rng = budget.rng()
    n = len(ctx.pi)

    def instantiations():
        if 3 ** n <= budget.exhaustive:
            for sigma in all_subsets(ctx.pi):
                for gamma in all_subsets(sorted(sigma)):
                    yield sigma, gamma, True
        else:
            for _ in range(budget.samples):
                sigma = frozenset(x for x in ctx.pi if rng.random() < 0.5)
                gamma = frozenset(x for x in sigma if rng.random() < 0.5)
                yield sigma, gamma, False

    checked = 0
    exhaustive = True
    for sigma, gamma, exh in instantiations():
        checked += 1
        exhaustive &= exh
        if not ctx.big_full(gamma, sigma):
            continue
        if not ctx.big_left(ctx.restrict_left(gamma), ctx.restrict_left(sigma)):
            w = _witness(ctx.left.names, sigma=sigma, gamma=gamma,
                         lhs=ctx.comp_mu_left(ctx.restrict_left(sigma)),
                         rhs=ctx.restrict_left(gamma))
            return w, exhaustive, checked
    return None, exhaustive, checked


def _rule_s3(ctx: _Ctx, budget: Budget):
    # (S*3): A <= S big  =>  some big B <= Pi' x S|X'' with B|X'' <= A|X''.
    # Orientation: X' = ctx.left is the liberated block.
    mirrored = _Ctx(ctx.rel, ctx.right.names)
    rng = budget.rng()
    n = len(ctx.pi)

    def instantiations():
        if 3 ** n <= budget.exhaustive:
            for sigma in all_subsets(ctx.pi):
                for a in all_subsets(sorted(sigma)):
                    yield sigma, a, True
        else:
            for _ in range(budget.samples):
                sigma = frozenset(x for x in ctx.pi if rng.random() < 0.5)
                a = frozenset(x for x in sigma if rng.random() < 0.5)
                yield sigma, a, False

    checked = 0
    exhaustive = True
    for sigma, a, exh in instantiations():
        checked += 1
        exhaustive &= exh
        if not ctx.big_full(a, sigma):
            continue
        d = mirrored.cyl_left(mirrored.restrict_left(sigma))  # Pi' x S|X''
        a_r = mirrored.restrict_left(a)
        mu_d = ctx.mu_full(d)
        if len(d) <= 6:
            found = any(
                ctx.big_full(b, d) and mirrored.restrict_left(b) <= a_r
                for b in all_subsets(sorted(d))
            )
        else:
            # every big B contains mu(D), whose projection already decides it
            found = mirrored.restrict_left(mu_d) <= a_r
        if not found:
            w = _witness(ctx.left.names, sigma=sigma, a=a,
                         cylinder=d, mu_cylinder=mu_d)
            return w, exhaustive, checked
    return None, exhaustive, checked


_RULES: dict[str, Callable] = {
    "s1": _rule_s1,
    "s1p": _rule_s1p,
    "s2": _rule_s2,
    "s3": _rule_s3,
    "mu1": _rule_mu1,
    "mu2": _rule_mu2,
    "mu3": _rule_mu3,
}

_SYMMETRIC_RULES = {"s1", "mu1"}


def check_rule(
    rule: str,
    rel: PreferenceStructure,
    split: CoordSplit,
    budget: Optional[Budget] = None,
) -> Verdict:
    """Check one product rule on the split, in both orientations.

    Names: s1, s1p (the weakened product form), s2, s3, mu1, mu2, mu3.
    Verdicts carry a minimal witness (smallest Sigma by (size, lex order))
    and whether the sweep was exhaustive or sampled.
    """
    key = rule.lower().replace("*", "").replace("'", "p")
    if key not in _RULES:
        raise ValueError(f"unknown rule {rule!r} (expected one of {sorted(_RULES)})")
    budget = budget or Budget()
    split.validate_for(rel.sig)
    orientations = [split.left]
    if key not in _SYMMETRIC_RULES:
        orientations.append(split.right)
    checked = 0
    exhaustive = True
    for left_names in orientations:
        ctx = _Ctx(rel, left_names)
        witness, exh, n = _RULES[key](ctx, budget)
        checked += n
        exhaustive &= exh
        if witness is not None:
            return Verdict(key, "fails", witness, exhaustive, checked)
    return Verdict(key, "holds", None, exhaustive, checked)


def mu_product_check(rel: PreferenceStructure, split: CoordSplit, s: ModelSet) -> dict:
    """Compare mu(S) with the product of the blockwise minimizations of S's
    restrictions; they can differ on non-product S even for smooth Hamming
    relations."""
    split.validate_for(rel.sig)
    if rel.sig != s.sig:
        raise ValueError("signature mismatch")
    ctx = _Ctx(rel, sorted(split.left))
    rctx = _Ctx(rel, sorted(split.right))
    mu_s = _mu_tuples(rel, s.tuples)
    left_mu = ctx.comp_mu_left(ctx.restrict_left(s.tuples))
    right_mu = rctx.comp_mu_left(rctx.restrict_left(s.tuples))
    prod = ctx.prod(left_mu, right_mu)
    return {
        "mu": mu_s,
        "left_mu": left_mu,
        "right_mu": right_mu,
        "component_product": prod,
        "equal": mu_s == prod,
    }


# ------------------------------------------------------------- representation

def relation_from_mu(
    mu_oracle: Callable[[ModelSet], ModelSet], sig: Signature
) -> PreferenceStructure:
    """Read the strict relation off two-element sets: a < b iff b drops out
    of mu({a, b})."""
    universe = sorted(sig.tuples())
    pairs = set()
    for a in universe:
        for b in universe:
            if a == b:
                continue
            pair = ModelSet.of(sig, [a, b])
            m = mu_oracle(pair)
            if not m.tuples <= pair.tuples:
                raise ValueError(
                    f"mu oracle returned a non-subset on {{{a}, {b}}}: {sorted(m.tuples)}"
                )
            if b not in m.tuples:
                pairs.add((a, b))
    return PreferenceStructure(sig, frozenset(pairs))


# ------------------------------------------------------------------ generators

def random_irreflexive(sig: Signature, rng: random.Random, density: float = 0.25) -> PreferenceStructure:
    universe = sorted(sig.tuples())
    pairs = {
        (a, b)
        for a in universe
        for b in universe
        if a != b and rng.random() < density
    }
    return PreferenceStructure(sig, frozenset(pairs))


def random_strict_order(sig: Signature, rng: random.Random, density: float = 0.4) -> PreferenceStructure:
    """Transitive closure of a random DAG: a strict partial order, hence smooth."""
    universe = sorted(sig.tuples())
    order = universe[:]
    rng.shuffle(order)
    n = len(order)
    below = {t: set() for t in order}  # strictly-below sets
    for j in range(n):
        for i in range(j):
            if rng.random() < density:
                below[order[j]].add(order[i])
                below[order[j]] |= below[order[i]]
    pairs = {(a, b) for b, downs in below.items() for a in downs}
    return PreferenceStructure(sig, frozenset(pairs))


def random_coordinate_orders(sig: Signature, rng: random.Random) -> PreferenceStructure:
    """Componentwise structure: per coordinate choose to minimize, maximize,
    or leave free; weak preference holds iff it holds on every coordinate.

    Hamming with respect to every split of the signature, and smooth.
    """
    modes = {name: rng.choice(("free", "min", "max")) for name, _ in sig.coords}

    def weak(a, b):
        for (name, _), x, y in zip(sig.coords, a, b):
            m = modes[name]
            if m == "free" and x != y:
                return False
            if m == "min" and x > y:
                return False
            if m == "max" and x < y:
                return False
        return True

    universe = sorted(sig.tuples())
    pairs = {
        (a, b) for a in universe for b in universe if a != b and weak(a, b)
    }
    return PreferenceStructure(sig, frozenset(pairs))
