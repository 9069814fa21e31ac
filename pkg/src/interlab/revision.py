"""Hamming distances between assignments and distance-based revision.

Two distance flavours over a signature.  The set variant records the
coordinates where two tuples disagree, compared by strict inclusion, so
distances need not be comparable and a disagreement in one place cannot be
compensated elsewhere.  The counting variant adds up per-coordinate
contributions (optionally weighted per coordinate, optionally refined by a
per-value metric) and is totally ordered.

The bar operator X | Y picks the elements of Y realizing a minimal
distance to X; revising a knowledge base by new information keeps the
models of the new formula closest to the old ones.  When both operands
factor over a coordinate split, the bar operator factors blockwise, which
is what makes the induced revision decomposable.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional, Union

from .logic import BOOL, Algebra, Formula, models
from .space import CoordSplit, ModelSet, Partition, Signature, factorize, product, reorder, restrict

Number = Union[int, float]


@dataclass(frozen=True)
class DistanceModel:
    """Pairwise distance assignment: 'set' or 'counting' variant.

    weights and value_metrics only apply to the counting variant; the
    metric defaults to the discrete 0/1 split per coordinate.
    """

    variant: str
    weights: tuple[tuple[str, Number], ...] = ()
    value_metrics: tuple[tuple[str, int, int, Number], ...] = ()

    def __post_init__(self):
        if self.variant not in ("set", "counting"):
            raise ValueError("variant must be 'set' or 'counting'")
        for name, w in self.weights:
            if w <= 0:
                raise ValueError(f"weight of {name!r} must be positive")
        for name, a, b, v in self.value_metrics:
            if v < 0:
                raise ValueError(f"metric of {name!r} must be non-negative")

    @classmethod
    def set_variant(cls) -> "DistanceModel":
        return cls("set")

    @classmethod
    def counting(
        cls,
        weights: Optional[Mapping[str, Number]] = None,
        value_metrics: Optional[Mapping[tuple[str, int, int], Number]] = None,
    ) -> "DistanceModel":
        w = tuple(sorted((weights or {}).items()))
        m = tuple(sorted((k[0], k[1], k[2], v) for k, v in (value_metrics or {}).items()))
        return cls("counting", w, m)

    def weight(self, name: str) -> Number:
        for n, w in self.weights:
            if n == name:
                return w
        return 1

    def metric(self, name: str, a: int, b: int) -> Number:
        if a == b:
            return 0
        for n, x, y, v in self.value_metrics:
            if n == name and {x, y} == {a, b}:
                return v
        return 1


@lru_cache(maxsize=1 << 20)
def distance(d: DistanceModel, sig: Signature, x: tuple, y: tuple):
    """Disagreement set (set variant) or weighted disagreement sum (counting)."""
    if len(x) != len(sig) or len(y) != len(sig):
        raise ValueError("tuple length does not match the signature")
    if d.variant == "set":
        return frozenset(n for (n, _), a, b in zip(sig.coords, x, y) if a != b)
    return sum(
        d.weight(n) * d.metric(n, a, b)
        for (n, _), a, b in zip(sig.coords, x, y)
        if a != b
    )


def dist_lt(d: DistanceModel, a, b) -> bool:
    """Strict comparison: < for counting values, proper inclusion for sets."""
    if d.variant == "set":
        return a < b  # frozenset proper subset
    return a < b


def dist_le(d: DistanceModel, a, b) -> bool:
    return a == b or dist_lt(d, a, b)


def bar(x: ModelSet, y: ModelSet, d: DistanceModel) -> ModelSet:
    """X | Y: the Y-elements hit by a globally minimal X-Y distance.

    In the set variant several incomparable distances can all be minimal.
    Empty operands are rejected (the operator presumes a nonempty result).
    """
    if x.sig != y.sig:
        raise ValueError("signature mismatch")
    if not x.tuples or not y.tuples:
        raise ValueError("bar operator needs nonempty operands")
    values = {}
    for b_t in y.tuples:
        for a_t in x.tuples:
            values.setdefault(distance(d, x.sig, a_t, b_t), []).append(b_t)
    keys = list(values)
    minimal = [
        k for k in keys if not any(dist_lt(d, other, k) for other in keys)
    ]
    hits = frozenset(t for k in minimal for t in values[k])
    return ModelSet(y.sig, hits)


def minimal_distances(x: ModelSet, y: ModelSet, d: DistanceModel) -> list:
    """The minimal distance values realized between X and Y (one for the
    counting variant, possibly several incomparable sets for the set one)."""
    keys = {distance(d, x.sig, a, b) for a in x.tuples for b in y.tuples}
    return sorted(
        (k for k in keys if not any(dist_lt(d, o, k) for o in keys)),
        key=lambda v: (sorted(v),) if isinstance(v, frozenset) else (v,),
    )


# ------------------------------------------------------- distance structure

@dataclass(frozen=True)
class GhdReport:
    """Literal generalized-Hamming-distance check plus the weaker
    compositionality the product facts rely on."""

    strict_iff: bool
    compositional: bool
    strict_witness: Optional[dict]
    compositional_witness: Optional[dict]


def is_generalized_hamming_distance(
    d: DistanceModel, sig: Signature, split: CoordSplit
) -> GhdReport:
    """Check the two readings of distance/split compatibility.

    strict_iff: a total order on all realized values, and comparisons on
    the full space mirror the componentwise comparisons exactly.  This
    literal reading fails for both built-in variants on nondegenerate
    splits (witness pairs with component distances (1,0) against (0,1)).

    compositional: the full distance is a function of the two component
    distances, strictly monotone in each argument; this is what the
    blockwise product facts actually use.
    """
    split.validate_for(sig)
    left = sorted(split.left)
    right = sorted(split.right)
    left_sig = sig.subsignature(left)
    right_sig = sig.subsignature(right)
    li = [sig.index(n) for n in left_sig.names]
    ri = [sig.index(n) for n in right_sig.names]
    universe = sorted(sig.tuples())
    pairs = [(a, b) for a in universe for b in universe]

    def parts(pair):
        a, b = pair
        return (
            distance(d, left_sig, tuple(a[i] for i in li), tuple(b[i] for i in li)),
            distance(d, right_sig, tuple(a[i] for i in ri), tuple(b[i] for i in ri)),
        )

    full = {pair: distance(d, sig, *pair) for pair in pairs}

    # (1) total order on the realized values across the three spaces
    z = set(full.values())
    for pair in pairs:
        l, r = parts(pair)
        z.add(l)
        z.add(r)
    strict_witness = None
    zs = sorted(z, key=lambda v: (sorted(v),) if isinstance(v, frozenset) else (v,))
    for i, a in enumerate(zs):
        for b in zs[i + 1:]:
            if not (dist_le(d, a, b) or dist_le(d, b, a)):
                strict_witness = {"incomparable_values": [a, b]}
                break
        if strict_witness:
            break

    # (2) the componentwise iff over all pairs of pairs
    if strict_witness is None:
        done = False
        for p1 in pairs:
            for p2 in pairs:
                lhs = dist_le(d, full[p1], full[p2])
                l1, r1 = parts(p1)
                l2, r2 = parts(p2)
                rhs = dist_le(d, l1, l2) and dist_le(d, r1, r2)
                if lhs != rhs:
                    strict_witness = {
                        "pair_1": p1,
                        "pair_2": p2,
                        "full": [full[p1], full[p2]],
                        "left": [l1, l2],
                        "right": [r1, r2],
                    }
                    done = True
                    break
            if done:
                break

    # compositionality: determination plus strict monotonicity per argument
    comp_witness = None
    table: dict = {}
    for pair in pairs:
        key = parts(pair)
        val = full[pair]
        if key in table and table[key][0] != val:
            comp_witness = {
                "components": key,
                "values": [table[key][0], val],
                "pairs": [table[key][1], pair],
            }
            break
        table.setdefault(key, (val, pair))
    if comp_witness is None:
        items = list(table.items())
        for (l1, r1), (v1, _) in items:
            for (l2, r2), (v2, _) in items:
                if r1 == r2 and dist_lt(d, l1, l2) and not dist_lt(d, v1, v2):
                    comp_witness = {"fixed": r1, "varied": [l1, l2], "values": [v1, v2]}
                    break
                if l1 == l2 and dist_lt(d, r1, r2) and not dist_lt(d, v1, v2):
                    comp_witness = {"fixed": l1, "varied": [r1, r2], "values": [v1, v2]}
                    break
            if comp_witness:
                break
    return GhdReport(strict_witness is None, comp_witness is None,
                     strict_witness, comp_witness)


# ----------------------------------------------------------- blockwise facts

@dataclass(frozen=True)
class HdProductReport:
    mode: str  # "product" | "general"
    factorizable: dict
    side_conditions: Optional[dict]
    lhs: ModelSet
    rhs: Optional[ModelSet]
    components: Optional[dict]
    equal: Optional[bool]


def _split_partition(sig: Signature, split: CoordSplit) -> Partition:
    return Partition.of(split.left, split.right)


def check_hd_product(
    s1: ModelSet, s2: ModelSet, d: DistanceModel, split: CoordSplit
) -> HdProductReport:
    """Compare (S1 | S2) against the product of the blockwise bars.

    Product mode (both operands factor over the split) states the equality
    outright.  General mode works with the restrictions; equality is
    claimed only under the two product-inclusion side conditions, which are
    checked and reported.
    """
    sig = s1.sig
    if s2.sig != sig:
        raise ValueError("signature mismatch")
    split.validate_for(sig)
    part = _split_partition(sig, split)
    f1 = factorize(s1, part)
    f2 = factorize(s2, part)
    factorizable = {"s1": f1 is not None, "s2": f2 is not None}
    lhs = bar(s1, s2, d)
    left = sorted(split.left)
    right = sorted(split.right)
    s1l, s1r = restrict(s1, left), restrict(s1, right)
    s2l, s2r = restrict(s2, left), restrict(s2, right)
    bl = bar(s1l, s2l, d)
    br = bar(s1r, s2r, d)
    rhs = reorder(product([bl, br]), sig)
    components = {"left": bl, "right": br}
    if f1 is not None and f2 is not None:
        return HdProductReport("product", factorizable, None, lhs, rhs,
                               components, lhs == rhs)
    rev_l = bar(s2l, s1l, d)
    rev_r = bar(s2r, s1r, d)
    cond1 = rhs.issubset(s2)
    cond2 = reorder(product([rev_l, rev_r]), sig).issubset(s1)
    side = {"forward_product_in_s2": cond1, "reverse_product_in_s1": cond2}
    if cond1 and cond2:
        return HdProductReport("general", factorizable, side, lhs, rhs,
                               components, lhs == rhs)
    return HdProductReport("general", factorizable, side, lhs, None,
                           components, None)


@dataclass(frozen=True)
class HdProjectionReport:
    antecedent: bool
    consequent: bool
    implication: bool
    antecedent_witness: Optional[tuple]
    consequent_witness: Optional[tuple]


def check_hd_projection(
    s: ModelSet, g: ModelSet, d: DistanceModel, split: CoordSplit
) -> HdProjectionReport:
    """Pi | S <= G entails Pi' | (S|X') <= G|X' : evaluate both sides."""
    sig = s.sig
    if g.sig != sig:
        raise ValueError("signature mismatch")
    split.validate_for(sig)
    if not s.tuples:
        raise ValueError("S must be nonempty")
    full = ModelSet.full(sig)
    revised = bar(full, s, d)
    aw = revised.subset_witness(g)
    left = sorted(split.left)
    s_l = restrict(s, left)
    g_l = restrict(g, left)
    revised_l = bar(ModelSet.full(sig.subsignature(left)), s_l, d)
    cw = revised_l.subset_witness(g_l)
    antecedent = aw is None
    consequent = cw is None
    return HdProjectionReport(
        antecedent, consequent, (not antecedent) or consequent, aw, cw
    )


# -------------------------------------------------------------------- revise

@dataclass(frozen=True)
class ReviseReport:
    result: ModelSet
    min_distance: list
    decomposed: bool


def parikh_revise(
    k: Union[Formula, ModelSet],
    phi: Union[Formula, ModelSet],
    d: DistanceModel,
    sig: Optional[Signature] = None,
    split: Optional[CoordSplit] = None,
    alg: Algebra = BOOL,
) -> ReviseReport:
    """Models of phi closest to the models of k; blockwise when possible.

    With a split given and both operands factoring over it, the result is
    computed componentwise and cross-checked against the direct bar; the
    report says whether the decomposition applied.
    """
    if sig is None:
        for operand in (k, phi):
            if isinstance(operand, ModelSet):
                sig = operand.sig
                break
    if sig is None:
        names = sorted(k.atoms() | phi.atoms())
        sig = Signature.of(*((n, alg.value_count) for n in names))
    m_k = models(k, sig, alg) if isinstance(k, Formula) else k
    m_phi = models(phi, sig, alg) if isinstance(phi, Formula) else phi
    if not m_k.tuples or not m_phi.tuples:
        raise ValueError("revision needs consistent operands")
    direct = bar(m_k, m_phi, d)
    decomposed = False
    if split is not None:
        report = check_hd_product(m_k, m_phi, d, split)
        if report.mode == "product":
            decomposed = True
            if report.rhs != direct:
                raise RuntimeError(
                    "blockwise revision disagrees with the direct computation"
                )
    return ReviseReport(direct, minimal_distances(m_k, m_phi, d), decomposed)
