"""Finite many-valued model spaces and their restriction/product algebra.

A signature is an ordered list of named coordinates, each with a finite value
domain represented as the integers 0..k-1 (boolean coordinates use k=2 with
0=false, 1=true).  A model set is a plain set of total assignments (integer
tuples) over a signature; classical consequence between model sets is subset
inclusion.

Re-ordering never happens silently: tuples always follow the signature's
coordinate order, and operations that combine different signatures
(`expand`, `product`) concatenate; `reorder` applies an explicit
name-based index map when a different layout is needed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, product as _cartesian
from typing import Iterable, Iterator, Optional, Sequence

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


@dataclass(frozen=True)
class Signature:
    """Ordered coordinates (name, domain size); fixes the tuple layout."""

    coords: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for name, k in self.coords:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"bad coordinate name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate coordinate name {name!r}")
            seen.add(name)
            if not isinstance(k, int) or k < 1:
                raise ValueError(f"domain size of {name!r} must be >= 1, got {k!r}")

    @classmethod
    def of(cls, *coords: tuple[str, int]) -> "Signature":
        return cls(tuple((str(n), int(k)) for n, k in coords))

    @classmethod
    def boolean(cls, *names: str) -> "Signature":
        return cls(tuple((n, 2) for n in names))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.coords):
            if n == name:
                return i
        raise ValueError(f"unknown coordinate {name!r}")

    def domain_size(self, name: str) -> int:
        return self.coords[self.index(name)][1]

    def size(self) -> int:
        n = 1
        for _, k in self.coords:
            n *= k
        return n

    def tuples(self) -> Iterator[tuple[int, ...]]:
        """All assignments, in lexicographic (sorted) order."""
        return _cartesian(*(range(k) for _, k in self.coords))

    def subsignature(self, names: Iterable[str]) -> "Signature":
        """Sub-signature on `names`, keeping this signature's order."""
        wanted = set(names)
        unknown = wanted - set(self.names)
        if unknown:
            raise ValueError(f"unknown coordinates {sorted(unknown)}")
        return Signature(tuple(c for c in self.coords if c[0] in wanted))

    def concat(self, other: "Signature") -> "Signature":
        overlap = set(self.names) & set(other.names)
        if overlap:
            raise ValueError(f"overlapping coordinates {sorted(overlap)}")
        return Signature(self.coords + other.coords)


@dataclass(frozen=True)
class ModelSet:
    """Finite set of total assignments over a signature."""

    sig: Signature
    tuples: frozenset[tuple[int, ...]]

    def __post_init__(self):
        n = len(self.sig)
        for t in self.tuples:
            if len(t) != n:
                raise ValueError(f"tuple {t} has wrong length for {self.sig.names}")
            for v, (name, k) in zip(t, self.sig.coords):
                if not 0 <= v < k:
                    raise ValueError(f"value {v} out of range for coordinate {name!r}")

    @classmethod
    def of(cls, sig: Signature, tuples: Iterable[Sequence[int]]) -> "ModelSet":
        return cls(sig, frozenset(tuple(t) for t in tuples))

    @classmethod
    def empty(cls, sig: Signature) -> "ModelSet":
        return cls(sig, frozenset())

    @classmethod
    def full(cls, sig: Signature) -> "ModelSet":
        return cls(sig, frozenset(sig.tuples()))

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(sorted(self.tuples))

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuples

    def is_full(self) -> bool:
        return len(self.tuples) == self.sig.size()

    def issubset(self, other: "ModelSet") -> bool:
        if self.sig != other.sig:
            raise ValueError("signature mismatch")
        return self.tuples <= other.tuples

    def subset_witness(self, other: "ModelSet") -> Optional[tuple[int, ...]]:
        """Smallest tuple of self missing from other, None if self <= other."""
        diff = self.tuples - other.tuples
        return min(diff) if diff else None


def restrict(s: ModelSet, names: Iterable[str]) -> ModelSet:
    """Project every tuple onto `names` (original coordinate order kept).

    Restriction of a nonempty set to no coordinates is {()}; restriction of
    the empty set is empty.
    """
    sub = s.sig.subsignature(names)
    idx = [s.sig.index(n) for n in sub.names]
    return ModelSet(sub, frozenset(tuple(t[i] for i in idx) for t in s.tuples))


def expand(s: ModelSet, extra: Signature) -> ModelSet:
    """Cylindrify: S x (full product over `extra`), signatures concatenated."""
    sig = s.sig.concat(extra)
    free = list(_cartesian(*(range(k) for _, k in extra.coords)))
    return ModelSet(sig, frozenset(t + f for t in s.tuples for f in free))


def reorder(s: ModelSet, target: Signature) -> ModelSet:
    """Rewrite S over a permuted signature via an explicit index map."""
    if sorted(s.sig.coords) != sorted(target.coords):
        raise ValueError("target signature is not a permutation of the source")
    idx = [s.sig.index(n) for n in target.names]
    return ModelSet(target, frozenset(tuple(t[i] for i in idx) for t in s.tuples))


def liberate(s: ModelSet, names: Iterable[str]) -> ModelSet:
    """Free the given coordinates: S|kept x (all values on `names`), same signature.

    This is the in-place form of cylindrification used by the interpolant
    constructions: the result equals restrict(S, kept) x full(names), laid
    out in S's own coordinate order.
    """
    free = set(names)
    unknown = free - set(s.sig.names)
    if unknown:
        raise ValueError(f"unknown coordinates {sorted(unknown)}")
    if not free:
        return s
    kept_idx = [i for i, (n, _) in enumerate(s.sig.coords) if n not in free]
    free_idx = [i for i, (n, _) in enumerate(s.sig.coords) if n in free]
    base = {tuple(t[i] for i in kept_idx) for t in s.tuples}
    domains = [range(s.sig.coords[i][1]) for i in free_idx]
    out = set()
    for kept in base:
        for vals in _cartesian(*domains):
            t = [0] * len(s.sig)
            for i, v in zip(kept_idx, kept):
                t[i] = v
            for i, v in zip(free_idx, vals):
                t[i] = v
            out.add(tuple(t))
    return ModelSet(s.sig, frozenset(out))


def essential_split(s: ModelSet) -> tuple[frozenset[str], frozenset[str]]:
    """Split coordinates into (irrelevant, relevant) for S.

    Coordinate i is irrelevant when S is closed under changing its value,
    i.e. S = S|rest x X_i.  Applied literally: for the empty set and for
    one-valued domains every coordinate is irrelevant.
    """
    irr = []
    for i, (name, k) in enumerate(s.sig.coords):
        closed = all(
            t[:i] + (v,) + t[i + 1:] in s.tuples for t in s.tuples for v in range(k)
        )
        if closed:
            irr.append(name)
    irrelevant = frozenset(irr)
    return irrelevant, frozenset(s.sig.names) - irrelevant


def irrelevant(s: ModelSet) -> frozenset[str]:
    return essential_split(s)[0]


def relevant(s: ModelSet) -> frozenset[str]:
    return essential_split(s)[1]


@dataclass(frozen=True)
class CoordSplit:
    """Disjoint two-block cover of a signature's coordinates."""

    left: frozenset[str]
    right: frozenset[str]

    def __post_init__(self):
        if self.left & self.right:
            raise ValueError("split blocks overlap")

    @classmethod
    def of(cls, left: Iterable[str], right: Iterable[str]) -> "CoordSplit":
        return cls(frozenset(left), frozenset(right))

    @classmethod
    def cover(cls, sig: Signature, left: Iterable[str]) -> "CoordSplit":
        left_set = frozenset(left)
        return cls(left_set, frozenset(sig.names) - left_set)

    def swapped(self) -> "CoordSplit":
        return CoordSplit(self.right, self.left)

    def validate_for(self, sig: Signature) -> None:
        if self.left | self.right != set(sig.names):
            raise ValueError("split does not cover the signature")


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint nonempty coordinate blocks."""

    blocks: tuple[frozenset[str], ...]

    def __post_init__(self):
        seen: set[str] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty partition block")
            if b & seen:
                raise ValueError("partition blocks overlap")
            seen |= b

    @classmethod
    def of(cls, *blocks: Iterable[str]) -> "Partition":
        return cls(tuple(frozenset(b) for b in blocks))

    def validate_for(self, sig: Signature) -> None:
        covered = frozenset().union(*self.blocks) if self.blocks else frozenset()
        if covered != set(sig.names):
            raise ValueError("partition does not cover the signature")


def product(factors: Sequence[ModelSet]) -> ModelSet:
    """Combine factors over disjoint signatures (concatenated layout)."""
    if not factors:
        return ModelSet.full(Signature(()))
    sig = factors[0].sig
    for f in factors[1:]:
        sig = sig.concat(f.sig)
    tuples = set()
    for parts in _cartesian(*(sorted(f.tuples) for f in factors)):
        t: tuple[int, ...] = ()
        for p in parts:
            t = t + p
        tuples.add(t)
    return ModelSet(sig, frozenset(tuples))


def factorize(s: ModelSet, partition: Partition) -> Optional[list[ModelSet]]:
    """Factors S|K for the blocks when S equals their product, else None.

    S is always a subset of the product of its block restrictions, so
    equality holds exactly when the cardinalities match.
    """
    partition.validate_for(s.sig)
    factors = [restrict(s, block) for block in partition.blocks]
    n = 1
    for f in factors:
        n *= len(f)
    return factors if n == len(s) else None


def modelset_to_json(s: ModelSet) -> dict:
    return {
        "signature": [{"name": n, "k": k} for n, k in s.sig.coords],
        "models": [list(t) for t in sorted(s.tuples)],
    }


def modelset_from_json(doc: dict) -> ModelSet:
    sig = Signature.of(*((c["name"], c["k"]) for c in doc["signature"]))
    return ModelSet.of(sig, doc["models"])


def all_subsets(tuples: Iterable[tuple[int, ...]]) -> Iterator[frozenset[tuple[int, ...]]]:
    """Every subset of the given tuples, ordered by (size, lexicographic)."""
    elems = sorted(tuples)
    for r in range(len(elems) + 1):
        for combo in combinations(elems, r):
            yield frozenset(combo)
