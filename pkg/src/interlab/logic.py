"""Propositional syntax and evaluation in pluggable finite algebras.

Grammar (precedence from high to low, `->` right-associative):

    formula  ::= iff
    iff      ::= impl ( '<->' impl )*          (left-assoc)
    impl     ::= or ( '->' impl )?             (right-assoc)
    or       ::= and ( '|' and )*
    and      ::= unary ( '&' unary )*
    unary    ::= '!' unary | 'J' unary | atom | 'true' | 'false' | '(' formula ')'
    atom     ::= [a-z][a-z0-9_]*

Two algebras ship built in: the two-valued boolean algebra, and the
four-valued Goedel algebra of three linearly ordered worlds with growing
knowledge, extended with the one-step operator J ("holds from the next
moment on; at the last moment, holds now").  Values in the four-valued
algebra count the first world where a statement becomes true: 0 = from the
first world on (the designated value), 3 = never; conjunction is max,
disjunction min, and implication returns 0 when the conclusion starts no
later than the premise.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as _cartesian
from typing import Iterable, Mapping, Optional

from .errors import ParseError, ResourceLimitError
from .space import ModelSet, Signature

# ------------------------------------------------------------------ formulas

_UNARY = ("not", "J")
_BINARY = ("and", "or", "implies", "iff")


@dataclass(frozen=True)
class Formula:
    """Immutable syntax tree; `op` is one of atom/true/false/not/J/and/or/implies/iff."""

    op: str
    name: str = ""
    args: tuple["Formula", ...] = ()

    def atoms(self) -> frozenset[str]:
        if self.op == "atom":
            return frozenset({self.name})
        out: frozenset[str] = frozenset()
        for a in self.args:
            out |= a.atoms()
        return out

    def __str__(self) -> str:
        return _format(self)


def atom(name: str) -> Formula:
    return Formula("atom", name=name)


TRUE = Formula("true")
FALSE = Formula("false")


def not_(f: Formula) -> Formula:
    return Formula("not", args=(f,))


def j_(f: Formula) -> Formula:
    return Formula("J", args=(f,))


def and_(a: Formula, b: Formula) -> Formula:
    return Formula("and", args=(a, b))


def or_(a: Formula, b: Formula) -> Formula:
    return Formula("or", args=(a, b))


def implies(a: Formula, b: Formula) -> Formula:
    return Formula("implies", args=(a, b))


def iff(a: Formula, b: Formula) -> Formula:
    return Formula("iff", args=(a, b))


_PREC = {
    "iff": 1,
    "implies": 2,
    "or": 3,
    "and": 4,
    "not": 5,
    "J": 5,
    "atom": 9,
    "true": 9,
    "false": 9,
}
_SYMBOL = {"iff": "<->", "implies": "->", "or": "|", "and": "&"}
# left-assoc ops flatten on the left, implication on the right
_RIGHT_ASSOC = {"implies"}


def _format(f: Formula) -> str:
    if f.op == "atom":
        return f.name
    if f.op in ("true", "false"):
        return f.op
    if f.op == "not":
        return "!" + _wrap(f.args[0], 5)
    if f.op == "J":
        return "J" + _wrap(f.args[0], 5)
    left, right = f.args
    p = _PREC[f.op]
    if f.op in _RIGHT_ASSOC:
        ls = _wrap(left, p + 1)
        rs = _wrap(right, p)
    else:
        ls = _wrap(left, p)
        rs = _wrap(right, p + 1)
    return f"{ls} {_SYMBOL[f.op]} {rs}"


def _wrap(f: Formula, min_prec: int) -> str:
    s = _format(f)
    return s if _PREC[f.op] >= min_prec else f"({s})"


_TOKEN_RE = re.compile(
    r"(?P<name>[a-z][a-z0-9_]*)|(?P<J>J)|(?P<not>!)|(?P<and>&)|(?P<or>\|)"
    r"|(?P<iff><->)|(?P<implies>->)|(?P<lpar>\()|(?P<rpar>\))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next_pos(self) -> int:
        return self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.tokens[self.i][1]!r}", self.next_pos())
        return f

    def iff(self) -> Formula:
        left = self.impl()
        while self.peek() == "iff":
            self.take()
            left = iff(left, self.impl())
        return left

    def impl(self) -> Formula:
        left = self.or_()
        if self.peek() == "implies":
            self.take()
            return implies(left, self.impl())
        return left

    def or_(self) -> Formula:
        left = self.and_()
        while self.peek() == "or":
            self.take()
            left = or_(left, self.and_())
        return left

    def and_(self) -> Formula:
        left = self.unary()
        while self.peek() == "and":
            self.take()
            left = and_(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "not":
            self.take()
            return not_(self.unary())
        if kind == "J":
            self.take()
            return j_(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind = self.peek()
        if kind is None:
            raise ParseError("unexpected end of input", len(self.text))
        if kind == "name":
            _, text, _ = self.take()
            if text == "true":
                return TRUE
            if text == "false":
                return FALSE
            return atom(text)
        if kind == "lpar":
            self.take()
            f = self.iff()
            if self.peek() != "rpar":
                raise ParseError("expected ')'", self.next_pos())
            self.take()
            return f
        raise ParseError(f"unexpected token {self.tokens[self.i][1]!r}", self.next_pos())


def parse_formula(text: str) -> Formula:
    """Parse the formula grammar; raises ParseError with the offset on bad input."""
    return _Parser(text).parse()


# ------------------------------------------------------------------ algebras

@dataclass(frozen=True, eq=False)
class Algebra:
    """Finite truth-value algebra: one designated value and connective tables."""

    name: str
    value_count: int
    designated: int
    bottom: int
    unary: dict[str, tuple[int, ...]]
    binary: dict[str, tuple[tuple[int, ...], ...]]

    def __post_init__(self):
        vals = range(self.value_count)
        for op, table in self.unary.items():
            if len(table) != self.value_count or any(v not in vals for v in table):
                raise ValueError(f"unary table for {op!r} is not total")
        for op, table in self.binary.items():
            if len(table) != self.value_count or any(
                len(row) != self.value_count or any(v not in vals for v in row)
                for row in table
            ):
                raise ValueError(f"binary table for {op!r} is not total")


def _bool_table(fn):
    return tuple(tuple(int(fn(a, b)) for b in (0, 1)) for a in (0, 1))


BOOL = Algebra(
    name="bool",
    value_count=2,
    designated=1,
    bottom=0,
    unary={"not": (1, 0)},
    binary={
        "and": _bool_table(lambda a, b: a and b),
        "or": _bool_table(lambda a, b: a or b),
        "implies": _bool_table(lambda a, b: (not a) or b),
        "iff": _bool_table(lambda a, b: a == b),
    },
)


def _godel4() -> Algebra:
    n = 4
    imp = tuple(tuple(0 if b <= a else b for b in range(n)) for a in range(n))
    conj = tuple(tuple(max(a, b) for b in range(n)) for a in range(n))
    disj = tuple(tuple(min(a, b) for b in range(n)) for a in range(n))
    equ = tuple(tuple(max(imp[a][b], imp[b][a]) for b in range(n)) for a in range(n))
    neg = tuple(imp[a][3] for a in range(n))
    return Algebra(
        name="godel4",
        value_count=n,
        designated=0,
        bottom=3,
        unary={"not": neg, "J": (0, 0, 1, 3)},
        binary={"and": conj, "or": disj, "implies": imp, "iff": equ},
    )


GODEL4 = _godel4()

ALGEBRAS = {"bool": BOOL, "godel4": GODEL4}


def evaluate(f: Formula, assignment: Mapping[str, int], alg: Algebra) -> int:
    """Bottom-up table evaluation of f under a total assignment."""
    if f.op == "atom":
        if f.name not in assignment:
            raise ValueError(f"no value for atom {f.name!r}")
        return assignment[f.name]
    if f.op == "true":
        return alg.designated
    if f.op == "false":
        return alg.bottom
    if f.op in _UNARY:
        table = alg.unary.get(f.op)
        if table is None:
            raise ValueError(f"algebra {alg.name!r} has no connective {f.op!r}")
        return table[evaluate(f.args[0], assignment, alg)]
    table2 = alg.binary.get(f.op)
    if table2 is None:
        raise ValueError(f"algebra {alg.name!r} has no connective {f.op!r}")
    a = evaluate(f.args[0], assignment, alg)
    b = evaluate(f.args[1], assignment, alg)
    return table2[a][b]


def models(f: Formula, sig: Signature, alg: Algebra = BOOL) -> ModelSet:
    """All assignments over sig where f takes the designated value."""
    names = sig.names
    for a in sorted(f.atoms()):
        if a not in names:
            raise ValueError(f"formula atom {a!r} is not a signature coordinate")
        if sig.domain_size(a) != alg.value_count:
            raise ValueError(
                f"coordinate {a!r} has domain {sig.domain_size(a)}, "
                f"algebra {alg.name!r} has {alg.value_count} values"
            )
    hits = set()
    for t in sig.tuples():
        if evaluate(f, dict(zip(names, t)), alg) == alg.designated:
            hits.add(t)
    return ModelSet(sig, frozenset(hits))


def is_tautology(f: Formula, sig: Signature, alg: Algebra = BOOL) -> bool:
    return models(f, sig, alg).is_full()


# ------------------------------------------------------------------ DNF

@dataclass(frozen=True)
class Dnf:
    """Disjunction of conjunctions of (coordinate = value) constraints."""

    conjuncts: tuple[tuple[tuple[str, int], ...], ...]

    def __post_init__(self):
        for conj in self.conjuncts:
            names = [c for c, _ in conj]
            if len(names) != len(set(names)):
                raise ValueError("conjunct mentions a coordinate twice")


def dnf_of(s: ModelSet) -> Dnf:
    """Canonical minterm DNF: one conjunct per model, literals in signature order."""
    names = s.sig.names
    return Dnf(tuple(tuple(zip(names, t)) for t in sorted(s.tuples)))


def models_of_dnf(d: Dnf, sig: Signature) -> ModelSet:
    out: set[tuple[int, ...]] = set()
    for conj in d.conjuncts:
        fixed = {}
        for name, value in conj:
            i = sig.index(name)
            if not 0 <= value < sig.coords[i][1]:
                raise ValueError(f"value {value} out of range for {name!r}")
            fixed[i] = value
        domains = [
            (fixed[i],) if i in fixed else range(k)
            for i, (_, k) in enumerate(sig.coords)
        ]
        out.update(_cartesian(*domains))
    return ModelSet(sig, frozenset(out))


def project_dnf(d: Dnf, names: Iterable[str]) -> Dnf:
    """Drop every literal outside `names` (replacing it by TRUE)."""
    keep = set(names)
    seen: dict[tuple, None] = {}
    for conj in d.conjuncts:
        seen.setdefault(tuple(lit for lit in conj if lit[0] in keep), None)
    return Dnf(tuple(seen))


def dnf_to_formula(d: Dnf) -> Formula:
    """Boolean formula for a DNF over two-valued coordinates."""
    if not d.conjuncts:
        return FALSE
    disjuncts = []
    for conj in d.conjuncts:
        if not conj:
            return TRUE
        lits = []
        for name, value in conj:
            if value not in (0, 1):
                raise ValueError("dnf_to_formula requires boolean literals")
            lits.append(atom(name) if value == 1 else not_(atom(name)))
        f = lits[0]
        for lit in lits[1:]:
            f = and_(f, lit)
        disjuncts.append(f)
    out = disjuncts[0]
    for dd in disjuncts[1:]:
        out = or_(out, dd)
    return out


def simplify_dnf(d: Dnf, sig: Signature) -> Dnf:
    """Merge boolean minterm cubes into primes and greedily cover.

    Preserves the model set bit-exactly.
    """
    target = models_of_dnf(d, sig)
    if not target.tuples:
        return Dnf(())
    if target.is_full():
        return Dnf(((),))
    cubes = {tuple(sorted(dict(c).items())) for c in dnf_of(target).conjuncts}
    primes: set[tuple] = set()
    while cubes:
        merged_away: set[tuple] = set()
        nxt: set[tuple] = set()
        cl = sorted(cubes)
        for i, a in enumerate(cl):
            da = dict(a)
            for b in cl[i + 1:]:
                db = dict(b)
                if da.keys() != db.keys():
                    continue
                diff = [n for n in da if da[n] != db[n]]
                if len(diff) == 1:
                    merged = tuple(sorted((n, v) for n, v in da.items() if n != diff[0]))
                    nxt.add(merged)
                    merged_away.add(a)
                    merged_away.add(b)
        primes |= cubes - merged_away
        cubes = nxt
    # greedy cover of the target models by prime cubes
    def cover(cube):
        return frozenset(models_of_dnf(Dnf((cube,)), sig).tuples)

    remaining = set(target.tuples)
    chosen = []
    pool = sorted(primes, key=lambda c: (len(c), c))
    covers = {c: cover(c) for c in pool}
    while remaining:
        best = max(pool, key=lambda c: (len(covers[c] & remaining), -len(c)))
        chosen.append(best)
        remaining -= covers[best]
    out = Dnf(tuple(sorted(chosen)))
    assert models_of_dnf(out, sig) == target
    return out


def theory_of(s: ModelSet, simplify: bool = False) -> Formula:
    """A boolean formula whose model set is exactly s (canonical minterm DNF).

    With simplify=True a merge pass shortens the DNF; the model set is
    preserved bit-exactly either way.
    """
    for name, k in s.sig.coords:
        if k != 2:
            raise ValueError(f"theory_of requires a boolean signature ({name!r} has k={k})")
    if not s.tuples:
        return FALSE
    if s.is_full():
        return TRUE
    d = dnf_of(s)
    if simplify:
        d = simplify_dnf(d, s.sig)
    return dnf_to_formula(d)


# ------------------------------------------------------- definability closure

def definable_sets(
    sig: Signature,
    names: Iterable[str],
    alg: Algebra,
    connectives: Optional[Iterable[str]] = None,
    max_assignments: int = 8,
) -> set[ModelSet]:
    """All model sets over `names` definable with the given connectives.

    Computed as a fixpoint over the finite space of value functions: start
    from the atom projections and the constants, close pointwise under the
    connective tables, then collect the preimages of the designated value.
    """
    sub = sig.subsignature(names)
    assignments = list(sub.tuples())
    if len(assignments) > max_assignments:
        raise ResourceLimitError(
            f"{len(assignments)} assignments exceed the bound {max_assignments}"
        )
    if connectives is None:
        ops = list(alg.unary) + list(alg.binary)
    else:
        ops = list(connectives)
        for op in ops:
            if op not in alg.unary and op not in alg.binary:
                raise ValueError(f"algebra {alg.name!r} has no connective {op!r}")
    funcs: set[tuple[int, ...]] = set()
    funcs.add(tuple(alg.designated for _ in assignments))
    funcs.add(tuple(alg.bottom for _ in assignments))
    for j in range(len(sub)):
        funcs.add(tuple(t[j] for t in assignments))
    frontier = set(funcs)
    while frontier:
        new: set[tuple[int, ...]] = set()
        for op in ops:
            if op in alg.unary:
                table = alg.unary[op]
                for f in frontier:
                    g = tuple(table[v] for v in f)
                    if g not in funcs:
                        new.add(g)
            else:
                table2 = alg.binary[op]
                for f in frontier:
                    for g in funcs:
                        for a, b in ((f, g), (g, f)):
                            h = tuple(table2[x][y] for x, y in zip(a, b))
                            if h not in funcs:
                                new.add(h)
        new -= funcs
        funcs |= new
        frontier = new
    return {
        ModelSet(
            sub,
            frozenset(t for t, v in zip(assignments, fn) if v == alg.designated),
        )
        for fn in funcs
    }
