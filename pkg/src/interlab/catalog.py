"""Built-in named structures and the runnable example regressions.

Each example runner re-derives one of the workbench's reference scenarios
end to end and reports whether the expected outcome was reproduced.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .interpolate import semantic_interpolant
from .logic import GODEL4, definable_sets, models, parse_formula
from .nonmono import interpolant_form1, interpolant_form2, nm_consequence, search_interpolant
from .preferential import (
    PreferenceStructure,
    check_rule,
    compose_hamming,
    is_hamming_relation,
    is_smooth,
    mu,
    mu_product_check,
    restrict_relation,
)
from .space import CoordSplit, ModelSet, Signature, relevant, restrict


def circumscription(sig: Signature) -> PreferenceStructure:
    """Componentwise minimization of values (false preferred to true)."""
    pairs = [
        (a, b)
        for a in sig.tuples()
        for b in sig.tuples()
        if a != b and all(x <= y for x, y in zip(a, b))
    ]
    return PreferenceStructure.of(sig, pairs)


def _transitive_closure(pairs):
    closure = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closure):
            for c, d in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    return closure


CHAIN_SIG = Signature.boolean("p", "q")


def chain_example() -> PreferenceStructure:
    """The four-model chain pq < p!q < !p!q < !pq as a strict total order."""
    base = [((1, 1), (1, 0)), ((1, 0), (0, 0)), ((0, 0), (0, 1))]
    return PreferenceStructure.of(CHAIN_SIG, _transitive_closure(base))


def builtin_relation(name: str, sig: Optional[Signature] = None) -> tuple[Signature, PreferenceStructure]:
    """Resolve a built-in relation name, returning its signature too."""
    if name == "chain-example-4.1":
        if sig is not None and sig != CHAIN_SIG:
            raise ValueError("chain-example-4.1 is fixed to the boolean signature (p, q)")
        return CHAIN_SIG, chain_example()
    if name == "circumscription":
        if sig is None:
            raise ValueError("the circumscription relation needs a signature")
        return sig, circumscription(sig)
    raise ValueError(f"unknown built-in relation {name!r}")


BUILTIN_RELATIONS = ("chain-example-4.1", "circumscription")


@dataclass(frozen=True)
class ExampleReport:
    name: str
    reproduced: bool
    details: dict


def _chain_interpolation() -> ExampleReport:
    rel = chain_example()
    f = parse_formula
    facts = {
        "not_p_entails_not_q": nm_consequence(f("!p"), f("!q"), rel),
        "true_entails_q": nm_consequence(f("true"), f("q"), rel),
        "not_p_entails_false": nm_consequence(f("!p"), f("false"), rel),
        "mu_of_not_p": sorted(mu(rel, models(f("!p"), rel.sig)).tuples),
    }
    searches = {
        f"form_{i}": search_interpolant(f("!p"), f("!q"), rel, i) for i in (1, 2, 3)
    }
    form1 = interpolant_form1(f("!p"), f("!q"), rel)
    form2 = interpolant_form2(f("!p"), f("!q"), rel)
    details = {
        **facts,
        "search_interpolants": {k: (str(v) if v else None) for k, v in searches.items()},
        "form1_failure": form1.failure.kind if form1.failure else None,
        "form2_failure": form2.failure.kind if form2.failure else None,
        "form2_witness": form2.failure.witness if form2.failure else None,
    }
    ok = (
        facts["not_p_entails_not_q"]
        and facts["true_entails_q"]
        and not facts["not_p_entails_false"]
        and facts["mu_of_not_p"] == [(0, 0)]
        and all(v is None for v in searches.values())
        and form1.failure is not None
        and form2.failure is not None
        and form2.failure.witness == (1, 1)
    )
    return ExampleReport("chain-4.1", ok, details)


def _component_inverse() -> ExampleReport:
    left = PreferenceStructure.of(Signature.boolean("p"), [((0,), (1,))])
    right = PreferenceStructure.of(Signature.boolean("q"), [((1,), (0,))])
    rel = compose_hamming(left, right)
    diagonal = ModelSet.of(rel.sig, [(0, 0), (1, 1)])
    res = mu_product_check(rel, CoordSplit.cover(rel.sig, {"p"}), diagonal)
    details = {
        "sigma": sorted(diagonal.tuples),
        "mu": sorted(res["mu"]),
        "component_product": sorted(res["component_product"]),
        "equal": res["equal"],
        "smooth": is_smooth(rel).smooth,
    }
    ok = (
        res["mu"] == diagonal.tuples
        and res["component_product"] == {(0, 1)}
        and not res["equal"]
        and details["smooth"]
    )
    return ExampleReport("component-inverse-4.4", ok, details)


def _product_size() -> ExampleReport:
    sig = Signature.boolean("a", "b", "c", "d", "e")
    de_models = {(x, y, z, 1, 1) for x in (0, 1) for y in (0, 1) for z in (0, 1)}
    low_models = {(0, 0, 0, 0, e) for e in (0, 1)}
    sigma = ModelSet.of(sig, de_models | low_models)
    big = ModelSet.of(sig, de_models)
    whole = Fraction(len(big), len(sigma))
    proj_big = restrict(big, {"d", "e"})
    proj_sigma = restrict(sigma, {"d", "e"})
    projected = Fraction(len(proj_big), len(proj_sigma))
    details = {
        "sigma_size": len(sigma),
        "big_size": len(big),
        "fraction_in_sigma": f"{len(big)}/{len(sigma)}",
        "projection_sizes": [len(proj_big), len(proj_sigma)],
        "fraction_after_projection": f"{len(proj_big)}/{len(proj_sigma)}",
        "decreases": projected < whole,
    }
    ok = whole == Fraction(8, 10) and projected == Fraction(1, 3)
    return ExampleReport("prod-size-4.2", ok, details)


def _circumscription_hamming() -> ExampleReport:
    sig = Signature.boolean("p", "q")
    rel = circumscription(sig)
    left = circumscription(Signature.boolean("p"))
    right = circumscription(Signature.boolean("q"))
    hamming = is_hamming_relation(rel, left, right)
    composed = compose_hamming(left, right)
    split = CoordSplit.cover(sig, {"p"})
    rules = {r: check_rule(r, rel, split).status for r in ("mu1", "mu2", "mu3")}
    details = {
        "hamming": hamming.holds,
        "composition_matches": composed.strict == rel.strict,
        "smooth": is_smooth(rel).smooth,
        "derived_factors_match": restrict_relation(rel, {"p"}).strict == left.strict,
        "rules": rules,
    }
    ok = all(details[k] for k in ("hamming", "composition_matches", "smooth",
                                  "derived_factors_match"))
    ok = ok and all(v == "holds" for v in rules.values())
    return ExampleReport("circumscription-hamming-4.3", ok, details)


def _godel4_interpolation() -> ExampleReport:
    joint = Signature.of(("p", 4), ("q", 4), ("r", 4), ("s", 4))
    alpha = parse_formula("(p -> (((q -> r) -> q) -> q)) -> p")
    beta = parse_formula("((s -> p) -> s) -> s")
    valid = models(parse_formula(f"({alpha}) -> ({beta})"), joint, GODEL4).is_full()
    m_alpha = models(alpha, joint, GODEL4)
    m_beta = models(beta, joint, GODEL4)
    interp = semantic_interpolant(m_alpha, m_beta)
    target = restrict(interp, {"p"}).tuples
    no_j = {m.tuples for m in definable_sets(
        joint, {"p"}, GODEL4, connectives=["not", "and", "or", "implies", "iff"])}
    with_j = {m.tuples for m in definable_sets(joint, {"p"}, GODEL4)}
    details = {
        "implication_valid": valid,
        "interpolant_exists": m_alpha.issubset(interp) and interp.issubset(m_beta),
        "interpolant_essential_coords": sorted(relevant(interp)),
        "interpolant_on_p": sorted(target),
        "definable_without_j": target in no_j,
        "definable_with_j": target in with_j,
    }
    ok = (
        valid
        and details["interpolant_exists"]
        and details["interpolant_essential_coords"] == ["p"]
        and not details["definable_without_j"]
        and details["definable_with_j"]
    )
    return ExampleReport("godel4-3.1", ok, details)


_RUNNERS: dict[str, Callable[[], ExampleReport]] = {
    "chain-4.1": _chain_interpolation,
    "component-inverse-4.4": _component_inverse,
    "prod-size-4.2": _product_size,
    "circumscription-hamming-4.3": _circumscription_hamming,
    "godel4-3.1": _godel4_interpolation,
}

_ALIASES = {"gödel4-3.1": "godel4-3.1"}

EXAMPLE_NAMES = tuple(_RUNNERS)


def run_example(name: str) -> ExampleReport:
    key = _ALIASES.get(name, name)
    if key not in _RUNNERS:
        raise ValueError(f"unknown example {name!r} (expected one of {sorted(_RUNNERS)})")
    return _RUNNERS[key]()
