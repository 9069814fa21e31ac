"""Non-monotonic consequence and its three interpolation forms.

phi |~ psi holds when the minimal models of phi all satisfy psi.  An
interpolant alpha can then be asked for in three shapes:

  form 1:  phi |~ alpha,  alpha classically entails psi
  form 2:  phi classically entails alpha,  alpha |~ psi
  form 3:  phi |~ alpha |~ psi

Form 1 has an exact characterization: it works for every consequence pair
iff minimization never makes an irrelevant coordinate relevant.  Form 2 has
a direct construction (liberate the premise-only atoms and take the theory
of the result) that is guaranteed under the product size rules, in
particular for relations composed blockwise from smooth parts.  Form 3 is
served by brute-force search only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ResourceLimitError
from .logic import BOOL, Algebra, Formula, models, theory_of
from .preferential import Budget, PreferenceStructure, check_rule, mu
from .space import (
    CoordSplit,
    ModelSet,
    all_subsets,
    essential_split,
    liberate,
    relevant,
    restrict,
)


def nm_consequence(
    phi: Formula, psi: Formula, rel: PreferenceStructure, alg: Algebra = BOOL
) -> bool:
    """mu(M(phi)) <= M(psi)."""
    m_phi = models(phi, rel.sig, alg)
    m_psi = models(psi, rel.sig, alg)
    return mu(rel, m_phi).issubset(m_psi)


@dataclass(frozen=True)
class ConditionCheck:
    holds: bool
    witness: Optional[ModelSet]
    exhaustive: bool
    checked: int


def form1_condition(rel: PreferenceStructure, budget: Optional[Budget] = None) -> ConditionCheck:
    """Minimization preserves irrelevance: I(S) <= I(mu(S)) for every S.

    Exactly the sets of models for which form-1 interpolation always exists.
    """
    budget = budget or Budget()
    universe = sorted(rel.sig.tuples())
    if 2 ** len(universe) <= budget.exhaustive:
        candidates = all_subsets(universe)
        exhaustive = True
    else:
        rng = budget.rng()
        candidates = (
            frozenset(t for t in universe if rng.random() < 0.5)
            for _ in range(budget.samples)
        )
        exhaustive = False
    checked = 0
    for tuples in candidates:
        checked += 1
        s = ModelSet(rel.sig, frozenset(tuples))
        irr_s, _ = essential_split(s)
        irr_mu, _ = essential_split(mu(rel, s))
        if not irr_s <= irr_mu:
            return ConditionCheck(False, s, exhaustive, checked)
    return ConditionCheck(True, None, exhaustive, checked)


@dataclass(frozen=True)
class InterpolationFailure:
    kind: str  # "subset" | "vocabulary"
    detail: str
    witness: object


@dataclass(frozen=True)
class InterpolationResult:
    formula: Optional[Formula]
    interpolant: Optional[ModelSet]
    failure: Optional[InterpolationFailure]
    rule_checks: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def _boolean_guard(rel: PreferenceStructure) -> None:
    for name, k in rel.sig.coords:
        if k != 2:
            raise ValueError(f"interpolant construction needs a boolean signature ({name!r})")


def _consequence_guard(phi, psi, rel) -> None:
    if not nm_consequence(phi, psi, rel):
        raise ValueError("phi |~ psi does not hold for this relation")


def _theory_on_essentials(s: ModelSet) -> Formula:
    """Formula over exactly the essential coordinates of s."""
    return theory_of(restrict(s, relevant(s)))


def interpolant_form1(
    phi: Formula, psi: Formula, rel: PreferenceStructure
) -> InterpolationResult:
    """phi |~ alpha and alpha entails psi, built from the minimal models.

    Keeps the coordinates that matter to both mu(M(phi)) and M(psi),
    liberates the rest, and checks that the result stays inside M(psi) and
    uses only vocabulary shared by phi and psi.  A failure certifies that
    this pair has no form-1 interpolant.
    """
    _boolean_guard(rel)
    _consequence_guard(phi, psi, rel)
    sig = rel.sig
    m_phi = models(phi, sig)
    m_psi = models(psi, sig)
    mu_phi = mu(rel, m_phi)
    kept = relevant(mu_phi) & relevant(m_psi)
    candidate = liberate(mu_phi, set(sig.names) - kept)
    w = candidate.subset_witness(m_psi)
    if w is not None:
        return InterpolationResult(None, candidate, InterpolationFailure(
            "subset", "interpolant is not contained in M(psi)", w))
    allowed = relevant(m_phi) & relevant(m_psi)
    stray = relevant(candidate) - allowed
    if stray:
        return InterpolationResult(None, candidate, InterpolationFailure(
            "vocabulary",
            "interpolant needs coordinates outside the shared essential vocabulary",
            tuple(sorted(stray))))
    return InterpolationResult(_theory_on_essentials(candidate), candidate, None)


def interpolant_form2(
    phi: Formula,
    psi: Formula,
    rel: PreferenceStructure,
    verify_rules: bool = False,
    budget: Optional[Budget] = None,
) -> InterpolationResult:
    """phi entails alpha and alpha |~ psi, via liberating the phi-only atoms.

    alpha is the theory of M(phi) with every atom occurring only in phi set
    free.  Success is guaranteed when the relation satisfies (s1)+(s2) or
    (s3) over the induced split, in particular for blockwise compositions
    of smooth orders; `verify_rules` attaches those rule verdicts.
    """
    _boolean_guard(rel)
    _consequence_guard(phi, psi, rel)
    sig = rel.sig
    m_phi = models(phi, sig)
    m_psi = models(psi, sig)
    phi_only = (phi.atoms() - psi.atoms()) & set(sig.names)
    candidate = liberate(m_phi, phi_only)
    alpha = _theory_on_essentials(candidate)
    rule_checks = None
    if verify_rules and phi_only:
        split = CoordSplit.cover(sig, phi_only)
        rule_checks = {
            r: check_rule(r, rel, split, budget) for r in ("s1", "s2", "s3")
        }
    w = m_phi.subset_witness(candidate)
    if w is not None:  # cannot happen: liberation only adds models
        return InterpolationResult(None, candidate, InterpolationFailure(
            "subset", "M(phi) escapes the liberated set", w), rule_checks)
    w = mu(rel, candidate).subset_witness(m_psi)
    if w is not None:
        return InterpolationResult(None, candidate, InterpolationFailure(
            "subset", "mu(M(alpha)) is not contained in M(psi)", w), rule_checks)
    return InterpolationResult(alpha, candidate, None, rule_checks)


def search_interpolant(
    phi: Formula,
    psi: Formula,
    rel: PreferenceStructure,
    form: int,
    max_candidates: int = 1 << 16,
) -> Optional[Formula]:
    """Brute-force search over all model sets on the shared atoms.

    Tests the two legs of the requested form (entailment is model-set
    inclusion, |~ goes through mu) and returns a smallest interpolant by
    (model count, lexicographic order), or None.  The only route offered
    for form 3.
    """
    if form not in (1, 2, 3):
        raise ValueError("form must be 1, 2 or 3")
    _boolean_guard(rel)
    sig = rel.sig
    shared = sorted((phi.atoms() & psi.atoms()) & set(sig.names))
    sub = sig.subsignature(shared)
    if 2 ** sub.size() > max_candidates:
        raise ResourceLimitError(
            f"{2 ** sub.size()} candidate sets exceed the bound {max_candidates}"
        )
    m_phi = models(phi, sig)
    m_psi = models(psi, sig)
    mu_phi = mu(rel, m_phi)
    shared_idx = [sig.index(n) for n in sub.names]
    universe = sorted(sig.tuples())
    for tuples in all_subsets(sub.tuples()):
        base = ModelSet(sub, frozenset(tuples))
        cand = ModelSet(
            sig,
            frozenset(
                t for t in universe
                if tuple(t[i] for i in shared_idx) in base.tuples
            ),
        )
        if form == 1:
            good = mu_phi.issubset(cand) and cand.issubset(m_psi)
        elif form == 2:
            good = m_phi.issubset(cand) and mu(rel, cand).issubset(m_psi)
        else:
            good = mu_phi.issubset(cand) and mu(rel, cand).issubset(m_psi)
        if good:
            return theory_of(base)
    return None
