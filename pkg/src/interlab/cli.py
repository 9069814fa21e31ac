"""Command-line workbench: interpolation, rule checking, revision, and the
named example regressions.

Exit codes: 0 success / property holds / interpolant found; 1 property
fails or no interpolant; 2 usage, parse or input errors.  Reports print as
text by default or as versioned JSON with --format json.  The environment
variable INTERLAB_BUDGET overrides the exhaustive enumeration cap and
--seed drives any sampled sweeps.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, is_dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

from . import catalog
from .errors import ParseError, PreconditionError, ProblemFormatError, ResourceLimitError
from .interpolate import semantic_interpolant
from .logic import BOOL, Formula, models, parse_formula, theory_of
from .nonmono import interpolant_form1, interpolant_form2, nm_consequence, search_interpolant
from .preferential import (
    Budget,
    PreferenceStructure,
    RestrictionUndefinedError,
    check_rule,
    is_hamming_relation,
    is_smooth,
    restrict_relation,
)
from .problem import load_problem
from .revision import DistanceModel, parikh_revise
from .space import CoordSplit, ModelSet, Signature, relevant, restrict

REPORT_VERSION = 1


# ------------------------------------------------------------- serialization

def _plain(obj):
    """Convert library values into JSON-serializable structures."""
    if isinstance(obj, Formula):
        return str(obj)
    if isinstance(obj, ModelSet):
        return [list(t) for t in sorted(obj.tuples)]
    if isinstance(obj, Signature):
        return [{"name": n, "k": k} for n, k in obj.coords]
    if isinstance(obj, Enum):
        return obj.value
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: _plain(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, tuple):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((_plain(v) for v in obj), key=lambda x: json.dumps(x))
    if isinstance(obj, list):
        return [_plain(v) for v in obj]
    return obj


def _render_text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return lines


def _is_flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v) or (
            all(isinstance(x, list) and all(isinstance(y, int) for y in x) for x in v)
        )
    return False


def emit_report(report: dict, fmt: str = "text") -> str:
    """Stable-order rendering of a verdict object; JSON reports re-parse."""
    doc = {"report_version": REPORT_VERSION, **_plain(report)}
    if fmt == "json":
        return json.dumps(doc, indent=2)
    return "\n".join(_render_text(doc))


# ------------------------------------------------------------------- parsing

def _parse_sig(text: str) -> Signature:
    coords = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            name, k = part.split(":", 1)
            coords.append((name.strip(), int(k)))
        else:
            coords.append((part, 2))
    return Signature.of(*coords)


def _parse_split(text: str, sig: Signature) -> CoordSplit:
    if "/" not in text:
        raise ValueError("split must look like 'p,q/r,s'")
    left_text, right_text = text.split("/", 1)
    left = {n.strip() for n in left_text.split(",") if n.strip()}
    right = {n.strip() for n in right_text.split(",") if n.strip()}
    split = CoordSplit.of(left, right)
    split.validate_for(sig)
    return split


def _formula_sig(*formulas: Formula) -> Signature:
    names = sorted(set().union(*(f.atoms() for f in formulas)))
    if not names:
        names = ["p"]
    return Signature.boolean(*names)


def _load_relation(args) -> tuple[Signature, PreferenceStructure]:
    """Resolve --relation: a built-in name, a bundle entry, or a pairs file."""
    name = args.relation
    problem = load_problem(args.problem) if getattr(args, "problem", None) else None
    sig = _parse_sig(args.sig) if getattr(args, "sig", None) else None
    if problem is not None:
        if sig is not None and sig != problem.sig:
            raise ValueError("--sig disagrees with the problem bundle signature")
        sig = problem.sig
        if name in problem.relations:
            return sig, problem.relations[name]
    if name in catalog.BUILTIN_RELATIONS:
        return catalog.builtin_relation(name, sig)
    path = Path(name)
    if path.exists():
        if sig is None:
            raise ValueError("a relation file needs --sig or --problem for the signature")
        doc = json.loads(path.read_text())
        pairs = [(tuple(a), tuple(b)) for a, b in doc["pairs"]]
        return sig, PreferenceStructure.of(sig, pairs)
    raise ValueError(
        f"unknown relation {name!r}: not a built-in, bundle entry, or readable file"
    )


def _budget(args) -> Budget:
    exhaustive = int(os.environ.get("INTERLAB_BUDGET", 1 << 16))
    return Budget(exhaustive=exhaustive, seed=getattr(args, "seed", 0))


def _read_formula(value: str) -> Formula:
    """Parse a formula argument; '@file' or '@file:N' reads line N (1-based)
    of a UTF-8 file holding one formula per line."""
    if not value.startswith("@"):
        return parse_formula(value)
    ref = value[1:]
    line_no = 1
    if ":" in ref:
        ref, ln = ref.rsplit(":", 1)
        line_no = int(ln)
    lines = Path(ref).read_text(encoding="utf-8").splitlines()
    if not 1 <= line_no <= len(lines):
        raise ValueError(f"{ref} has no line {line_no}")
    return parse_formula(lines[line_no - 1])


# ------------------------------------------------------------------ commands

def _cmd_interp_mono(args) -> int:
    phi = _read_formula(args.phi)
    psi = _read_formula(args.psi)
    sig = _parse_sig(args.sig) if args.sig else _formula_sig(phi, psi)
    m_phi = models(phi, sig, BOOL)
    m_psi = models(psi, sig, BOOL)
    w = m_phi.subset_witness(m_psi)
    if w is not None:
        report = {
            "command": "interp mono",
            "entailment": False,
            "witness": list(w),
        }
        print(emit_report(report, args.format))
        return 1
    out = semantic_interpolant(m_phi, m_psi)
    formula = theory_of(restrict(out, relevant(out)))
    report = {
        "command": "interp mono",
        "entailment": True,
        "interpolant": formula,
        "essential_atoms": sorted(relevant(out)),
        "models": out,
    }
    print(emit_report(report, args.format))
    return 0


def _cmd_interp_nm(args) -> int:
    sig, rel = _load_relation(args)
    phi = _read_formula(args.phi)
    psi = _read_formula(args.psi)
    if not nm_consequence(phi, psi, rel):
        report = {"command": "interp nm", "consequence": False, "form": args.form}
        print(emit_report(report, args.format))
        return 1
    budget = _budget(args)
    report = {"command": "interp nm", "consequence": True, "form": args.form}
    if args.form == 3:
        found = search_interpolant(phi, psi, rel, form=3)
        report["interpolant"] = found
        print(emit_report(report, args.format))
        return 0 if found is not None else 1
    build = interpolant_form1 if args.form == 1 else interpolant_form2
    if args.form == 2:
        result = interpolant_form2(phi, psi, rel, verify_rules=args.verify_rules,
                                   budget=budget)
        if result.rule_checks:
            report["rule_checks"] = {
                k: {"status": v.status, "exhaustive": v.exhaustive}
                for k, v in result.rule_checks.items()
            }
    else:
        result = build(phi, psi, rel)
    if result.ok:
        report["interpolant"] = result.formula
        print(emit_report(report, args.format))
        return 0
    report["failure"] = {"kind": result.failure.kind, "detail": result.failure.detail,
                         "witness": result.failure.witness}
    print(emit_report(report, args.format))
    return 1


def _cmd_check_rule(args) -> int:
    sig, rel = _load_relation(args)
    split = _parse_split(args.split, sig) if args.split else _default_split(sig)
    verdict = check_rule(args.rule, rel, split, _budget(args))
    report = {
        "command": "check rule",
        "rule": verdict.rule,
        "split": [sorted(split.left), sorted(split.right)],
        "status": verdict.status,
        "exhaustive": verdict.exhaustive,
        "checked": verdict.checked,
    }
    if verdict.witness is not None:
        report["witness"] = verdict.witness
    print(emit_report(report, args.format))
    return 0 if verdict.holds else 1


def _default_split(sig: Signature) -> CoordSplit:
    names = sig.names
    half = max(1, len(names) // 2)
    return CoordSplit.cover(sig, set(names[:half]))


def _cmd_check_hamming(args) -> int:
    sig, rel = _load_relation(args)
    split = _parse_split(args.split, sig) if args.split else _default_split(sig)
    report = {
        "command": "check hamming",
        "split": [sorted(split.left), sorted(split.right)],
    }
    try:
        left = restrict_relation(rel, split.left)
        right = restrict_relation(rel, split.right)
    except RestrictionUndefinedError as e:
        report["status"] = "fails"
        report["reason"] = "block restriction undefined"
        report["witness"] = e.witness
        print(emit_report(report, args.format))
        return 1
    check = is_hamming_relation(rel, left, right)
    report["status"] = "holds" if check.holds else "fails"
    if check.witness is not None:
        report["witness"] = check.witness
    print(emit_report(report, args.format))
    return 0 if check.holds else 1


def _cmd_check_smooth(args) -> int:
    sig, rel = _load_relation(args)
    check = is_smooth(rel, _budget(args))
    report = {
        "command": "check smooth",
        "status": "holds" if check.smooth else "fails",
        "exhaustive": check.exhaustive,
        "checked": check.checked,
    }
    if check.witness is not None:
        s, x = check.witness
        report["witness"] = {"set": sorted(s), "stranded": list(x)}
    print(emit_report(report, args.format))
    return 0 if check.smooth else 1


def _cmd_revise(args) -> int:
    phi = _read_formula(args.phi)
    k = _read_formula(args.k)
    sig = _parse_sig(args.sig) if args.sig else _formula_sig(k, phi)
    if args.distance == "set":
        d = DistanceModel.set_variant()
    else:
        weights = json.loads(Path(args.weights).read_text()) if args.weights else None
        d = DistanceModel.counting(weights)
    split = _parse_split(args.split, sig) if args.split else None
    result = parikh_revise(k, phi, d, sig=sig, split=split)
    report = {
        "command": "revise",
        "result": result.result,
        "min_distance": result.min_distance,
        "decomposed": result.decomposed,
    }
    print(emit_report(report, args.format))
    return 0


def _cmd_examples(args) -> int:
    if args.action == "list":
        print(emit_report({"examples": list(catalog.EXAMPLE_NAMES)}, args.format))
        return 0
    names = list(catalog.EXAMPLE_NAMES) if args.name == "all" else [args.name]
    reports = [catalog.run_example(n) for n in names]
    ok = all(r.reproduced for r in reports)
    body = {
        "command": "examples run",
        "reproduced": ok,
        "results": [
            {"name": r.name, "reproduced": r.reproduced, "details": r.details}
            for r in reports
        ],
    }
    print(emit_report(body, args.format))
    return 0 if ok else 1


# --------------------------------------------------------------------- wiring

def _add_common(p, *, sig=True, problem=True, seed=True):
    p.add_argument("--format", choices=("text", "json"), default="text")
    if sig:
        p.add_argument("--sig", help="coordinates, e.g. 'p,q,r' or 'p:2,q:4'")
    if problem:
        p.add_argument("--problem", help="problem bundle JSON file")
    if seed:
        p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interlab",
        description="semantic interpolation, preferential consequence and "
                    "Hamming-distance revision over finite model spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    interp = sub.add_parser("interp", help="interpolation")
    interp_sub = interp.add_subparsers(dest="mode", required=True)

    mono = interp_sub.add_parser("mono", help="monotone semantic interpolation")
    mono.add_argument("--phi", required=True)
    mono.add_argument("--psi", required=True)
    _add_common(mono, problem=False, seed=False)
    mono.set_defaults(func=_cmd_interp_mono)

    nm = interp_sub.add_parser("nm", help="non-monotonic interpolation")
    nm.add_argument("--form", type=int, choices=(1, 2, 3), required=True)
    nm.add_argument("--relation", required=True)
    nm.add_argument("--phi", required=True)
    nm.add_argument("--psi", required=True)
    nm.add_argument("--verify-rules", action="store_true")
    _add_common(nm)
    nm.set_defaults(func=_cmd_interp_nm)

    check = sub.add_parser("check", help="structure properties")
    check_sub = check.add_subparsers(dest="mode", required=True)

    rule = check_sub.add_parser("rule", help="product size rules")
    rule.add_argument("--rule", required=True,
                      choices=("s1", "s1p", "s2", "s3", "mu1", "mu2", "mu3"))
    rule.add_argument("--relation", required=True)
    rule.add_argument("--split")
    _add_common(rule)
    rule.set_defaults(func=_cmd_check_rule)

    hamming = check_sub.add_parser("hamming", help="blockwise decomposability")
    hamming.add_argument("--relation", required=True)
    hamming.add_argument("--split")
    _add_common(hamming)
    hamming.set_defaults(func=_cmd_check_hamming)

    smooth = check_sub.add_parser("smooth", help="smoothness")
    smooth.add_argument("--relation", required=True)
    _add_common(smooth)
    smooth.set_defaults(func=_cmd_check_smooth)

    revise = sub.add_parser("revise", help="distance-based revision")
    revise.add_argument("--k", required=True, help="knowledge base formula")
    revise.add_argument("--phi", required=True, help="new information formula")
    revise.add_argument("--distance", choices=("set", "count"), default="count")
    revise.add_argument("--weights", help="JSON file of per-coordinate weights")
    revise.add_argument("--split", help="decompose along this split when possible")
    _add_common(revise, problem=False, seed=False)
    revise.set_defaults(func=_cmd_revise)

    examples = sub.add_parser("examples", help="reference example regressions")
    examples_sub = examples.add_subparsers(dest="action", required=True)
    run_p = examples_sub.add_parser("run")
    run_p.add_argument("name")
    run_p.add_argument("--format", choices=("text", "json"), default="text")
    run_p.set_defaults(func=_cmd_examples)
    list_p = examples_sub.add_parser("list")
    list_p.add_argument("--format", choices=("text", "json"), default="text")
    list_p.set_defaults(func=_cmd_examples, name=None)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (ParseError, ProblemFormatError, PreconditionError,
            RestrictionUndefinedError, ResourceLimitError, ValueError,
            OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
