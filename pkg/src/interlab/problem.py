"""Problem bundles: one JSON document holding a signature plus named model
sets, relations, distances and formulas, cross-validated on load."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .errors import ParseError, ProblemFormatError
from .logic import Formula, parse_formula
from .preferential import PreferenceStructure
from .revision import DistanceModel
from .space import ModelSet, Signature


@dataclass(frozen=True)
class Problem:
    sig: Signature
    model_sets: dict[str, ModelSet] = field(default_factory=dict)
    relations: dict[str, PreferenceStructure] = field(default_factory=dict)
    distances: dict[str, DistanceModel] = field(default_factory=dict)
    formulas: dict[str, Formula] = field(default_factory=dict)


def _need(doc, key, kind, pointer):
    value = doc.get(key)
    if value is None or not isinstance(value, kind):
        raise ProblemFormatError(f"{pointer}/{key}", f"expected {kind.__name__}")
    return value


def _check_tuple(t, sig, pointer):
    if not isinstance(t, list) or len(t) != len(sig):
        raise ProblemFormatError(pointer, f"expected a tuple of {len(sig)} integers")
    for v, (name, k) in zip(t, sig.coords):
        if not isinstance(v, int) or not 0 <= v < k:
            raise ProblemFormatError(pointer, f"value {v!r} out of range for {name!r}")
    return tuple(t)


def load_problem(source: Union[str, Path, dict]) -> Problem:
    """Load and validate a bundle; errors carry a JSON-pointer location."""
    if isinstance(source, (str, Path)):
        try:
            doc = json.loads(Path(source).read_text())
        except json.JSONDecodeError as e:
            raise ProblemFormatError("", f"invalid JSON: {e}") from e
    else:
        doc = source
    if not isinstance(doc, dict):
        raise ProblemFormatError("", "bundle must be a JSON object")

    raw_sig = _need(doc, "signature", list, "")
    coords = []
    for i, c in enumerate(raw_sig):
        if not isinstance(c, dict) or "name" not in c or "k" not in c:
            raise ProblemFormatError(f"/signature/{i}", 'expected {"name": ..., "k": ...}')
        coords.append((c["name"], c["k"]))
    try:
        sig = Signature.of(*coords)
    except (ValueError, TypeError) as e:
        raise ProblemFormatError("/signature", str(e)) from e

    model_sets = {}
    for name, rows in (doc.get("model_sets") or {}).items():
        pointer = f"/model_sets/{name}"
        if not isinstance(rows, list):
            raise ProblemFormatError(pointer, "expected a list of tuples")
        tuples = [_check_tuple(t, sig, f"{pointer}/{i}") for i, t in enumerate(rows)]
        model_sets[name] = ModelSet.of(sig, tuples)

    relations = {}
    for name, rel_doc in (doc.get("relations") or {}).items():
        pointer = f"/relations/{name}"
        if not isinstance(rel_doc, dict) or not isinstance(rel_doc.get("pairs"), list):
            raise ProblemFormatError(pointer, 'expected {"pairs": [[t, t], ...]}')
        pairs = []
        for i, pair in enumerate(rel_doc["pairs"]):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ProblemFormatError(f"{pointer}/pairs/{i}", "expected a pair of tuples")
            a = _check_tuple(pair[0], sig, f"{pointer}/pairs/{i}/0")
            b = _check_tuple(pair[1], sig, f"{pointer}/pairs/{i}/1")
            if a == b:
                raise ProblemFormatError(f"{pointer}/pairs/{i}", "reflexive pair")
            pairs.append((a, b))
        relations[name] = PreferenceStructure.of(sig, pairs)

    distances = {}
    names = set(sig.names)
    for name, d_doc in (doc.get("distances") or {}).items():
        pointer = f"/distances/{name}"
        if not isinstance(d_doc, dict):
            raise ProblemFormatError(pointer, "expected an object")
        variant = d_doc.get("variant")
        if variant == "set":
            distances[name] = DistanceModel.set_variant()
            continue
        if variant != "counting":
            raise ProblemFormatError(f"{pointer}/variant", "expected 'set' or 'counting'")
        weights = d_doc.get("weights") or {}
        for coord in weights:
            if coord not in names:
                raise ProblemFormatError(f"{pointer}/weights/{coord}", "unknown coordinate")
        metrics = {}
        for i, row in enumerate(d_doc.get("value_metrics") or []):
            if not isinstance(row, list) or len(row) != 4:
                raise ProblemFormatError(f"{pointer}/value_metrics/{i}",
                                         "expected [coord, value, value, distance]")
            coord, a, b, v = row
            if coord not in names:
                raise ProblemFormatError(f"{pointer}/value_metrics/{i}", "unknown coordinate")
            metrics[(coord, a, b)] = v
        try:
            distances[name] = DistanceModel.counting(weights, metrics)
        except ValueError as e:
            raise ProblemFormatError(pointer, str(e)) from e

    formulas = {}
    for name, text in (doc.get("formulas") or {}).items():
        pointer = f"/formulas/{name}"
        if not isinstance(text, str):
            raise ProblemFormatError(pointer, "expected a formula string")
        try:
            f = parse_formula(text)
        except ParseError as e:
            raise ProblemFormatError(pointer, str(e)) from e
        unknown = f.atoms() - names
        if unknown:
            raise ProblemFormatError(pointer, f"undeclared coordinates {sorted(unknown)}")
        formulas[name] = f

    return Problem(sig, model_sets, relations, distances, formulas)
