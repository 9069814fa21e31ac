"""interlab: semantic interpolation, preferential consequence and
Hamming-distance revision over finite many-valued model spaces."""

from .space import (
    CoordSplit,
    ModelSet,
    Partition,
    Signature,
    essential_split,
    expand,
    factorize,
    irrelevant,
    liberate,
    product,
    relevant,
    reorder,
    restrict,
)
from .logic import (
    BOOL,
    GODEL4,
    Algebra,
    Dnf,
    Formula,
    definable_sets,
    dnf_of,
    evaluate,
    models,
    models_of_dnf,
    parse_formula,
    project_dnf,
    theory_of,
)
from .interpolate import (
    parallel_interpolant_left,
    parallel_interpolant_right,
    semantic_interpolant,
)
from .preferential import (
    Budget,
    PreferenceStructure,
    SizeClass,
    Verdict,
    check_rule,
    classify_subset,
    compose_hamming,
    is_hamming_relation,
    is_smooth,
    mu,
    relation_from_mu,
    restrict_relation,
)
from .nonmono import (
    form1_condition,
    interpolant_form1,
    interpolant_form2,
    nm_consequence,
    search_interpolant,
)
from .revision import (
    DistanceModel,
    bar,
    check_hd_product,
    check_hd_projection,
    distance,
    is_generalized_hamming_distance,
    parikh_revise,
)
from .problem import Problem, load_problem

__all__ = [
    "Algebra", "BOOL", "Budget", "CoordSplit", "DistanceModel", "Dnf",
    "Formula", "GODEL4", "ModelSet", "Partition", "PreferenceStructure",
    "Problem", "Signature", "SizeClass", "Verdict", "bar", "check_hd_product",
    "check_hd_projection", "check_rule", "classify_subset", "compose_hamming",
    "definable_sets", "distance", "dnf_of", "essential_split", "evaluate",
    "expand", "factorize", "form1_condition", "interpolant_form1",
    "interpolant_form2", "irrelevant", "is_generalized_hamming_distance",
    "is_hamming_relation", "is_smooth", "liberate", "load_problem", "models",
    "models_of_dnf", "mu", "nm_consequence", "parallel_interpolant_left",
    "parallel_interpolant_right", "parikh_revise", "parse_formula", "product",
    "project_dnf", "relation_from_mu", "relevant", "reorder", "restrict",
    "restrict_relation", "search_interpolant", "semantic_interpolant",
    "theory_of",
]

__version__ = "0.1.0"
