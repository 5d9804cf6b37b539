"""Exact computations with filtered shifted L-infinity algebras.

The package provides graded words and Koszul signs (`graded`), bracket
tables with relation checking, curvature, and twisting (`algebra`),
infinity-morphisms and their enhanced variant (`morphism`), polynomial
differential forms on simplices (`derham`), the simplicial Maurer-Cartan
sets with horn filling and path components (`groupoid`), a line-oriented
text format (`modelio`), fixture models (`fixtures`), randomized identity
suites (`properties`), and a CLI (`cli`).
"""

from __future__ import annotations

from .algebra import (
    MCElement,
    RelationViolation,
    SLAlgebra,
    apply_coderivation,
    check_relations,
    curvature,
    direct_sum,
    direct_sum_with_maps,
    embed_element,
    eval_bracket,
    eval_twisted_bracket,
    is_mc,
    project_element,
    require_mc,
    twist_algebra,
    zero_algebra,
)
from .caps import Caps, get_caps
from .derham import FormKey, PolyForm
from .errors import InputError, PreconditionError, ResourceCapError, SlmcError
from .graded import (
    Element,
    GradedSpace,
    SymWord,
    WordSum,
    canonical_word,
    canonicalize,
    exp_element,
    iter_words,
    koszul_sign,
    shuffles,
    stairway_shuffles,
    word_degree,
    word_weight,
)
from .groupoid import (
    AnsatzSlot,
    MCSimplex,
    MCSystem,
    Obstruction,
    Pi0Result,
    TensorElement,
    build_ansatz,
    combine_tensor,
    connect_points,
    fill_horn,
    lift_mc,
    mc_enhanced,
    mc_map,
    mc_system,
    pi0,
    shift_iso,
    shift_iso_inverse,
    simplicial_map,
    split_tensor,
    tensor_bracket,
    tensor_curvature,
)
from .modelio import (
    ModelEnv,
    ModelFile,
    SimplexDecl,
    parse_element_expr,
    parse_model,
    render_algebra,
    render_element,
    render_enhanced,
    render_model,
    render_morphism,
    render_simplex,
)
from .morphism import (
    EnhancedMorphism,
    InftyMorphism,
    MorphismViolation,
    check_morphism,
    compose_enhanced,
    compose_infty,
    comultiply,
    extend_to_coalgebra,
    pushforward,
    tensor_enhanced,
    twist_morphism,
    u_map,
)
from .properties import Report, run_all, run_suite

__all__ = [
    "AnsatzSlot",
    "Caps",
    "Element",
    "EnhancedMorphism",
    "FormKey",
    "GradedSpace",
    "InftyMorphism",
    "InputError",
    "MCElement",
    "MCSimplex",
    "MCSystem",
    "ModelEnv",
    "ModelFile",
    "MorphismViolation",
    "Obstruction",
    "Pi0Result",
    "PolyForm",
    "PreconditionError",
    "RelationViolation",
    "Report",
    "ResourceCapError",
    "SLAlgebra",
    "SimplexDecl",
    "SlmcError",
    "SymWord",
    "TensorElement",
    "WordSum",
    "apply_coderivation",
    "build_ansatz",
    "canonical_word",
    "canonicalize",
    "check_morphism",
    "check_relations",
    "combine_tensor",
    "compose_enhanced",
    "compose_infty",
    "comultiply",
    "connect_points",
    "curvature",
    "direct_sum",
    "direct_sum_with_maps",
    "embed_element",
    "eval_bracket",
    "eval_twisted_bracket",
    "exp_element",
    "extend_to_coalgebra",
    "fill_horn",
    "get_caps",
    "is_mc",
    "iter_words",
    "koszul_sign",
    "lift_mc",
    "mc_enhanced",
    "mc_map",
    "mc_system",
    "parse_element_expr",
    "parse_model",
    "pi0",
    "project_element",
    "pushforward",
    "render_algebra",
    "render_element",
    "render_enhanced",
    "render_model",
    "render_morphism",
    "render_simplex",
    "require_mc",
    "run_all",
    "run_suite",
    "shift_iso",
    "shift_iso_inverse",
    "shuffles",
    "simplicial_map",
    "split_tensor",
    "stairway_shuffles",
    "tensor_bracket",
    "tensor_curvature",
    "tensor_enhanced",
    "twist_algebra",
    "twist_morphism",
    "u_map",
    "word_degree",
    "word_weight",
    "zero_algebra",
]
