"""Stallings graphs for finitely generated subgroups of free groups."""

from .graph import (
    Alphabet,
    LabeledGraph,
    canonical_form,
    connected_components,
    core,
    euler_characteristic,
    fold,
    rank,
    reduced_rank,
)
from .subgroup import (
    Subgroup,
    conjugate,
    contains,
    finite_index,
    free_group,
    from_generators,
    intersect,
    join,
    kernel_of_finite_quotient,
    pullback,
    relative_index,
    trivial_subgroup,
)
from .inequalities import (
    double_cosets,
    generalized_im_inequality,
    hanna_neumann_check,
    im_inequality,
)
from .constructions import (
    GammaParams,
    build_example,
    build_gamma,
    certificate_c1,
    certificate_c2,
    gamma_base,
    theorem_pair,
    verify_example,
    verify_theorem,
)
from .problem import problem_probe, problem_search
from .words import format_word, parse_word

__version__ = "0.1.0"
