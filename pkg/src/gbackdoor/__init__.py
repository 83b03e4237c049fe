"""Generalized back-door criterion for DAGs, CPDAGs, MAGs and PAGs."""

from .criterion import (
    Condition,
    CriterionReport,
    backdoor_via_invariance,
    check_b_i_prime,
    check_generalized_backdoor,
    check_invariance_graphical,
    check_pearl_backdoor,
)
from .figures import load_figure
from .graph import (
    ARROW,
    CIRCLE,
    TAIL,
    Edge,
    GraphError,
    GraphKind,
    GraphParseError,
    InvalidGraphError,
    LemmaViolation,
    Mark,
    MixedGraph,
    UnknownVertexError,
    ancestors,
    definite_status_paths,
    descendants,
    parse_graph,
    possible_ancestors,
    possible_descendants,
    possibly_directed_definite_status_path,
    read_graph,
    serialize_graph,
)
from .search import (
    BackdoorResult,
    NoBackdoorSetError,
    NotChordalError,
    RepresentativeGraph,
    construct_representative,
    find_backdoor_set,
    find_backdoor_set_cpdag,
    find_backdoor_set_dag,
    find_backdoor_set_mag,
    minimal_backdoor_sets,
    representative_from,
)
from .separation import check_dsep_lemma, d_sep_set, is_m_connecting, m_separated
from .visibility import back_door_paths, is_visible

__version__ = "0.1.0"
