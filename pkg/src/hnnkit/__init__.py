"""Exact computational toolkit for HNN extensions: Britton reduction and
normal forms, ICC decision procedures with witnesses, Folner-type
inner-amenability certificates, and Bass-Serre tree exploration, specialized
to Baumslag-Solitar groups BS(m, n) and Z^d-by-Z ascending extensions."""

from .calculus import (
    BaseOracle,
    DomainError,
    HnnWord,
    NormalForm,
    UnboundedIndexError,
    WordParseError,
    base_word,
    britton_reduce,
    conjugate,
    cyclic_reduce,
    equals,
    fixed_by_some_phi_j,
    format_word,
    identity_word,
    inv,
    length,
    mul,
    normalize,
    parse_word,
    phi_iter,
    phi_iter_domain,
    stable_word,
)
from .bs import BsOracle, BsParams, dom_phi_j_closed_form, format_bs_word, make_bs, parse_bs_word
from .zd import (
    ZdOracle,
    fixed_lattice_rank,
    has_root_of_unity_eigenvalue,
    integer_fixed_vector,
    make_zd,
    parse_matrix,
)
from .analysis import (
    EMPIRICAL,
    ICC,
    NOT_ICC,
    EscapeExhaustionError,
    FolnerChain,
    HypothesisViolationError,
    IccVerdict,
    VerificationError,
    escape_exponent,
    folner_chain_ascending,
    folner_chain_bs,
    icc_decide_bs,
    icc_decide_zd,
    icc_probe_orbit,
    orbit_sample,
    symdiff_ratio,
    thm1_hypothesis_bs,
)
from .tree import (
    ELLIPTIC,
    HYPERBOLIC,
    DeltaPoint,
    EdgeRef,
    IsometryClass,
    NotEllipticError,
    NotHyperbolicError,
    TrivialElementError,
    VertexLabel,
    act,
    axes_overlap,
    ball,
    base_vertex,
    center,
    classify,
    delta,
    distance,
    fixed_subtree,
    label_str,
    min_displacement_bfs,
    neighbors,
    to_vertex_label,
    tree_dot,
    unbounded_fixed_witness_bs,
)

__version__ = "0.1.0"
