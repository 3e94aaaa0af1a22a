"""scatord: symbolic toolkit for scattered linear orders of finite rank.

Terms denote countable scattered linear orders; the package computes block
condensations and condensation rank, decides finite-level back-and-forth
relations between term orders (with a brute-force oracle on finite orders),
generates canonical defining sentences for rank-1 orders with a syntactic
complexity classifier, and simulates the enumeration-driven stage
constructions that witness hardness at rank 1.
"""

from .terms import (
    EMPTY,
    OMEGA,
    OMEGA_STAR,
    ONE,
    ZETA,
    Fin,
    Omega,
    OmegaStar,
    OrderTerm,
    Sum,
    TermError,
    concat,
    omega_power,
    repeat,
    reverse,
    size,
    term_to_text,
)
from .parser import ParseError, parse_term
from .blocks import (
    BlockAtom,
    SimplicityReport,
    atom_list,
    blocks1,
    bf_to_text,
    canonical_rank1,
    condense,
    condense_iter,
    hausdorff_rank,
    is_simple,
    normalize,
)
from .positions import (
    PositionError,
    cut_decompose,
    enumerate_cuts,
    enumerate_positions,
    prefix_suffix,
)
from .backforth import (
    BFResult,
    Caps,
    LevelError,
    RankError,
    StabilityReport,
    brute_force_leq,
    cap_stability_check,
    iso,
    iso_report,
    leq_bf,
    replay_witness,
    reset_caches,
)
from .formulas import (
    ComplexityClass,
    Formula,
    Pi,
    QF,
    Sigma,
    classify_complexity,
    class_le,
    dSigma,
    eval_finite,
)
from .scott import (
    ComplexityReport,
    ScottError,
    ScottSentence,
    classify,
    make_phi_l,
    make_phi_m,
    make_phi_r,
    make_successor,
    sat_scott,
    scott_rank1,
    sim_formula,
    simple_axioms,
)
from .constructions import (
    ConstructionError,
    ConstructionRun,
    ConvergenceReport,
    EnumerationFamily,
    RelationTable,
    Schedule,
    diagnose,
    run_block_reduction,
    run_pi3_omega,
    run_priority,
    run_sigma3_limit,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
