"""Higher-rank graphs as Markov shifts factored by commuting cellular automata."""

from .automata import (
    BlockCode,
    EPWord,
    alpha,
    apply_code_ep,
    apply_code_word,
    chl_recover,
    compose_codes,
    identity_code,
    phi_code,
    shift_code,
    verify_factorization,
)
from .groupoid import Germ, compose_germs, invert_germ, make_germ, orbit_sample
from .kgraph import (
    KGraph,
    Morphism,
    build_kgraph,
    compose,
    enumerate_factorizations,
    enumerate_morphisms,
    factorize,
    load_kgraph,
    normalize,
    validate,
)
from .library import builtin, product_kgraph
from .markov import alphabet, is_admissible, language, markov_forbidden_patterns, transition_matrix
from .reconstruction import psi_value, psi_window, reconstruct_segment, verify_covariance, window_membership
from .shifts import Pattern, WindowConfig, distance_windows, distance_words, excluded_by, occurs, restrict_diagonal

__version__ = "0.1.0"

__all__ = [
    "BlockCode",
    "EPWord",
    "alpha",
    "apply_code_ep",
    "apply_code_word",
    "chl_recover",
    "compose_codes",
    "identity_code",
    "phi_code",
    "shift_code",
    "verify_factorization",
    "Germ",
    "compose_germs",
    "invert_germ",
    "make_germ",
    "orbit_sample",
    "KGraph",
    "Morphism",
    "build_kgraph",
    "compose",
    "enumerate_factorizations",
    "enumerate_morphisms",
    "factorize",
    "load_kgraph",
    "normalize",
    "validate",
    "builtin",
    "product_kgraph",
    "alphabet",
    "is_admissible",
    "language",
    "markov_forbidden_patterns",
    "transition_matrix",
    "psi_value",
    "psi_window",
    "reconstruct_segment",
    "verify_covariance",
    "window_membership",
    "Pattern",
    "WindowConfig",
    "distance_windows",
    "distance_words",
    "excluded_by",
    "occurs",
    "restrict_diagonal",
]
