"""Primitive words, generalized roots, and powers of regular languages."""

from .words import (
    BINARY,
    Alphabet,
    EmptyWordError,
    RootResult,
    Word,
    border_array,
    borders,
    commutes,
    conjugate,
    degree,
    fine_wilf_check,
    is_primitive,
    root,
    root_and_degree,
    smallest_period,
    z_array,
)
from .periodicity import (
    PeriodicityClass,
    PeriodicityProfile,
    RootKind,
    all_roots,
    class_membership,
    generalized_root,
    memberships,
    overlap_concat,
    profile,
)
from .kroot import SearchReport, is_strong_k_root, k_root_count, lohmann_construct, smallest_k_root
from .automata import Dfa, Nfa, RightLinearGrammar
from .languages import (
    ExponentSet,
    FipComponent,
    SemilinearSet,
    SquareClass,
    Verdict,
    pow_finite_H,
    power_membership,
    root_finite,
    square_classification,
)
from .codes import code_witness, is_code, is_intercode_for, is_n_code
from .contextual import ContextualGrammar, language_up_to, q_grammar

__version__ = "0.1.0"
