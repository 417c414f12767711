"""Shortlex normal forms, geodesics and word acceptors for Artin groups of large type."""

from .automata import (
    Dfa, build_geodesic_acceptor, build_shortlex_acceptor, collect_word_differences,
    dfa_count_by_length,
)
from .dihedral import (
    CriticalDecomposition, DihedralCtx, Kind, classify_critical, critical_prefix_for_letter,
    critical_suffix_for_letter, delta_map, is_2geodesic, n_stat, p_stat, reduce_2gen,
    retarget_last_letter, strip_power_tau, tau,
)
from .geodesic import (
    FftpWitness, equal_in_G, fellow_travel_distance, fftp_witness, geodesic_length, is_geodesic,
)
from .oracle import Equal, Unknown, elementary_neighbors, enumerate_ball, oracle_equal
from .reducer import (
    Factorization, ReductionTrace, apply_factorization, find_leftward_lex_reducing,
    find_rightward_length_reducing, in_W, maximal_2gen_suffix, rho, rho_step, rho_trace,
)
from .words import (
    Cmp, LetterOrder, Presentation, PresentationError, Word, WordParseError, format_word,
    free_reduce, parse_word, shortlex_cmp,
)

__version__ = "0.1.0"

__all__ = [
    "Cmp", "CriticalDecomposition", "Dfa", "DihedralCtx", "Equal", "Factorization",
    "FftpWitness", "Kind", "LetterOrder", "Presentation", "PresentationError",
    "ReductionTrace", "Unknown", "Word", "WordParseError", "apply_factorization",
    "build_geodesic_acceptor", "build_shortlex_acceptor", "classify_critical",
    "collect_word_differences", "critical_prefix_for_letter", "critical_suffix_for_letter",
    "delta_map", "dfa_count_by_length", "elementary_neighbors", "enumerate_ball",
    "equal_in_G", "fellow_travel_distance", "fftp_witness", "find_leftward_lex_reducing",
    "find_rightward_length_reducing", "format_word", "free_reduce", "geodesic_length",
    "in_W", "is_2geodesic", "is_geodesic", "maximal_2gen_suffix", "n_stat", "oracle_equal",
    "p_stat", "parse_word", "reduce_2gen", "retarget_last_letter", "rho", "rho_step",
    "rho_trace", "shortlex_cmp", "strip_power_tau", "tau",
]
