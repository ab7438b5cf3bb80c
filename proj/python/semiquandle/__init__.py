"""Semiquandle counting invariants of flat, singular and virtual links.

Tables, presentations and codes are passed as text in the same formats the
``sqtool`` command reads; named tables are ``mt``, ``x132``,
``x132_operator``, ``mts_v13`` and ``t_singular``.
"""

from ._semiquandle import (
    BudgetExceeded,
    InvalidCode,
    MissingExtension,
    ParseError,
    StructureError,
    apply_move,
    applicable_moves,
    automorphisms,
    count_colorings,
    distinguish,
    enhanced_invariant,
    enumerate_semiquandles,
    enumerate_singular_extensions,
    extract_relations,
    g_sum,
    move_suite,
    named_table,
    normalize_code,
    random_code,
    s_sum,
    sqtool,
    verify,
)

__all__ = [
    "BudgetExceeded",
    "InvalidCode",
    "MissingExtension",
    "ParseError",
    "StructureError",
    "apply_move",
    "applicable_moves",
    "automorphisms",
    "count_colorings",
    "distinguish",
    "enhanced_invariant",
    "enumerate_semiquandles",
    "enumerate_singular_extensions",
    "extract_relations",
    "g_sum",
    "move_suite",
    "named_table",
    "normalize_code",
    "random_code",
    "s_sum",
    "sqtool",
    "verify",
]
