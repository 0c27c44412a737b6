"""Local moves, their preservation registry and equivalence search."""

from .rules import (
    INVARIANTS,
    REIDEMEISTER,
    MoveRule,
    MoveSite,
    apply_move,
    builtin_moves,
    find_sites,
    fingerprint,
    get_rule,
    moves_with_results,
)
from .search import (
    Bounds,
    SearchOutcome,
    decide_quotient,
    equivalent_mod,
    invariant_value,
    neighbors,
    neighbors_with_sites,
    path_from_json,
    path_to_json,
    replay,
    unknot_search,
)

__all__ = [
    "INVARIANTS",
    "REIDEMEISTER",
    "MoveRule",
    "MoveSite",
    "apply_move",
    "builtin_moves",
    "find_sites",
    "fingerprint",
    "get_rule",
    "moves_with_results",
    "Bounds",
    "SearchOutcome",
    "decide_quotient",
    "equivalent_mod",
    "invariant_value",
    "neighbors",
    "neighbors_with_sites",
    "path_from_json",
    "path_to_json",
    "replay",
    "unknot_search",
]
