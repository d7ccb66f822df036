"""Memory-depth analysis of deterministic finite-state game strategies.

The memory-depth of a strategy is the smallest window of recent joint
moves that always determines its next move (infinite when no finite
window does).  The main entry point is :func:`memory_depth`; two slower
independent algorithms, :func:`pds_depth` and :func:`window_oracle_depth`,
exist to cross-check it.  See the README for the file formats, the
builtin strategy catalog, and the ``memdepth`` command-line tool.
"""

from .depth import INFINITE, Depth, memory_depth
from .fsm import (
    DuplicateTransitionError,
    EmptyAlphabetError,
    Fsm,
    FsmError,
    MissingTransitionError,
    NotABijectionError,
    UnknownStateError,
    UnknownSymbolError,
    is_constant_output,
    reachable_reduce,
    reachable_states,
    relabel,
    validate,
)
from .match_sim import (
    AlphabetMismatchError,
    MatchError,
    MatchResult,
    NonBinaryAlphabetError,
    PayoffMatrix,
    behaviorally_equivalent,
    play_match,
)
from .memits import (
    Memit,
    MemitGraph,
    MemitPair,
    MemitPairGraph,
    build_memit_graph,
    build_memit_pair_graph,
    incoming_actions,
)
from .oracles import (
    BudgetExceededError,
    PathEntry,
    SearchCap,
    TreeNode,
    pds_depth,
    window_oracle_depth,
)
from .strategy_io import (
    CatalogEntry,
    FormatError,
    LookupTable,
    UnknownStrategyError,
    UnsupportedTableError,
    builtin,
    builtin_lookup,
    catalog_entries,
    export_dot,
    lookup_to_fsm,
    parse_fsm,
    parse_lookup,
    serialize_fsm,
)

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatchError",
    "BudgetExceededError",
    "CatalogEntry",
    "Depth",
    "DuplicateTransitionError",
    "EmptyAlphabetError",
    "FormatError",
    "Fsm",
    "FsmError",
    "INFINITE",
    "LookupTable",
    "MatchError",
    "MatchResult",
    "Memit",
    "MemitGraph",
    "MemitPair",
    "MemitPairGraph",
    "MissingTransitionError",
    "NonBinaryAlphabetError",
    "NotABijectionError",
    "PathEntry",
    "PayoffMatrix",
    "SearchCap",
    "TreeNode",
    "UnknownStateError",
    "UnknownStrategyError",
    "UnknownSymbolError",
    "UnsupportedTableError",
    "behaviorally_equivalent",
    "build_memit_graph",
    "build_memit_pair_graph",
    "builtin",
    "builtin_lookup",
    "catalog_entries",
    "export_dot",
    "incoming_actions",
    "is_constant_output",
    "lookup_to_fsm",
    "memory_depth",
    "parse_fsm",
    "parse_lookup",
    "pds_depth",
    "play_match",
    "reachable_reduce",
    "reachable_states",
    "relabel",
    "serialize_fsm",
    "validate",
    "window_oracle_depth",
    "__version__",
]
