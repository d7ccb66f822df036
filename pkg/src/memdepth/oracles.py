"""Two independent checks on the memory-depth computation.

``pds_depth`` grows a reverse distinguishing tree level by level: each
level walks the machine one joint move further back in time and splits the
surviving state candidates by what that move looked like.
``window_oracle_depth`` works forward instead, tracking pairs of
label-identical walks.  Neither
touches the graph-building code in :mod:`memdepth.memits`; they only read
the machine's transition and output tables, so agreement between all three
routes is meaningful evidence of correctness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .depth import Depth, INFINITE
from .fsm import Fsm, is_constant_output, reachable_reduce


class BudgetExceededError(Exception):
    """The tree search outgrew its node budget before reaching an answer."""


class PathEntry(NamedTuple):
    """One backward thread of the distinguishing search.

    ``terminal`` is the state whose next response the search is trying to
    pin down, ``current`` is where that thread stands some number of joint
    moves earlier, and ``entered_with`` is the response that carried play
    into ``current`` (``None`` only in the root, where nothing has been
    walked back yet).
    """

    terminal: str
    current: str
    entered_with: str | None


@dataclass(frozen=True)
class TreeNode:
    """One node of the backward distinguishing tree.

    ``level`` counts the joint moves walked back so far (0 at the root).
    ``label`` records the move information that selected this node from
    its parent: ``None`` for the root, ``(response, None)`` at level 1
    (the opponent action seen at the terminal is still free there), and
    ``(response, consumed_input)`` below that.
    """

    paths: frozenset
    level: int
    label: tuple | None = None

    def resolved(self, fsm: Fsm) -> bool:
        """True when every terminal in this node shares one response row."""
        rows = {_response_key(fsm, entry.terminal) for entry in self.paths}
        return len(rows) <= 1


@dataclass(frozen=True)
class SearchCap:
    """Level bound for the iterative searches.

    The default is one more than the number of possible memit pairs: a
    chain of indistinguishable-history extensions longer than the pair
    count must revisit a pair, which proves a cycle and therefore an
    infinite depth.  The bound is never taken below the square of the
    state count, nor below 2 so that even a single-state machine's depth
    of 1 sits strictly under it.
    """

    max_level: int

    def __post_init__(self):
        if self.max_level < 1:
            raise ValueError("search cap must be a positive integer")

    @staticmethod
    def default_for(fsm: Fsm) -> "SearchCap":
        n = len(fsm.states)
        pair_bound = len(fsm.outputs) * len(fsm.inputs) * n * (n - 1) // 2
        return SearchCap(max(pair_bound + 1, n * n, 2))


def _incoming_actions(fsm: Fsm) -> dict:
    incoming = {state: set() for state in fsm.states}
    for key, next_state in fsm.transition.items():
        incoming[next_state].add(fsm.output[key])
    return incoming


def _response_key(fsm: Fsm, state: str) -> tuple:
    return tuple(fsm.output[(state, symbol)] for symbol in fsm.inputs)


def _pds_scan(reduced: Fsm, cap_level: int, node_budget: int):
    """Run the backward tree; return ('finite', depth) or ('infinite', None).

    Each :class:`TreeNode` holds a set of :class:`PathEntry` threads.  A
    node is resolved when all its terminals share one response row; only
    unresolved nodes survive into the next level.  Children group the
    one-step-back predecessors by the joint move they would have shown,
    branching over every response that can enter the predecessor.

    Nodes with identical path contents expand to identical subtrees, so
    expansions are memoized on the contents alone; the budget counts the
    path entries materialized by distinct expansions.
    """
    response = {s: _response_key(reduced, s) for s in reduced.states}
    incoming = _incoming_actions(reduced)

    preds = {}  # (state, entering response) -> [(predecessor, consumed input)]
    for key, next_state in reduced.transition.items():
        preds.setdefault((next_state, reduced.output[key]), []).append(key)

    def unresolved(content) -> bool:
        rows = {response[entry.terminal] for entry in content}
        return len(rows) > 1

    root = TreeNode(
        paths=frozenset(PathEntry(s, s, None) for s in reduced.states),
        level=0,
    )

    # Level 1 splits the root by the response that can enter each terminal;
    # the opponent action seen at the terminal is still free at this point.
    groups = {}
    for entry in root.paths:
        for action in incoming[entry.current]:
            groups.setdefault(action, set()).add(
                PathEntry(entry.terminal, entry.current, action)
            )

    budget = node_budget - sum(len(g) for g in groups.values())
    level = {
        TreeNode(frozenset(entries), 1, (action, None))
        for action, entries in groups.items()
        if unresolved(entries)
    }

    memo = {}

    def expand(content):
        nonlocal budget
        if content in memo:
            return memo[content]
        children = {}
        for terminal, state, entered_with in content:
            for pred_state, consumed in preds.get((state, entered_with), ()):
                for pred_entry in incoming[pred_state]:
                    children.setdefault((pred_entry, consumed), set()).add(
                        PathEntry(terminal, pred_state, pred_entry)
                    )
        budget -= sum(len(c) for c in children.values())
        if budget < 0:
            raise BudgetExceededError(
                f"distinguishing tree outgrew its node budget of {node_budget}"
            )
        result = tuple(
            (label, frozenset(c)) for label, c in children.items() if unresolved(c)
        )
        memo[content] = result
        return result

    k = 1
    while level:
        if k >= cap_level:
            return "infinite", None
        survivors = {}
        for node in level:
            for label, paths in expand(node.paths):
                survivors.setdefault(paths, TreeNode(paths, k + 1, label))
        level = set(survivors.values())
        k += 1
    return "finite", k


def pds_depth(fsm: Fsm, cap: SearchCap | None = None, node_budget: int = 200_000) -> Depth:
    """Depth by the backward distinguishing tree.

    The answer is the deepest tree level any node was created at.  Two
    degenerate shapes sit below the tree: a machine whose reachable states
    all share one response row never needs more than the current round, so
    it is depth 1, or depth 0 when its output never varies at all.  An
    unresolved branch surviving past the cap level proves a cycle.
    """
    reduced = reachable_reduce(fsm)
    if is_constant_output(reduced):
        return Depth.finite(0)
    rows = {_response_key(reduced, s) for s in reduced.states}
    if len(rows) == 1:
        return Depth.finite(1)
    cap_level = (cap or SearchCap.default_for(reduced)).max_level
    status, depth = _pds_scan(reduced, cap_level, node_budget)
    if status == "infinite":
        return INFINITE
    return Depth.finite(depth)


def window_oracle_depth(fsm: Fsm, cap: SearchCap | None = None) -> Depth:
    """Depth by direct search for confusable history windows.

    Two length-k walks over the machine's memits are confusable when their
    joint-move labels agree position by position yet they end in states
    with different response rows.  The depth is one more than the largest
    confusable k.  The walk pairs reachable at step k shrink as k grows
    (step 1 admits every label-equal pair), so the search either runs out
    of pairs, stabilizes, or is cut off by the cap; confusability at the
    cap level proves a cycle and an infinite depth.
    """
    reduced = reachable_reduce(fsm)
    response = {s: _response_key(reduced, s) for s in reduced.states}
    incoming = _incoming_actions(reduced)
    cap_level = (cap or SearchCap.default_for(reduced)).max_level

    # Unordered pairs of label-equal memits, as (in_action, lo, hi, out_action).
    pairs = set()
    for in_action in reduced.outputs:
        holders = sorted(s for s in reduced.states if in_action in incoming[s])
        for i, lo in enumerate(holders):
            for hi in holders[i + 1:]:
                for out_action in reduced.inputs:
                    pairs.add((in_action, lo, hi, out_action))

    def confusable(current) -> bool:
        return any(response[lo] != response[hi] for _, lo, hi, _ in current)

    def advance(current) -> set:
        nxt = set()
        for _, lo, hi, out_action in current:
            response_lo = reduced.output[(lo, out_action)]
            if response_lo != reduced.output[(hi, out_action)]:
                continue
            to_lo = reduced.transition[(lo, out_action)]
            to_hi = reduced.transition[(hi, out_action)]
            if to_lo == to_hi:
                continue
            a, b = sorted((to_lo, to_hi))
            for d in reduced.inputs:
                nxt.add((response_lo, a, b, d))
        return nxt

    deepest = 0
    for k in range(1, cap_level + 1):
        if not pairs:
            break
        if confusable(pairs):
            deepest = k
            if k == cap_level:
                return INFINITE
        advanced = advance(pairs)
        if advanced == pairs:
            if confusable(pairs):
                return INFINITE
            break
        pairs = advanced

    if deepest == 0:
        return Depth.finite(0) if is_constant_output(reduced) else Depth.finite(1)
    return Depth.finite(deepest + 1)
