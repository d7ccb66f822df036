"""Memory depth of a strategy via its memit-pair graph.

The memory depth is the smallest window of recent joint moves that always
suffices to determine the next response.  Two states whose response rows
differ are told apart only once the shared history runs out; the longest
chain of memit pairs ending at such a distinguishing pair measures how
long two plays can stay indistinguishable, and the depth is one more than
that.  A cycle that can still reach a distinguishing pair means no finite
window ever suffices.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .fsm import Fsm, is_constant_output, reachable_reduce
from .memits import MemitPairGraph, build_memit_graph, build_memit_pair_graph


@dataclass(frozen=True)
class Depth:
    """A non-negative integer depth, or the distinguished infinite value."""

    finite_value: int | None = None

    @staticmethod
    def finite(value: int) -> "Depth":
        if value < 0:
            raise ValueError("depth cannot be negative")
        return Depth(value)

    @staticmethod
    def infinite() -> "Depth":
        return Depth(None)

    @property
    def is_infinite(self) -> bool:
        return self.finite_value is None

    @property
    def value(self) -> int:
        if self.finite_value is None:
            raise ValueError("infinite depth has no integer value")
        return self.finite_value

    @property
    def json_value(self):
        """JSON rendering: plain integer, or the string \"infinite\"."""
        return "infinite" if self.is_infinite else self.finite_value

    def __eq__(self, other):
        if isinstance(other, Depth):
            return self.finite_value == other.finite_value
        if isinstance(other, int):
            return self.finite_value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.finite_value)

    def __str__(self):
        return "infinite" if self.is_infinite else str(self.finite_value)

    def __repr__(self):
        return f"Depth({self})"


INFINITE = Depth.infinite()


def distinguishing_targets(fsm: Fsm, pair_graph: MemitPairGraph) -> frozenset:
    """Pair nodes whose two states respond differently to some input."""
    return frozenset(
        pair for pair in pair_graph.nodes
        if not fsm.same_response_set(pair.states[0], pair.states[1])
    )


def longest_path_to_targets(pair_graph: MemitPairGraph, targets) -> Depth | None:
    """Longest path (counted in nodes) ending at a target pair.

    Returns None when there are no targets.  Returns infinite when the
    subgraph that can still reach a target contains a cycle; self-loops
    count.  Otherwise the result is at least 1 (a bare target node).
    """
    targets = frozenset(targets)
    if not targets:
        return None

    predecessors = {node: set() for node in pair_graph.nodes}
    for node in pair_graph.nodes:
        for succ in pair_graph.successors(node):
            predecessors[succ].add(node)

    # Everything that can reach a target, targets included.
    relevant = set(targets)
    queue = deque(targets)
    while queue:
        node = queue.popleft()
        for pred in predecessors[node]:
            if pred not in relevant:
                relevant.add(pred)
                queue.append(pred)

    sub_succ = {
        node: frozenset(s for s in pair_graph.successors(node) if s in relevant)
        for node in relevant
    }

    # Kahn's algorithm: a self-loop keeps its node's in-degree positive, so
    # any cycle leaves nodes unprocessed.
    in_degree = {node: 0 for node in relevant}
    for node in relevant:
        for succ in sub_succ[node]:
            in_degree[succ] += 1
    ready = deque(sorted(node for node in relevant if in_degree[node] == 0))
    topo_order = []
    while ready:
        node = ready.popleft()
        topo_order.append(node)
        for succ in sub_succ[node]:
            in_degree[succ] -= 1
            if in_degree[succ] == 0:
                ready.append(succ)
    if len(topo_order) != len(relevant):
        return INFINITE

    longest = {}
    for node in topo_order:
        best = 0
        for pred in predecessors[node]:
            if pred in relevant:
                best = max(best, longest[pred])
        longest[node] = best + 1
    return Depth.finite(max(longest[t] for t in targets))


def memory_depth(fsm: Fsm) -> Depth:
    """Memory depth of a validated machine.

    Reduces the machine, builds its memit and memit-pair graphs, and
    measures the longest run of play that leaves two differently-behaving
    states indistinguishable.  With no distinguishing pair at all the
    answer is 0 for constant-output machines and 1 otherwise: one round of
    history always pins down the next response.
    """
    reduced = reachable_reduce(fsm)
    pair_graph = build_memit_pair_graph(build_memit_graph(reduced))
    targets = distinguishing_targets(reduced, pair_graph)
    if not targets:
        return Depth.finite(0) if is_constant_output(reduced) else Depth.finite(1)
    longest = longest_path_to_targets(pair_graph, targets)
    if longest.is_infinite:
        return INFINITE
    return Depth.finite(longest.value + 1)
