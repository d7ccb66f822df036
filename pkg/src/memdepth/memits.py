"""Memit and memit-pair graphs.

A memit records one round of play from the strategy's side: the response
that carried it into a state, the state itself, and the opponent action it
sees there.  Chains of memits are exactly the joint-move histories the
strategy can experience, so paths in the graphs below correspond to
realizable windows of recent play.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .fsm import Fsm


@dataclass(frozen=True, order=True)
class Memit:
    """(in_action, state, out_action): entered with in_action, sees out_action."""

    in_action: str
    state: str
    out_action: str

    @property
    def label(self) -> tuple[str, str]:
        """The joint move this memit shows to an observer of the play."""
        return (self.in_action, self.out_action)


@dataclass(frozen=True, order=True)
class MemitPair:
    """Two memits with equal labels but distinct states, kept in sorted order."""

    in_action: str
    states: tuple[str, str]
    out_action: str

    @staticmethod
    def of(in_action: str, state_a: str, state_b: str, out_action: str) -> "MemitPair":
        if state_a == state_b:
            raise ValueError("a memit pair needs two distinct states")
        lo, hi = sorted((state_a, state_b))
        return MemitPair(in_action, (lo, hi), out_action)


@dataclass(frozen=True)
class MemitGraph:
    nodes: frozenset
    edges: dict

    def successors(self, memit: Memit) -> frozenset:
        return self.edges.get(memit, frozenset())


@dataclass(frozen=True)
class MemitPairGraph:
    nodes: frozenset
    edges: dict

    def successors(self, pair: MemitPair) -> frozenset:
        return self.edges.get(pair, frozenset())


def incoming_actions(fsm: Fsm) -> dict:
    """For each state, the set of responses some transition enters it with.

    A state nothing transitions into (possible only for the initial state
    of a reduced machine) gets an empty set and contributes no memits.
    """
    incoming = {state: set() for state in fsm.states}
    for _, _, next_state, response in fsm.iter_transitions():
        incoming[next_state].add(response)
    return incoming


def build_memit_graph(fsm: Fsm) -> MemitGraph:
    """Build the memit graph of a reachable-reduced machine.

    Nodes are the memits (a, s, b) with a among the incoming actions of s
    and b ranging over the whole input alphabet.  Each transition
    (s, b) -> next_state emitting response c yields edges
    (a, s, b) -> (c, next_state, d); the trailing out_action d is free, so
    one edge per input symbol is materialized.
    """
    incoming = incoming_actions(fsm)
    nodes = frozenset(
        Memit(a, state, b)
        for state in fsm.states
        for a in incoming[state]
        for b in fsm.inputs
    )
    edges = {node: set() for node in nodes}
    for state, symbol, next_state, response in fsm.iter_transitions():
        for a in incoming[state]:
            start = Memit(a, state, symbol)
            for d in fsm.inputs:
                edges[start].add(Memit(response, next_state, d))
    return MemitGraph(nodes=nodes, edges={k: frozenset(v) for k, v in edges.items()})


def build_memit_pair_graph(graph: MemitGraph) -> MemitPairGraph:
    """Pair up label-equal memits and follow their joint successors.

    Every unordered pair of distinct-state memits sharing a label is a
    node, whether or not any edge touches it.  A pair steps to a successor
    pair when each member steps to one of the successor's members with
    matching labels; successors whose states coincide are dropped, since
    the two play histories merge there and stop being distinguishable.
    Straight and crossed member assignments produce the same unordered
    pair, so no duplicate edges arise.
    """
    by_label: dict = {}
    for memit in sorted(graph.nodes):
        by_label.setdefault(memit.label, []).append(memit)

    nodes = set()
    for (in_action, out_action), members in by_label.items():
        for x, y in combinations(members, 2):
            nodes.add(MemitPair.of(in_action, x.state, y.state, out_action))

    edges = {node: set() for node in nodes}
    for pair in nodes:
        x = Memit(pair.in_action, pair.states[0], pair.out_action)
        y = Memit(pair.in_action, pair.states[1], pair.out_action)
        for sx in graph.successors(x):
            for sy in graph.successors(y):
                if sx.label == sy.label and sx.state != sy.state:
                    edges[pair].add(MemitPair.of(sx.in_action, sx.state, sy.state, sx.out_action))
    return MemitPairGraph(nodes=frozenset(nodes), edges={k: frozenset(v) for k, v in edges.items()})
