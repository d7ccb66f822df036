"""Deterministic finite-state transducers for repeated games.

A machine reads one opponent action per round and emits one response per
round.  Transition and output tables must be total over states x inputs;
partial tables are rejected outright rather than patched.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class FsmError(Exception):
    """Base class for machine construction and execution errors."""


class EmptyAlphabetError(FsmError):
    pass


class UnknownStateError(FsmError):
    pass


class UnknownSymbolError(FsmError):
    pass


class MissingTransitionError(FsmError):
    pass


class DuplicateTransitionError(FsmError):
    pass


class NotABijectionError(FsmError):
    pass


# A state's response row: input symbol -> emitted symbol.
ResponseSet = dict


@dataclass(frozen=True)
class Fsm:
    """An immutable transducer.

    ``transition[(state, symbol)]`` is the next state and
    ``output[(state, symbol)]`` the emitted response for that round.
    ``initial_action`` is the move played before any input has been seen;
    it is plumbing for match play and never affects analysis results.
    State identifiers are opaque strings, kept in sorted order so that
    every derived artifact (serialization, graph exports) is stable.
    """

    states: tuple[str, ...]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    initial_state: str
    transition: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    initial_action: str | None = None
    name: str = "machine"

    def step(self, state: str, symbol: str) -> tuple[str, str]:
        """Consume one input symbol; return (next_state, response)."""
        if state not in self.states:
            raise UnknownStateError(f"unknown state {state!r}")
        if symbol not in self.inputs:
            raise UnknownSymbolError(f"unknown input symbol {symbol!r}")
        return self.transition[(state, symbol)], self.output[(state, symbol)]

    def run(self, symbols) -> tuple[str, ...]:
        """Fold the input sequence from the initial state, collecting responses."""
        state = self.initial_state
        emitted = []
        for symbol in symbols:
            state, response = self.step(state, symbol)
            emitted.append(response)
        return tuple(emitted)

    def response_set(self, state: str) -> ResponseSet:
        """The state's full response row, as a dict keyed by input symbol."""
        if state not in self.states:
            raise UnknownStateError(f"unknown state {state!r}")
        return {symbol: self.output[(state, symbol)] for symbol in self.inputs}

    def same_response_set(self, a: str, b: str) -> bool:
        return self.response_set(a) == self.response_set(b)

    def iter_transitions(self):
        """Yield (state, symbol, next_state, response) in sorted order."""
        for state in self.states:
            for symbol in self.inputs:
                yield state, symbol, self.transition[(state, symbol)], self.output[(state, symbol)]


def validate(raw) -> Fsm:
    """Check a raw machine description and build an Fsm from it.

    ``raw`` is a mapping with keys ``states``, ``inputs``, ``outputs``,
    ``initial_state``, ``transitions`` (a list of records with ``from``,
    ``input``, ``to``, ``output``), plus optional ``initial_action`` and
    ``name``.  Every defect is reported with the offending record.
    """
    inputs = tuple(sorted(set(raw.get("inputs", ()))))
    outputs = tuple(sorted(set(raw.get("outputs", ()))))
    if not inputs:
        raise EmptyAlphabetError("input alphabet is empty")
    if not outputs:
        raise EmptyAlphabetError("output alphabet is empty")

    states = tuple(sorted(set(raw.get("states", ()))))
    if not states:
        raise UnknownStateError("machine declares no states")
    state_set = set(states)

    initial_state = raw.get("initial_state")
    if initial_state not in state_set:
        raise UnknownStateError(f"initial state {initial_state!r} is not a declared state")

    transition = {}
    output = {}
    for record in raw.get("transitions", ()):
        src = record.get("from")
        symbol = record.get("input")
        dst = record.get("to")
        response = record.get("output")
        if src not in state_set:
            raise UnknownStateError(f"transition {record!r} leaves unknown state {src!r}")
        if dst not in state_set:
            raise UnknownStateError(f"transition {record!r} targets unknown state {dst!r}")
        if symbol not in inputs:
            raise UnknownSymbolError(f"transition {record!r} reads unknown input {symbol!r}")
        if response not in outputs:
            raise UnknownSymbolError(f"transition {record!r} emits unknown output {response!r}")
        key = (src, symbol)
        if key in transition:
            raise DuplicateTransitionError(f"transition for state {src!r} on input {symbol!r} is defined twice")
        transition[key] = dst
        output[key] = response

    for state in states:
        for symbol in inputs:
            if (state, symbol) not in transition:
                raise MissingTransitionError(f"no transition for state {state!r} on input {symbol!r}")

    initial_action = raw.get("initial_action")
    if initial_action is not None and initial_action not in outputs:
        raise UnknownSymbolError(f"initial action {initial_action!r} is not an output symbol")

    return Fsm(
        states=states,
        inputs=inputs,
        outputs=outputs,
        initial_state=initial_state,
        transition=transition,
        output=output,
        initial_action=initial_action,
        name=raw.get("name", "machine"),
    )


def reachable_states(fsm: Fsm) -> frozenset:
    """States reachable from the initial state under some input sequence."""
    seen = {fsm.initial_state}
    queue = deque([fsm.initial_state])
    while queue:
        state = queue.popleft()
        for symbol in fsm.inputs:
            nxt = fsm.transition[(state, symbol)]
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def reachable_reduce(fsm: Fsm) -> Fsm:
    """Drop states that no input sequence can reach.

    The result accepts exactly the same runs as the original machine;
    alphabets are kept as declared even if some symbols go unused.
    """
    keep = reachable_states(fsm)
    states = tuple(sorted(keep))
    transition = {k: v for k, v in fsm.transition.items() if k[0] in keep}
    output = {k: v for k, v in fsm.output.items() if k[0] in keep}
    return Fsm(
        states=states,
        inputs=fsm.inputs,
        outputs=fsm.outputs,
        initial_state=fsm.initial_state,
        transition=transition,
        output=output,
        initial_action=fsm.initial_action,
        name=fsm.name,
    )


def is_constant_output(fsm: Fsm) -> bool:
    """True when every reachable state emits one and the same symbol."""
    emitted = set()
    for state in reachable_states(fsm):
        for symbol in fsm.inputs:
            emitted.add(fsm.output[(state, symbol)])
            if len(emitted) > 1:
                return False
    return len(emitted) <= 1


def _check_bijection(mapping, domain, what: str) -> None:
    if set(mapping) != set(domain):
        raise NotABijectionError(f"{what} relabeling must cover exactly {sorted(domain)}")
    values = list(mapping.values())
    if len(set(values)) != len(values):
        raise NotABijectionError(f"{what} relabeling maps two symbols to one")


def relabel(fsm: Fsm, state_map, input_map, output_map) -> Fsm:
    """Rename states and alphabet symbols through three bijections."""
    _check_bijection(state_map, fsm.states, "state")
    _check_bijection(input_map, fsm.inputs, "input")
    _check_bijection(output_map, fsm.outputs, "output")
    transition = {}
    output = {}
    for (state, symbol), nxt in fsm.transition.items():
        key = (state_map[state], input_map[symbol])
        transition[key] = state_map[nxt]
        output[key] = output_map[fsm.output[(state, symbol)]]
    return Fsm(
        states=tuple(sorted(state_map[s] for s in fsm.states)),
        inputs=tuple(sorted(input_map[s] for s in fsm.inputs)),
        outputs=tuple(sorted(output_map[s] for s in fsm.outputs)),
        initial_state=state_map[fsm.initial_state],
        transition=transition,
        output=output,
        initial_action=None if fsm.initial_action is None else output_map[fsm.initial_action],
        name=fsm.name,
    )
