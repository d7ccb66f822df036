"""Shared test helpers: random machines, state duplication, and a
reference depth computed straight from the definition by enumerating
walks (deliberately naive; used only on tiny machines)."""
from __future__ import annotations

from memdepth import Depth, INFINITE, validate
from memdepth.fsm import Fsm, is_constant_output, reachable_reduce

BINARY = ("C", "D")


def random_machine(rng, max_states=6, min_states=1, alphabet=BINARY, name="random") -> Fsm:
    """A uniformly random total machine over the given alphabet."""
    count = rng.randint(min_states, max_states)
    states = [str(i + 1) for i in range(count)]
    transitions = [
        {
            "from": state,
            "input": symbol,
            "to": rng.choice(states),
            "output": rng.choice(alphabet),
        }
        for state in states
        for symbol in alphabet
    ]
    return validate(
        {
            "name": name,
            "inputs": list(alphabet),
            "outputs": list(alphabet),
            "states": states,
            "initial_state": rng.choice(states),
            "initial_action": rng.choice((None,) + tuple(alphabet)),
            "transitions": transitions,
        }
    )


def duplicate_state(fsm: Fsm, rng) -> Fsm:
    """Split a random state into two copies with identical rows.

    A nonempty random subset of the state's incoming transitions is
    rerouted to the copy; the copy's own rows equal the original's rows
    after rerouting, so the two are bisimilar and behavior is unchanged.
    """
    target = rng.choice(sorted(set(fsm.transition.values())))
    clone = target + "_copy"
    while clone in fsm.states:
        clone += "x"

    incoming_keys = sorted(key for key, nxt in fsm.transition.items() if nxt == target)
    chosen = {key for key in incoming_keys if rng.random() < 0.5}
    if not chosen:
        chosen = {rng.choice(incoming_keys)}

    rerouted = {
        key: (clone if key in chosen else nxt) for key, nxt in fsm.transition.items()
    }
    transitions = [
        {"from": state, "input": symbol, "to": rerouted[(state, symbol)],
         "output": fsm.output[(state, symbol)]}
        for (state, symbol) in fsm.transition
    ]
    transitions.extend(
        {"from": clone, "input": symbol, "to": rerouted[(target, symbol)],
         "output": fsm.output[(target, symbol)]}
        for symbol in fsm.inputs
    )
    return validate(
        {
            "name": fsm.name,
            "inputs": list(fsm.inputs),
            "outputs": list(fsm.outputs),
            "states": list(fsm.states) + [clone],
            "initial_state": fsm.initial_state,
            "initial_action": fsm.initial_action,
            "transitions": transitions,
        }
    )


def brute_force_depth(fsm: Fsm, cap: int) -> Depth:
    """Depth straight from the definition, by exhaustive walk enumeration.

    A walk of k steps starts in any state with any action that can enter
    it, follows k-1 input symbols, and ends with one more free input
    symbol; its visible labels are the k (entering action, input symbol)
    pairs along the way.  Step k is confusable when two walks carry the
    same labels but end in states whose response rows differ.  The depth
    is one more than the largest confusable k; confusability that never
    dies out by ``cap`` steps means the machine's depth is infinite.
    """
    reduced = reachable_reduce(fsm)
    incoming = {state: set() for state in reduced.states}
    for key, nxt in reduced.transition.items():
        incoming[nxt].add(reduced.output[key])
    rows = {
        state: tuple(reduced.output[(state, symbol)] for symbol in reduced.inputs)
        for state in reduced.states
    }

    def walks(length):
        collected = []

        def go(state, entering, labels, remaining):
            if remaining == 1:
                for symbol in reduced.inputs:
                    collected.append((labels + ((entering, symbol),), state))
                return
            for symbol in reduced.inputs:
                go(
                    reduced.transition[(state, symbol)],
                    reduced.output[(state, symbol)],
                    labels + ((entering, symbol),),
                    remaining - 1,
                )

        for start in sorted(reduced.states):
            for entering in sorted(incoming[start]):
                go(start, entering, (), length)
        return collected

    confusable = []
    for k in range(1, cap + 1):
        groups = {}
        for labels, end in walks(k):
            groups.setdefault(labels, set()).add(rows[end])
        if any(len(group) > 1 for group in groups.values()):
            confusable.append(k)

    if not confusable:
        return Depth.finite(0) if is_constant_output(reduced) else Depth.finite(1)
    if max(confusable) == cap:
        return INFINITE
    return Depth.finite(max(confusable) + 1)
