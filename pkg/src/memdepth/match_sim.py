"""A minimal iterated prisoner's dilemma match engine.

Both players move simultaneously: the opening moves are the machines'
declared initial actions, and from then on each machine's next move is
its response to the opponent's previous move.  The module also provides
a bounded behavioral-equivalence check used throughout the test suite.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .fsm import Fsm


class MatchError(Exception):
    """Base class for match setup errors."""


class NonBinaryAlphabetError(MatchError):
    """Match play needs both machines to speak exactly {C, D}."""


class AlphabetMismatchError(MatchError):
    """The two machines do not share alphabets."""


@dataclass(frozen=True)
class PayoffMatrix:
    """Stage-game payoffs; defaults are the classic (3, 5, 0, 1)."""

    reward: float = 3
    temptation: float = 5
    sucker: float = 0
    punishment: float = 1

    def payoff(self, move_a: str, move_b: str) -> tuple[float, float]:
        """Per-round payoffs for the joint move (move_a, move_b)."""
        if move_a == "C":
            if move_b == "C":
                return self.reward, self.reward
            return self.sucker, self.temptation
        if move_b == "C":
            return self.temptation, self.sucker
        return self.punishment, self.punishment


@dataclass(frozen=True)
class MatchResult:
    """The full record of one match.

    ``moves`` lists each round as (player a's move, player b's move);
    ``history_a``/``history_b`` give the same rounds as (own, opponent)
    from each player's perspective.
    """

    rounds: int
    moves: tuple
    score_a: float
    score_b: float

    @property
    def history_a(self) -> tuple:
        return self.moves

    @property
    def history_b(self) -> tuple:
        return tuple((b, a) for a, b in self.moves)


_BINARY = ("C", "D")


def _opening_move(machine: Fsm) -> str:
    if machine.initial_action is None:
        warnings.warn(
            f"machine {machine.name!r} declares no initial_action; defaulting to C",
            stacklevel=3,
        )
        return "C"
    return machine.initial_action


def play_match(
    a: Fsm,
    b: Fsm,
    rounds: int,
    payoffs: PayoffMatrix = PayoffMatrix(),
) -> MatchResult:
    """Play ``rounds`` simultaneous rounds of machine a versus machine b.

    Round 1 plays the two initial actions (C, with a warning, when a
    machine declares none).  Every later round, each machine reads the
    opponent's previous move and emits its response as its own next move.
    """
    if rounds < 0:
        raise ValueError("rounds must be non-negative")
    for machine in (a, b):
        if machine.inputs != _BINARY or machine.outputs != _BINARY:
            raise NonBinaryAlphabetError(
                f"machine {machine.name!r} must use exactly the C/D alphabet for match play"
            )

    moves = []
    score_a = score_b = 0
    if rounds:
        move_a, move_b = _opening_move(a), _opening_move(b)
        state_a, state_b = a.initial_state, b.initial_state
        for _ in range(rounds):
            moves.append((move_a, move_b))
            pay_a, pay_b = payoffs.payoff(move_a, move_b)
            score_a += pay_a
            score_b += pay_b
            state_a, next_a = a.step(state_a, move_b)
            state_b, next_b = b.step(state_b, move_a)
            move_a, move_b = next_a, next_b
    return MatchResult(rounds=rounds, moves=tuple(moves), score_a=score_a, score_b=score_b)


def behaviorally_equivalent(a: Fsm, b: Fsm, horizon: int | None = None) -> bool:
    """True when the machines answer every input word the same way.

    Checks all words up to ``horizon`` symbols long (default: the product
    of the two state counts, which by pigeonhole over joint states covers
    words of every length for deterministic machines).
    """
    if a.inputs != b.inputs or a.outputs != b.outputs:
        raise AlphabetMismatchError(
            f"machines {a.name!r} and {b.name!r} use different alphabets"
        )
    if horizon is None:
        horizon = len(a.states) * len(b.states)
    if horizon < 1:
        raise ValueError("horizon must be a positive integer")

    start = (a.initial_state, b.initial_state)
    seen = {start}
    frontier = [start]
    depth = 0
    while frontier:
        for state_a, state_b in frontier:
            for symbol in a.inputs:
                if a.output[(state_a, symbol)] != b.output[(state_b, symbol)]:
                    return False
        depth += 1
        if depth >= horizon:
            break
        grown = []
        for state_a, state_b in frontier:
            for symbol in a.inputs:
                pair = (a.transition[(state_a, symbol)], b.transition[(state_b, symbol)])
                if pair not in seen:
                    seen.add(pair)
                    grown.append(pair)
        frontier = grown
    return True
