"""Match play and behavioral equivalence."""
import random

import pytest

from memdepth import builtin, relabel, validate
from memdepth.fsm import reachable_reduce
from memdepth.match_sim import (
    AlphabetMismatchError,
    NonBinaryAlphabetError,
    PayoffMatrix,
    behaviorally_equivalent,
    play_match,
)
from util import duplicate_state, random_machine


def one_state(move, initial_action=None, name="one"):
    return validate(
        {
            "name": name,
            "inputs": ["C", "D"],
            "outputs": ["C", "D"],
            "states": ["1"],
            "initial_state": "1",
            "initial_action": initial_action,
            "transitions": [
                {"from": "1", "input": "C", "to": "1", "output": move},
                {"from": "1", "input": "D", "to": "1", "output": move},
            ],
        }
    )


class TestPayoffMatrix:
    def test_defaults(self):
        matrix = PayoffMatrix()
        assert (matrix.reward, matrix.temptation, matrix.sucker, matrix.punishment) == (3, 5, 0, 1)

    def test_cells(self):
        matrix = PayoffMatrix()
        assert matrix.payoff("C", "C") == (3, 3)
        assert matrix.payoff("C", "D") == (0, 5)
        assert matrix.payoff("D", "C") == (5, 0)
        assert matrix.payoff("D", "D") == (1, 1)


class TestPlayMatch:
    def test_tft_mirror_match(self):
        tft = builtin("tft-2state").machine
        result = play_match(tft, tft, rounds=10)
        assert (result.score_a, result.score_b) == (30, 30)
        assert result.moves == tuple([("C", "C")] * 10)

    def test_defector_exploits_cooperator(self):
        alld = one_state("D", initial_action="D", name="alld")
        allc = one_state("C", initial_action="C", name="allc")
        result = play_match(alld, allc, rounds=4)
        assert (result.score_a, result.score_b) == (20, 0)
        assert result.moves == tuple([("D", "C")] * 4)

    def test_zero_rounds(self):
        tft = builtin("tft-2state").machine
        result = play_match(tft, tft, rounds=0)
        assert (result.rounds, result.score_a, result.score_b) == (0, 0, 0)
        assert result.moves == ()

    def test_negative_rounds(self):
        tft = builtin("tft-2state").machine
        with pytest.raises(ValueError):
            play_match(tft, tft, rounds=-1)

    def test_missing_initial_action_warns_and_cooperates(self):
        silent = one_state("D", initial_action=None, name="silent")
        allc = one_state("C", initial_action="C", name="allc")
        with pytest.warns(UserWarning, match="silent"):
            result = play_match(silent, allc, rounds=3)
        assert result.moves[0] == ("C", "C")
        assert result.moves[1:] == (("D", "C"), ("D", "C"))

    def test_history_views(self):
        alld = one_state("D", initial_action="D")
        allc = one_state("C", initial_action="C")
        result = play_match(alld, allc, rounds=2)
        assert result.history_a == (("D", "C"), ("D", "C"))
        assert result.history_b == (("C", "D"), ("C", "D"))

    def test_non_binary_rejected(self):
        weird = validate(
            {
                "inputs": ["C", "D", "X"],
                "outputs": ["C", "D", "X"],
                "states": ["1"],
                "initial_state": "1",
                "transitions": [
                    {"from": "1", "input": s, "to": "1", "output": "C"}
                    for s in ("C", "D", "X")
                ],
            }
        )
        tft = builtin("tft-2state").machine
        with pytest.raises(NonBinaryAlphabetError):
            play_match(weird, tft, rounds=1)

    def test_payoff_override(self):
        tft = builtin("tft-2state").machine
        result = play_match(tft, tft, rounds=10, payoffs=PayoffMatrix(reward=4))
        assert (result.score_a, result.score_b) == (40, 40)

    @pytest.mark.filterwarnings("ignore:machine 'random' declares no initial_action")
    def test_swap_symmetry(self):
        rng = random.Random(41)
        for _ in range(20):
            a = random_machine(rng, max_states=4)
            b = random_machine(rng, max_states=4)
            forward = play_match(a, b, rounds=12)
            backward = play_match(b, a, rounds=12)
            assert forward.score_a == backward.score_b
            assert forward.score_b == backward.score_a
            assert forward.history_a == backward.history_b

    @pytest.mark.filterwarnings("ignore:machine 'random' declares no initial_action")
    def test_score_conservation(self):
        rng = random.Random(42)
        matrix = PayoffMatrix()
        for _ in range(20):
            a = random_machine(rng, max_states=4)
            b = random_machine(rng, max_states=4)
            result = play_match(a, b, rounds=15)
            total = sum(sum(matrix.payoff(x, y)) for x, y in result.moves)
            assert result.score_a + result.score_b == total

    def test_fortress_password_opens_cooperation(self):
        fortress3 = builtin("fortress3-paper-4state").machine
        allc = one_state("C", initial_action="C")
        result = play_match(fortress3, allc, rounds=6)
        # Three cooperations unlock state 4; fortress cooperates from round 4 on.
        assert [pair[0] for pair in result.moves] == ["D", "D", "D", "C", "C", "C"]


class TestBehavioralEquivalence:
    def test_reduction_is_equivalent(self):
        rng = random.Random(43)
        for _ in range(30):
            fsm = random_machine(rng)
            assert behaviorally_equivalent(fsm, reachable_reduce(fsm))

    def test_duplication_is_equivalent(self):
        rng = random.Random(44)
        for _ in range(30):
            fsm = random_machine(rng)
            assert behaviorally_equivalent(fsm, duplicate_state(fsm, rng))

    def test_state_relabeling_is_equivalent(self):
        rng = random.Random(45)
        for _ in range(20):
            fsm = random_machine(rng)
            names = [f"s{i}" for i in range(len(fsm.states))]
            rng.shuffle(names)
            mapping = dict(zip(fsm.states, names))
            ident = {s: s for s in fsm.inputs}
            assert behaviorally_equivalent(fsm, relabel(fsm, mapping, ident, ident))

    def test_different_machines_detected(self):
        first = builtin("fortress3-paper-4state").machine
        second = builtin("fortress3-axelrod").machine
        assert not behaviorally_equivalent(first, second)

    def test_horizon_limits_the_check(self):
        allc = one_state("C")
        late_defector = validate(
            {
                "inputs": ["C", "D"],
                "outputs": ["C", "D"],
                "states": ["1", "2"],
                "initial_state": "1",
                "transitions": [
                    {"from": "1", "input": "C", "to": "2", "output": "C"},
                    {"from": "1", "input": "D", "to": "2", "output": "C"},
                    {"from": "2", "input": "C", "to": "2", "output": "D"},
                    {"from": "2", "input": "D", "to": "2", "output": "D"},
                ],
            }
        )
        assert behaviorally_equivalent(allc, late_defector, horizon=1)
        assert not behaviorally_equivalent(allc, late_defector, horizon=2)
        assert not behaviorally_equivalent(allc, late_defector)

    def test_alphabet_mismatch(self):
        tft = builtin("tft-2state").machine
        unary = validate(
            {
                "inputs": ["C"],
                "outputs": ["C"],
                "states": ["1"],
                "initial_state": "1",
                "transitions": [{"from": "1", "input": "C", "to": "1", "output": "C"}],
            }
        )
        with pytest.raises(AlphabetMismatchError):
            behaviorally_equivalent(tft, unary)

    def test_bad_horizon(self):
        tft = builtin("tft-2state").machine
        with pytest.raises(ValueError):
            behaviorally_equivalent(tft, tft, horizon=0)

    def test_reflexive_on_catalog(self):
        from memdepth import catalog_entries

        for entry in catalog_entries():
            assert behaviorally_equivalent(entry.machine, entry.machine)
