"""The Depth type and the memit-pair depth pipeline."""
import random

import pytest

from memdepth import INFINITE, Depth, builtin, memory_depth, validate
from memdepth.depth import distinguishing_targets, longest_path_to_targets
from memdepth.fsm import reachable_reduce
from memdepth.memits import MemitPair, build_memit_graph, build_memit_pair_graph
from util import brute_force_depth, random_machine


class TestDepthType:
    def test_finite(self):
        three = Depth.finite(3)
        assert not three.is_infinite
        assert three.value == 3
        assert three == 3
        assert three == Depth.finite(3)
        assert three != Depth.finite(2)
        assert str(three) == "3"
        assert three.json_value == 3

    def test_infinite(self):
        assert INFINITE.is_infinite
        assert INFINITE == Depth.infinite()
        assert INFINITE != Depth.finite(3)
        assert str(INFINITE) == "infinite"
        assert INFINITE.json_value == "infinite"
        with pytest.raises(ValueError):
            INFINITE.value

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Depth.finite(-1)

    def test_hashable(self):
        assert len({Depth.finite(1), Depth.finite(1), INFINITE}) == 2


def pair_graph_of(name):
    machine = reachable_reduce(builtin(name).machine)
    return machine, build_memit_pair_graph(build_memit_graph(machine))


class TestPipelinePieces:
    def test_fortress3_targets(self):
        machine, pairs = pair_graph_of("fortress3-paper-4state")
        assert distinguishing_targets(machine, pairs) == frozenset(
            {
                MemitPair.of("D", "1", "3", "C"),
                MemitPair.of("D", "1", "3", "D"),
                MemitPair.of("D", "2", "3", "C"),
                MemitPair.of("D", "2", "3", "D"),
            }
        )

    def test_fortress3_longest_path(self):
        machine, pairs = pair_graph_of("fortress3-paper-4state")
        targets = distinguishing_targets(machine, pairs)
        assert longest_path_to_targets(pairs, targets) == Depth.finite(2)

    def test_no_targets_returns_none(self):
        machine, pairs = pair_graph_of("tft-2state")
        targets = distinguishing_targets(machine, pairs)
        assert targets == frozenset()
        assert longest_path_to_targets(pairs, targets) is None

    def test_cycle_reaching_target_is_infinite(self):
        machine, pairs = pair_graph_of("infinite-2state")
        targets = distinguishing_targets(machine, pairs)
        assert longest_path_to_targets(pairs, targets) == INFINITE


class TestMemoryDepth:
    def test_catalog_values(self):
        for entry in (
            ("fortress3-paper-4state", Depth.finite(3)),
            ("infinite-2state", INFINITE),
            ("tft-2state", Depth.finite(1)),
            ("fortress3-axelrod", Depth.finite(2)),
            ("fortress4-axelrod", Depth.finite(3)),
            ("pun1", INFINITE),
        ):
            name, expected = entry
            assert memory_depth(builtin(name).machine) == expected, name

    def test_constant_machine_is_zero(self):
        fsm = validate(
            {
                "inputs": ["C", "D"],
                "outputs": ["C", "D"],
                "states": ["1"],
                "initial_state": "1",
                "transitions": [
                    {"from": "1", "input": "C", "to": "1", "output": "C"},
                    {"from": "1", "input": "D", "to": "1", "output": "C"},
                ],
            }
        )
        assert memory_depth(fsm) == 0

    def test_uniform_rows_without_constancy_is_one(self):
        # Every state answers C with D and D with C, so the current move
        # alone determines the response even though output varies.
        fsm = validate(
            {
                "inputs": ["C", "D"],
                "outputs": ["C", "D"],
                "states": ["1", "2"],
                "initial_state": "1",
                "transitions": [
                    {"from": "1", "input": "C", "to": "2", "output": "D"},
                    {"from": "1", "input": "D", "to": "1", "output": "C"},
                    {"from": "2", "input": "C", "to": "1", "output": "D"},
                    {"from": "2", "input": "D", "to": "2", "output": "C"},
                ],
            }
        )
        assert memory_depth(fsm) == 1

    def test_unreachable_states_do_not_matter(self):
        raw = {
            "inputs": ["C", "D"],
            "outputs": ["C", "D"],
            "states": ["1", "2", "3", "4", "x"],
            "initial_state": "1",
            "initial_action": "D",
            "transitions": [
                {"from": "1", "input": "C", "to": "2", "output": "D"},
                {"from": "1", "input": "D", "to": "1", "output": "D"},
                {"from": "2", "input": "C", "to": "3", "output": "D"},
                {"from": "2", "input": "D", "to": "1", "output": "D"},
                {"from": "3", "input": "C", "to": "4", "output": "C"},
                {"from": "3", "input": "D", "to": "1", "output": "D"},
                {"from": "4", "input": "C", "to": "4", "output": "C"},
                {"from": "4", "input": "D", "to": "1", "output": "D"},
                {"from": "x", "input": "C", "to": "x", "output": "C"},
                {"from": "x", "input": "D", "to": "1", "output": "D"},
            ],
        }
        assert memory_depth(validate(raw)) == 3

    def test_isolated_target_pairs_give_depth_two(self):
        # fortress3-axelrod's pair graph has target nodes but no edges,
        # so the longest path is a single node.
        machine, pairs = pair_graph_of("fortress3-axelrod")
        edges = {dst for src in pairs.nodes for dst in pairs.successors(src)}
        assert edges == set()
        assert memory_depth(machine) == 2


class TestBruteForceAgreement:
    def test_two_state_machines(self):
        rng = random.Random(100)
        for _ in range(50):
            fsm = random_machine(rng, max_states=2)
            expected = brute_force_depth(fsm, cap=5)
            assert memory_depth(fsm) == expected, fsm

    def test_three_state_machines(self):
        rng = random.Random(101)
        for _ in range(10):
            fsm = random_machine(rng, min_states=3, max_states=3)
            expected = brute_force_depth(fsm, cap=13)
            assert memory_depth(fsm) == expected, fsm
