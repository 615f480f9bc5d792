import pytest

from conftest import cfg, loops
from vass3 import families
from vass3.vass import (Configuration, InvalidStep, NegativeCounter, NotSequential, Transition, Vass,
                        WitnessPath, geometric_dimension, path_effect, replay, reverse, reverse_path,
                        sequential_decompose, simple_cycle_effects, step)

T = Vass(3, ["q0", "q1"], [Transition("t", "q0", (1, -2, 0), "q1")])


def test_step_adds_effect():
    assert step(cfg("q0", 2, 3, 1), "t", T) == cfg("q1", 3, 1, 1)


def test_step_blocks_below_zero():
    with pytest.raises(NegativeCounter):
        step(cfg("q0", 0, 0, 0), "t", T)


def test_step_in_z_mode():
    c = Configuration("q0", (0, 0, 0), True)
    assert step(c, "t", T) == Configuration("q1", (1, -2, 0), True)


def test_configuration_rejects_negative_vector():
    with pytest.raises(NegativeCounter):
        cfg("q0", -1, 0, 0)


def test_replay_empty_path():
    assert replay(WitnessPath(cfg("q0", 4, 4, 4)), T) == cfg("q0", 4, 4, 4)


def test_replay_zigzag2_path():
    v = families.zigzag2()
    end = replay(WitnessPath(families.ZIGZAG_SOURCE, families.zigzag2_path()), v)
    assert end == cfg("q4", 16, 0)


def test_replay_blocked_step():
    with pytest.raises(InvalidStep):
        replay(WitnessPath(cfg("q0", 0, 1, 0), ("t",)), T)


def test_replay_wrong_state():
    with pytest.raises(InvalidStep):
        replay(WitnessPath(cfg("q1", 5, 5, 5), ("t",)), T)


def test_decompose_zigzag2():
    d = sequential_decompose(families.zigzag2())
    assert d.k == 4
    assert [b.effect for b in d.bridges] == [(0, 0)] * 3
    assert [c.states for c in d.components] == [("q1",), ("q2",), ("q3",), ("q4",)]


def test_decompose_single_loop():
    d = sequential_decompose(loops((1, 0)))
    assert d.k == 1 and d.bridges == ()


def test_decompose_rejects_parallel_bridges():
    v = Vass(1, ["a", "b"], [Transition("x", "a", (1,), "b"), Transition("y", "a", (0,), "b")])
    with pytest.raises(NotSequential):
        sequential_decompose(v)


def test_decompose_rejects_skipping_bridge():
    v = Vass(1, ["a", "b", "c"], [Transition("x", "a", (1,), "b"), Transition("y", "b", (0,), "c"),
                                  Transition("z", "a", (0,), "c")])
    with pytest.raises(NotSequential):
        sequential_decompose(v)


def test_cycle_effects():
    d = sequential_decompose(families.zigzag2())
    assert simple_cycle_effects(d.components[0]) == {(-1, 2)}
    assert simple_cycle_effects(loops((1, 0), (0, 1))) == {(1, 0), (0, 1)}
    tri = Vass(3, ["a", "b", "c"], [Transition("x", "a", (1, 0, 0), "b"), Transition("y", "b", (0, 1, 0), "c"),
                                    Transition("z", "c", (0, 0, -1), "a")])
    assert simple_cycle_effects(tri) == {(1, 1, -1)}


def test_cycle_effects_two_cycles_through_shared_state():
    v = Vass(1, ["a", "b"], [Transition("x", "a", (1,), "b"), Transition("y", "b", (2,), "a"),
                             Transition("z", "a", (-5,), "a")])
    assert simple_cycle_effects(v) == {(3,), (-5,)}


def test_geometric_dimension():
    assert geometric_dimension(Vass(2, ["a", "b"], [Transition("x", "a", (1, 1), "b")])) == 0
    assert geometric_dimension(loops((1, 1, -1))) == 1
    assert geometric_dimension(loops((-1, 2), (2, -1))) == 2
    assert geometric_dimension(loops((1, 2, 3), (2, 4, 6))) == 1


def test_reverse_single_transition():
    rv, s, t = reverse(T, cfg("q0", 0, 2, 0), cfg("q1", 1, 0, 0))
    assert rv.transitions == (Transition("t", "q1", (-1, 2, 0), "q0"),)
    assert (s, t) == (cfg("q1", 1, 0, 0), cfg("q0", 0, 2, 0))


def test_reverse_is_involution():
    v = families.zigzag2()
    assert reverse(reverse(v)[0])[0] == v


def test_reverse_zigzag2():
    rv = reverse(families.zigzag2())[0]
    for t, r in zip(families.zigzag2().transitions, rv.transitions):
        assert r.tid == t.tid and (r.src, r.dst) == (t.dst, t.src)
        assert r.effect == tuple(-a for a in t.effect)


def test_reverse_path_replays_backwards():
    v = families.zigzag2()
    p = WitnessPath(families.ZIGZAG_SOURCE, families.zigzag2_path())
    rp = reverse_path(p, v)
    assert rp.source == cfg("q4", 16, 0)
    assert replay(rp, reverse(v)[0]) == families.ZIGZAG_SOURCE


def test_path_effect():
    assert path_effect(families.zigzag2(), families.zigzag2_path()) == (15, 0)
