import pytest

from conftest import cfg, loops
from gen3 import nondiagonal_instances, nonwide_instances
from vass3 import families, oracle, reach3
from vass3.oracle import SearchBudget
from vass3.reach3 import (BoundFunctions, Constants, Inconclusive, Policy, PreconditionViolated, Reachable,
                          SymbolicOnly, Unreachable, bound_h, case3_split, classify, decide_reach3, entry_points,
                          fold_coordinate, good_for_induction, length_set, merge_verdicts, pump_cascade,
                          pump_multiple, reduce_component, trim_aB)
from vass3.semilinear import LinearSet
from vass3.vass import (Transition, Vass, WitnessPath, geometric_dimension, path_effect, replay,
                        sequential_decompose)

UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
SKEW = ((1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def two_components(first, second, bridge=(0, 0, 0)):
    ts = [Transition(f"a{i}", "p", e, "p") for i, e in enumerate(first)]
    ts += [Transition(f"b{i}", "q", e, "q") for i, e in enumerate(second)]
    ts.append(Transition("br", "p", bridge, "q"))
    return Vass(3, ["p", "q"], ts)


def test_classify_easy():
    v = loops(*UNIT, (-1, -1, -1))
    c = classify(v, cfg("p", 1, 1, 1), cfg("p", 2, 1, 3))
    assert c.verdict == "Easy" and c.diagonal and c.wide
    assert c.to_json()["verdict"] == "easy"


def test_classify_nonwide_and_nondiagonal():
    c = classify(loops((1, 1, -1)), cfg("p", 0, 0, 2), cfg("p", 2, 2, 0))
    assert c.verdict == "NonWide" and not c.wide
    c = classify(Vass(3, ["p", "q"], [Transition("u", "p", (1, 1, 1), "q")]), cfg("p", 0, 0, 0),
                 cfg("q", 1, 1, 1))
    assert c.verdict == "NonDiagonal" and not c.forward_diagonal


def test_pump_multiple_unit_loops():
    v = loops(*UNIT)
    s = cfg("p", 0, 0, 0)
    pi = WitnessPath(s, ("t0", "t1", "t2"))
    ell, path = pump_multiple(v, s, (1, 1, 1), pi, (1, 1, 1))
    assert ell == 1 and len(path) == 3
    assert replay(path, v) == cfg("p", 1, 1, 1)


def test_pump_multiple_scaled_target():
    v = loops(*UNIT)
    s = cfg("p", 0, 0, 0)
    pi = WitnessPath(s, ("t0", "t1", "t2"))
    ell, path = pump_multiple(v, s, (1, 1, 1), pi, (1, 2, 3))
    assert replay(path, v).vector == tuple(ell * x for x in (1, 2, 3))


def test_pump_cascade_two_components():
    v = two_components(UNIT, UNIT)
    s = cfg("p", 0, 0, 0)
    pi = WitnessPath(s, ("a0", "a1", "a2"))
    c = pump_cascade(v, s, (1, 1, 1), pi, (2, 2, 2))
    total = (0, 0, 0)
    for part in c.parts:
        total = tuple(x + y for x, y in zip(total, part))
        assert min(total) > 0
    assert total == tuple(c.ell * 2 for _ in range(3))
    for entry, path, part in zip(c.entries, c.paths, c.parts):
        assert path_effect(v, path) == part
        assert all(v.transition(t).src == entry for t in path[:1])


def test_trim_aB_example():
    v = loops((1, 1, -1))
    s, t = cfg("p", 0, 0, 2), cfg("p", 2, 2, 0)
    tr = trim_aB(v, (1, 0, 0), 4, s, t)
    assert oracle.path_length_counts(v, s, t, 10) == oracle.path_length_counts(tr.vass, tr.source, tr.target, 10)
    assert geometric_dimension(tr.vass) <= 2


def test_trim_aB_small_B_drops_source():
    tr = trim_aB(loops((1, 1, -1)), (1, 0, 0), 2, cfg("p", 3, 0, 2), cfg("p", 5, 2, 0))
    assert tr.source is None and length_set(tr.vass, tr.source, tr.target, 10) == set()


def test_trim_aB_rejects_negative_cycles():
    with pytest.raises(PreconditionViolated):
        trim_aB(loops((-1, 1, 0)), (1, 0, 0), 3, cfg("p", 0, 0, 0))


def test_fold_coordinate_definition():
    v = Vass(3, ["p", "q"], [Transition("u", "p", (0, 2, 0), "q")])
    fv = fold_coordinate(v, 1, 3)
    assert {(t.src, t.dst) for t in fv.transitions} == {("p@0", "q@2"), ("p@1", "q@3")}
    assert all(t.effect == (0, 2, 0) for t in fv.transitions)


def test_case3_split_empty_path():
    v = loops(*SKEW)
    s = cfg("p", 1, 5, 2)
    parts = case3_split(v, s, s, 3)
    assert [0 in length_set(p.vass, p.source, p.target, 0) for p in parts] == [True, False, True]


def test_case3_split_union_on_random_instances(rng):
    for v, s, t in nondiagonal_instances(rng, 6):
        parts = case3_split(v, s, t, horizon=8)
        union = set().union(*(length_set(p.vass, p.source, p.target, 8) for p in parts))
        assert union == length_set(v, s, t, 8)


def test_trim_aB_on_random_nonwide(rng):
    for v, s, t, a, B in nonwide_instances(rng, 6):
        tr = trim_aB(v, a, B, s, t)
        got = oracle.path_length_counts(tr.vass, tr.source, tr.target, 8) if tr.source and tr.target else {}
        assert got == oracle.path_length_counts(v, s, t, 8)


def test_reduce_component_zigzag2():
    v = families.zigzag2()
    s = families.ZIGZAG_SOURCE
    pts, complete, _ = entry_points(v, s, SearchBudget(8, 100, 10**5))
    assert complete and {c.vector for c in pts} == {(1, 0), (0, 2)}
    red, s2 = reduce_component(v, LinearSet((1, 0), []), s)
    assert s2 == cfg("q2", 1, 0)
    assert sequential_decompose(red).k == sequential_decompose(v).k - 1
    assert oracle.bfs_reach(red, s2, cfg("q4", 4, 0), SearchBudget(20, 40, 10**6)).__class__.__name__ == \
        "Reachable"


def test_reduce_component_period_loop():
    v = two_components([(1, 0, 0)], [(0, 1, 0)])
    red, s2 = reduce_component(v, LinearSet((0, 0, 1), [(2, 0, 0)]))
    for n in range(4):
        assert isinstance(oracle.bfs_reach(red, s2, cfg("q", 2 * n, 0, 1)), oracle.Reachable)
    assert isinstance(oracle.bfs_reach(red, s2, cfg("q", 1, 0, 1), SearchBudget(10, 20, 10**4)),
                      oracle.ExhaustedAllStates)


def test_reduce_component_needs_two_components():
    with pytest.raises(PreconditionViolated):
        reduce_component(loops(*UNIT), LinearSet((0, 0, 0), []))


def test_good_for_induction_single_nonwide():
    # cycles span the half-space x1 >= x2, so the instance is diagonal but not wide
    v = loops((1, 1, 1), (-1, -1, -1), (0, 0, 1), (0, 0, -1), (1, 0, 0))
    s, t = cfg("p", 1, 1, 1), cfg("p", 3, 1, 2)
    assert classify(v, s, t).verdict == "NonWide"
    (g,) = good_for_induction(v, s, t)
    assert geometric_dimension(g.vass) <= 2
    assert oracle.path_length_counts(v, s, t, 6) == oracle.path_length_counts(g.vass, g.source, g.target, 6)


def test_good_for_induction_two_component_split():
    v = two_components(SKEW, SKEW)
    s, t = cfg("p", 3, 3, 3), cfg("q", 1, 1, 1)
    cls = classify(v, s, t)
    assert not cls.forward_diagonal
    out = good_for_induction(v, s, t, B=2, cls=cls)
    assert len(out) == 3 * 3
    for g in out:
        first = sequential_decompose(g.vass).components[0]
        assert geometric_dimension(first) <= 2


def test_bound_h():
    assert bound_h(2, 1) == 2 ** 64
    assert bound_h(3, 1, Constants(c=2)) == 3 ** 8
    assert bound_h(2, 2, Constants(c=2)) == 2 ** 512
    big = bound_h(10, 3)
    assert isinstance(big, SymbolicOnly) and str(big) == "10^(64^7)"
    with pytest.raises(ValueError):
        bound_h(1, 1)


def test_bound_recurrence_below_ceiling():
    bf = BoundFunctions(c=2, H_degree=2, h1_degree=2)
    for m in (2, 3, 5):
        for k in (1, 2, 3):
            r, c = bf.recurrence(m, k), bf.ceiling(m, k)
            if isinstance(r, int) and isinstance(c, int):
                assert r <= c
            else:
                assert bf.exponent_table(k)[-1] <= bf.ceiling_exponent(k)


def test_decide_examples():
    v = families.zigzag2()
    s = families.ZIGZAG_SOURCE
    r = decide_reach3(v, s, s)
    assert isinstance(r, Reachable) and r.length == 0
    r = decide_reach3(v, s, cfg("q4", 16, 0))
    assert isinstance(r, Reachable) and replay(r.path, v) == cfg("q4", 16, 0)
    assert isinstance(decide_reach3(v, s, cfg("q4", 0, 0)), Unreachable)


def test_decide_easy_route():
    v = loops(*UNIT, (-1, -1, -1))
    t = cfg("p", 2, 1, 3)
    r = decide_reach3(v, cfg("p", 1, 1, 1), t)
    assert isinstance(r, Reachable) and replay(r.path, v) == t


def test_decide_agrees_with_bfs(rng):
    for _ in range(15):
        v = families.random_sequential(rng, k=2, dim=3, max_states=2, max_loops=2, max_norm=2)
        s = cfg(v.states[0], *(rng.randint(0, 3) for _ in range(3)))
        t = cfg(v.states[-1], *(rng.randint(0, 4) for _ in range(3)))
        b = oracle.bfs_reach(v, s, t, SearchBudget(24, 200, 200_000))
        if not oracle.conclusive(b):
            continue
        d = decide_reach3(v, s, t, Policy(budget=SearchBudget(24, 200, 200_000)))
        assert isinstance(d, Reachable) == isinstance(b, oracle.Reachable)
        if isinstance(d, Reachable):
            assert replay(d.path, v) == t


def test_merge_verdicts():
    w = Reachable(WitnessPath(cfg("p", 0), ()))
    assert merge_verdicts([Unreachable(), w, Inconclusive("x")]) is w
    assert isinstance(merge_verdicts([Unreachable(), Unreachable()]), Unreachable)
    m = merge_verdicts([Unreachable(), Inconclusive("cap")])
    assert isinstance(m, Inconclusive) and m.reason == "cap"
    assert isinstance(merge_verdicts([]), Inconclusive)


def test_case3_horizon_keeps_short_lengths():
    v = loops(*SKEW, (2, 2, 1))
    s = cfg("p", 2, 2, 2)
    t = cfg("p", 3, 3, 1)
    full = case3_split(v, s, t, 40)
    cut = case3_split(v, s, t, 40, horizon=5)
    for a, b in zip(full, cut):
        assert len(b.vass.states) < len(a.vass.states)
        assert length_set(a.vass, a.source, a.target, 5) == length_set(b.vass, b.source, b.target, 5)
