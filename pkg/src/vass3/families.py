"""Instance families: the zigzag 2-VASS and seeded random generators."""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import oracle
from .semilinear import ApproxCertificate, LinearSet, check_sandwich, member, union_member
from .vass import Configuration, Transition, Vass


def zigzag(k: int) -> Vass:
    """2k single-state components; odd ones loop (-1,2), even ones loop (2,-1)."""
    n = 2 * k
    states = [f"q{i}" for i in range(1, n + 1)]
    ts = []
    for i in range(1, n + 1):
        eff = (-1, 2) if i % 2 else (2, -1)
        ts.append(Transition(f"l{i}", f"q{i}", eff, f"q{i}"))
        if i < n:
            ts.append(Transition(f"u{i}", f"q{i}", (0, 0), f"q{i + 1}"))
    return Vass(2, states, ts)


def zigzag2() -> Vass:
    return zigzag(2)


ZIGZAG_SOURCE = Configuration("q1", (1, 0))


def zigzag_formula(k: int):
    """Predicate for the reachable set at the last state from q1(1,0)."""
    def pred(x):
        s = x[0] + 2 * x[1]
        return min(x) >= 0 and s <= 4 ** k and s % 3 == 1
    return pred


def zigzag2_path():
    """q1(1,0) -> q4(16,0): double x1 twice in each direction."""
    tids = ["l1", "u1", "l2", "l2", "u2", "l3", "l3", "l3", "l3", "u3"] + ["l4"] * 8
    return tuple(tids)


ZIGZAG_A = ((1, 0), (2, 1), (0, 2))
ZIGZAG_P = ((0, 3), (3, 0))


def zigzag_reach(k: int, counter_cap: int = None):
    """Vectors reachable at the last state from q1(1,0); exact once the search completes."""
    cap = 4 ** k + 4 if counter_cap is None else counter_cap
    v = zigzag(k)
    cfgs, verdict = oracle.reach_set(v, ZIGZAG_SOURCE, oracle.SearchBudget(cap, 10**6, 10**7))
    last = v.states[-1]
    pts = {c.vector for c in cfgs if c.state == last}
    return pts, oracle.conclusive(verdict) or isinstance(verdict, oracle.ExhaustedAllStates)


@dataclass(frozen=True)
class ZigzagApproximation:
    k: int
    reach: frozenset
    within_upper: bool       # every reachable vector lies in A + P*
    certified: tuple         # budgets B (8B <= 4^k) with (1,0) + P^{<=B} inside the reach set


def zigzag_approximation(k: int) -> ZigzagApproximation:
    """Check the reach set of the k-th zigzag system against A + P* and bounded lower sets.

    The lower check runs ``check_sandwich`` on the part of the reach set in the
    linear set (1,0) + P*; the other two bases are handled by the upper check.
    """
    pts, _ = zigzag_reach(k)
    upper = [LinearSet(a, ZIGZAG_P) for a in ZIGZAG_A]
    within = all(union_member(upper, x) for x in pts)
    lin = LinearSet((1, 0), ZIGZAG_P)
    cap = 4 ** k
    coset = [x for x in pts if member(lin, x)]
    certified = []
    for B in range(1, 4 ** k // 8 + 1):
        cert = ApproxCertificate("BApproximation", lin, 3, B)
        if cert.valid_parameters() and check_sandwich(cert, lambda x: tuple(x) in pts, cap, coset):
            certified.append(B)
    return ZigzagApproximation(k, frozenset(pts), within, tuple(certified))


def random_vass(rng: random.Random, dim=3, n_states=3, n_trans=5, max_norm=3, strongly_connected=True) -> Vass:
    states = [f"p{i}" for i in range(n_states)]
    ts = []
    if strongly_connected and n_states > 1:
        for i in range(n_states):
            eff = tuple(rng.randint(-max_norm, max_norm) for _ in range(dim))
            ts.append(Transition(f"t{len(ts)}", states[i], eff, states[(i + 1) % n_states]))
    while len(ts) < n_trans:
        a, b = rng.choice(states), rng.choice(states)
        eff = tuple(rng.randint(-max_norm, max_norm) for _ in range(dim))
        ts.append(Transition(f"t{len(ts)}", a, eff, b))
    return Vass(dim, states, ts)


def random_sequential(rng: random.Random, k=2, dim=3, max_states=2, max_loops=2, max_norm=3) -> Vass:
    """k strongly connected components chained by single bridges."""
    states, ts = [], []
    entries, exits = [], []
    for c in range(k):
        ns = rng.randint(1, max_states)
        comp = [f"c{c}s{i}" for i in range(ns)]
        states += comp
        if ns > 1:
            for i in range(ns):
                eff = tuple(rng.randint(-max_norm, max_norm) for _ in range(dim))
                ts.append(Transition(f"t{len(ts)}", comp[i], eff, comp[(i + 1) % ns]))
        for _ in range(rng.randint(1 if ns == 1 else 0, max_loops)):
            q = rng.choice(comp)
            eff = tuple(rng.randint(-max_norm, max_norm) for _ in range(dim))
            ts.append(Transition(f"t{len(ts)}", q, eff, q))
        entries.append(comp[0])
        exits.append(rng.choice(comp))
    for c in range(k - 1):
        eff = tuple(rng.randint(-1, 1) for _ in range(dim))
        ts.append(Transition(f"b{c}", exits[c], eff, entries[c + 1]))
    return Vass(dim, states, ts)
