"""Core VASS model: transitions, configurations, step semantics, decomposition."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

CYCLE_CAP = 10**6


class VassError(Exception):
    pass


class StateMismatch(VassError):
    pass


class NegativeCounter(VassError):
    pass


class InvalidStep(VassError):
    def __init__(self, index, cause):
        super().__init__(f"step {index}: {cause}")
        self.index = index
        self.cause = cause


class NotSequential(VassError):
    pass


class CycleCapExceeded(VassError):
    pass


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(k, v):
    return tuple(k * a for a in v)


def vneg(v):
    return tuple(-a for a in v)


def norm(v) -> int:
    """Max-norm of an integer vector (0 for the empty vector)."""
    return max((abs(a) for a in v), default=0)


@dataclass(frozen=True)
class Transition:
    tid: str
    src: str
    effect: tuple
    dst: str


@dataclass(frozen=True)
class Configuration:
    state: str
    vector: tuple
    z: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(a) for a in self.vector))
        if not self.z and any(a < 0 for a in self.vector):
            raise NegativeCounter(f"negative counter in {self}")

    def __str__(self):
        return f"{self.state}({','.join(map(str, self.vector))})"

    def as_z(self) -> "Configuration":
        return Configuration(self.state, self.vector, True)


@dataclass(frozen=True)
class Vass:
    dim: int
    states: tuple
    transitions: tuple
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        ts = tuple(
            t if isinstance(t, Transition) else Transition(t[0], t[1], tuple(t[2]), t[3])
            for t in self.transitions
        )
        ts = tuple(Transition(t.tid, t.src, tuple(int(a) for a in t.effect), t.dst) for t in ts)
        object.__setattr__(self, "transitions", ts)
        if len(set(self.states)) != len(self.states):
            raise VassError("duplicate state")
        known = set(self.states)
        index = {}
        for i, t in enumerate(ts):
            if t.tid in index:
                raise VassError(f"duplicate transition id {t.tid}")
            if t.src not in known or t.dst not in known:
                raise VassError(f"transition {t.tid} uses an undeclared state")
            if len(t.effect) != self.dim:
                raise VassError(f"transition {t.tid} has effect of wrong dimension")
            index[t.tid] = i
        object.__setattr__(self, "_index", index)

    def transition(self, tid) -> Transition:
        return self.transitions[self._index[tid]]

    def ordinal(self, tid) -> int:
        return self._index[tid]

    def outgoing(self, state):
        return [t for t in self.transitions if t.src == state]

    @property
    def max_norm(self) -> int:
        return max((norm(t.effect) for t in self.transitions), default=0)

    def size(self) -> int:
        return sum(norm(t.effect) for t in self.transitions) + len(self.transitions)

    def state_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        g.add_edges_from((t.src, t.dst) for t in self.transitions)
        return g

    def restrict(self, states) -> "Vass":
        keep = [q for q in self.states if q in set(states)]
        ks = set(keep)
        return Vass(self.dim, keep, [t for t in self.transitions if t.src in ks and t.dst in ks])


@dataclass(frozen=True)
class WitnessPath:
    source: Configuration
    firings: tuple = ()

    def __len__(self):
        return len(self.firings)


def step(c: Configuration, tid, v: Vass) -> Configuration:
    t = v.transition(tid)
    if t.src != c.state:
        raise StateMismatch(f"{tid} leaves {t.src}, configuration is in {c.state}")
    w = vadd(c.vector, t.effect)
    if not c.z and any(a < 0 for a in w):
        raise NegativeCounter(f"{tid} blocked at {c}")
    return Configuration(t.dst, w, c.z)


def replay(p: WitnessPath, v: Vass) -> Configuration:
    c = p.source
    for i, tid in enumerate(p.firings):
        try:
            c = step(c, tid, v)
        except (VassError, KeyError) as e:
            raise InvalidStep(i, e) from None
    return c


def path_effect(v: Vass, firings) -> tuple:
    eff = (0,) * v.dim
    for tid in firings:
        eff = vadd(eff, v.transition(tid).effect)
    return eff


@dataclass(frozen=True)
class SequentialDecomposition:
    components: tuple
    bridges: tuple

    @property
    def k(self):
        return len(self.components)


def sequential_decompose(v: Vass) -> SequentialDecomposition:
    g = v.state_graph()
    sccs = list(nx.strongly_connected_components(g))
    cond = nx.condensation(g, sccs)
    order = list(nx.topological_sort(cond))
    comp_of = {}
    for pos, node in enumerate(order):
        for q in cond.nodes[node]["members"]:
            comp_of[q] = pos
    bridges = {}
    for t in v.transitions:
        a, b = comp_of[t.src], comp_of[t.dst]
        if a == b:
            continue
        if b != a + 1:
            raise NotSequential(f"transition {t.tid} skips from component {a} to {b}")
        if a in bridges:
            raise NotSequential(
                f"components {a} and {b} linked by {bridges[a].tid} and {t.tid}"
            )
        bridges[a] = t
    if len(bridges) != len(order) - 1:
        missing = [i for i in range(len(order) - 1) if i not in bridges]
        raise NotSequential(f"no bridge after component(s) {missing}")
    comps = []
    for pos in range(len(order)):
        comps.append(v.restrict([q for q in v.states if comp_of[q] == pos]))
    return SequentialDecomposition(tuple(comps), tuple(bridges[i] for i in range(len(order) - 1)))


def simple_cycles(v: Vass, cap: int = CYCLE_CAP) -> dict:
    """Map each simple-cycle effect to one shortest representative.

    The representative is ``(start_state, tids)``.  Parallel transitions along a
    node cycle are folded effect-by-effect so the product never materializes.
    """
    g = v.state_graph()
    by_edge = {}
    for t in v.transitions:
        by_edge.setdefault((t.src, t.dst), []).append(t)
    out = {}
    count = 0
    for cyc in nx.simple_cycles(g):
        count += 1
        if count > cap:
            raise CycleCapExceeded(f"more than {cap} elementary circuits")
        partial = {(0,) * v.dim: ()}
        for i, q in enumerate(cyc):
            r = cyc[(i + 1) % len(cyc)]
            nxt = {}
            for eff, tids in partial.items():
                for t in by_edge[(q, r)]:
                    e2 = vadd(eff, t.effect)
                    if e2 not in nxt:
                        nxt[e2] = tids + (t.tid,)
            partial = nxt
        for eff, tids in partial.items():
            old = out.get(eff)
            if old is None or len(tids) < len(old[1]):
                out[eff] = (cyc[0], tids)
    return dict(sorted(out.items()))


def simple_cycle_effects(v: Vass, cap: int = CYCLE_CAP) -> set:
    return set(simple_cycles(v, cap))


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals by fraction-exact elimination."""
    m = [[Fraction(a) for a in r] for r in rows]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def geometric_dimension(v: Vass) -> int:
    return rank(list(simple_cycle_effects(v)))


def reverse_vass(v: Vass) -> Vass:
    return Vass(v.dim, v.states, [Transition(t.tid, t.dst, vneg(t.effect), t.src) for t in v.transitions])


def reverse(v: Vass, s: Configuration = None, t: Configuration = None):
    return reverse_vass(v), t, s


def reverse_path(p: WitnessPath, v: Vass) -> WitnessPath:
    """The same firings backwards, as a path of the reversed VASS."""
    end = replay(WitnessPath(p.source.as_z(), p.firings), v)
    return WitnessPath(Configuration(end.state, end.vector, p.source.z), tuple(reversed(p.firings)))


def concat(*paths: Iterable) -> tuple:
    out = []
    for p in paths:
        out.extend(p)
    return tuple(out)
