"""Ground-truth searches: bounded BFS, backward coverability, Z-reachability."""
from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from . import diophantine, lp
from .vass import Configuration, Vass, WitnessPath, norm, replay, vadd, vsub


@dataclass(frozen=True)
class SearchBudget:
    counter_cap: int = 64
    length_cap: int = 256
    node_cap: int = 10**6


@dataclass(frozen=True)
class Reachable:
    path: WitnessPath
    explored: int = 0

    @property
    def length(self):
        return len(self.path)


@dataclass(frozen=True)
class NotWithinBudget:
    reason: str
    explored: int = 0


@dataclass(frozen=True)
class ExhaustedAllStates:
    """Every configuration inside the counter cap was explored.

    ``complete`` means no successor was ever cut by the counter cap, so the
    answer holds without qualification.
    """
    explored: int = 0
    complete: bool = False


def conclusive(verdict) -> bool:
    return isinstance(verdict, Reachable) or (isinstance(verdict, ExhaustedAllStates) and verdict.complete)


def _out_table(v: Vass):
    table = defaultdict(list)
    for t in v.transitions:
        table[t.src].append(t)
    return table


def _search(v: Vass, s: Configuration, goal, b: SearchBudget):
    """Layered BFS; each layer is kept in lexicographic order of its paths.

    Expanding a layer in that order with transitions in declaration order
    means the first discovery of a configuration carries the lexicographically
    least shortest firing sequence.
    """
    out = _out_table(v)
    parent = {s: None}
    layer = [s]
    explored = 0
    cut = False
    depth = 0
    while layer:
        for c in layer:
            if goal(c):
                return Reachable(WitnessPath(s, _unwind(parent, c)), explored), parent
        if depth >= b.length_cap:
            return NotWithinBudget("length cap", explored), parent
        nxt = []
        for c in layer:
            explored += 1
            if explored > b.node_cap:
                return NotWithinBudget("node cap", explored), parent
            for t in out[c.state]:
                w = vadd(c.vector, t.effect)
                if not c.z and min(w, default=0) < 0:
                    continue
                if norm(w) > b.counter_cap:
                    cut = True
                    continue
                d = Configuration(t.dst, w, c.z)
                if d not in parent:
                    parent[d] = (c, t.tid)
                    nxt.append(d)
        layer = nxt
        depth += 1
    return ExhaustedAllStates(explored, not cut), parent


def _unwind(parent, c):
    tids = []
    while parent[c] is not None:
        c, tid = parent[c]
        tids.append(tid)
    return tuple(reversed(tids))


def bfs_reach(v: Vass, s: Configuration, t: Configuration, b: SearchBudget = SearchBudget()):
    if s.z != t.z:
        raise ValueError("source and target must share a mode")
    return _search(v, s, lambda c: c.state == t.state and c.vector == t.vector, b)[0]


def reach_set(v: Vass, s: Configuration, b: SearchBudget = SearchBudget()):
    """All configurations found from s within the budget, plus the closing verdict."""
    verdict, parent = _search(v, s, lambda c: False, b)
    return set(parent), verdict


def path_length_counts(v: Vass, s: Configuration, t: Configuration, max_len: int) -> dict:
    """Number of distinct firing sequences s ->* t of each length <= max_len."""
    out = _out_table(v)
    cur = {s: 1}
    res = {}
    for length in range(max_len + 1):
        n = cur.get(t, 0)
        if n:
            res[length] = n
        if length == max_len:
            break
        nxt = defaultdict(int)
        for c, k in cur.items():
            for tr in out[c.state]:
                w = vadd(c.vector, tr.effect)
                if not c.z and min(w, default=0) < 0:
                    continue
                nxt[Configuration(tr.dst, w, c.z)] += k
        cur = nxt
    return res


# ---------------------------------------------------------------- coverability


def _covers(x, m):
    return all(a >= b for a, b in zip(x, m))


def backward_coverability(v: Vass, target: Configuration, max_rounds: int = 10**5):
    """Minimal bases of the configurations that can cover ``target``.

    Returns ``(basis, origin)``: ``basis[q]`` is the antichain of minimal
    vectors at state q, and ``origin[(q, m)]`` records the transition and
    successor element each vector was derived from (kept even after the
    vector is superseded, so witness chains never break).
    """
    basis = {q: set() for q in v.states}
    basis[target.state].add(target.vector)
    origin = {(target.state, target.vector): None}
    work = deque([(target.state, target.vector)])
    rounds = 0
    while work:
        rounds += 1
        if rounds > max_rounds:
            raise diophantine.BudgetExceeded("backward coverability did not saturate")
        q2, m = work.popleft()
        if m not in basis[q2]:
            continue
        for t in v.transitions:
            if t.dst != q2:
                continue
            pre = tuple(max(a - e, 0) for a, e in zip(m, t.effect))
            bq = basis[t.src]
            if any(_covers(pre, old) for old in bq):
                continue
            bq.difference_update([o for o in bq if _covers(o, pre)])
            bq.add(pre)
            origin.setdefault((t.src, pre), (t.tid, m))
            work.append((t.src, pre))
    return basis, origin


def coverable(v: Vass, s: Configuration, target: Configuration, b: SearchBudget = None):
    """Decide coverability; returns ``(True, WitnessPath)`` or ``(False, None)``.

    With a budget the answer comes from capped forward search and may be
    ``NotWithinBudget``; without one the backward basis decides it exactly.
    """
    if b is not None:
        res = _search(v, s, lambda c: c.state == target.state and _covers(c.vector, target.vector), b)[0]
        if isinstance(res, Reachable):
            return True, res.path
        if isinstance(res, ExhaustedAllStates) and res.complete:
            return False, None
        return res, None
    basis, origin = backward_coverability(v, target)
    for m in sorted(basis[s.state]):
        if _covers(s.vector, m):
            return True, _cover_witness(v, s, origin, m)
    return False, None


def _cover_witness(v, s, origin, m):
    q, tids = s.state, []
    while origin[(q, m)] is not None:
        tid, m = origin[(q, m)]
        tids.append(tid)
        q = v.transition(tid).dst
    return WitnessPath(s, tuple(tids))


# ---------------------------------------------------------------- Rackoff-style budgets


@dataclass(frozen=True)
class RackoffBudget:
    n: int
    N: int
    U: int
    d: int
    H: tuple = ()
    L: tuple = ()

    def ceiling(self, i):
        return (4 * self.N * self.n) ** (2 * math.factorial(i)) * self.U ** math.factorial(i)

    @property
    def P(self):
        return self.H[-1]

    @property
    def R(self):
        return self.L[-1]


def rackoff_budget(n: int, N: int, U: int, d: int) -> RackoffBudget:
    if n < 1 or N < 1 or U < 0 or d < 1:
        raise ValueError("need n, N >= 1, U >= 0, d >= 1")
    H, L = [U], [n * U]
    for i in range(2, d + 1):
        H.append(U + N * L[-1])
        L.append(n * H[-1] ** i + L[-1])
    return RackoffBudget(n, N, U, d, tuple(H), tuple(L))


@dataclass(frozen=True)
class NotFound:
    conclusive: bool
    reason: str = ""


def simultaneous_high_path(v: Vass, s: Configuration, U: int, length_cap: int = None, node_cap: int = 10**6):
    """Shortest path from s to a configuration with every counter >= U.

    Counters are clamped at ``U + N * length_cap``: beyond that value no
    remaining step can block a transition or pull the counter under U.
    """
    N = max(v.max_norm, 1)
    if length_cap is None:
        length_cap = rackoff_budget(len(v.states), N, U, v.dim).R
    clamp = U + N * length_cap
    out = _out_table(v)

    def key(c):
        return (c.state, tuple(min(a, clamp) for a in c.vector))

    start = Configuration(s.state, tuple(min(a, clamp) for a in s.vector))
    parent = {key(start): None}
    layer = [start]
    explored = 0
    for depth in range(length_cap + 1):
        for c in layer:
            if all(a >= U for a in c.vector):
                tids, k = [], key(c)
                while parent[k] is not None:
                    k, tid = parent[k]
                    tids.append(tid)
                return WitnessPath(s, tuple(reversed(tids)))
        if depth == length_cap:
            break
        nxt = []
        for c in layer:
            explored += 1
            if explored > node_cap:
                return NotFound(False, "node cap")
            for t in out[c.state]:
                w = vadd(c.vector, t.effect)
                if min(w, default=0) < 0:
                    continue
                d = Configuration(t.dst, tuple(min(a, clamp) for a in w))
                if key(d) not in parent:
                    parent[key(d)] = (key(c), t.tid)
                    nxt.append(d)
        layer = nxt
        if not layer:
            break
    return NotFound(True, f"no such path of length <= {length_cap}")


# ---------------------------------------------------------------- Z-reachability


@dataclass(frozen=True)
class ZReachResult:
    reachable: bool
    parikh: dict = field(default_factory=dict)
    length: int = None
    walk: tuple = None
    supports_tried: int = 0

    def __bool__(self):
        return self.reachable


MAX_SUPPORT_TRANSITIONS = 12


def _euler_walk(v: Vass, start, parikh):
    """Hierholzer over the multigraph given by transition multiplicities."""
    remaining = dict(parikh)
    out = defaultdict(list)
    for t in v.transitions:
        if remaining.get(t.tid, 0):
            out[t.src].append(t)
    stack, walk = [(start, None)], []
    while stack:
        q, tid = stack[-1]
        nxt = next((t for t in out[q] if remaining[t.tid] > 0), None)
        if nxt is None:
            stack.pop()
            if tid is not None:
                walk.append(tid)
        else:
            remaining[nxt.tid] -= 1
            stack.append((nxt.dst, nxt.tid))
    return tuple(reversed(walk))


def z_reach_exact(v: Vass, s: Configuration, t: Configuration, want_walk: bool = True) -> ZReachResult:
    """Exact Z-reachability via the Parikh images of walks.

    For every connected transition support containing the source state we ask
    for multiplicities x_e >= 1 on the support meeting flow conservation and
    the effect equation; the least-length solution yields an Euler walk.
    """
    target = vsub(t.vector, s.vector)
    if s.state == t.state and not any(target):
        return ZReachResult(True, {}, 0, ())
    g = v.state_graph()
    relevant = [tr for tr in v.transitions
                if nx.has_path(g, s.state, tr.src) and nx.has_path(g, tr.dst, t.state)]
    if len(relevant) > MAX_SUPPORT_TRANSITIONS:
        raise diophantine.BudgetExceeded("support enumeration limited to 12 relevant transitions")
    states = sorted({q for tr in relevant for q in (tr.src, tr.dst)} | {s.state, t.state})
    if not relevant or not _rational_flow(v, relevant, states, s.state, t.state, target, lower=0):
        return ZReachResult(False)
    best = None
    tried = 0
    for k in range(1, len(relevant) + 1):
        for supp in combinations(relevant, k):
            sg = nx.MultiDiGraph()
            sg.add_node(s.state)
            sg.add_edges_from((tr.src, tr.dst) for tr in supp)
            if t.state not in sg or not nx.is_weakly_connected(sg):
                continue
            tried += 1
            bound = None if best is None else sum(best.values())
            sol = _support_solution(v, supp, states, s.state, t.state, target, bound)
            if sol is not None and (best is None or sum(sol.values()) < sum(best.values())):
                best = sol
    if best is None:
        return ZReachResult(False, supports_tried=tried)
    walk = _euler_walk(v, s.state, best) if want_walk else None
    return ZReachResult(True, best, sum(best.values()), walk, tried)


def _flow_rows(v, supp, states, p, p2, target):
    A = [[tr.effect[i] for tr in supp] for i in range(v.dim)]
    b = list(target)
    for q in states:
        row = [int(tr.src == q) - int(tr.dst == q) for tr in supp]
        if any(row):
            A.append(row)
            b.append(int(q == p) - int(q == p2))
    return A, b


def _rational_flow(v, supp, states, p, p2, target, lower=1):
    """Necessary condition: a rational flow with every multiplicity >= lower."""
    A, b = _shifted(v, supp, states, p, p2, target, lower)
    return lp.feasible(A, b, nvars=len(supp)).status == lp.OPTIMAL


def _shifted(v, supp, states, p, p2, target, lower):
    # x = lower + y, so y >= 0 encodes the lower bound
    A, b = _flow_rows(v, supp, states, p, p2, target)
    return A, [bi - lower * sum(row) for row, bi in zip(A, b)]


def _support_solution(v, supp, states, p, p2, target, below=None):
    """Least total multiplicity x >= 1 on ``supp`` meeting flow and effect equations.

    With ``below`` set, only solutions of total strictly less are sought.
    """
    A, b = _shifted(v, supp, states, p, p2, target, 1)
    if not diophantine.integer_solvable(A, b):
        return None
    if lp.feasible(A, b, nvars=len(supp)).status != lp.OPTIMAL:
        return None
    sys = diophantine.DiophantineSystem(A, b)
    # minimal solutions of the homogenised system obey this norm cap
    cap = diophantine.taming_bound(sys.n + 1, sys.N, sys.m)
    incumbent = None if below is None else below - len(supp)
    if incumbent is not None and incumbent <= 0:
        return None
    status, y = lp.integer_minimize([1] * len(supp), A, b, cap, incumbent=incumbent)
    if status == lp.INFEASIBLE:
        return None
    if status != lp.OPTIMAL:
        desc = diophantine.minimal_solutions(sys, first_only=True)
        if not desc.U:
            return None
        y = min(desc.U, key=sum)
    return {tr.tid: 1 + yi for tr, yi in zip(supp, y)}
