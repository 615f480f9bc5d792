"""Three-dimensional sequential VASS: classification, pumping, trims, reductions, decisions."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import networkx as nx

from . import lp, oracle
from .diophantine import BudgetExceeded
from .geometry import (
    NotDisjoint, NotFullDim, cone_of, dot, facet_normals, full_dimensional, is_wide, contains_orthant,
    reverse_decomposition, separating_facet, seq_cone_of,
)
from .oracle import SearchBudget, conclusive, rackoff_budget
from .reach2 import orthogonal_normal, trim_inner_product
from .semilinear import LinearSet
from .vass import (
    Configuration, SequentialDecomposition, Transition, Vass, VassError, WitnessPath, geometric_dimension,
    norm, path_effect, replay, reverse_path, reverse_vass, sequential_decompose, simple_cycles, vadd, vscale,
    vsub,
)


class ConstructionFailed(Exception):
    pass


class PreconditionViolated(Exception):
    pass


class InconclusiveError(Exception):
    pass


# ---------------------------------------------------------------- constants and bounds


@dataclass(frozen=True)
class Constants:
    """Polynomial constants; they size budgets only, never soundness."""
    c: int = 4                 # H(m), h_1(m) <= m^c
    H_degree: int = 2
    h1_degree: int = 2
    P_coef: int = 4            # P(M) = P_coef * M^P_degree (Z-paths, distance to cones)
    P_degree: int = 2
    D_coef: int = 1            # D = D_coef * M^2 bounds facet normals
    digit_cap: int = 10_000
    lift_ceiling: int = 2 ** 20

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown constants: {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in data.items()})

    def P(self, M):
        return self.P_coef * M ** self.P_degree

    def D(self, M):
        return self.D_coef * M * M


@dataclass(frozen=True)
class SymbolicOnly:
    """m ** (base ** exp) kept as structure because its digits exceed the cap."""
    m: int
    base: int
    exp: int

    def __str__(self):
        return f"{self.m}^({self.base}^{self.exp})"


@dataclass(frozen=True)
class BoundFunctions:
    c: int = 4
    H_degree: int = 2
    h1_degree: int = 2
    digit_cap: int = 10_000

    @property
    def C(self):
        return self.c ** 3

    def exponent_table(self, k):
        """Exponents e_j with h_j(m) = m^e_j under the recurrence, j = 1..k."""
        e = [self.h1_degree]
        for _ in range(k - 1):
            e.append(self.H_degree ** 3 * e[-1] ** 2)
        return e

    def ceiling_exponent(self, k):
        return self.C ** (2 ** k - 1)

    def _power(self, m, exp, sym):
        if exp * math.log10(m) > self.digit_cap:
            return sym
        return m ** exp

    def ceiling(self, m, k):
        return self._power(m, self.ceiling_exponent(k), SymbolicOnly(m, self.C, 2 ** k - 1))

    def recurrence(self, m, k):
        e = self.exponent_table(k)[-1]
        return self._power(m, e, SymbolicOnly(m, e, 1))


def bound_h(M: int, k: int, constants: Constants = Constants()):
    """Ceiling M^(C^(2^k - 1)) with C = c^3, or SymbolicOnly past the digit cap."""
    if M < 2 or k < 1:
        raise ValueError("need M >= 2 and k >= 1")
    return BoundFunctions(constants.c, constants.H_degree, constants.h1_degree, constants.digit_cap).ceiling(M, k)


def system_size(v: Vass, s: Configuration = None, t: Configuration = None) -> int:
    return v.size() + (norm(s.vector) if s else 0) + (norm(t.vector) if t else 0)


# ---------------------------------------------------------------- classification


VERDICT_NAMES = {"Easy": "easy", "NonWide": "non-wide", "NonDiagonal": "non-diagonal", "Geom2": "geom2"}


@dataclass(frozen=True)
class Classification:
    forward_diagonal: bool
    backward_diagonal: bool
    wide: bool
    geometric_dimension: int
    verdict: str
    Delta: Optional[tuple] = None
    DeltaPrime: Optional[tuple] = None
    pi: Optional[WitnessPath] = None          # p(w) -> p(w + Delta)
    pi_prime: Optional[WitnessPath] = None    # p'(w' + Delta') -> p'(w')
    forward_wide: bool = False

    @property
    def diagonal(self):
        return self.forward_diagonal and self.backward_diagonal

    def to_json(self):
        return {
            "verdict": VERDICT_NAMES[self.verdict],
            "forward_diagonal": self.forward_diagonal,
            "backward_diagonal": self.backward_diagonal,
            "wide": self.wide,
            "geometric_dimension": self.geometric_dimension,
            "Delta": None if self.Delta is None else [str(a) for a in self.Delta],
            "DeltaPrime": None if self.DeltaPrime is None else [str(a) for a in self.DeltaPrime],
        }


def _pump_up(v: Vass, s: Configuration):
    """A path s ->* s.state(w + Delta) with Delta > 0, or None."""
    comp = v.restrict(_component_of(v, s.state))
    target = Configuration(s.state, tuple(a + 1 for a in s.vector))
    ok, path = oracle.coverable(comp, s, target)
    if not ok:
        return None
    end = replay(path, comp)
    return vsub(end.vector, s.vector), path


def _component_of(v: Vass, q):
    g = v.state_graph()
    for scc in nx.strongly_connected_components(g):
        if q in scc:
            return sorted(scc, key=v.states.index)
    raise VassError(f"unknown state {q}")


def classify(v: Vass, s: Configuration, t: Configuration) -> Classification:
    if v.dim != 3:
        gd = geometric_dimension(v)
        return Classification(False, False, False, gd, "Geom2")
    decomp = sequential_decompose(v)
    try:
        fwd = _pump_up(v, s)
        rv = reverse_vass(v)
        bwd = _pump_up(rv, t)
    except BudgetExceeded as e:
        raise InconclusiveError(f"coverability: {e}") from None
    fwide = contains_orthant(seq_cone_of(decomp))
    wide = fwide or is_wide(decomp)
    gd = geometric_dimension(v)
    diag = fwd is not None and bwd is not None
    if diag and wide:
        verdict = "Easy"
    elif not wide and gd >= 1:
        verdict = "NonWide"
    elif not diag:
        verdict = "NonDiagonal"
    else:
        verdict = "NonWide"
    pi_prime = None
    if bwd is not None:
        # reversing a run of the reversed system gives p'(w' + Delta') -> p'(w')
        pi_prime = reverse_path(bwd[1], rv)
    return Classification(
        fwd is not None, bwd is not None, wide, gd, verdict,
        Delta=fwd[0] if fwd else None, DeltaPrime=bwd[0] if bwd else None,
        pi=fwd[1] if fwd else None, pi_prime=pi_prime, forward_wide=fwide,
    )


# ---------------------------------------------------------------- pumping


def state_covering_cycle(comp: Vass, p) -> tuple:
    """A cycle at p visiting every state of a strongly connected component."""
    if len(comp.states) == 1:
        return ()
    g = nx.DiGraph()
    first = {}
    for t in comp.transitions:
        if (t.src, t.dst) not in first:
            first[(t.src, t.dst)] = t.tid
            g.add_edge(t.src, t.dst)
    tids, cur, seen = [], p, {p}
    for q in list(comp.states) + [p]:
        if q in seen and q != p:
            continue
        hop = nx.shortest_path(g, cur, q)
        tids += [first[(x, y)] for x, y in zip(hop, hop[1:])]
        seen.update(hop)
        cur = q
    return tuple(tids)


def _states_along(v: Vass, start, tids):
    out = [start]
    for tid in tids:
        out.append(v.transition(tid).dst)
    return out


def _attach(v: Vass, base: tuple, start, loops):
    """Insert each (state, cycle tids, count) at the first visit of its state along ``base``."""
    seq = _states_along(v, start, base)
    inserts = {}
    for q, cyc, cnt in loops:
        if cnt <= 0:
            continue
        pos = seq.index(q)
        inserts.setdefault(pos, []).extend(list(cyc) * cnt)
    out = []
    for i in range(len(seq)):
        out.extend(inserts.get(i, ()))
        if i < len(base):
            out.append(base[i])
    return tuple(out)


def _can_fire(v: Vass, vec, tids):
    cur = list(vec)
    for tid in tids:
        e = v.transition(tid).effect
        for i, a in enumerate(e):
            cur[i] += a
            if cur[i] < 0:
                return False
    return True


def _lcm(a, b):
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class Cascade:
    ell: int                    # total multiplier: sum of the cascade equals ell * Delta'
    parts: tuple                # Delta'_1 .. Delta'_k
    paths: tuple                # pi_j as firing tuples, pi_j at entry state p_j
    entries: tuple


def _cascade_lp(comp_cycles, x):
    """Nonnegative rationals r_{j,i} with sum r e = x and positive partial sums, or None."""
    cols = [(j, e) for j, effs in enumerate(comp_cycles) for e in effs]
    n = len(cols)
    k = len(comp_cycles)
    A_eq = [[e[i] for _, e in cols] + [0] for i in range(3)]
    A_ub, b_ub = [], []
    for upto in range(k - 1):
        for i in range(3):
            A_ub.append([-(e[i] if j <= upto else 0) for j, e in cols] + [1])
            b_ub.append(0)
    A_ub.append([0] * n + [1])
    b_ub.append(1)
    res = lp.linprog([0] * n + [1], A_eq, list(x), A_ub, b_ub)
    if res.status != lp.OPTIMAL or (k > 1 and res.value <= 0):
        return None
    return [(cols[i][0], cols[i][1], Fraction(res.x[i])) for i in range(n) if res.x[i] != 0]


def pump_cascade(v: Vass, s: Configuration, Delta, pi: WitnessPath, DeltaPrime, lift_ceiling: int = 2 ** 20) -> Cascade:
    """Cycles pi_j at the entry states whose effects form a cascade summing to ell * Delta'."""
    decomp = sequential_decompose(v)
    comps = decomp.components
    k = decomp.k
    entries = [s.state] + [b.dst for b in decomp.bridges]
    Delta, DeltaPrime = tuple(Delta), tuple(DeltaPrime)
    if min(Delta) <= 0 or min(DeltaPrime) <= 0:
        raise PreconditionViolated("Delta and Delta' must be strictly positive")
    rho = [state_covering_cycle(c, p) for c, p in zip(comps, entries)]
    Drho = [path_effect(v, r) for r in rho]
    # m: make the cycles rho_j fire from m*Delta + partial sums
    m = 1
    while True:
        pos, ok = vscale(m, Delta), True
        for r, d in zip(rho, Drho):
            if not _can_fire(v, pos, r):
                ok = False
                break
            pos = vadd(pos, d)
        if ok:
            break
        m += 1
        if m > 10 ** 6:
            raise ConstructionFailed("no multiplicity m makes the covering cycles fire")
    tilde = vadd(vscale(m, Delta), tuple(map(sum, zip(*Drho))))
    ellp = max(tilde[i] // DeltaPrime[i] + 1 for i in range(3))
    x = vsub(vscale(ellp, DeltaPrime), tilde)
    cyc = [simple_cycles(c) for c in comps]
    comp_cycles = [[e for e in cs if any(e)] for cs in cyc]
    sol = _cascade_lp(comp_cycles, x)
    if sol is None:
        raise ConstructionFailed("target difference is not in the sequential cone")
    ell = 1
    for _, _, r in sol:
        ell = _lcm(ell, r.denominator)
    r_int = [(j, e, int(r * ell)) for j, e, r in sol]
    rhs = [tuple(0 for _ in range(3)) for _ in range(k)]
    for j, e, r in r_int:
        rhs[j] = vadd(rhs[j], vscale(r, e))
    sigma = []
    for j in range(k):
        loops = [(cyc[j][e][0], cyc[j][e][1], r) for jj, e, r in r_int if jj == j]
        sigma.append(_attach(v, rho[j] * ell, entries[j], loops))
    tilde_parts = [vadd(vadd(vscale(ell * m, Delta), vscale(ell, Drho[0])), rhs[0])]
    tilde_parts += [vadd(vscale(ell, Drho[j]), rhs[j]) for j in range(1, k)]
    partial = [vscale(ell * m, Delta)]
    for j in range(k):
        partial.append(vadd(partial[-1], vadd(vscale(ell, Drho[j]), rhs[j])))
    w = s.vector
    kk = 1
    while True:
        good = all(
            _can_fire(v, vadd(w, vscale(kk, partial[j])), sigma[j]) and
            _can_fire(v, vadd(vadd(w, vscale(kk, partial[j + 1])), tuple(-a for a in path_effect(v, sigma[j]))), sigma[j])
            for j in range(k)
        )
        if good:
            break
        kk *= 2
        if kk > lift_ceiling:
            raise ConstructionFailed("lifting multiplicity exceeded its ceiling")
    pi_tids = tuple(pi.firings)
    paths = [pi_tids * (kk * ell * m) + sigma[0] * kk] + [sigma[j] * kk for j in range(1, k)]
    parts = tuple(vscale(kk, tp) for tp in tilde_parts)
    total = tuple(map(sum, zip(*parts)))
    L = kk * ell * ellp
    if total != vscale(L, DeltaPrime):
        raise ConstructionFailed("cascade sum mismatch")
    acc = tuple(0 for _ in range(3))
    for part in parts:
        acc = vadd(acc, part)
        if min(acc) <= 0:
            raise ConstructionFailed("cascade partial sum not positive")
    # every pi_j must replay from its lifted start
    start = w
    for j in range(k):
        c = Configuration(entries[j], start)
        end = replay(WitnessPath(c, paths[j]), v)
        start = vadd(start, parts[j])
        if end.vector != start or end.state != entries[j]:
            raise ConstructionFailed(f"pi_{j + 1} does not replay to its cascade point")
    return Cascade(L, parts, tuple(paths), tuple(entries))


def pump_multiple(v: Vass, s: Configuration, Delta, pi: WitnessPath, DeltaPrime, lift_ceiling: int = 2 ** 20):
    """Path s.state(w) ->* s.state(w + ell * Delta'); returns (ell, WitnessPath)."""
    Delta, DeltaPrime = tuple(Delta), tuple(DeltaPrime)
    q, r = divmod(Delta[0], DeltaPrime[0])
    if r == 0 and q > 0 and vscale(q, DeltaPrime) == Delta:
        # pi already realises a multiple of Delta'
        return q, WitnessPath(s, tuple(pi.firings))
    c = pump_cascade(v, s, Delta, pi, DeltaPrime, lift_ceiling)
    if len(c.paths) != 1:
        raise PreconditionViolated("pump_multiple expects a 1-component system")
    return c.ell, WitnessPath(s, c.paths[0])


def easy_path(v: Vass, s: Configuration, t: Configuration, cls: Classification, z=None,
              lift_ceiling: int = 2 ** 20) -> Optional[WitnessPath]:
    """Path s ->* t for a diagonal and wide instance from a Z-path, or None if none exists."""
    if not cls.forward_wide:
        rv = reverse_vass(v)
        rcls = replace(cls, Delta=cls.DeltaPrime, DeltaPrime=cls.Delta,
                       pi=reverse_path(cls.pi_prime, v), pi_prime=reverse_path(cls.pi, v),
                       forward_wide=True)
        rz = oracle.z_reach_exact(rv, t, s)
        res = easy_path(rv, t, s, rcls, rz, lift_ceiling)
        return None if res is None else reverse_path(res, rv)
    if z is None:
        z = oracle.z_reach_exact(v, s, t)
    if not z.reachable:
        return None
    decomp = sequential_decompose(v)
    cas = pump_cascade(v, s, cls.Delta, cls.pi, cls.DeltaPrime, lift_ceiling)
    bridge_ids = [b.tid for b in decomp.bridges]
    pieces, cur = [], []
    for tid in z.walk:
        if tid in bridge_ids:
            pieces.append(tuple(cur))
            cur = []
        else:
            cur.append(tid)
    pieces.append(tuple(cur))
    if len(pieces) != decomp.k:
        raise ConstructionFailed("Z-walk does not cross each bridge once")
    pi_back = tuple(cls.pi_prime.firings)
    mm = 1
    while mm <= lift_ceiling:
        rho = []
        for j in range(decomp.k):
            rho += list(cas.paths[j]) * mm + list(pieces[j])
            if j < decomp.k - 1:
                rho.append(bridge_ids[j])
        rho += list(pi_back) * (mm * cas.ell)
        try:
            end = replay(WitnessPath(s, tuple(rho)), v)
        except VassError:
            mm *= 2
            continue
        if end != t:
            raise ConstructionFailed("assembled path misses the target")
        return WitnessPath(s, tuple(rho))
    raise ConstructionFailed("no multiplicity makes the Z-path fire")


# ---------------------------------------------------------------- trims and splits


def inner_product_bound(v: Vass, a, s: Configuration, t: Configuration) -> int:
    """|<a,x>| <= B on every path s ->* t of a strongly connected VASS whose cycles satisfy <a,delta> >= 0."""
    step = max((abs(dot(a, tr.effect)) for tr in v.transitions), default=0)
    return max(abs(dot(a, s.vector)), abs(dot(a, t.vector))) + (len(v.states) - 1) * step


def inner_normal(v: Vass):
    """A with <a, delta> >= 0 for every cycle: an inner facet normal, or orthogonal to Lin V."""
    c = cone_of(v)
    if full_dimensional(c):
        normals = facet_normals(c)
        if not normals:
            raise PreconditionViolated("the cycle cone is the whole space; no normal keeps cycles nonnegative")
        normals.sort(key=lambda a: (all(x >= 0 for x in a), norm(a), a))
        return normals[0]
    return orthogonal_normal(v)


@dataclass(frozen=True)
class Trimmed:
    vass: Vass
    source: Optional[Configuration]
    target: Optional[Configuration]
    note: str = ""


def trim_aB(v1: Vass, a, B: int, s: Configuration, t: Configuration = None) -> Trimmed:
    a = tuple(a)
    for e in simple_cycles(v1):
        if dot(a, e) < 0:
            raise PreconditionViolated(f"cycle effect {e} has negative inner product with {a}")
    tv = trim_inner_product(v1, a, B)

    def mapped(c):
        if c is None or c.state not in v1.states:
            return None
        ip = dot(a, c.vector)
        return Configuration(f"{c.state}@{ip}", c.vector) if -B <= ip <= B else None

    return Trimmed(tv, mapped(s), mapped(t), f"a={a} B={B}")


def fold_coordinate(v: Vass, j: int, B: int) -> Vass:
    states = [f"{q}@{b}" for q in v.states for b in range(B + 1)]
    trans = []
    for tr in v.transitions:
        for b in range(B + 1):
            b2 = b + tr.effect[j]
            if 0 <= b2 <= B:
                trans.append(Transition(f"{tr.tid}@{b}", f"{tr.src}@{b}", tr.effect, f"{tr.dst}@{b2}"))
    return Vass(v.dim, states, trans)


def case3_split(v: Vass, s: Configuration, t: Configuration, B: int = None, horizon: int = None) -> list:
    """Three systems, coordinate j kept in the state within [0, B].

    With ``horizon`` set, fold levels no run of that many steps can reach
    from ``s`` are left out; paths up to that length are unaffected.
    """
    if B is None:
        B = case3_bound(v, s)
    out = []
    for j in range(v.dim):
        cap = B if horizon is None else min(B, s.vector[j] + horizon * v.max_norm)
        fv = fold_coordinate(v, j, cap)

        def mapped(c):
            if c is None or c.vector[j] > cap:
                return None
            return Configuration(f"{c.state}@{c.vector[j]}", c.vector)

        out.append(Trimmed(fv, mapped(s), mapped(t), f"j={j} B={B}"))
    return out


def case3_bound(v: Vass, s: Configuration) -> int:
    M = max(v.max_norm, 1)
    rb = rackoff_budget(len(v.states), M, norm(s.vector) + M + 1, v.dim)
    return rb.H[-1] - 1


def length_set(v: Vass, s, t, max_len: int) -> set:
    if s is None or t is None:
        return set()
    return set(oracle.path_length_counts(v, s, t, max_len))


# ---------------------------------------------------------------- good-for-induction systems


@dataclass(frozen=True)
class GfiSystem:
    vass: Vass
    source: Optional[Configuration]
    target: Optional[Configuration]
    reversed: bool = False
    note: str = ""


def _compose(first: Vass, bridge_src, bridge: Transition, rest_states, rest_trans, tag):
    trans = list(first.transitions) + [Transition(f"{bridge.tid}#{tag}", bridge_src, bridge.effect, bridge.dst)]
    return Vass(first.dim, list(first.states) + list(rest_states), trans + list(rest_trans))


def good_for_induction(v: Vass, s: Configuration, t: Configuration, constants: Constants = Constants(),
                       B: int = None, cls: Classification = None) -> list:
    """Systems whose first component is geometrically <= 2-dimensional, length-equivalent jointly."""
    decomp = sequential_decompose(v)
    first = decomp.components[0]
    if geometric_dimension(first) <= 2:
        return [GfiSystem(v, s, t, False, "first component already geometrically <= 2")]
    if geometric_dimension(decomp.components[-1]) <= 2:
        rv = reverse_vass(v)
        return [GfiSystem(rv, t, s, True, "reversed system is good for induction")]
    if cls is None:
        cls = classify(v, s, t)
    if cls.verdict == "Easy":
        raise PreconditionViolated("easy systems are handled by pumping")
    if not cls.diagonal:
        if cls.forward_diagonal:
            rv = reverse_vass(v)
            return [replace(g, reversed=True) for g in _gfi_split(rv, t, s, B)]
        return _gfi_split(v, s, t, B)
    return _gfi_trim(v, s, t, constants, B)


def _rest(v: Vass, decomp: SequentialDecomposition):
    first = set(decomp.components[0].states)
    states = [q for q in v.states if q not in first]
    trans = [tr for tr in v.transitions if tr.src not in first]
    return states, trans


def _gfi_split(v, s, t, B):
    decomp = sequential_decompose(v)
    first = decomp.components[0]
    if B is None:
        B = case3_bound(first, s)
    out = []
    if decomp.k == 1:
        for tr in case3_split(v, s, t, B):
            out.append(GfiSystem(tr.vass, tr.source, tr.target, False, tr.note))
        return out
    bridge = decomp.bridges[0]
    rest_states, rest_trans = _rest(v, decomp)
    for tr in case3_split(first, s, None, B):
        for b in range(B + 1):
            nv = _compose(tr.vass, f"{bridge.src}@{b}", bridge, rest_states, rest_trans, b)
            out.append(GfiSystem(nv, tr.source, t, False, f"{tr.note} b={b}"))
    return out


def _gfi_trim(v, s, t, constants, B):
    decomp = sequential_decompose(v)
    first = decomp.components[0]
    M = system_size(v, s, t)
    if decomp.k == 1:
        a = inner_normal(first)
        if B is None:
            B = inner_product_bound(first, a, s, t)
        tr = trim_aB(first, a, B, s, t)
        return [GfiSystem(tr.vass, tr.source, tr.target, False, tr.note)]
    c1 = cone_of(first)
    S = seq_cone_of(reverse_decomposition(decomp))
    try:
        a, _ = separating_facet(c1, S, constants.P(M))
    except (NotFullDim, NotDisjoint):
        a = inner_normal(first)
    if B is None:
        B = 9 * constants.D(M) ** 2 * constants.P(M) ** 2
    tr = trim_aB(first, a, B, s, None)
    bridge = decomp.bridges[0]
    rest_states, rest_trans = _rest(v, decomp)
    out = []
    for b in range(-B, B + 1):
        nv = _compose(tr.vass, f"{bridge.src}@{b}", bridge, rest_states, rest_trans, b)
        out.append(GfiSystem(nv, tr.source, t, False, f"{tr.note} b={b}"))
    return out


# ---------------------------------------------------------------- component elimination


def reduce_component(v: Vass, L: LinearSet, s: Configuration = None, t: Configuration = None):
    """Drop the first component and bridge; add period self-loops at the second entry state."""
    decomp = sequential_decompose(v)
    if decomp.k < 2:
        raise PreconditionViolated("need at least two components")
    q2 = decomp.bridges[0].dst
    if min(L.base, default=0) < 0:
        raise PreconditionViolated("entry base must be nonnegative")
    states, trans = _rest(v, decomp)
    trans = list(trans)
    for i, r in enumerate(L.periods):
        trans.append(Transition(f"period{i}", q2, r, q2))
    return Vass(v.dim, states, trans), Configuration(q2, L.base)


def entry_points(v: Vass, s: Configuration, b: SearchBudget):
    """Configurations at the second entry state reachable through the first bridge.

    Returns ``(points, complete, paths)``; ``paths[x]`` is a run from s to it.
    """
    decomp = sequential_decompose(v)
    bridge = decomp.bridges[0]
    prefix = Vass(v.dim, list(decomp.components[0].states) + [bridge.dst],
                  list(decomp.components[0].transitions) + [bridge])
    pts, verdict, parent = _reach_with_parents(prefix, s, b)
    entry = sorted((c for c in pts if c.state == bridge.dst), key=lambda c: (sum(c.vector), c.vector))
    complete = isinstance(verdict, oracle.ExhaustedAllStates) and verdict.complete
    return entry, complete, parent


def _reach_with_parents(v, s, b):
    verdict, parent = oracle._search(v, s, lambda c: False, b)
    return set(parent), verdict, parent


def greedy_linear_sets(points, cap_norm: int) -> list:
    """Small bases first, then differences whose multiples stay in the sample up to ``cap_norm``."""
    pts = sorted(set(points), key=lambda x: (sum(x), x))
    have = set(pts)
    covered, out = set(), []
    for base in pts:
        if base in covered:
            continue
        periods = []
        for x in pts:
            d = vsub(x, base)
            if not any(d) or any(vscale(n, p) == d for p in periods for n in range(2, norm(d) + 1)):
                continue
            n = 1
            while norm(vadd(base, vscale(n, d))) <= cap_norm and vadd(base, vscale(n, d)) in have:
                n += 1
            if n >= 3 and norm(vadd(base, vscale(n, d))) > cap_norm:
                periods.append(d)
        out.append(LinearSet(base, periods))
        covered.add(base)
        for p in periods:
            n = 1
            while vadd(base, vscale(n, p)) in have:
                covered.add(vadd(base, vscale(n, p)))
                n += 1
    return out


# ---------------------------------------------------------------- decisions


@dataclass(frozen=True)
class Reachable:
    path: WitnessPath
    route: str = ""

    @property
    def length(self):
        return len(self.path)


@dataclass(frozen=True)
class Unreachable:
    route: str = ""


@dataclass(frozen=True)
class Inconclusive:
    reason: str = ""


def merge_verdicts(verdicts):
    """Reachable dominates; Unreachable needs every branch; otherwise Inconclusive."""
    verdicts = list(verdicts)
    for x in verdicts:
        if isinstance(x, Reachable):
            return x
    if verdicts and all(isinstance(x, Unreachable) for x in verdicts):
        return Unreachable("all branches unreachable")
    reasons = [x.reason for x in verdicts if isinstance(x, Inconclusive)]
    return Inconclusive("; ".join(reasons) or "no branches")


@dataclass(frozen=True)
class Policy:
    budget: SearchBudget = SearchBudget(counter_cap=64, length_cap=10**6, node_cap=10**6)
    max_counter_cap: int = 4096
    constants: Constants = Constants()
    use_construction: bool = True
    use_reduction: bool = True
    max_entry_points: int = 64


@dataclass
class DecisionTrace:
    steps: list = field(default_factory=list)
    classification: Optional[Classification] = None


def decide_reach3(v: Vass, s: Configuration, t: Configuration, policy: Policy = Policy(), trace: DecisionTrace = None):
    trace = trace if trace is not None else DecisionTrace()
    if s.state not in v.states or t.state not in v.states:
        raise VassError("endpoint state not in the system")
    if s == t:
        return Reachable(WitnessPath(s, ()), "trivial")
    if not nx.has_path(v.state_graph(), s.state, t.state):
        return Unreachable("no state path")
    v = between(v, s.state, t.state)
    decomp = sequential_decompose(v)
    # sub-system between the endpoint components
    try:
        z = oracle.z_reach_exact(v, s, t)
        if not z.reachable:
            trace.steps.append("z-unreachable")
            return Unreachable("not even Z-reachable")
    except BudgetExceeded:
        z = None
    if v.dim == 3 and policy.use_construction:
        try:
            cls = classify(v, s, t)
            trace.classification = cls
            trace.steps.append(f"classified {cls.verdict}")
            if cls.verdict == "Easy" and z is not None:
                path = easy_path(v, s, t, cls, z, policy.constants.lift_ceiling)
                if path is not None and replay(path, v) == t:
                    return Reachable(path, "easy construction")
        except (InconclusiveError, ConstructionFailed, BudgetExceeded) as e:
            trace.steps.append(f"construction skipped: {e}")
        except VassError as e:
            trace.steps.append(f"construction failed replay: {e}")
    if policy.use_reduction and decomp.k >= 2:
        res = _decide_by_reduction(v, s, t, policy, trace)
        if not isinstance(res, Inconclusive):
            return res
    return _oracle_decide(v, s, t, policy, trace)


def between(v: Vass, p, q) -> Vass:
    """Restriction to the components from the one holding p to the one holding q."""
    g = v.state_graph()
    keep = [x for x in v.states if nx.has_path(g, p, x) and nx.has_path(g, x, q)]
    return v.restrict(keep)


def _decide_by_reduction(v, s, t, policy, trace):
    pts, complete, parent = entry_points(v, s, policy.budget)
    if not complete:
        trace.steps.append("entry set not exhausted")
        return Inconclusive("entry set not exhausted")
    if len(pts) > policy.max_entry_points:
        return Inconclusive("too many entry points")
    trace.steps.append(f"reduction over {len(pts)} entry points")
    results = []
    for x in pts:
        nv, ns = reduce_component(v, LinearSet(x.vector, ()), s, t)
        if t.state not in nv.states:
            results.append(Unreachable("target in dropped component"))
            continue
        sub = decide_reach3(nv, ns, t, policy, DecisionTrace())
        if isinstance(sub, Reachable):
            prefix = oracle._unwind(parent, x)
            path = WitnessPath(s, tuple(prefix) + tuple(sub.path.firings))
            if replay(path, v) == t:
                return Reachable(path, "component reduction")
            results.append(Inconclusive("splice failed"))
        else:
            results.append(sub)
    return merge_verdicts(results)


def _oracle_decide(v, s, t, policy, trace):
    b = policy.budget
    while True:
        res = oracle.bfs_reach(v, s, t, b)
        if isinstance(res, oracle.Reachable):
            trace.steps.append(f"oracle reachable at counter cap {b.counter_cap}")
            return Reachable(res.path, "oracle")
        if isinstance(res, oracle.ExhaustedAllStates) and res.complete:
            trace.steps.append("oracle exhausted")
            return Unreachable("oracle exhausted every configuration")
        if isinstance(res, oracle.NotWithinBudget) or b.counter_cap * 2 > policy.max_counter_cap:
            return Inconclusive(f"oracle budget ({getattr(res, 'reason', 'counter cap')}) at cap {b.counter_cap}")
        b = replace(b, counter_cap=b.counter_cap * 2)
