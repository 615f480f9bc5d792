"""Linear, bounded, hybrid and arithmetic sets of integer vectors."""
from __future__ import annotations

import heapq
import itertools
import warnings
from dataclasses import dataclass
from typing import Callable, Union

from . import diophantine
from .vass import norm, vadd, vsub


class _Infinity:
    """The extra element of N u {inf}; compares above every integer."""
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("vass3.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INF - INF")
        return self


INF = _Infinity()
Cap = Union[int, _Infinity]


def is_inf(T) -> bool:
    return T is INF


def cap_min(*ts):
    fin = [t for t in ts if t is not INF]
    return min(fin) if fin else INF


def cap_json(T):
    return "inf" if T is INF else str(T)


def cap_from_json(s):
    return INF if s == "inf" else int(s)


class CapTooSmallToBeMeaningful(UserWarning):
    pass


def _canon_periods(P):
    return tuple(sorted({tuple(int(a) for a in p) for p in P if any(p)}))


def _nonneg(P):
    return all(a >= 0 for p in P for a in p)


@dataclass(frozen=True)
class LinearSet:
    base: tuple
    periods: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(int(a) for a in self.base))
        object.__setattr__(self, "periods", _canon_periods(self.periods))

    @property
    def dim(self):
        return len(self.base)

    def to_json(self):
        return {"type": "linear", "base": [str(a) for a in self.base], "periods": [[str(a) for a in p] for p in self.periods]}


@dataclass(frozen=True)
class BoundedLinearSet:
    base: tuple
    periods: tuple
    B: int

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(int(a) for a in self.base))
        object.__setattr__(self, "periods", _canon_periods(self.periods))
        if self.B < 0:
            raise ValueError("budget must be nonnegative")

    @property
    def dim(self):
        return len(self.base)

    def to_json(self):
        d = LinearSet(self.base, self.periods).to_json()
        d.update(type="bounded", B=str(self.B))
        return d


@dataclass(frozen=True)
class HybridSet:
    """a + P^{x.c <= T} + Q*; each bounded period p_i carries a positive cost c_i."""
    base: tuple
    P: tuple = ()
    costs: tuple = ()
    T: Cap = 0
    Q: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(int(a) for a in self.base))
        pairs = {}
        for p, c in zip(self.P, self.costs):
            p = tuple(int(a) for a in p)
            if int(c) <= 0:
                raise ValueError("hybrid costs must be positive")
            if any(p):
                pairs[p] = min(int(c), pairs.get(p, int(c)))
        items = sorted(pairs.items())
        object.__setattr__(self, "P", tuple(p for p, _ in items))
        object.__setattr__(self, "costs", tuple(c for _, c in items))
        object.__setattr__(self, "Q", _canon_periods(self.Q))
        if self.T is not INF:
            object.__setattr__(self, "T", int(self.T))
            if self.T < 0:
                raise ValueError("T must be >= 0")

    @property
    def dim(self):
        return len(self.base)

    def to_json(self):
        return {
            "type": "hybrid",
            "base": [str(a) for a in self.base],
            "P": [[str(a) for a in p] for p in self.P],
            "costs": [str(c) for c in self.costs],
            "T": cap_json(self.T),
            "Q": [[str(a) for a in q] for q in self.Q],
        }


@dataclass(frozen=True)
class ArithmeticSet:
    """{a, a+r, ..., a+T*r}; T may be INF."""
    a: int
    r: int = 0
    T: Cap = 0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("difference must be nonnegative")
        if self.r == 0:
            object.__setattr__(self, "T", 0)
        elif self.T is not INF:
            object.__setattr__(self, "T", int(self.T))

    def __contains__(self, x):
        if x < self.a:
            return False
        if self.r == 0:
            return x == self.a
        q, rem = divmod(x - self.a, self.r)
        return rem == 0 and (self.T is INF or q <= self.T)

    @property
    def last(self):
        return INF if self.T is INF else self.a + self.r * self.T

    def elements(self, cap=None):
        """Elements up to ``cap`` (required when infinite)."""
        hi = self.last if cap is None else (cap if self.last is INF else min(cap, self.last))
        if hi is INF:
            raise ValueError("infinite set needs a cap")
        if self.r == 0:
            return [self.a] if self.a <= hi else []
        return list(range(self.a, hi + 1, self.r))

    def to_json(self):
        return {"type": "arithmetic", "a": str(self.a), "r": str(self.r), "T": cap_json(self.T)}


def to_hybrid(s) -> HybridSet:
    if isinstance(s, HybridSet):
        return s
    if isinstance(s, LinearSet):
        return HybridSet(s.base, (), (), 0, s.periods)
    if isinstance(s, BoundedLinearSet):
        return HybridSet(s.base, s.periods, [1] * len(s.periods), s.B, ())
    raise TypeError(type(s))


def _min_cost(P, costs, Q, y):
    """Least cost of writing y >= 0 over nonnegative periods (None if impossible)."""
    steps = [(p, c) for p, c in zip(P, costs)] + [(q, 0) for q in Q]
    best = {tuple(0 for _ in y): 0}
    # Q steps are free, so relax in cost order
    heap = [(0, tuple(0 for _ in y))]
    while heap:
        c, z = heapq.heappop(heap)
        if best[z] != c:
            continue
        if z == tuple(y):
            return c
        for p, pc in steps:
            w = vadd(z, p)
            if any(wi > yi for wi, yi in zip(w, y)):
                continue
            if w not in best or c + pc < best[w]:
                best[w] = c + pc
                heapq.heappush(heap, (c + pc, w))
    return None


BOX_LIMIT = 200_000


def member(s, x) -> bool:
    if isinstance(s, ArithmeticSet):
        (x,) = x if isinstance(x, (tuple, list)) else (x,)
        return x in s
    h = to_hybrid(s)
    x = tuple(x)
    if len(x) != h.dim:
        raise ValueError("dimension mismatch")
    y = vsub(x, h.base)
    box = 1
    for a in y:
        box *= abs(a) + 1
    if _nonneg(h.P) and _nonneg(h.Q) and box <= BOX_LIMIT:
        if any(a < 0 for a in y):
            return False
        c = _min_cost(h.P, h.costs, h.Q, y)
        return c is not None and (h.T is INF or c <= h.T)
    cols = list(h.P) + list(h.Q)
    if not cols:
        return not any(y)
    A = [[p[i] for p in cols] for i in range(h.dim)]
    ineq = ()
    if h.T is not INF and h.P:
        ineq = ((list(h.costs) + [0] * len(h.Q), h.T),)
    return diophantine.has_solution(A, y, ineq)


def enumerate_up_to(s, norm_cap: int):
    """All members of max-norm at most ``norm_cap``, sorted."""
    if isinstance(s, ArithmeticSet):
        return sorted((x,) for x in s.elements(norm_cap) if abs(x) <= norm_cap) if s.a <= norm_cap else []
    h = to_hybrid(s)
    if not _nonneg(h.Q) or (h.T is INF and not _nonneg(h.P)):
        raise ValueError("enumeration needs nonnegative unbounded periods")
    slack = 0 if _nonneg(h.P) else h.T * max((norm(p) for p in h.P), default=0)
    limit = norm_cap + slack
    steps = list(zip(h.P, h.costs)) + [(q, 0) for q in h.Q]
    best = {h.base: 0}
    heap = [(0, h.base)]
    while heap:
        c, v = heapq.heappop(heap)
        if best.get(v, None) != c:
            continue
        for p, pc in steps:
            nc = c + pc
            if h.T is not INF and nc > h.T:
                continue
            w = vadd(v, p)
            if norm(w) > limit:
                continue
            if w not in best or nc < best[w]:
                best[w] = nc
                heapq.heappush(heap, (nc, w))
    return sorted(v for v in best if norm(v) <= norm_cap)


def union_member(sets, x) -> bool:
    return any(member(s, x) for s in sets)


def decompose_1dim(a: int, B) -> list:
    """a + B* as arithmetic progressions c + b*, b = max(B), every start c <= a + b^3."""
    B = sorted({int(x) for x in B if x > 0})
    if not B:
        return [ArithmeticSet(a, 0, 0)]
    b = B[-1]
    hi = a + b ** 3
    reach = bytearray(hi - a + 1)
    reach[0] = 1
    for y in range(1, len(reach)):
        reach[y] = any(y >= p and reach[y - p] for p in B)
    starts = [a + y for y in range(len(reach)) if reach[y] and not (y >= b and reach[y - b])]
    return [ArithmeticSet(c, b, INF) for c in starts]


def _arith_subset(s: ArithmeticSet, t: ArithmeticSet) -> bool:
    if s.a not in t:
        return False
    if s.r == 0:
        return True
    return t.r > 0 and s.r % t.r == 0 and s.last <= t.last


def _merge_runs(sets):
    """Fuse progressions sharing difference and residue whose ranges touch."""
    groups, singles = {}, set()
    for s in sets:
        if s.r:
            groups.setdefault((s.r, s.a % s.r), []).append(s)
        else:
            singles.add(s.a)
    out = []
    for (r, res), members in groups.items():
        runs = []
        for s in sorted(members, key=lambda s: s.a):
            if runs and (runs[-1][1] is INF or s.a <= runs[-1][1] + r):
                lo, hi = runs[-1]
                runs[-1] = (lo, INF if INF in (hi, s.last) else max(hi, s.last))
            else:
                runs.append((s.a, s.last))
        for lo, hi in runs:
            # absorb singletons just outside either end
            while lo - r in singles:
                singles.discard(lo - r)
                lo -= r
            while hi is not INF and hi + r in singles:
                singles.discard(hi + r)
                hi += r
            out.append(ArithmeticSet(lo, r, INF if hi is INF else (hi - lo) // r))
    return out + [ArithmeticSet(x) for x in singles]


def simplify_arithmetic(sets) -> list:
    """Drop duplicates, merge touching progressions, drop sets inside another one."""
    out = set(sets)
    while True:
        merged = set(_merge_runs(out))
        if merged == out:
            break
        out = merged
    out = sorted(out, key=lambda s: (s.a, s.r, -1 if s.T is INF else s.T))
    return [s for s in out if not any(t != s and _arith_subset(s, t) for t in out)]


@dataclass(frozen=True)
class ApproxCertificate:
    kind: str
    linear: LinearSet
    A: int
    B: int

    def valid_parameters(self) -> bool:
        pn = max((norm(p) for p in self.linear.periods), default=0)
        if self.kind == "WholeLinear":
            return norm(self.linear.base) <= self.B * self.A and pn <= self.A
        if self.kind == "BApproximation":
            return norm(self.linear.base) <= self.A and pn <= self.A
        raise ValueError(self.kind)


def check_sandwich(cert: ApproxCertificate, reach_predicate: Callable, norm_cap: int, candidates=None) -> bool:
    """Check a+P^{<=B} within S within a+P* on the ball of radius ``norm_cap``.

    ``candidates`` lists the members of S inside the ball; when omitted the
    nonnegative box is scanned with ``reach_predicate``.
    """
    lin = cert.linear
    lower = enumerate_up_to(BoundedLinearSet(lin.base, lin.periods, cert.B), norm_cap)
    if not lower:
        warnings.warn("no element of the lower set within the cap", CapTooSmallToBeMeaningful)
    if not all(reach_predicate(x) for x in lower):
        return False
    if candidates is None:
        box = itertools.product(range(norm_cap + 1), repeat=lin.dim)
        candidates = [x for x in box if reach_predicate(x)]
    return all(member(lin, x) for x in candidates if norm(x) <= norm_cap)
