"""Two-dimensional machinery: simple linear path schemes, line transformers, trims."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from . import diophantine
from .semilinear import INF, ArithmeticSet, HybridSet, LinearSet, cap_min, decompose_1dim, simplify_arithmetic
from .vass import Configuration, Transition, Vass, geometric_dimension, norm, simple_cycle_effects


class InvalidDecomposition(Exception):
    pass


class NotGeom2(Exception):
    pass


def _eff(seq, dim=2):
    out = [0] * dim
    for v in seq:
        for i, a in enumerate(v):
            out[i] += a
    return tuple(out)


def _drop(seq, j):
    """Largest amount coordinate j falls below its start along ``seq``."""
    cur, worst = 0, 0
    for v in seq:
        cur += v[j]
        worst = max(worst, -cur)
    return worst


@dataclass(frozen=True)
class Slps:
    """alpha_0 beta_1* alpha_1 ... beta_k* alpha_k with single-transition loops."""
    alphas: tuple
    betas: tuple

    def __post_init__(self):
        al = tuple(tuple(tuple(int(a) for a in v) for v in seg) for seg in self.alphas)
        be = tuple(tuple(int(a) for a in b) for b in self.betas)
        if len(al) != len(be) + 1:
            raise ValueError("need exactly one more segment than loops")
        object.__setattr__(self, "alphas", al)
        object.__setattr__(self, "betas", be)

    @classmethod
    def from_blocks(cls, blocks):
        alphas, betas, cur = [], [], []
        for kind, payload in blocks:
            if kind == "seg":
                cur.extend(payload)
            else:
                alphas.append(tuple(cur))
                betas.append(payload)
                cur = []
        alphas.append(tuple(cur))
        return cls(tuple(alphas), tuple(betas))

    @property
    def k(self):
        return len(self.betas)

    def size(self) -> int:
        moves = [v for seg in self.alphas for v in seg] + list(self.betas)
        return sum(norm(v) for v in moves) + len(moves)

    def concat(self, other: "Slps") -> "Slps":
        mid = self.alphas[-1] + other.alphas[0]
        return Slps(self.alphas[:-1] + (mid,) + other.alphas[1:], self.betas + other.betas)

    def split_after_loop(self, i):
        """(prefix with loops 1..i, suffix with loops i+1..k); the segment after loop i goes right."""
        left = Slps(self.alphas[:i] + ((),), self.betas[:i])
        right = Slps(self.alphas[i:], self.betas[i:])
        return left, right


@dataclass(frozen=True)
class OneTurnSlps:
    alpha1: tuple
    beta1: tuple
    alpha2: tuple
    beta2: tuple

    def __post_init__(self):
        b1, b2 = self.beta1, self.beta2
        if not (b1[0] > 0 and b1[1] < 0 and b2[0] < 0 and b2[1] > 0):
            raise ValueError("one-turn loops must lie in opposite mixed-sign quadrants")

    def as_slps(self) -> Slps:
        return Slps((tuple(self.alpha1), tuple(self.alpha2), ()), (tuple(self.beta1), tuple(self.beta2)))

    @classmethod
    def from_slps(cls, s: Slps) -> "OneTurnSlps":
        if s.k != 2 or s.alphas[2]:
            raise ValueError("one-turn SLPS has the shape alpha beta* alpha beta*")
        return cls(s.alphas[0], s.betas[0], s.alphas[1], s.betas[1])

    def size(self):
        return self.as_slps().size()


# ---------------------------------------------------------------- brute force


def slps_reach_brute(slps: Slps, sources, cap: int) -> set:
    """Targets reachable from any source, exploring counters up to ``cap``."""
    frontier = {tuple(s) for s in sources}

    def run_seg(points, seg):
        out = set()
        for p in points:
            cur, ok = p, True
            for v in seg:
                cur = (cur[0] + v[0], cur[1] + v[1])
                if min(cur) < 0:
                    ok = False
                    break
            if ok:
                out.add(cur)
        return out

    for i in range(slps.k):
        frontier = run_seg(frontier, slps.alphas[i])
        b = slps.betas[i]
        pumped = set(frontier)
        stack = list(frontier)
        while stack:
            p = stack.pop()
            q = (p[0] + b[0], p[1] + b[1])
            if min(q) >= 0 and max(q) <= cap and q not in pumped:
                pumped.add(q)
                stack.append(q)
        frontier = pumped
    return run_seg(frontier, slps.alphas[-1])


# ---------------------------------------------------------------- path systems


@dataclass
class _Affine:
    """const + sum coef[i] * x_i over the unknown vector x."""
    const: int
    coef: list

    def shift(self, c, coef=None):
        new = list(self.coef)
        if coef:
            for i, a in coef.items():
                new[i] += a
        return _Affine(self.const + c, new)


def _path_system(slps: Slps, src, nvars, loop_offset):
    """Checkpoint constraints of a run of ``slps`` from an affine source.

    ``src`` is a pair of _Affine (one per coordinate); loop exponents occupy
    unknowns ``loop_offset .. loop_offset + k - 1``.  Returns ``(ge_rows, end)``
    where each ge-row ``(coef, rhs)`` reads ``coef . x >= rhs`` and ``end`` is
    the affine target.
    """
    pos = list(src)
    rows = []
    for i in range(slps.k + 1):
        seg = slps.alphas[i]
        for j in range(2):
            # the point before alpha_i must absorb the largest drop along it
            rows.append((list(pos[j].coef), _drop(seg, j) - pos[j].const))
        e = _eff(seg)
        pos = [pos[j].shift(e[j]) for j in range(2)]
        if i < slps.k:
            b = slps.betas[i]
            pos = [pos[j].shift(0, {loop_offset + i: b[j]}) for j in range(2)]
    return rows, pos


def _solve_ge(rows, nvars, eq_rows=()):
    """Nonnegative integer solutions of ``coef.x >= rhs`` rows and ``coef.x == rhs`` rows."""
    kept = {}
    for coef, rhs in rows:
        if all(c >= 0 for c in coef) and rhs <= 0:
            continue  # holds for every x >= 0
        if not any(coef):
            if rhs > 0:
                return diophantine.SolutionSetDescription((), ())
            continue
        key = tuple(coef)
        kept[key] = max(rhs, kept.get(key, rhs))
    return diophantine.polyhedral_solutions(
        list(kept), list(kept.values()), [c for c, _ in eq_rows], [r for _, r in eq_rows], n=nvars)


def _project(desc, aff: _Affine):
    out = []
    for u in desc.U:
        base = aff.const + sum(c * x for c, x in zip(aff.coef, u))
        periods = {sum(c * x for c, x in zip(aff.coef, p)) for p in desc.P}
        if any(d < 0 for d in periods):
            raise ArithmeticError("projected period is negative; the system lacks a bound")
        out.append((base, sorted(d for d in periods if d > 0)))
    return out


def _lines_from_projection(pairs):
    sets = []
    for base, periods in pairs:
        sets.extend(decompose_1dim(base, periods))
    return simplify_arithmetic(sets)


def prefix_lines(lam: Slps, s, u1: int) -> list:
    """Second coordinates u2 with (u1, u2) reachable from s, as arithmetic sets."""
    if lam.k > 3:
        raise ValueError("prefix needs a short SLPS (at most three loops)")
    k = lam.k
    src = [_Affine(int(s[0]), [0] * k), _Affine(int(s[1]), [0] * k)]
    rows, end = _path_system(lam, src, k, 0)
    if k == 0:
        ok = all(r <= 0 for _, r in rows) and end[0].const == u1
        return [ArithmeticSet(end[1].const)] if ok else []
    desc = _solve_ge(rows, k, [(end[0].coef, u1 - end[0].const)])
    return _lines_from_projection(_project(desc, end[1]))


# ---------------------------------------------------------------- one-turn transformer


@dataclass
class OneTurnPlan:
    """Data of the equation n1*x1 - n2*x2 = v1 - u1 - eff1(alpha1 alpha2)."""
    w: tuple
    p: tuple
    eff2_w: int
    eff2_p: int
    C0: int
    M: int


def _one_turn_affine(lam: OneTurnSlps, u1, w, p):
    """Checkpoint constraints of the run w + k*p from (u1, c) as (A0, g, B): A0 + g*c + B*k >= 0."""
    out = []
    pos = [(u1, 0), (0, 1)]  # (constant, coefficient of c) per coordinate
    kco = [0, 0]
    for seg, beta, n in ((lam.alpha1, lam.beta1, 0), (lam.alpha2, lam.beta2, 1)):
        for j in range(2):
            out.append((pos[j][0] - _drop(seg, j), pos[j][1], kco[j]))
        e = _eff(seg)
        pos = [(pos[j][0] + e[j] + w[n] * beta[j], pos[j][1]) for j in range(2)]
        kco = [kco[j] + p[n] * beta[j] for j in range(2)]
    out.extend((pos[j][0], pos[j][1], kco[j]) for j in range(2))
    return out


def interval_for(lam: OneTurnSlps, u1, c, w, p):
    """Feasible k as (k1, k2) with k2 possibly INF, or None when empty."""
    lo, hi = 0, INF
    for A0, g, B in _one_turn_affine(lam, u1, w, p):
        A = A0 + g * c
        if B == 0:
            if A < 0:
                return None
        elif B > 0:
            lo = max(lo, -(A // B) if A < 0 else 0)
        else:
            if A < 0:
                return None
            hi = cap_min(hi, A // (-B))
    if hi is not INF and hi < lo:
        return None
    return lo, hi


def _r_of_c(lam, plan: OneTurnPlan, u1, c):
    iv = interval_for(lam, u1, c, plan.w, plan.p)
    if iv is None:
        return None
    k1, k2 = iv
    first = c + plan.C0 + plan.eff2_w + k1 * plan.eff2_p
    e = plan.eff2_p
    if e == 0:
        return ArithmeticSet(first)
    if e > 0:
        return ArithmeticSet(first, e, INF if k2 is INF else k2 - k1)
    if k2 is INF:
        raise ArithmeticError("decreasing unbounded run violates nonnegativity")
    last = c + plan.C0 + plan.eff2_w + k2 * e
    return ArithmeticSet(last, -e, k2 - k1)


def one_turn_plan(lam: OneTurnSlps, u1: int, v1: int) -> Optional[OneTurnPlan]:
    x1, x2 = lam.beta1[0], -lam.beta2[0]
    rhs = v1 - u1 - _eff(lam.alpha1)[0] - _eff(lam.alpha2)[0]
    desc = diophantine.minimal_solutions(diophantine.DiophantineSystem([[x1, -x2]], [rhs]))
    if not desc.U:
        return None
    (w,) = desc.U
    (p,) = desc.P
    y1, y2 = -lam.beta1[1], lam.beta2[1]
    C0 = _eff(lam.alpha1)[1] + _eff(lam.alpha2)[1]
    return OneTurnPlan(w, p, -w[0] * y1 + w[1] * y2, -p[0] * y1 + p[1] * y2, C0, lam.size())


def merge_threshold(M: int, r: int, w) -> int:
    return 3 * (M + r) * M * M + M * norm(w)


def _ceil_div(a, b):
    return -((-a) // b)


def _extent(lam, plan, u1, c0, r, K):
    """min and sup (INF allowed) of R(c0 + r^{<=K}).

    The run system lives in two unknowns: m indexes the source sequence and
    k multiplies p.  Constraints not involving c bound k to [kA, kB]; the
    others give a least feasible m per k.  The minimum is found by scanning k
    until a lower bound on the objective exceeds the best value seen, which
    always happens after finitely many steps (past the point where the
    steepest constraint dominates, the objective is periodic in k).
    """
    e = plan.eff2_p
    base = c0 + plan.C0 + plan.eff2_w
    cons = [(A0 + g * c0, g, B) for A0, g, B in _one_turn_affine(lam, u1, plan.w, plan.p)]
    if r == 0:
        K = 0
    kcons = [(A, B) for A, g, B in cons if g == 0 or K == 0]
    mcons = [(A, B) for A, g, B in cons if g == 1 and K != 0]
    kA, kB = 0, INF
    for A, B in kcons:
        if B == 0:
            if A < 0:
                return None
        elif B > 0:
            kA = max(kA, _ceil_div(-A, B))
        else:
            kB = cap_min(kB, A // (-B)) if A >= 0 else -1
    if kB is not INF and kB < kA:
        return None

    def m_lo(k):
        return max([0] + [_ceil_div(-A - B * k, r) for A, B in mcons])

    def feasible(k):
        return K is INF or m_lo(k) <= K

    # sup: feasibility in k only grows with m, so look at the largest m
    if K is INF:
        hi = INF
    else:
        lo_k, hi_k = kA, kB
        for A, B in mcons:
            A2 = A + K * r
            if B == 0:
                if A2 < 0:
                    return None
            elif B > 0:
                lo_k = max(lo_k, _ceil_div(-A2, B))
            else:
                hi_k = cap_min(hi_k, A2 // (-B)) if A2 >= 0 else -1
        if hi_k is not INF and hi_k < lo_k:
            return None
        if e > 0 and hi_k is INF:
            hi = INF
        else:
            hi = base + K * r + (e * hi_k if e > 0 else e * lo_k)

    k_dec = max([kA] + [_ceil_div(-A, B) for A, B in mcons if B > 0])
    neg = [(A, -B) for A, B in mcons if B < 0]
    smax = max((s for _, s in neg), default=0)
    if e < 0 and smax == -e:
        dom = min(A for A, s in neg if s == smax)
        k_dom = max([0, _ceil_div(dom, smax)] +
                    [_ceil_div(dom - A, smax - s) for A, s in neg if s < smax])
        k_stop = max(k_dec, k_dom) + (r if r else 1) + 1
    else:
        k_stop = None
    best = None
    k = kA
    while kB is INF or k <= kB:
        if feasible(k):
            val = base + r * m_lo(k) + e * k
            best = val if best is None else min(best, val)
        if k >= k_dec:
            if e >= 0:
                break
            if k_stop is not None and k >= k_stop:
                break
            if k_stop is None and best is not None:
                # the steepest constraint forces r*m >= smax*k - A, so the objective grows
                if all(smax * k - A + e * k > best - base + r for A, s in neg if s == smax):
                    break
        k += 1
    if best is None:
        return None
    return best, hi


def _transform_divisible(lam, plan, u1, a, r, K):
    """Cases I and III: S1 = a + r^{<=K} with rhat | r (or rhat = 0)."""
    rhat = abs(plan.eff2_p)
    D = merge_threshold(plan.M, r, plan.w)
    out = []
    # the part of S1 below D, element by element
    if r == 0:
        K = 0
    m = 0
    while (K is INF or m <= K) and a + m * r < D:
        res = _r_of_c(lam, plan, u1, a + m * r)
        if res is not None:
            out.append(res)
        m += 1
        if r == 0:
            break
    if (K is not INF and m > K) or (r == 0 and a < D):
        return out
    c0, K2 = a + m * r, (INF if K is INF else K - m)
    if rhat == 0:
        # R(c) is the single point c + C0 + eff2(w) once nonempty, and nonemptiness is upward closed
        ext = _extent(lam, plan, u1, c0, r, K2)
        if ext is None:
            return out
        lo, hi = ext
        T = INF if hi is INF else ((hi - lo) // r if r else 0)
        out.append(ArithmeticSet(lo, r, T))
        return out
    ext = _extent(lam, plan, u1, c0, r, K2)
    if ext is not None:
        lo, hi = ext
        out.append(ArithmeticSet(lo, rhat, INF if hi is INF else (hi - lo) // rhat))
    return out


def one_turn_transform(lam: OneTurnSlps, u1: int, v1: int, S1: ArithmeticSet) -> list:
    """R(S1) = {v2 : (u1, u2) ->* (v1, v2) for some u2 in S1}, as arithmetic sets."""
    if isinstance(lam, Slps):
        lam = OneTurnSlps.from_slps(lam)
    plan = one_turn_plan(lam, u1, v1)
    if plan is None:
        return []
    a, r, K = S1.a, S1.r, S1.T
    rhat = abs(plan.eff2_p)
    if r == 0 or rhat == 0 or r % rhat == 0:
        res = _transform_divisible(lam, plan, u1, a, r, K)
    else:
        # split into rhat subsequences of difference r * rhat
        res = []
        for j in range(rhat):
            if K is not INF and j > K:
                break
            Kj = INF if K is INF else (K - j) // rhat
            res.extend(_transform_divisible(lam, plan, u1, a + j * r, r * rhat, Kj))
    return simplify_arithmetic(res)


def one_turn_brute(lam: OneTurnSlps, u1, v1, S1: ArithmeticSet, kcap: int = None):
    """Reference R(S1) for finite S1 by enumerating exponent pairs."""
    out = set()
    for c in S1.elements():
        for x in slps_reach_brute(lam.as_slps(), [(u1, c)], cap=kcap or 10**9):
            if x[0] == v1:
                out.add(x[1])
    return out


# ---------------------------------------------------------------- suffix


def suffix_hybrid(lam: Slps, u, p, T) -> list:
    """Reach(lam, u + {p}^{<=T}) as hybrid sets."""
    if lam.k > 3:
        raise ValueError("suffix needs a short SLPS (at most three loops)")
    k = lam.k
    nv = 1 + k
    src = [_Affine(int(u[j]), [int(p[j])] + [0] * k) for j in range(2)]
    rows, end = _path_system(lam, src, nv, 1)
    desc = _solve_ge(rows, nv)
    out = []
    for a in desc.U:
        if T is not INF and a[0] > T:
            continue
        base = tuple(e.const + sum(c * x for c, x in zip(e.coef, a)) for e in end)
        P, costs, Q = [], [], []
        for v in desc.P:
            vec = tuple(sum(c * x for c, x in zip(e.coef, v)) for e in end)
            if v[0] == 0 or T is INF:
                Q.append(vec)
            else:
                P.append(vec)
                costs.append(v[0])
        Tn = INF if T is INF else T - a[0]
        if Tn == 0:
            P, costs = [], []
        out.append(HybridSet(base, P, costs, Tn, Q))
    return sorted(set(out), key=lambda h: (h.base, h.P, h.Q))


# ---------------------------------------------------------------- zigzag composition


@dataclass(frozen=True)
class ZigzagDecomposition:
    lambda1: Slps
    lambda2: Slps
    lambda3: Slps
    B: int
    b: int
    b_prime: int

    def validate(self):
        if self.lambda1.k > 3 or self.lambda3.k > 3:
            raise InvalidDecomposition("outer parts must be short")
        for i, beta in enumerate(self.lambda2.betas):
            want = (1, -1) if i % 2 == 0 else (-1, 1)
            if not (beta[0] * want[0] > 0 and beta[1] * want[1] > 0):
                raise InvalidDecomposition(f"loop {i + 1} of the zigzag part is in the wrong quadrant")
        if self.lambda2.k % 2:
            raise InvalidDecomposition("the zigzag part must end in the second quadrant")
        if not (0 <= self.b <= self.B and 0 <= self.b_prime <= self.B):
            raise InvalidDecomposition("midpoint abscissae must lie in [0, B]")


def _one_turn_pieces(lam2: Slps):
    pieces = []
    for i in range(0, lam2.k, 2):
        pieces.append(OneTurnSlps(lam2.alphas[i], lam2.betas[i], lam2.alphas[i + 1], lam2.betas[i + 1]))
    return pieces, lam2.alphas[-1]


def compose_zigzag(d: ZigzagDecomposition, s) -> list:
    d.validate()
    lines = {d.b: prefix_lines(d.lambda1, s, d.b)}
    pieces, tail = _one_turn_pieces(d.lambda2)
    for idx, piece in enumerate(pieces):
        last = idx == len(pieces) - 1
        targets = [d.b_prime] if last else range(d.B + 1)
        nxt = {}
        for u1, sets in lines.items():
            for v1 in targets:
                for S in sets:
                    nxt.setdefault(v1, []).extend(one_turn_transform(piece, u1, v1, S))
        lines = {v: simplify_arithmetic(ss) for v, ss in nxt.items()}
    if not pieces:
        lines = {d.b_prime: lines.get(d.b_prime, [])} if d.b == d.b_prime else {}
    lam3 = Slps((tuple(tail),), ()).concat(d.lambda3)
    out = []
    for u1, sets in lines.items():
        for S in sets:
            out.extend(suffix_hybrid(lam3, (u1, S.a), (0, S.r), S.T if S.r else 0))
    return sorted(set(out), key=lambda h: (h.base, h.P, h.Q, str(h.T)))


def zigzag_brute(d: ZigzagDecomposition, s, cap: int) -> set:
    """Reference for compose_zigzag by explicit runs with the same midpoint restriction."""
    d.validate()
    pts = {x for x in slps_reach_brute(d.lambda1, [s], cap) if x[0] == d.b}
    pieces, tail = _one_turn_pieces(d.lambda2)
    for idx, piece in enumerate(pieces):
        last = idx == len(pieces) - 1
        ok = (lambda x: x[0] == d.b_prime) if last else (lambda x: 0 <= x[0] <= d.B)
        pts = {x for x in slps_reach_brute(piece.as_slps(), pts, cap) if ok(x)}
    if not pieces:
        pts = {x for x in pts if x[0] == d.b_prime}
    lam3 = Slps((tuple(tail),), ()).concat(d.lambda3)
    return slps_reach_brute(lam3, pts, cap)


# ---------------------------------------------------------------- trims for geometric dimension <= 2


def orthogonal_normal(v: Vass):
    """Integer a orthogonal to every simple-cycle effect, preferring sign-constant vectors."""
    from .geometry import cross, primitive
    effs = sorted(simple_cycle_effects(v))
    basis = []
    for e in effs:
        if any(e) and (not basis or any(cross(basis[0], e))):
            basis.append(e)
        if len(basis) == 2:
            break
    if len(basis) == 2:
        return primitive(cross(basis[0], basis[1]))
    cands = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    if basis:
        e = basis[0]
        cands += [primitive(cross(e, u)) for u in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    ok = [a for a in cands if any(a) and all(sum(x * y for x, y in zip(a, e)) == 0 for e in effs)]
    ok.sort(key=lambda a: (not (all(x >= 0 for x in a) or all(x <= 0 for x in a)), norm(a), a))
    return ok[0]


def _potentials(v: Vass, s_state, a):
    """Inner-product change from the source state to every reachable state."""
    pot = {s_state: 0}
    stack = [s_state]
    while stack:
        q = stack.pop()
        for t in v.transitions:
            if t.src == q and t.dst not in pot:
                pot[t.dst] = pot[q] + sum(x * y for x, y in zip(a, t.effect))
                stack.append(t.dst)
    return pot


@dataclass
class TrimMap:
    a: tuple
    case: str
    folded: int = None
    v: Vass = None

    def to_trim(self, c: Configuration) -> Configuration:
        if self.case == "fold":
            j = self.folded
            rest = tuple(x for i, x in enumerate(c.vector) if i != j)
            return Configuration(f"{c.state}@{c.vector[j]}", rest, c.z)
        ip = sum(x * y for x, y in zip(self.a, c.vector))
        return Configuration(f"{c.state}@{ip}", c.vector, c.z)

    def from_trim(self, c: Configuration) -> Configuration:
        q, _, val = c.state.rpartition("@")
        if self.case == "fold":
            vec = list(c.vector)
            vec.insert(self.folded, int(val))
            return Configuration(q, tuple(vec), c.z)
        return Configuration(q, c.vector, c.z)

    def lift_linear(self, value: int, L2: LinearSet) -> LinearSet:
        """Lift a 2-D linear set on the kept coordinates to 3-D (fixed folded value/inner product)."""
        j = self.folded
        aj = self.a[j]

        def lift(vec, c):
            rest = sum(self.a[i] * x for i, x in zip([i for i in range(3) if i != j], vec))
            num = c - rest
            if num % aj:
                raise ArithmeticError("lift is not integral")
            out = list(vec)
            out.insert(j, num // aj)
            return tuple(out)

        if self.case == "fold":
            base = list(L2.base)
            base.insert(j, value)
            return LinearSet(tuple(base), [tuple(list(p[:j]) + [0] + list(p[j:])) for p in L2.periods])
        return LinearSet(lift(L2.base, value), [lift(p, 0) for p in L2.periods])


def trim_geom2(v: Vass, s: Configuration, a=None, C: int = None):
    """Fold the bounded direction of a geometrically <= 2-dimensional 3-VASS into states.

    Returns ``(trimmed_vass, mapping, mapped_source)``.  A sign-constant normal
    yields a genuine 2-VASS (the coordinate itself is stored); a mixed-sign
    normal keeps all three coordinates and stores the inner product.
    """
    if v.dim != 3:
        raise NotGeom2("expects a 3-VASS")
    if geometric_dimension(v) > 2:
        raise NotGeom2("geometric dimension 3")
    a = tuple(a) if a is not None else orthogonal_normal(v)
    if any(sum(x * y for x, y in zip(a, e)) for e in simple_cycle_effects(v)):
        raise NotGeom2("normal is not orthogonal to the cycle space")
    pot = _potentials(v, s.state, a)
    ip0 = sum(x * y for x, y in zip(a, s.vector))
    if C is None:
        C = abs(ip0) + max((abs(x) for x in pot.values()), default=0)
    sign_const = all(x >= 0 for x in a) or all(x <= 0 for x in a)
    if sign_const:
        aa = a if all(x >= 0 for x in a) else tuple(-x for x in a)
        j = max(range(3), key=lambda i: (aa[i], -i))
        cap = C // aa[j] if aa[j] else C
        states, trans = [], []
        for q in v.states:
            for c in range(cap + 1):
                states.append(f"{q}@{c}")
        for t in v.transitions:
            rest = tuple(x for i, x in enumerate(t.effect) if i != j)
            for c in range(cap + 1):
                c2 = c + t.effect[j]
                if 0 <= c2 <= cap:
                    trans.append(Transition(f"{t.tid}@{c}", f"{t.src}@{c}", rest, f"{t.dst}@{c2}"))
        m = TrimMap(aa, "fold", j, v)
        return Vass(2, states, trans), m, m.to_trim(s)
    trimmed = trim_inner_product(v, a, C)
    jj = max(range(3), key=lambda i: (abs(a[i]), -i))
    m = TrimMap(a, "inner", jj, v)
    return trimmed, m, m.to_trim(s)


def trim_inner_product(v: Vass, a, B: int) -> Vass:
    """States <q,b> for b in [-B, B]; (q,v,q') becomes (<q,b>, v, <q',b+<a,v>>)."""
    states = [f"{q}@{b}" for q in v.states for b in range(-B, B + 1)]
    trans = []
    for t in v.transitions:
        d = sum(x * y for x, y in zip(a, t.effect))
        for b in range(-B, B + 1):
            if -B <= b + d <= B:
                trans.append(Transition(f"{t.tid}@{b}", f"{t.src}@{b}", t.effect, f"{t.dst}@{b + d}"))
    return Vass(v.dim, states, trans)
