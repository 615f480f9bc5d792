"""Open rational cones in small dimension, decided with the exact simplex in ``lp``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import lp
from .vass import SequentialDecomposition, Vass, rank, reverse_vass, sequential_decompose, simple_cycle_effects


class GeometryError(Exception):
    pass


class NotFullDim(GeometryError):
    pass


class NotDisjoint(GeometryError):
    pass


def primitive(v):
    if any(isinstance(a, Fraction) and a.denominator != 1 for a in v):
        return _integral(v)
    g = 0
    for a in v:
        g = gcd(g, int(a))
    return tuple(int(a) // g for a in v) if g else tuple(int(a) for a in v)


def _integral(v):
    """Scale a rational vector to a primitive integer vector of the same direction."""
    den = 1
    for a in v:
        a = Fraction(a)
        den = den * a.denominator // gcd(den, a.denominator)
    return primitive([int(Fraction(a) * den) for a in v])


def dot(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True)
class OpenCone:
    """Strictly positive combinations of *all* generators; no generators means empty."""
    generators: tuple
    dim: int = 3

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(int(a) for a in g) for g in self.generators))

    @property
    def empty(self):
        return not self.generators

    def __contains__(self, x):
        return cone_member(self, x)


def cone_of(v: Vass) -> OpenCone:
    """cone(V) from simple-cycle effects; a cycle-free component yields {0}."""
    effs = sorted(simple_cycle_effects(v))
    return OpenCone(effs or [(0,) * v.dim], v.dim)


def cone_member(c: OpenCone, x) -> bool:
    if c.empty:
        return False
    gens, d = c.generators, len(x)
    n = len(gens)
    # variables r_1..r_n, t ; maximize t with r_i >= t, t <= 1
    A_eq = [[g[i] for g in gens] + [0] for i in range(d)]
    A_ub = [[-int(j == i) for j in range(n)] + [1] for i in range(n)]
    A_ub.append([0] * n + [1])
    res = lp.linprog([0] * n + [1], A_eq, list(x), A_ub, [0] * n + [1])
    return res.status == lp.OPTIMAL and res.value > 0


def closed_member(gens, x) -> bool:
    """x in the closed cone generated by ``gens``."""
    if not gens:
        return all(a == 0 for a in x)
    A_eq = [[g[i] for g in gens] for i in range(len(x))]
    return lp.feasible(A_eq, list(x), nvars=len(gens)).status == lp.OPTIMAL


def full_dimensional(c: OpenCone) -> bool:
    return not c.empty and rank(c.generators) == c.dim


def facet_normals(c: OpenCone) -> list:
    """Integer normals a with cone = intersection of {x : <a,x> > 0}; 3-D only."""
    if c.dim != 3 or not full_dimensional(c):
        raise NotFullDim("facet normals need a 3-dimensional cone")
    gens = list(dict.fromkeys(primitive(g) for g in c.generators if any(g)))
    out = []
    for u, v in combinations(gens, 2):
        a = cross(u, v)
        if not any(a):
            continue
        a = primitive(a)
        signs = [dot(a, g) for g in gens]
        if all(s >= 0 for s in signs):
            pass
        elif all(s <= 0 for s in signs):
            a = tuple(-x for x in a)
        else:
            continue
        if a not in out:
            out.append(a)
    return sorted(out)


def _dd_step(gens, a):
    """Generators of cone(gens) intersected with the closed half-space <a,x> >= 0."""
    pos = [g for g in gens if dot(a, g) > 0]
    neg = [g for g in gens if dot(a, g) < 0]
    zero = [g for g in gens if dot(a, g) == 0]
    new = pos + zero
    for p in pos:
        for n in neg:
            new.append(tuple(dot(a, p) * ni - dot(a, n) * pi for pi, ni in zip(p, n)))
    return _prune(new)


def _prune(gens):
    gens = list(dict.fromkeys(primitive(g) for g in gens if any(g)))
    i = 0
    while i < len(gens):
        others = gens[:i] + gens[i + 1:]
        if others and closed_member(others, gens[i]):
            gens = others
        else:
            i += 1
    return gens


def intersect_orthant(c: OpenCone) -> OpenCone:
    """c intersected with the open positive orthant, again as an open cone."""
    if c.empty:
        return c
    gens = list(c.generators)
    for i in range(c.dim):
        gens = _dd_step(gens, tuple(int(j == i) for j in range(c.dim)))
        if not gens:
            return OpenCone((), c.dim)
    # relint(K) meets the open orthant iff the barycentre of K's generators lies in both
    x = tuple(sum(col) for col in zip(*gens))
    if all(a > 0 for a in x) and cone_member(c, x):
        return OpenCone(tuple(sorted(gens)), c.dim)
    return OpenCone((), c.dim)


def minkowski(c1: OpenCone, c2: OpenCone) -> OpenCone:
    if c1.empty or c2.empty:
        return OpenCone((), c1.dim)
    return OpenCone(tuple(_prune(list(c1.generators) + list(c2.generators)) or [(0,) * c1.dim]), c1.dim)


def sequential_cone(cones, d: int = 3) -> OpenCone:
    cones = list(cones)
    if not cones:
        raise ValueError("need at least one cone")
    cur = intersect_orthant(cones[0])
    for c in cones[1:]:
        cur = intersect_orthant(minkowski(cur, c))
    return cur


def cascade_member(cones, x) -> bool:
    """Direct search for a cascade (v_1..v_k), v_i in cones[i], summing to x."""
    if any(c.empty for c in cones):
        return False
    d = len(x)
    blocks, off = [], 0
    for c in cones:
        blocks.append((off, c.generators))
        off += len(c.generators)
    nv = off + 1
    t = off

    def partial(upto, coord):
        row = [0] * nv
        for b, (o, gens) in enumerate(blocks[: upto + 1]):
            for j, g in enumerate(gens):
                row[o + j] = g[coord]
        return row

    A_eq = [partial(len(cones) - 1, i) for i in range(d)]
    A_ub = []
    for i in range(nv - 1):
        A_ub.append([-int(j == i) for j in range(nv - 1)] + [1])
    for k in range(len(cones)):
        for i in range(d):
            A_ub.append([-a for a in partial(k, i)[:-1]] + [1])
    A_ub.append([0] * (nv - 1) + [1])
    b_ub = [0] * (len(A_ub) - 1) + [1]
    c = [0] * (nv - 1) + [1]
    res = lp.linprog(c, A_eq, list(x), A_ub, b_ub)
    return res.status == lp.OPTIMAL and res.value > 0


def contains_orthant(c: OpenCone) -> bool:
    if not full_dimensional(c):
        return False
    return all(all(a >= 0 for a in n) for n in facet_normals(c))


def component_cones(decomp: SequentialDecomposition):
    return [cone_of(comp) for comp in decomp.components]


def seq_cone_of(decomp: SequentialDecomposition) -> OpenCone:
    return sequential_cone(component_cones(decomp))


def reverse_decomposition(decomp: SequentialDecomposition) -> SequentialDecomposition:
    comps = tuple(reverse_vass(c) for c in reversed(decomp.components))
    from .vass import Transition
    bridges = tuple(
        Transition(b.tid, b.dst, tuple(-a for a in b.effect), b.src) for b in reversed(decomp.bridges)
    )
    return SequentialDecomposition(comps, bridges)


def is_wide(decomp) -> bool:
    if isinstance(decomp, Vass):
        decomp = sequential_decompose(decomp)
    if decomp.components[0].dim != 3:
        raise GeometryError("wideness is defined for dimension 3")
    if contains_orthant(seq_cone_of(decomp)):
        return True
    return contains_orthant(seq_cone_of(reverse_decomposition(decomp)))


def within_distance_of_cone(x, c: OpenCone, D) -> bool:
    """Some y in the closure of c has max-norm distance at most D from x."""
    if c.empty:
        return False
    gens, d = c.generators, len(x)
    n = len(gens)
    A_ub, b_ub = [], []
    for i in range(d):
        row = [g[i] for g in gens]
        A_ub.append(row)
        b_ub.append(Fraction(x[i]) + Fraction(D))
        A_ub.append([-a for a in row])
        b_ub.append(Fraction(D) - Fraction(x[i]))
    return lp.feasible(A_ub=A_ub, b_ub=b_ub, nvars=n).status == lp.OPTIMAL


def cones_intersect(c1: OpenCone, c2: OpenCone) -> bool:
    """Do the two open cones share a point (exact LP)."""
    if c1.empty or c2.empty:
        return False
    g1, g2 = c1.generators, c2.generators
    n1, n2 = len(g1), len(g2)
    nv = n1 + n2 + 1
    A_eq = [[g[i] for g in g1] + [-g[i] for g in g2] + [0] for i in range(c1.dim)]
    A_ub = [[-int(j == i) for j in range(nv - 1)] + [1] for i in range(nv - 1)]
    A_ub.append([0] * (nv - 1) + [1])
    res = lp.linprog([0] * (nv - 1) + [1], A_eq, [0] * c1.dim, A_ub, [0] * (nv - 1) + [1])
    return res.status == lp.OPTIMAL and res.value > 0


def _plane_distance_sup(a, c1: OpenCone, c2: OpenCone, D):
    """sup of |<a,x>|/|a|_1 over x within max-distance D of both closed cones."""
    g1, g2, d = c1.generators, c2.generators, c1.dim
    n1, n2 = len(g1), len(g2)
    # variables: r (n1), s (n2), x (d, free)
    nv = n1 + n2 + d
    free = range(n1 + n2, nv)
    A_ub, b_ub = [], []
    for gens, off in ((g1, 0), (g2, n1)):
        for i in range(d):
            row = [0] * nv
            for j, g in enumerate(gens):
                row[off + j] = g[i]
            row[n1 + n2 + i] = -1
            A_ub.append(row)
            b_ub.append(D)
            A_ub.append([-v for v in row])
            b_ub.append(D)
    best = Fraction(0)
    for sign in (1, -1):
        obj = [0] * (n1 + n2) + [sign * ai for ai in a]
        res = lp.linprog(obj, A_ub=A_ub, b_ub=b_ub, free=free)
        if res.status == lp.UNBOUNDED:
            return None
        if res.status == lp.OPTIMAL:
            best = max(best, res.value)
    return best / sum(abs(ai) for ai in a)


def separating_facet(c1: OpenCone, c2: OpenCone, D):
    """Facet normal of c1 whose plane stays closest to points near both cones.

    Returns ``(a, sup)`` where ``sup`` is the largest max-norm distance to the
    plane among points within D of both closed cones.
    """
    if not (full_dimensional(c1) and full_dimensional(c2)):
        raise NotFullDim("both cones must be 3-dimensional")
    if cones_intersect(c1, c2):
        raise NotDisjoint("cones share a point")
    best = None
    for a in facet_normals(c1):
        s = _plane_distance_sup(a, c1, c2, Fraction(D))
        if s is None:
            continue
        # prefer planes with c2 on the far side, then the tightest sup
        side = all(dot(a, g) <= 0 for g in c2.generators)
        key = (s, not side, a)
        if best is None or key < best[0]:
            best = (key, a, s)
    if best is None:
        raise GeometryError("no facet plane with bounded distance")
    return best[1], best[2]
