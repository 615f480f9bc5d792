"""Nonnegative integer solutions of A x = b: minimal solutions and Hilbert bases.

Solving uses the Contejean-Devie completion on the homogenised system
``[A | -b] (x, y) = 0`` with ``y <= 1``; minimal solutions with ``y = 0`` form the
Hilbert basis and those with ``y = 1`` are the minimal inhomogeneous solutions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from functools import lru_cache

DEFAULT_NODE_CAP = 2_000_000


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class DiophantineSystem:
    A: tuple
    b: tuple

    def __post_init__(self):
        A = tuple(tuple(int(a) for a in row) for row in self.A)
        b = tuple(int(a) for a in self.b)
        if not A or not A[0]:
            raise ValueError("system needs m, n >= 1")
        if any(len(r) != len(A[0]) for r in A) or len(b) != len(A):
            raise ValueError("inconsistent dimensions")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def m(self):
        return len(self.A)

    @property
    def n(self):
        return len(self.A[0])

    @property
    def N(self):
        return max([abs(a) for r in self.A for a in r] + [abs(a) for a in self.b] + [1])

    def residual(self, x):
        return tuple(sum(a * xi for a, xi in zip(row, x)) - bi for row, bi in zip(self.A, self.b))

    def solves(self, x, homogeneous=False):
        r = self.residual(x)
        if homogeneous:
            r = tuple(ri + bi for ri, bi in zip(r, self.b))
        return all(v == 0 for v in r)


@dataclass(frozen=True)
class SolutionSetDescription:
    U: tuple
    P: tuple

    def __contains__(self, x):
        return membership_in_solution_set(self, x)


def taming_bound(n: int, N: int, m: int, constant: int = 2) -> int:
    if constant < 1:
        raise ValueError("constant must be >= 1")
    return (constant * n * N) ** m


def with_slack(A, b, inequalities=()):
    """Append rows ``row . x <= c`` as equations with one fresh slack unknown each.

    Returns the enlarged system; slack unknowns sit after the original ones.
    """
    A = [list(r) for r in A]
    b = list(b)
    k = len(inequalities)
    n = len(A[0]) if A else len(inequalities[0][0])
    A = [r + [0] * k for r in A]
    for i, (row, c) in enumerate(inequalities):
        A.append(list(row) + [1 if j == i else 0 for j in range(k)])
        b.append(c)
    assert all(len(r) == n + k for r in A)
    return DiophantineSystem(A, b)


def _leq(u, v):
    return all(a <= b for a, b in zip(u, v))


def minimal_solutions(sys: DiophantineSystem, constant: int = 2, node_cap: int = DEFAULT_NODE_CAP,
                      first_only: bool = False) -> SolutionSetDescription:
    """With ``first_only`` the search stops at the first inhomogeneous solution."""
    n, m = sys.n, sys.m
    cols = [tuple(sys.A[i][j] for i in range(m)) for j in range(n)]
    cols.append(tuple(-bi for bi in sys.b))
    width = n + 1
    # Pottier-type cap on the 1-norm of minimal solutions of the extended system
    cap = taming_bound(width, sys.N, m, constant)

    found = []
    frontier = {}
    for j in range(width):
        x = tuple(1 if i == j else 0 for i in range(width))
        frontier[x] = cols[j]
    nodes = 0
    while frontier:
        nxt = {}
        sols = [x for x, ax in frontier.items() if not any(ax)]
        # a solution found at this level can only dominate strictly larger nodes
        found.extend(sols)
        if first_only and any(x[n] == 1 for x in sols):
            break
        for x, ax in frontier.items():
            if not any(ax):
                continue
            for j in range(width):
                if j == n and x[n] >= 1:
                    continue
                if sum(a * c for a, c in zip(ax, cols[j])) >= 0:
                    continue
                y = x[:j] + (x[j] + 1,) + x[j + 1:]
                if y in nxt or sum(y) > cap:
                    continue
                if any(_leq(s, y) for s in found):
                    continue
                nodes += 1
                if nodes > node_cap:
                    raise BudgetExceeded(f"completion search exceeded {node_cap} nodes")
                nxt[y] = tuple(a + c for a, c in zip(ax, cols[j]))
        frontier = nxt
    U = sorted(x[:n] for x in found if x[n] == 1)
    P = sorted(x[:n] for x in found if x[n] == 0)
    return SolutionSetDescription(tuple(U), tuple(P))


def integer_solvable(A, b) -> bool:
    """Whether A x = b has a solution over Z (signs unrestricted).

    Column-style Hermite reduction with forward substitution: once row i is
    processed, columns left of the current pivot never change again.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    cols = [[A[i][j] for i in range(m)] for j in range(n)]
    z = []
    for i in range(m):
        r = len(z)
        while True:
            nz = [j for j in range(r, n) if cols[j][i] != 0]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][i]))
            for j in nz:
                if j != j0:
                    q = cols[j][i] // cols[j0][i]
                    cols[j] = [a - q * c for a, c in zip(cols[j], cols[j0])]
        res = b[i] - sum(cols[k][i] * z[k] for k in range(r))
        if nz:
            cols[r], cols[nz[0]] = cols[nz[0]], cols[r]
            if res % cols[r][i]:
                return False
            z.append(res // cols[r][i])
        elif res:
            return False
    return True


def membership_in_solution_set(desc: SolutionSetDescription, x) -> bool:
    x = tuple(x)
    U, P = desc.U, [p for p in desc.P if any(p)]

    @lru_cache(maxsize=None)
    def go(y, start):
        if y in U:
            return True
        for i in range(start, len(P)):
            p = P[i]
            if _leq(p, y) and go(tuple(a - b for a, b in zip(y, p)), i):
                return True
        return False

    if not U or any(a < 0 for a in x):
        return False
    return go(x, 0)


def has_solution(A, b, inequalities=(), constant: int = 2, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    n = len(A[0]) if A else len(inequalities[0][0])
    if not A:
        A, b = [[0] * n], [0]
    sys = with_slack(A, b, inequalities) if inequalities else DiophantineSystem(A, b)
    return bool(minimal_solutions(sys, constant, node_cap, first_only=True).U)


def solve(A, b, inequalities=(), constant: int = 2, node_cap: int = DEFAULT_NODE_CAP):
    """Solve with optional ``<=`` rows; slack coordinates are projected away."""
    n = len(A[0]) if A else len(inequalities[0][0])
    if not A:
        A, b = [[0] * n], [0]
    sys = with_slack(A, b, inequalities) if inequalities else DiophantineSystem(A, b)
    d = minimal_solutions(sys, constant, node_cap)
    return SolutionSetDescription(
        tuple(sorted({u[:n] for u in d.U})), tuple(sorted({p[:n] for p in d.P if any(p[:n])}))
    )


# ---------------------------------------------------------------- few unknowns, many inequalities


def _rref(rows, n):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(a) for a in r] for r in rows]
    piv, r = [], 0
    for c in range(n):
        k = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        lead = M[r][c]
        M[r] = [a / lead for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], piv


def _unique_solution(rows, rhs, n):
    """The single solution of rows.x = rhs, or None if inconsistent or underdetermined."""
    M, piv = _rref([list(r) + [c] for r, c in zip(rows, rhs)], n + 1)
    if n in piv or len(piv) < n:
        return None
    return [M[i][n] for i in range(n)]


def _null_line(rows, n):
    """A spanning vector when the null space of ``rows`` is one-dimensional."""
    M, piv = _rref(rows, n) if rows else ([], [])
    free = [c for c in range(n) if c not in piv]
    if len(free) != 1:
        return None
    f = free[0]
    x = [Fraction(0)] * n
    x[f] = Fraction(1)
    for i, c in enumerate(piv):
        x[c] = -M[i][f]
    den = 1
    for a in x:
        den = den * a.denominator // gcd(den, a.denominator)
    ints = [int(a * den) for a in x]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return [a // g for a in ints]


def polyhedral_solutions(ge_rows, ge_rhs, eq_rows=(), eq_rhs=(), n: int = None,
                         box_limit: int = 2_000_000) -> SolutionSetDescription:
    """Nonnegative integer solutions of ``ge_rows . x >= ge_rhs`` and ``eq_rows . x == eq_rhs``.

    Suited to few unknowns.  The cone of the homogeneous system is generated
    by its extreme rays; every solution is an integer point of the bounded box
    spanned by the vertices and the rays plus a nonnegative integer
    combination of rays.  So the box points of the polyhedron, reduced by
    irreducible cone points, form U, and the irreducible cone points form P.
    """
    if n is None:
        n = len((list(ge_rows) + list(eq_rows))[0])
    G = [list(r) for r in ge_rows] + [[int(i == j) for j in range(n)] for i in range(n)]
    g = list(ge_rhs) + [0] * n
    E, f = [list(r) for r in eq_rows], list(eq_rhs)

    def ok(x, hom=False):
        return (all(sum(a * b for a, b in zip(r, x)) >= (0 if hom else c) for r, c in zip(G, g)) and
                all(sum(a * b for a, b in zip(r, x)) == (0 if hom else c) for r, c in zip(E, f)))

    rE = len(_rref(E, n)[1]) if E else 0
    verts = []
    for S in combinations(range(len(G)), n - rE):
        x = _unique_solution(E + [G[i] for i in S], f + [g[i] for i in S], n)
        if x is not None and ok(x):
            verts.append(x)
    if not verts:
        return SolutionSetDescription((), ())
    rays = set()
    for S in combinations(range(len(G)), max(n - 1 - rE, 0)):
        d = _null_line(E + [G[i] for i in S], n)
        if d is None:
            continue
        for cand in (d, [-a for a in d]):
            if any(cand) and ok(cand, hom=True):
                rays.add(tuple(cand))
    ray_sum = [sum(r[j] for r in rays) for j in range(n)]
    size = 1
    for a in ray_sum:
        size *= a + 1
    if size > box_limit:
        raise BudgetExceeded("ray zonotope box too large")
    cone = [x for x in product(*(range(a + 1) for a in ray_sum)) if any(x) and ok(x, hom=True)]
    cone.sort(key=sum)
    P = []
    for x in cone:
        if not any(_leq(p, x) and ok(tuple(a - b for a, b in zip(x, p)), hom=True) for p in P):
            P.append(x)
    hi = [max(math.ceil(v[j]) for v in verts) + ray_sum[j] for j in range(n)]
    size = 1
    for a in hi:
        size *= a + 1
    if size > box_limit:
        raise BudgetExceeded("solution box too large")
    U = []
    for x in product(*(range(a + 1) for a in hi)):
        if not ok(x):
            continue
        if any(_leq(p, x) and ok(tuple(a - b for a, b in zip(x, p))) for p in P):
            continue
        U.append(x)
    return SolutionSetDescription(tuple(sorted(U)), tuple(sorted(P)))
