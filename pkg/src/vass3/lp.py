"""Exact rational linear programming (two-phase tableau simplex, Bland's rule)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass
class LPResult:
    status: str
    x: list = None
    value: Fraction = None


def _pivot(T, basis, r, c):
    pr = T[r]
    pv = pr[c]
    if pv != 1:
        pr = [a / pv for a in pr]
        T[r] = pr
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, pr)]
    basis[r] = c


def _run(T, basis, obj, allowed):
    """Maximize; ``obj`` is the reduced-cost row index (last row). Bland's rule."""
    m = len(basis)
    while True:
        z = T[obj]
        enter = next((j for j in allowed if z[j] < 0), None)
        if enter is None:
            return OPTIMAL
        best, leave = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return UNBOUNDED
        _pivot(T, basis, leave, enter)


def simplex(c, A, b) -> LPResult:
    """max c.x s.t. A x = b, x >= 0, all data rational."""
    m = len(A)
    n = len(c)
    A = [[Fraction(a) for a in row] for row in A]
    b = [Fraction(v) for v in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-a for a in A[i]]
            b[i] = -b[i]
    # columns: n originals, m artificials, rhs
    T = [A[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # phase 1: maximize -(sum of artificials)
    z = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        z = [a - r for a, r in zip(z, T[i])]
    for k in range(m):
        z[n + k] = Fraction(0)
    T.append(z)
    _run(T, basis, m, range(n + m))
    if T[m][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    T = [[row[j] for j in range(n)] + [row[-1]] for row in (T[i] for i in keep)]
    basis = [basis[i] for i in keep]
    obj = [-Fraction(v) for v in c] + [Fraction(0)]
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f != 0:
            obj = [a - f * r for a, r in zip(obj, T[i])]
    T.append(obj)
    st = _run(T, basis, len(basis), range(n))
    if st == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bcol in enumerate(basis):
        x[bcol] = T[i][-1]
    return LPResult(OPTIMAL, x, sum(Fraction(ci) * xi for ci, xi in zip(c, x)))


def linprog(c, A_eq=(), b_eq=(), A_ub=(), b_ub=(), free=()) -> LPResult:
    """max c.x with equality rows, ``<=`` rows, x >= 0 except indices in ``free``."""
    n = len(c)
    free = sorted(set(free))
    cols = list(range(n)) + [("neg", j) for j in free]
    nu = len(A_ub)

    def expand(row):
        return list(row) + [-row[j] for j in free]

    A = [expand(r) + [0] * nu for r in A_eq]
    for i, r in enumerate(A_ub):
        A.append(expand(r) + [int(i == k) for k in range(nu)])
    b = list(b_eq) + list(b_ub)
    cc = expand(c) + [0] * nu
    if not A:
        A, b = [[0] * len(cc)], [0]
    res = simplex(cc, A, b)
    if res.status != OPTIMAL:
        return res
    x = res.x[:n]
    for k, j in enumerate(free):
        x[j] -= res.x[n + k]
    return LPResult(OPTIMAL, x, res.value)


def feasible(A_eq=(), b_eq=(), A_ub=(), b_ub=(), free=(), nvars=None) -> LPResult:
    n = nvars if nvars is not None else len((list(A_eq) + list(A_ub))[0])
    return linprog([0] * n, A_eq, b_eq, A_ub, b_ub, free)


def integer_minimize(c, A_eq, b_eq, sum_cap, node_cap=50_000, incumbent=None):
    """min c.x over nonnegative integers with A x = b and sum(x) <= sum_cap.

    Depth-first branch and bound on exact LP relaxations; ``c`` must be a
    nonnegative integer vector.  Returns ``(status, x)`` where status is
    OPTIMAL, INFEASIBLE or ``"budget"``.  Only values strictly below
    ``incumbent`` are searched for; INFEASIBLE then means none exists.
    """
    n = len(c)
    best = None
    best_val = incumbent
    stack = [((0,) * n, (None,) * n)]
    nodes = 0
    while stack:
        lo, hi = stack.pop()
        nodes += 1
        if nodes > node_cap:
            return "budget", None
        # substitute x = lo + y so that y >= 0
        shift = [bi - sum(a * l for a, l in zip(row, lo)) for row, bi in zip(A_eq, b_eq)]
        A_ub = [[1] * n]
        b_ub = [sum_cap - sum(lo)]
        if b_ub[0] < 0:
            continue
        for j in range(n):
            if hi[j] is not None:
                A_ub.append([int(k == j) for k in range(n)])
                b_ub.append(hi[j] - lo[j])
        res = linprog([-a for a in c], A_eq, shift, A_ub, b_ub)
        if res.status != OPTIMAL:
            continue
        x = [l + y for l, y in zip(lo, res.x)]
        bound = -res.value + sum(a * l for a, l in zip(c, lo))
        bound = -((-bound.numerator) // bound.denominator)
        if best_val is not None and bound >= best_val:
            continue
        j = next((k for k in range(n) if x[k].denominator != 1), None)
        if j is None:
            best, best_val = [int(a) for a in x], bound
            continue
        f = x[j].numerator // x[j].denominator
        up = lo[:j] + (f + 1,) + lo[j + 1:]
        down = hi[:j] + (f,) + hi[j + 1:]
        stack.append((up, hi))
        stack.append((lo, down))
    if best is None:
        return INFEASIBLE, None
    return OPTIMAL, best
