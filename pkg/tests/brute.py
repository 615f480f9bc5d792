"""Exhaustive references shared by the unit and acceptance tests."""
from itertools import product


def _leq(u, v):
    return all(a <= b for a, b in zip(u, v))


def minimal_in_box(A, b, K):
    """Minimal solutions of A x = b (and nonzero ones of A x = 0) with x in [0, K]^n.

    Every y <= x stays inside the box, so minimality here is minimality in N^n.
    """
    n = len(A[0])
    hom, inh = [], []
    for x in product(range(K + 1), repeat=n):
        ax = [sum(a * xi for a, xi in zip(row, x)) for row in A]
        if all(v == 0 for v in ax) and any(x):
            hom.append(x)
        if all(v == bi for v, bi in zip(ax, b)):
            inh.append(x)

    def minimal(xs):
        # a dominated vector is dominated by a minimal one of smaller sum
        keep = []
        for x in sorted(xs, key=sum):
            if not any(_leq(y, x) for y in keep):
                keep.append(x)
        return sorted(keep)

    return minimal(inh), minimal(hom)
