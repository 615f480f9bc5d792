"""Reachability in the zigzag family.

Each system alternates loops that trade one unit of one counter for two
units of the other.  Starting from q1(1,0), the vectors reachable at the
last state are exactly those with x1 + 2*x2 <= 4^k and x1 + 2*x2 = 1 mod 3.
This script enumerates the sets, checks the closed form, and shows how the
sets sit between a lower budgeted linear set and an upper semi-linear set.
"""
from vass3 import families

for k in (1, 2, 3):
    pts, complete = families.zigzag_reach(k)
    pred = families.zigzag_formula(k)
    box = range(4 ** k + 1)
    expected = {(a, b) for a in box for b in box if pred((a, b))}
    print(f"k={k}: {len(pts)} vectors, search complete={complete}, closed form holds={pts == expected}")

    approx = families.zigzag_approximation(k)
    print(f"      inside A + P*: {approx.within_upper}; certified lower budgets B: {list(approx.certified) or 'none'}")

# a picture of the k=2 set; '#' marks reachable vectors
pts, _ = families.zigzag_reach(2)
print("\nk=2, x2 upward, x1 rightward:")
for x2 in range(8, -1, -1):
    print(f"{x2:2d} " + "".join("#" if (x1, x2) in pts else "." for x1 in range(17)))
