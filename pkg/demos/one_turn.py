"""The one-turn transformer on the running example.

The first loop adds (2,-1), the second adds (-3,3).  Entering on the line
x1 = 0 with x2 in S1 and leaving on x1 = 1, which second coordinates come
out?  The transformer answers with arithmetic sets; brute force over the
loop exponents confirms the answer.
"""
from vass3.reach2 import OneTurnSlps, one_turn_brute, one_turn_transform
from vass3.semilinear import INF, ArithmeticSet

lam = OneTurnSlps((), (2, -1), (), (-3, 3))


def show(S1):
    out = one_turn_transform(lam, 0, 1, S1)
    parts = ", ".join(f"{s.a}+{s.r}*[0..{s.T}]" if s.r else str(s.a) for s in out) or "empty"
    return parts


for S1 in (ArithmeticSet(6), ArithmeticSet(9), ArithmeticSet(6, 3, 2)):
    print(f"S1 = {S1.elements()}: R(S1) = {show(S1)}; brute force {sorted(one_turn_brute(lam, 0, 1, S1))}")

# an infinite input set still yields a finite description
print(f"S1 = 6 + 3*N: R(S1) = {show(ArithmeticSet(6, 3, INF))}")
