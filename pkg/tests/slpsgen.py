"""Random SLPS instances for the transformer cross-checks."""
from vass3.reach2 import OneTurnSlps, Slps
from vass3.semilinear import ArithmeticSet


def _segment(rng, coeff):
    return tuple((rng.randint(-coeff, coeff), rng.randint(-coeff, coeff)) for _ in range(rng.randint(0, 2)))


def one_turn(rng, coeff=5, B=6):
    lam = OneTurnSlps(_segment(rng, coeff), (rng.randint(1, coeff), -rng.randint(1, coeff)),
                      _segment(rng, coeff), (-rng.randint(1, coeff), rng.randint(1, coeff)))
    u1, v1 = rng.randint(0, B), rng.randint(0, B)
    r = rng.randint(0, 4)
    S1 = ArithmeticSet(rng.randint(0, 12), r, rng.randint(0, 2))
    return lam, u1, v1, S1


def short_slps(rng, loops=2, coeff=3):
    betas = tuple((rng.randint(-coeff, coeff), rng.randint(-coeff, coeff)) for _ in range(loops))
    alphas = tuple(_segment(rng, coeff) for _ in range(loops + 1))
    return Slps(alphas, betas)


def expand(sets, cap):
    out = set()
    for s in sets:
        out.update(s.elements(cap))
    return out
