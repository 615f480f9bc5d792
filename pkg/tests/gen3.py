"""Random 1-component 3-VASS instances for the length-equivalence checks."""
from vass3 import families, reach3
from vass3.reach3 import PreconditionViolated
from vass3.vass import Configuration, VassError, step


def walk_target(rng, v, s, steps):
    """Endpoint of a random run of at most ``steps`` firings."""
    cur = s
    for _ in range(rng.randint(0, steps)):
        moves = []
        for t in v.transitions:
            try:
                moves.append(step(cur, t.tid, v))
            except VassError:
                pass
        if not moves:
            break
        cur = rng.choice(moves)
    return cur


def _draw(rng):
    while True:
        v = families.random_sequential(rng, k=1, dim=3, max_states=4, max_loops=3, max_norm=3)
        s = Configuration(v.states[0], tuple(rng.randint(0, 3) for _ in range(3)))
        t = walk_target(rng, v, s, 8) if rng.random() < 0.8 else \
            Configuration(rng.choice(v.states), tuple(rng.randint(0, 4) for _ in range(3)))
        if t != s:
            return v, s, t, reach3.classify(v, s, t)


def nonwide_instances(rng, count):
    """(v, s, t, a, B) with every cycle weakly on the positive side of a."""
    out = []
    while len(out) < count:
        v, s, t, cls = _draw(rng)
        if cls.wide:
            continue
        try:
            a = reach3.inner_normal(v)
        except PreconditionViolated:
            continue
        out.append((v, s, t, a, reach3.inner_product_bound(v, a, s, t)))
    return out


def nondiagonal_instances(rng, count):
    out = []
    while len(out) < count:
        v, s, t, cls = _draw(rng)
        if not cls.forward_diagonal:
            out.append((v, s, t))
    return out
