"""Random instances comparing exact Z-reachability with Z-mode search."""
from vass3 import families, oracle
from vass3.vass import Configuration, WitnessPath, replay

Z_BUDGET = oracle.SearchBudget(counter_cap=30, length_cap=30, node_cap=20_000)


def z_instance(rng):
    v = families.random_vass(rng, dim=rng.randint(1, 3), n_states=rng.randint(1, 3), n_trans=rng.randint(2, 5),
                             max_norm=3, strongly_connected=rng.random() < 0.5)
    s = Configuration(v.states[0], tuple(rng.randint(-3, 3) for _ in range(v.dim)), True)
    t = Configuration(rng.choice(v.states), tuple(rng.randint(-4, 4) for _ in range(v.dim)), True)
    return v, s, t


def compare(v, s, t):
    """None when the search is inconclusive, else whether the two engines agree."""
    z = oracle.z_reach_exact(v, s, t)
    if z.reachable and replay(WitnessPath(s, z.walk), v) != t:
        return False
    b = oracle.bfs_reach(v, s, t, Z_BUDGET)
    if isinstance(b, oracle.Reachable):
        return z.reachable and z.length <= b.length
    if oracle.conclusive(b):
        return not z.reachable
    return None
