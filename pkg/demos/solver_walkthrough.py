"""Deciding reachability in small sequential 3-VASS.

Loads the example systems in demos/data, classifies them, and compares the
solver's verdict with plain breadth-first search.  Every witness is replayed.
"""
import pathlib

from vass3 import oracle, reach3, textformat
from vass3.vass import replay

DATA = pathlib.Path(__file__).resolve().parent / "data"

for name in ("wide1.vass", "halfspace.vass"):
    f = textformat.parse((DATA / name).read_text())
    v, s, t = f.vass, f.init, f.target
    cls = reach3.classify(v, s, t)
    trace = reach3.DecisionTrace()
    verdict = reach3.decide_reach3(v, s, t, trace=trace)
    bfs = oracle.bfs_reach(v, s, t)
    print(f"{name}: {s.state}{s.vector} -> {t.state}{t.vector}")
    print(f"  classification: {cls.verdict} (wide={cls.wide}, diagonal={cls.diagonal})")
    print(f"  solver: {type(verdict).__name__} via {getattr(verdict, 'route', '') or '-'}; steps {trace.steps}")
    if isinstance(verdict, reach3.Reachable):
        print(f"  witness of length {verdict.length} replays: {replay(verdict.path, v) == t}")
    print(f"  breadth-first search: {type(bfs).__name__}"
          + (f", shortest length {bfs.length}" if isinstance(bfs, oracle.Reachable) else ""))

# the trim used for systems whose cycles keep to one side of a plane
f = textformat.parse((DATA / "halfspace.vass").read_text())
a = reach3.inner_normal(f.vass)
B = reach3.inner_product_bound(f.vass, a, f.init, f.target)
tr = reach3.trim_aB(f.vass, a, B, f.init, f.target)
same = oracle.path_length_counts(f.vass, f.init, f.target, 10) == \
    oracle.path_length_counts(tr.vass, tr.source, tr.target, 10)
print(f"\nhalfspace.vass trimmed along a={a} with B={B}: {len(tr.vass.states)} states, "
      f"path-length counts up to 10 unchanged: {same}")
