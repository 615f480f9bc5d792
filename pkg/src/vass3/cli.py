"""Command-line front end: ``vass3 <subcommand> FILE [flags]``.

Exit status is 0 for a conclusive answer, 2 for an inconclusive one and 1
for usage, parse or precondition errors.  JSON output is deterministic.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import random
import sys
from fractions import Fraction

from . import families, geometry, oracle, reach2, reach3, semilinear, textformat
from .diophantine import BudgetExceeded
from .semilinear import INF, ArithmeticSet, LinearSet
from .vass import Configuration, NotSequential, VassError, geometric_dimension, replay, sequential_decompose

SCHEMA = 1
EXACT_JSON_INT = 2 ** 53
SUBCOMMANDS = ("reach", "cover", "zreach", "classify", "decompose", "cone", "trim", "split",
               "reduce", "approx", "oracle", "bounds")


class UsageError(Exception):
    pass


class Inconclusive(Exception):
    """Raised by a handler whose result is already assembled but not conclusive."""

    def __init__(self, payload):
        super().__init__(payload.get("reason", "inconclusive"))
        self.payload = payload


# ---------------------------------------------------------------- JSON helpers


def _plain(x):
    if x is INF:
        return "inf"
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= EXACT_JSON_INT else x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        return sorted(items, key=json.dumps) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "to_json"):
        return _plain(x.to_json())
    return str(x)


def _config(c):
    return None if c is None else {"state": c.state, "vector": _plain(c.vector)}


def _vec(text, what="vector"):
    try:
        return tuple(int(a) for a in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise UsageError(f"bad {what}: {text!r}") from None


# ---------------------------------------------------------------- inputs


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _generated(spec, seed):
    """``gen:zigzag:K`` or ``gen:seq:K``; the latter is seeded by ``--seed``."""
    parts = spec.split(":")
    try:
        kind, k = parts[1], int(parts[2])
    except (IndexError, ValueError):
        raise UsageError(f"bad generator spec {spec!r}") from None
    if kind == "zigzag":
        v = families.zigzag(k)
        return textformat.VassFile(v, families.ZIGZAG_SOURCE, Configuration(v.states[-1], (4 ** k, 0)))
    if kind == "seq":
        rng = random.Random(seed)
        v = families.random_sequential(rng, k=k, dim=3, max_norm=3)
        s = Configuration(v.states[0], tuple(rng.randint(0, 3) for _ in range(3)))
        t = Configuration(v.states[-1], tuple(rng.randint(0, 5) for _ in range(3)))
        return textformat.VassFile(v, s, t)
    raise UsageError(f"unknown generator {kind!r}")


def _load(args):
    if args.file is None:
        raise UsageError("an input file is required ('-' reads stdin)")
    if args.file.startswith("gen:"):
        return _generated(args.file, args.seed)
    try:
        return textformat.parse(_read(args.file))
    except OSError as e:
        raise UsageError(str(e)) from None


def _endpoints(f, need_target=True):
    if f.init is None:
        raise UsageError("the input needs an 'init' line")
    if need_target and f.target is None:
        raise UsageError("the input needs a 'target' line")
    return f.init, f.target


def _budget(args):
    return oracle.SearchBudget(args.cap_counter, args.cap_length, args.cap_nodes)


def _budget_json(args):
    return {"counter": args.cap_counter, "length": args.cap_length, "nodes": args.cap_nodes}


def _constants(args):
    if not args.constants:
        return reach3.Constants()
    try:
        return reach3.Constants.from_json(_read(args.constants))
    except (ValueError, TypeError) as e:
        raise UsageError(f"bad constants file: {e}") from None


def _checked_witness(v, path, target):
    # every printed witness is replayed first
    if replay(path, v) != target:
        raise RuntimeError("internal error: witness does not replay")
    return list(path.firings)


# ---------------------------------------------------------------- subcommands


def cmd_reach(args):
    f = _load(args)
    s, t = _endpoints(f)
    v = f.vass
    out = {"budgets": _budget_json(args)}
    res = oracle.bfs_reach(v, s, t, _budget(args))
    if isinstance(res, oracle.Reachable):
        out.update(verdict="reachable", engine="oracle", witness=_checked_witness(v, res.path, t),
                   length=res.length)
        return out
    if oracle.conclusive(res):
        out.update(verdict="unreachable", engine="oracle")
        return out
    try:
        sequential_decompose(v)
    except NotSequential:
        out.update(verdict="inconclusive", engine="oracle", reason=res.reason)
        raise Inconclusive(out)
    trace = reach3.DecisionTrace()
    policy = reach3.Policy(budget=oracle.SearchBudget(args.cap_counter, 10**6, args.cap_nodes),
                           max_counter_cap=8 * args.cap_counter, constants=_constants(args))
    d = reach3.decide_reach3(v, s, t, policy, trace)
    out["engine"] = "solver"
    out["trace"] = trace.steps
    if trace.classification is not None:
        out["classification"] = trace.classification.to_json()
    if isinstance(d, reach3.Reachable):
        out.update(verdict="reachable", route=d.route, witness=_checked_witness(v, d.path, t), length=d.length)
    elif isinstance(d, reach3.Unreachable):
        out.update(verdict="unreachable", route=d.route)
    else:
        out.update(verdict="inconclusive", reason=d.reason)
        raise Inconclusive(out)
    return out


def cmd_cover(args):
    f = _load(args)
    s, t = _endpoints(f)
    try:
        ok, path = oracle.coverable(f.vass, s, t)
    except BudgetExceeded as e:
        raise Inconclusive({"verdict": "inconclusive", "reason": str(e)})
    out = {"verdict": "coverable" if ok else "not coverable"}
    if ok:
        out["witness"] = list(path.firings)
        out["length"] = len(path)
        out["reached"] = _config(replay(path, f.vass))
    return out


def cmd_zreach(args):
    f = _load(args)
    s, t = _endpoints(f)
    try:
        z = oracle.z_reach_exact(f.vass, s.as_z(), t.as_z())
    except BudgetExceeded as e:
        raise Inconclusive({"verdict": "inconclusive", "reason": str(e)})
    out = {"verdict": "reachable" if z.reachable else "unreachable", "supports_tried": z.supports_tried}
    if z.reachable:
        out.update(witness=list(z.walk), length=z.length, parikh=dict(sorted(z.parikh.items())))
    return out


def cmd_classify(args):
    f = _load(args)
    s, t = _endpoints(f)
    return reach3.classify(f.vass, s, t).to_json()


def cmd_decompose(args):
    f = _load(args)
    d = sequential_decompose(f.vass)
    comps = []
    for c in d.components:
        comps.append({"states": list(c.states), "transitions": [tr.tid for tr in c.transitions],
                      "geometric_dimension": geometric_dimension(c)})
    return {"k": d.k, "components": comps, "bridges": [b.tid for b in d.bridges]}


def cmd_cone(args):
    f = _load(args)
    d = sequential_decompose(f.vass)
    cones = geometry.component_cones(d)
    seq = geometry.sequential_cone(cones, f.vass.dim)
    out = {
        "components": [list(c.generators) for c in cones],
        "sequential": list(seq.generators),
        "full_dimensional": geometry.full_dimensional(seq) if f.vass.dim == 3 else None,
        "wide_forward": geometry.contains_orthant(seq),
        "wide": geometry.is_wide(d),
    }
    if args.point:
        x = tuple(Fraction(a) for a in args.point.split(","))
        out["point"] = [str(a) for a in x]
        out["member"] = geometry.cone_member(seq, x)
    return out


def _single_file(system, source, target):
    """Derived systems carry names like ``q@-1``; print them under file-safe names."""
    f = textformat.printable(textformat.VassFile(system, source, target))
    return {"source": _config(f.init), "target": _config(f.target), "states": len(f.vass.states),
            "system": textformat.serialize(f)}


def cmd_trim(args):
    f = _load(args)
    s, t = _endpoints(f)
    a = _vec(args.a, "normal") if args.a else reach3.inner_normal(f.vass)
    B = args.B if args.B is not None else reach3.inner_product_bound(f.vass, a, s, t)
    tr = reach3.trim_aB(f.vass, a, B, s, t)
    return {"a": list(a), "B": B, **_single_file(tr.vass, tr.source, tr.target)}


def cmd_split(args):
    f = _load(args)
    s, t = _endpoints(f)
    B = args.B if args.B is not None else reach3.case3_bound(f.vass, s)
    if B > args.max_fold:
        raise UsageError(f"fold bound {B} exceeds --max-fold {args.max_fold}; pass --B")
    parts = reach3.case3_split(f.vass, s, t, B)
    return {"B": B, "systems": [{"note": p.note, **_single_file(p.vass, p.source, p.target)} for p in parts]}


def cmd_reduce(args):
    f = _load(args)
    s, _ = _endpoints(f, need_target=False)
    if args.base:
        sets = [LinearSet(_vec(args.base), [_vec(p) for p in args.period or ()])]
        complete = True
    else:
        pts, complete, _ = reach3.entry_points(f.vass, s, _budget(args))
        sets = reach3.greedy_linear_sets([c.vector for c in pts], args.cap_counter)
    out = {"complete": complete, "systems": []}
    for L in sets:
        rv, src = reach3.reduce_component(f.vass, L, s, f.target)
        out["systems"].append({"linear_set": L.to_json(), **_single_file(rv, src, f.target)})
    if not complete:
        out["reason"] = "entry set not exhausted within the caps"
        raise Inconclusive(out)
    return out


def _arith(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--S takes a,r,T with T an integer or 'inf'")
    return ArithmeticSet(int(parts[0]), int(parts[1]), semilinear.cap_from_json(parts[2]))


def cmd_approx(args):
    if args.zigzag is not None:
        z = families.zigzag_approximation(args.zigzag)
        return {"k": z.k, "reach_size": len(z.reach), "within_upper": z.within_upper,
                "certified_B": list(z.certified), "A": list(families.ZIGZAG_A), "P": list(families.ZIGZAG_P)}
    if args.file is None:
        raise UsageError("approx needs an SLPS file or --zigzag K")
    try:
        blocks = textformat.parse_slps(_read(args.file))
    except OSError as e:
        raise UsageError(str(e)) from None
    slps = reach2.Slps.from_blocks(blocks)
    if args.u1 is None or args.v1 is None or args.S is None:
        raise UsageError("one-turn transform needs --u1, --v1 and --S")
    try:
        lam = reach2.OneTurnSlps.from_slps(slps)
    except ValueError as e:
        raise UsageError(str(e)) from None
    S1 = _arith(args.S)
    res = reach2.one_turn_transform(lam, args.u1, args.v1, S1)
    return {"u1": args.u1, "v1": args.v1, "S1": S1.to_json(), "result": [r.to_json() for r in res]}


def cmd_oracle(args):
    f = _load(args)
    s, t = _endpoints(f, need_target=args.mode != "set")
    b = _budget(args)
    if args.mode == "lengths":
        counts = oracle.path_length_counts(f.vass, s, t, args.cap_length)
        return {"mode": "lengths", "counts": {str(k): n for k, n in sorted(counts.items())}}
    if args.mode == "set":
        cfgs, verdict = oracle.reach_set(f.vass, s, b)
        return {"mode": "set", "complete": oracle.conclusive(verdict) or isinstance(verdict, oracle.ExhaustedAllStates),
                "configurations": [_config(c) for c in sorted(cfgs, key=lambda c: (c.state, c.vector))]}
    if args.mode == "z":
        s, t = s.as_z(), t.as_z()
    if args.mode == "cover":
        ok, path = oracle.coverable(f.vass, s, t, b)
        if ok is True:
            return {"mode": "cover", "verdict": "coverable", "witness": list(path.firings), "length": len(path)}
        if ok is False:
            return {"mode": "cover", "verdict": "not coverable"}
        raise Inconclusive({"mode": "cover", "verdict": "inconclusive", "reason": ok.reason})
    res = oracle.bfs_reach(f.vass, s, t, b)
    out = {"mode": args.mode, "budgets": _budget_json(args), "explored": res.explored}
    if isinstance(res, oracle.Reachable):
        out.update(verdict="reachable", witness=_checked_witness(f.vass, res.path, t), length=res.length)
    elif oracle.conclusive(res):
        out["verdict"] = "unreachable"
    else:
        reason = res.reason if isinstance(res, oracle.NotWithinBudget) else "counter cap cut the search"
        out.update(verdict="inconclusive", reason=reason)
        raise Inconclusive(out)
    return out


def cmd_bounds(args):
    out = {}
    cons = _constants(args)
    if args.k is not None or args.M is not None:
        if args.k is None or args.M is None:
            raise UsageError("bounds needs both --k and --M")
        try:
            h = reach3.bound_h(args.M, args.k, cons)
        except ValueError as e:
            raise UsageError(str(e)) from None
        fns = reach3.BoundFunctions(cons.c, cons.H_degree, cons.h1_degree, cons.digit_cap)
        entry = {"k": args.k, "M": args.M, "C": fns.C, "exponent": fns.ceiling_exponent(args.k)}
        if isinstance(h, reach3.SymbolicOnly):
            entry["symbolic"] = str(h)
        else:
            entry["digits"] = len(str(h))
            entry["value"] = str(h)
        out["h"] = entry
    if args.rackoff:
        n, N, U, d = _vec(args.rackoff, "n,N,U,d")
        try:
            rb = oracle.rackoff_budget(n, N, U, d)
        except ValueError as e:
            raise UsageError(str(e)) from None
        out["rackoff"] = {"n": n, "N": N, "U": U, "d": d, "H": list(rb.H), "L": list(rb.L)}
    if not out:
        raise UsageError("bounds needs --k/--M or --rackoff n,N,U,d")
    return out


HANDLERS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}


# ---------------------------------------------------------------- parser and output


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-counter", type=int, default=64)
    common.add_argument("--cap-length", type=int, default=256)
    common.add_argument("--cap-nodes", type=int, default=10**6)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--constants", metavar="FILE")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = argparse.ArgumentParser(prog="vass3", description="Reachability tools for low-dimensional VASS.")
    sub = p.add_subparsers(dest="command", required=True)
    parsers = {}
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name != "bounds":
            sp.add_argument("file", nargs="?" if name == "approx" else None,
                            help="input file, '-' for stdin, or gen:zigzag:K / gen:seq:K")
        parsers[name] = sp
    parsers["cone"].add_argument("--point", help="comma-separated rational point to test")
    for name in ("trim", "split"):
        parsers[name].add_argument("--B", type=int)
    parsers["trim"].add_argument("--a", help="normal vector, e.g. 1,0,-1")
    parsers["split"].add_argument("--max-fold", type=int, default=512)
    parsers["reduce"].add_argument("--base")
    parsers["reduce"].add_argument("--period", action="append")
    ap = parsers["approx"]
    ap.add_argument("--zigzag", type=int, metavar="K")
    ap.add_argument("--u1", type=int)
    ap.add_argument("--v1", type=int)
    ap.add_argument("--S", help="arithmetic set a,r,T")
    parsers["oracle"].add_argument("--mode", choices=("reach", "z", "cover", "set", "lengths"), default="reach")
    bp = parsers["bounds"]
    bp.add_argument("--k", type=int)
    bp.add_argument("--M", type=int)
    bp.add_argument("--rackoff", metavar="n,N,U,d")
    return p


def _text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{k}:")
                lines.extend(pad + "  " + ln for ln in v.rstrip("\n").split("\n"))
            elif isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                            (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(pad + _inline(obj))
    return lines


def _inline(v):
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def emit(payload, fmt, stream):
    payload = _plain(payload)
    if fmt == "json":
        stream.write(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2) + "\n")
    else:
        stream.write("\n".join(_text(payload)) + "\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    try:
        payload = HANDLERS[args.command](args)
        code = 0
    except Inconclusive as e:
        payload, code = e.payload, 2
    except (UsageError, textformat.ParseError, textformat.SemanticError, NotSequential, VassError,
            reach3.PreconditionViolated, reach2.NotGeom2, reach2.InvalidDecomposition) as e:
        stderr.write(f"vass3 {args.command}: {e}\n")
        return 1
    emit(payload, args.format, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
