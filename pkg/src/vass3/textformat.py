"""Line-based text formats for VASS instances and simple linear path schemes."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .vass import Configuration, Transition, Vass, VassError

IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
VEC = r"\(\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\)"
_RE = {
    "dim": re.compile(r"dim\s+(\d+)$"),
    "state": re.compile(rf"state\s+({IDENT})$"),
    "trans": re.compile(rf"trans\s+({IDENT})\s*:\s*({IDENT})\s*({VEC})\s*({IDENT})$"),
    "init": re.compile(rf"init\s+({IDENT})\s*({VEC})$"),
    "target": re.compile(rf"target\s+({IDENT})\s*({VEC})$"),
}


class ParseError(Exception):
    def __init__(self, line, col, message):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line, self.col, self.message = line, col, message


class SemanticError(Exception):
    pass


@dataclass
class VassFile:
    vass: Vass
    init: Configuration = None
    target: Configuration = None


def parse_vec(text):
    inner = text.strip()[1:-1].strip()
    return tuple(int(x) for x in inner.split(",")) if inner else ()


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if stripped:
            yield no, len(line) - len(line.lstrip()) + 1, stripped


def parse(data) -> VassFile:
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    dim = None
    states, trans = [], []
    init = target = None
    for no, col, line in _lines(text):
        kw = line.split(None, 1)[0]
        if dim is None and kw != "dim":
            raise ParseError(no, col, "the first line must be 'dim <d>'")
        rx = _RE.get(kw)
        if rx is None:
            raise ParseError(no, col, f"unknown keyword {kw!r}")
        m = rx.match(line)
        if m is None:
            raise ParseError(no, col, f"malformed {kw} line")
        if kw == "dim":
            if dim is not None:
                raise ParseError(no, col, "duplicate dim line")
            dim = int(m.group(1))
            if dim < 1:
                raise SemanticError("dimension must be positive")
        elif kw == "state":
            states.append(m.group(1))
        elif kw == "trans":
            eff = parse_vec(m.group(3))
            if len(eff) != dim:
                raise SemanticError(f"line {no}: effect of {m.group(1)} has dimension {len(eff)}, expected {dim}")
            trans.append(Transition(m.group(1), m.group(2), eff, m.group(5)))
        else:
            vec = parse_vec(m.group(2))
            if len(vec) != dim:
                raise SemanticError(f"line {no}: {kw} vector has dimension {len(vec)}, expected {dim}")
            if m.group(1) not in states:
                raise SemanticError(f"line {no}: unknown state {m.group(1)}")
            if any(a < 0 for a in vec):
                raise SemanticError(f"line {no}: {kw} vector must be nonnegative")
            c = Configuration(m.group(1), vec)
            if kw == "init":
                init = c
            else:
                target = c
    if dim is None:
        raise ParseError(1, 1, "empty input")
    try:
        v = Vass(dim, states, trans)
    except VassError as e:
        raise SemanticError(str(e)) from None
    return VassFile(v, init, target)


def _vec(v):
    return "(" + ",".join(str(a) for a in v) + ")"


def serialize(f) -> str:
    if isinstance(f, Vass):
        f = VassFile(f)
    v = f.vass
    out = [f"dim {v.dim}"]
    out += [f"state {q}" for q in v.states]
    out += [f"trans {t.tid}: {t.src} {_vec(t.effect)} {t.dst}" for t in v.transitions]
    if f.init is not None:
        out.append(f"init {f.init.state} {_vec(f.init.vector)}")
    if f.target is not None:
        out.append(f"target {f.target.state} {_vec(f.target.vector)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- SLPS syntax


def parse_slps(data):
    """Return the blocks of ``slps dim 2`` text as ('seg', [effects]) / ('loop', effect)."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    blocks = []
    header = False
    for no, col, line in _lines(text):
        if not header:
            if not re.fullmatch(r"slps\s+dim\s+2", line):
                raise ParseError(no, col, "expected 'slps dim 2'")
            header = True
            continue
        kw, _, rest = line.partition(" ")
        vecs = [parse_vec(m.group(0)) for m in re.finditer(VEC, rest)]
        if re.sub(VEC, "", rest).strip():
            raise ParseError(no, col, "stray tokens")
        if any(len(x) != 2 for x in vecs):
            raise SemanticError(f"line {no}: SLPS vectors are 2-dimensional")
        if kw == "seg":
            blocks.append(("seg", vecs))
        elif kw == "loop":
            if len(vecs) != 1:
                raise ParseError(no, col, "a loop carries exactly one vector")
            blocks.append(("loop", vecs[0]))
        else:
            raise ParseError(no, col, f"unknown keyword {kw!r}")
    if not header:
        raise ParseError(1, 1, "empty input")
    return blocks


# ---------------------------------------------------------------- printable names

_IDENT_RE = re.compile(IDENT + "$")


def to_ident(name: str) -> str:
    """A file-format identifier for a derived name such as ``q@-3`` or ``b0#2``."""
    if _IDENT_RE.match(name):
        return name
    s = name.replace("@-", "_atm").replace("@", "_at").replace("#-", "_brm").replace("#", "_br")
    s = re.sub(r"[^A-Za-z0-9_]", "_", s.replace("-", "m"))
    return s if re.match(r"[A-Za-z_]", s) else "_" + s


def _unique_map(names):
    out, used = {}, set()
    for n in names:
        base = cand = to_ident(n)
        i = 2
        while cand in used:
            cand = f"{base}_{i}"
            i += 1
        used.add(cand)
        out[n] = cand
    return out


def printable(f: VassFile) -> VassFile:
    """Rename states and transitions so that ``serialize`` output parses back."""
    v = f.vass
    sm = _unique_map(v.states)
    tm = _unique_map([t.tid for t in v.transitions])
    nv = Vass(v.dim, [sm[q] for q in v.states],
              [Transition(tm[t.tid], sm[t.src], t.effect, sm[t.dst]) for t in v.transitions])

    def conf(c):
        return None if c is None else Configuration(sm[c.state], c.vector, c.z)

    return VassFile(nv, conf(f.init), conf(f.target))
