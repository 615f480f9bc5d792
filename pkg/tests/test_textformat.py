import pytest

from vass3 import families
from vass3.textformat import ParseError, SemanticError, VassFile, parse, parse_slps, printable, serialize
from vass3.vass import Configuration, Transition, Vass, sequential_decompose

ZIGZAG2 = """\
# zigzag with two doubling rounds per coordinate
dim 2
state q1
state q2
state q3
state q4
trans l1: q1 (-1,2) q1
trans l2: q2 (2,-1) q2
trans l3: q3 (-1,2) q3
trans l4: q4 (2,-1) q4
trans u1: q1 (0,0) q2
trans u2: q2 (0,0) q3
trans u3: q3 (0,0) q4
init q1 (1,0)
target q4 (16, 0)   # trailing comment
"""


def test_parse_zigzag2():
    f = parse(ZIGZAG2)
    assert sequential_decompose(f.vass).k == 4
    assert f.init == Configuration("q1", (1, 0))
    assert f.target == Configuration("q4", (16, 0))


def test_parse_accepts_bytes():
    assert parse(ZIGZAG2.encode()).vass.dim == 2


def test_dimension_mismatch():
    with pytest.raises(SemanticError):
        parse("dim 3\nstate p\ntrans a: p (1,2) p\n")


def test_unknown_state():
    with pytest.raises(SemanticError):
        parse("dim 1\nstate p\ninit r (0)\n")
    with pytest.raises(SemanticError):
        parse("dim 1\nstate p\ntrans a: p (1) r\n")


def test_dim_must_come_first():
    with pytest.raises(ParseError) as e:
        parse("state p\ndim 1\n")
    assert e.value.line == 1


def test_malformed_line_reports_position():
    with pytest.raises(ParseError) as e:
        parse("dim 1\nstate p\n  trans a p (1) p\n")
    assert (e.value.line, e.value.col) == (3, 3)


def test_negative_init_rejected():
    with pytest.raises(SemanticError):
        parse("dim 1\nstate p\ninit p (-1)\n")


def test_round_trip():
    f = parse(ZIGZAG2)
    assert parse(serialize(f)) == f
    assert serialize(parse(serialize(f))) == serialize(f)


def test_round_trip_generated():
    v = families.zigzag(3)
    assert parse(serialize(v)).vass == v


def test_printable_renames_derived_names():
    v = Vass(1, ["p@-1", "p@0"], [Transition("a@-1", "p@-1", (1,), "p@0"), Transition("b0#2", "p@0", (0,), "p@0")])
    f = printable(VassFile(v, Configuration("p@-1", (0,)), None))
    g = parse(serialize(f))
    assert g.vass.states == ("p_atm1", "p_at0")
    assert [t.tid for t in g.vass.transitions] == ["a_atm1", "b0_br2"]
    assert g.init.state == "p_atm1"


def test_slps_syntax():
    blocks = parse_slps("slps dim 2\nseg (1,0)(0,1)\nloop (2,-1)\nseg\nloop (-3,3)\n")
    assert blocks == [("seg", [(1, 0), (0, 1)]), ("loop", (2, -1)), ("seg", []), ("loop", (-3, 3))]


def test_slps_rejects_bad_header():
    with pytest.raises(ParseError):
        parse_slps("slps dim 3\n")
