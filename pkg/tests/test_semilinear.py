import warnings

import pytest

from vass3 import families
from vass3.semilinear import (INF, ApproxCertificate, ArithmeticSet, BoundedLinearSet, CapTooSmallToBeMeaningful,
                              HybridSet, LinearSet, cap_from_json, cap_json, cap_min, check_sandwich,
                              decompose_1dim, enumerate_up_to, member, simplify_arithmetic, union_member)

P = ((0, 3), (3, 0))
ZIGZAG_UPPER = [LinearSet(a, P) for a in families.ZIGZAG_A]


def test_infinity():
    assert INF > 10**100 and not INF < 5 and INF + 3 is INF
    assert cap_min(4, INF, 2) == 2 and cap_min(INF) is INF
    assert cap_from_json(cap_json(INF)) is INF and cap_from_json(cap_json(7)) == 7


def test_linear_membership():
    assert member(LinearSet((1, 0), P), (4, 3))
    assert not member(LinearSet((1, 0), P), (2, 1))


def test_zigzag2_union_membership():
    assert union_member(ZIGZAG_UPPER, (5, 1))
    assert not union_member(ZIGZAG_UPPER, (0, 0))


def test_residue_invariant_of_zigzag2_union():
    for x in range(13):
        for y in range(13):
            if union_member(ZIGZAG_UPPER, (x, y)):
                assert (x + 2 * y) % 3 == 1


def test_enumerate_linear_and_bounded():
    assert enumerate_up_to(LinearSet((0, 0), [(1, 0)]), 2) == [(0, 0), (1, 0), (2, 0)]
    assert enumerate_up_to(BoundedLinearSet((1, 0), P, 1), 10) == [(1, 0), (1, 3), (4, 0)]


def test_enumerate_matches_zigzag_formula():
    pred = families.zigzag_formula(2)
    upper = sorted({x for s in ZIGZAG_UPPER for x in enumerate_up_to(s, 16)})
    assert [x for x in upper if pred(x)] == sorted(
        (a, b) for a in range(17) for b in range(17) if pred((a, b)))


def test_hybrid_membership_and_enumeration():
    h = HybridSet((0, 0), [(0, 1)], [1], 2, [(1, 0)])
    pts = enumerate_up_to(h, 4)
    assert pts == sorted((a, b) for a in range(5) for b in range(3))
    assert member(h, (7, 2)) and not member(h, (0, 3))
    for x in range(6):
        for y in range(6):
            assert member(h, (x, y)) == ((x, y) in set(enumerate_up_to(h, 5)))


def test_hybrid_costs_weight_the_budget():
    h = HybridSet((0,), [(1,), (5,)], [1, 2], 4, [])
    # (5,) costs 2 and (1,) costs 1 against a budget of 4
    assert member(h, (10,)) and member(h, (4,)) and member(h, (7,))
    assert not member(h, (11,)) and not member(h, (9,))


def test_hybrid_rejects_bad_costs():
    with pytest.raises(ValueError):
        HybridSet((0,), [(1,)], [0], 3)


def test_member_with_negative_periods():
    s = LinearSet((5, 5), [(-1, 1), (1, 1)])
    assert member(s, (4, 6)) and member(s, (7, 7)) and not member(s, (5, 6))


def test_arithmetic_sets():
    s = ArithmeticSet(7, 3, 1)
    assert list(s.elements()) == [7, 10] and 10 in s and 13 not in s
    assert ArithmeticSet(2, 3, INF).elements(12) == [2, 5, 8, 11]
    with pytest.raises(ValueError):
        ArithmeticSet(2, 3, INF).elements()
    assert ArithmeticSet(4, 0, 9).T == 0


def test_decompose_1dim():
    assert decompose_1dim(0, {1}) == [ArithmeticSet(0, 1, INF)]
    assert decompose_1dim(5, set()) == [ArithmeticSet(5, 0, 0)]
    sets = decompose_1dim(0, {2, 3})
    assert {x for x in range(41) if any(x in s for s in sets)} == set(range(41)) - {1}


def test_decompose_1dim_random(rng):
    for _ in range(20):
        a = rng.randint(0, 5)
        B = {rng.randint(1, 7) for _ in range(rng.randint(1, 3))}
        sets = decompose_1dim(a, B)
        reach = {a}
        for _ in range(60):
            reach |= {x + b for x in reach for b in B if x + b <= a + 60}
        assert {x for x in range(a + 61) if any(x in s for s in sets)} == reach


def test_simplify_arithmetic():
    sets = [ArithmeticSet(1, 2, 3), ArithmeticSet(1, 2, INF), ArithmeticSet(3, 0, 0), ArithmeticSet(1, 4, 2)]
    assert simplify_arithmetic(sets) == [ArithmeticSet(1, 2, INF)]
    assert len(simplify_arithmetic([ArithmeticSet(1, 4, 2), ArithmeticSet(1, 2, 3)])) == 2


def test_sandwich_definitional_cases():
    lin = LinearSet((1, 0), P)
    for B in range(4):
        cert = ApproxCertificate("BApproximation", lin, 3, B)
        assert check_sandwich(cert, lambda x: member(lin, x), 12)
        bounded = BoundedLinearSet((1, 0), P, B)
        assert check_sandwich(cert, lambda x: member(bounded, x), 12)


def test_sandwich_detects_failures():
    lin = LinearSet((1, 0), P)
    cert = ApproxCertificate("BApproximation", lin, 3, 2)
    # too small a set for the lower bound
    assert not check_sandwich(cert, lambda x: tuple(x) == (1, 0), 12)
    # too large a set for the upper bound
    assert not check_sandwich(cert, lambda x: True, 6)


def test_sandwich_warns_on_tiny_cap():
    cert = ApproxCertificate("BApproximation", LinearSet((5, 5), P), 5, 1)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        check_sandwich(cert, lambda x: False, 2)
    assert any(issubclass(x.category, CapTooSmallToBeMeaningful) for x in w)


def test_certificate_parameters():
    assert ApproxCertificate("BApproximation", LinearSet((1, 0), P), 3, 9).valid_parameters()
    assert not ApproxCertificate("BApproximation", LinearSet((1, 0), P), 2, 9).valid_parameters()
    assert ApproxCertificate("WholeLinear", LinearSet((4, 0), P), 3, 2).valid_parameters()


def test_zigzag2_b_approximation():
    z = families.zigzag_approximation(3)
    assert z.within_upper
    assert z.certified == tuple(range(1, 4 ** 3 // 8 + 1))


def test_json_shapes():
    assert LinearSet((1, 0), P).to_json() == {"type": "linear", "base": ["1", "0"],
                                              "periods": [["0", "3"], ["3", "0"]]}
    assert ArithmeticSet(2, 3, INF).to_json()["T"] == "inf"


def test_simplify_merges_touching_progressions():
    sets = [ArithmeticSet(7, 3, 1), ArithmeticSet(13, 3, 2), ArithmeticSet(4), ArithmeticSet(22),
            ArithmeticSet(8, 3, 1)]
    out = simplify_arithmetic(sets)
    assert ArithmeticSet(4, 3, 6) in out and ArithmeticSet(8, 3, 1) in out and len(out) == 2
    assert simplify_arithmetic([ArithmeticSet(1, 2, 3), ArithmeticSet(9, 2, INF)]) == [ArithmeticSet(1, 2, INF)]
