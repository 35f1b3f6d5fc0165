import json

import pytest
from hypothesis import given, settings

from conering import cd_ring
from conering.counting_basis import (
    betti_coordinates,
    convert,
    counting_change_of_basis,
    counting_cone,
    counting_element,
    from_rank,
    negativity_scan,
    phi,
    quasi_simplex,
    structure_table,
    to_rank,
)
from conering.element import CD, COUNTING, RANK, RingElement, parse_element
from conering.rank_basis import enumerate_indices, is_point_like, shadow

from .strategies import elements


def K(text):
    return parse_element(text, COUNTING)


def R(text):
    return parse_element(text, RANK)


def test_rank_zero_is_the_rank_key():
    assert to_rank(K("[3:1]")) == R("{3:1}")


def test_point_like_examples():
    assert to_rank(K("[0:0,0:1]")) == R("{0:0,0:1} - {0:0,2:0}")
    assert to_rank(K("[0:0,0:0]")) == R("{0:0,0:0}")
    assert to_rank(K("[1:0,0:0]")) == R("{1:0,0:0} - {0:0,1:0}")


def test_cone_of_point_like():
    assert counting_cone(K("[0:0,0:0]")) == K("[1:0,0:0]")


def test_cone_raises_simplex_index():
    for d in range(8):
        for i in enumerate_indices(d):
            (a, b), body = i[0], i[1:]
            if b == 0:
                assert counting_cone(K(_fmt(i))) == K(_fmt(((a + 1, 0),) + body))


def _fmt(index):
    return "[" + ",".join(f"{a}:{b}" for a, b in index) + "]"


def test_phi_identity_and_d_power_rule():
    P = counting_element(((0, 0), (1, 0)))
    assert phi(0, 0, P) == P
    D = R("{0:1}")
    for b in range(4):
        lhs = D ** b * phi(2, 0, P)
        rhs = sum((phi(2 + i, b - i, shadow(P, i)) for i in range(b + 1)), RingElement.zero(RANK))
        assert lhs == rhs


def test_quasi_simplices():
    assert quasi_simplex(0) == RingElement.one(RANK)
    assert quasi_simplex(3) == R("{3:0} - {2:0}")
    assert K("[0:1~]") == K("[0:0] - [1:0] + [0:1]")
    assert to_rank(K("[2:0~]")) == quasi_simplex(2)
    D = R("{0:1}")
    for n in range(4):
        for b in range(4):
            total = sum((quasi_simplex(n + i, b - i) for i in range(b + 1)), RingElement.zero(RANK))
            assert total == D ** b * quasi_simplex(n)
    with pytest.raises(ValueError):
        quasi_simplex(-1)


def test_quasi_simplex_product():
    q, D = quasi_simplex, R("{0:1}")
    for a in range(1, 6):
        for b in range(1, 6):
            assert q(a) * q(b) == q(a + b) - q(a + b - 1) + D * q(a - 1) * q(b - 1)


def test_d_powers_in_quasi_simplices():
    D = R("{0:1}")
    for b in range(5):
        assert D ** b == sum((quasi_simplex(i, b - i) for i in range(b + 1)), RingElement.zero(RANK))


def test_change_of_basis_low_degrees_is_identity():
    for d in range(4):
        cb = counting_change_of_basis(d)
        n = len(cb.keys)
        assert cb.matrix == tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
        assert cb.determinant == 1
    assert counting_change_of_basis(3).keys == (((1, 1),), ((3, 0),), ((0, 0), (0, 0)))


def test_change_of_basis_unimodular():
    for d in range(11):
        assert abs(counting_change_of_basis(d).determinant) == 1


def test_conversion_round_trip():
    for d in range(9):
        for w in cd_ring.enumerate_words(d):
            x = parse_element(f"<{w}>", CD)
            y = convert(x, COUNTING)
            assert y.basis == COUNTING
            assert convert(y, CD) == x
            assert from_rank(convert(x, RANK)) == y


def test_betti_examples():
    e1 = parse_element("<C>", CD)
    assert betti_coordinates(e1 * e1) == [(((0, 1),), 1), (((2, 0),), 1)]
    x = parse_element("<CD>", CD)
    coords = betti_coordinates(x * x)
    assert [c for _, c in coords] == [1, 1, 0, 0, 1, 1, 2, 0, 2, 2, 2, 0, 2]
    rebuilt = RingElement(COUNTING, dict(coords))
    assert convert(rebuilt, CD) == x * x


def test_betti_rejects_bad_input():
    with pytest.raises(ValueError):
        betti_coordinates(RingElement.zero(CD))
    with pytest.raises(ValueError):
        betti_coordinates(parse_element("<C> + <CC>", CD))


def test_structure_table_small():
    t = structure_table(COUNTING, 3)
    assert t.product(((0, 0),), ((2, 0),)) == K("[2:0]")
    assert t.product(((1, 0),), ((1, 0),)) == K("[2:0] + [0:1]")
    assert t.cone(((0, 0),)) == K("[1:0]")
    assert t.metadata == {"engine": "conering 0.1.0", "order": "canonical"}
    for (i, j), _ in t.products.items():
        assert sum(a + 2 * b for a, b in i) + sum(a + 2 * b for a, b in j) + 3 * (len(i) + len(j) - 2) <= 3


def test_structure_table_agrees_with_direct_product():
    t = structure_table(RANK, 5)
    for (i, j), terms in t.products.items():
        assert RingElement(RANK, dict(terms)) == R(_rfmt(i)) * R(_rfmt(j))


def _rfmt(index):
    return "{" + ",".join(f"{a}:{b}" for a, b in index) + "}"


def test_scan_clean_below_degree_eight():
    for d in (0, 3, 7):
        report = negativity_scan(d)
        assert report.negatives == []
        assert report.first_negative_degree is None


def test_scan_degree_eight():
    report = negativity_scan(8)
    assert [n.line() for n in report.negatives] == [
        "P [0:0,0:0] [0:0,0:1] -> -1*[0:0,0:0,2:0]",
        "P [0:0,0:0] [0:1,0:0] -> -1*[0:0,1:0,1:0]",
    ]
    assert report.first_negative_degree == 8
    assert report.to_text().startswith("scan basis=counting\nmax_degree=8\n")
    assert json.loads(report.to_json())["negatives"][0]["coeff"] == -1


def test_scan_is_deterministic_and_rederivable():
    a = negativity_scan(9)
    b = negativity_scan(9)
    assert a.to_text() == b.to_text()
    assert len(a.negatives) == 14
    for n in a.negatives:
        assert n.kind == "P"
        x, y = K(_fmt(n.i)), K(_fmt(n.j))
        # independent route: multiply in the CD basis, convert the result back
        product = convert(convert(x, CD) * convert(y, CD), COUNTING)
        assert product.coeff(n.k) == n.coeff


def test_scan_rejects_mismatched_table():
    with pytest.raises(ValueError):
        negativity_scan(4, structure_table(RANK, 4))


def test_point_like_counting_elements_stay_point_like():
    for d in range(3, 9):
        for i in enumerate_indices(d):
            if len(i) > 1 and i[0] == (0, 0):
                x = counting_element(i)
                assert is_point_like(x)
                assert x.ranks() == {len(i) - 1}


@settings(max_examples=30, deadline=None)
@given(elements(COUNTING, 5, 3), elements(COUNTING, 4, 3))
def test_counting_product_matches_cd(x, y):
    assert convert(x * y, CD) == convert(x, CD) * convert(y, CD)
