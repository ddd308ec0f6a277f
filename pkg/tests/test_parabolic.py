from itertools import combinations

import pytest

from symgap.parabolic import build_parabolic, parse_cross
from symgap.rootsystem import InvalidInput

from conftest import SMALL_TYPES


@pytest.mark.parametrize("text,nodes", [("1,2", {1, 2}), ("P_{1,2}", {1, 2}), ("P12", {1, 2}),
                                        ("P_1", {1}), ((3,), {3}), ("2", {2})])
def test_parse_cross(text, nodes):
    assert parse_cross(text) == frozenset(nodes)


@pytest.mark.parametrize("text", ["1,x", "P_{a}"])
def test_parse_cross_rejects(text):
    with pytest.raises(InvalidInput):
        parse_cross(text)


def test_empty_and_out_of_range_cross():
    with pytest.raises(InvalidInput):
        build_parabolic("A3", "")
    with pytest.raises(InvalidInput):
        build_parabolic("A3", "4")


def test_g2_p2_grading():
    pd = build_parabolic("G2", "2")
    assert pd.depth == 2
    assert pd.dims() == {-2: 1, -1: 4, 0: 4, 1: 4, 2: 1}


def test_e8_p8_grading():
    pd = build_parabolic("E8", "8")
    assert pd.dims() == {-2: 1, -1: 56, 0: 134, 1: 56, 2: 1}


def _cases():
    for t in SMALL_TYPES:
        r = int(t[1:])
        for k in (1, 2):
            for c in combinations(range(1, r + 1), k):
                yield t, c


@pytest.mark.parametrize("t,cross", list(_cases()))
def test_grading_is_a_lie_algebra_grading(t, cross):
    pd = build_parabolic(t, cross)
    alg = pd.alg
    assert sum(pd.dims().values()) == alg.dim
    assert pd.dims()[-1] == pd.dims()[1]
    for (a, b), v in alg.table.items():
        for c in v:
            assert pd.degrees[c] == pd.degrees[a] + pd.degrees[b]
    # the grading element acts on g_i by i
    Z = pd.Z.coeffs
    for b in range(alg.rank, alg.dim):
        assert alg.bracket_vec(Z, {b: 1}) == ({b: pd.degrees[b]} if pd.degrees[b] else {})


def test_g_minus_generated_by_degree_minus_one():
    pd = build_parabolic("B3", "1,3")
    alg = pd.alg
    span = set(pd.piece(-1))
    frontier = list(span)
    while frontier:
        new = []
        for x in frontier:
            for y in pd.piece(-1):
                for c in alg.bracket_basis(x, y):
                    if c not in span:
                        span.add(c)
                        new.append(c)
        frontier = new
    assert span == set(pd.g_minus)


def test_degree_and_leading_part():
    pd = build_parabolic("A3", "1")
    alg = pd.alg
    x = alg.e((-1, 0, 0)) + alg.h(2)
    assert pd.degree(x) == ("mixed", [-1, 0])
    assert pd.leading_part(x, -1) == alg.e((-1, 0, 0))
    with pytest.raises(InvalidInput):
        pd.leading_part(x, 0)
