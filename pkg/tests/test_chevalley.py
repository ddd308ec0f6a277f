import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symgap.chevalley import build_algebra, check_jacobi, jacobi_failures
from symgap.rootsystem import InvalidInput

from conftest import ALL_TYPES, SMALL_TYPES


@pytest.mark.parametrize("name", ALL_TYPES)
def test_jacobi_exhaustive(name):
    assert check_jacobi(build_algebra(name)) == []


@pytest.mark.parametrize("name", SMALL_TYPES)
def test_jacobi_agrees_with_naive_enumeration(name):
    alg = build_algebra(name)
    assert alg.jacobi_violations() == []


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "F4"])
def test_structure_constants_are_integers_bounded_by_p_plus_one(name):
    alg = build_algebra(name)
    for (a, b), v in alg.table.items():
        for c in v.values():
            assert int(c) == c
            if a >= alg.rank and b >= alg.rank and (alg.root_of(a) != tuple(-x for x in alg.root_of(b))):
                assert 1 <= abs(c) <= 3


def test_sl2_relations():
    alg = build_algebra("A1")
    e, f, h = alg.e((1,)), alg.e((-1,)), alg.h(1)
    assert alg.bracket(e, f) == h
    assert alg.bracket(h, e) == e * 2
    assert alg.bracket(h, f) == f * -2


def test_jacobi_detects_a_corrupted_table():
    alg = build_algebra("A2")
    table = dict(alg.table)
    key = next(k for k, v in table.items() if k[0] >= alg.rank and k[1] >= alg.rank and len(v) == 1
               and all(b >= alg.rank for b in v))
    table[key] = {b: 2 * c for b, c in table[key].items()}
    table[key[::-1]] = {b: -c for b, c in table[key].items()}
    assert jacobi_failures(table, alg.dim)


def test_bad_root_rejected():
    with pytest.raises(InvalidInput):
        build_algebra("A2").e((1, -1))


algebras = st.sampled_from(["A3", "B2", "C3", "G2", "D4"])


@settings(max_examples=80, deadline=None)
@given(algebras, st.data())
def test_killing_form_is_invariant(name, data):
    alg = build_algebra(name)
    idx = st.integers(0, alg.dim - 1)
    x, y, z = ({data.draw(idx): 1} for _ in range(3))
    lhs = alg.killing_vec(alg.bracket_vec(x, y), z)
    rhs = alg.killing_vec(x, alg.bracket_vec(y, z))
    assert lhs == rhs


@settings(max_examples=80, deadline=None)
@given(algebras, st.data())
def test_bracket_is_antisymmetric_and_weight_additive(name, data):
    alg = build_algebra(name)
    idx = st.integers(0, alg.dim - 1)
    a, b = data.draw(idx), data.draw(idx)
    ab = alg.bracket_basis(a, b)
    assert ab == {k: -v for k, v in alg.bracket_basis(b, a).items()}
    w = tuple(x + y for x, y in zip(alg.weight_of(a), alg.weight_of(b)))
    assert all(alg.weight_of(c) == w for c in ab)


def test_dual_root_vector_pairs_to_one():
    alg = build_algebra("G2")
    for r in alg.rs.positive_roots:
        x = alg.dual_root_vector(r)
        assert alg.killing_pairing(x, alg.e(tuple(-a for a in r))) == 1
