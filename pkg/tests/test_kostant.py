from fractions import Fraction

import pytest

from symgap.kostant import (HasseWord2, harmonic_module, harmonic_modules, hasse_words,
                            is_hasse_word, module_dim, mu_affine, mu_closed_form)
from symgap.parabolic import build_parabolic
from symgap.rootsystem import InvalidInput

from conftest import ALL_TYPES


def test_g2_p2_module():
    pd = build_parabolic("G2", "2")
    (m,) = harmonic_modules(pd)
    assert m.w == HasseWord2(2, 1)
    assert m.mu_fw == (-7, 4)
    assert m.mu == (-2, 1)
    assert m.degree == 1 and m.J_mu == (1,)
    assert m.dim == 8


def test_e8_p8_module():
    pd = build_parabolic("E8", "8")
    regular = [m for m in harmonic_modules(pd) if m.regular]
    (m,) = regular
    assert m.mu_fw == (0, 0, 0, 0, 0, -1, -1, 4)
    assert m.J_mu == (6, 7) and m.degree == 1


def test_a1_has_no_words():
    assert hasse_words(build_parabolic("A1", "1")) == []


def test_commuting_words_listed_once():
    pd = build_parabolic("A5", "1,5")
    words = [str(w) for w in hasse_words(pd)]
    assert words == ["(12)", "(15)", "(54)"]
    assert is_hasse_word(pd, HasseWord2(5, 1))
    assert harmonic_module(pd, "51").mu == harmonic_module(pd, "15").mu


@pytest.mark.parametrize("name", ALL_TYPES)
def test_closed_form_equals_affine_action(name):
    pd = build_parabolic(name, range(1, int(name[1:]) + 1))
    for w in hasse_words(pd):
        assert mu_closed_form(pd.rs, w) == mu_affine(pd.rs, w)


@pytest.mark.parametrize("name", ALL_TYPES)
def test_phi0_has_weight_mu(name):
    pd = build_parabolic(name, "1")
    for m in harmonic_modules(pd):
        assert m.phi0.weight() == tuple(int(x) for x in m.mu)


def test_projective_module_dimension():
    # projective Weyl tensors in dimension n; n = 3, 4 agree with the oracle
    for n in range(3, 8):
        pd = build_parabolic(f"A{n}", "1")
        (m,) = harmonic_modules(pd)
        assert m.dim == n * n * (n * n - 4) // 3


def test_module_dim_needs_dominant_input():
    pd = build_parabolic("A3", "1")
    with pytest.raises(Exception):
        module_dim(pd, (Fraction(0), Fraction(1), Fraction(-1)))


@pytest.mark.parametrize("text,word", [("21", (2, 1)), ("(2,1)", (2, 1)), ((1, 3), (1, 3)),
                                       ("10,9", (10, 9))])
def test_parse_word(text, word):
    assert HasseWord2.parse(text).word == word


def test_non_hasse_word_rejected():
    pd = build_parabolic("A3", "1")
    with pytest.raises(InvalidInput):
        harmonic_module(pd, "13")
    with pytest.raises(InvalidInput):
        harmonic_module(pd, "21")
    with pytest.raises(InvalidInput):
        HasseWord2.parse("x1")
