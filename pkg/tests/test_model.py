from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symgap.chevalley import build_algebra
from symgap.kostant import harmonic_module, harmonic_modules
from symgap.model import (WeightLatticeSpec, build_canonical_model, flat_model,
                          gr_equals_prolongation, mutate_kappa, split_real_sign_check,
                          twistor_check, twistor_descend, verify_algebraic_model)
from symgap.parabolic import build_parabolic
from symgap.prolong import checked_annihilator, tanaka_prolong
from symgap.rootsystem import InvalidInput


@pytest.fixture(scope="module")
def g2():
    pd = build_parabolic("G2", "2")
    return pd, harmonic_module(pd, "21")


def test_g2_canonical_model(g2):
    pd, m = g2
    am = build_canonical_model(pd, m)
    assert am.dim == 7
    assert am.report.passed
    a = tanaka_prolong(pd, checked_annihilator(pd, m))
    assert gr_equals_prolongation(am, a)


def test_g2_kappa_values(g2):
    pd, m = g2
    alg = pd.alg
    am = build_canonical_model(pd, m)
    x, y = alg.basis_index((0, -1)), alg.basis_index((-1, -1))
    target = alg.basis_index((-3, -1))
    for s, t in product(pd.g_minus, repeat=2):
        val = am.kappa.evaluate_vec({s: 1}, {t: 1})
        if (s, t) == (x, y):
            assert val == {target: 1}
        elif (s, t) == (y, x):
            assert val == {target: -1}
        else:
            assert val == {}


def test_negative_sign_model(g2):
    pd, m = g2
    am = build_canonical_model(pd, m, sign=-1)
    assert am.report.passed and am.dim == 7
    with pytest.raises(InvalidInput):
        build_canonical_model(pd, m, sign=2)


@pytest.mark.parametrize("t,c", [("G2", "2"), ("A3", "1,2"), ("B3", "1")])
def test_flat_model(t, c):
    am = flat_model(build_parabolic(t, c))
    assert am.report.passed
    assert am.dim == am.pd.alg.dim


def test_fault_injection_is_caught(g2):
    pd, m = g2
    am = build_canonical_model(pd, m)
    neg = pd.g_minus
    bad = mutate_kappa(am, ((neg[0], neg[1]), 0), 1)
    r = verify_algebraic_model(bad)
    assert not r.checks["f0_kappa"].passed
    assert r.checks["f0_kappa"].witness.startswith("z = ")
    assert not r.passed


def test_rescaling_the_only_slot_is_harmless(g2):
    pd, m = g2
    am = build_canonical_model(pd, m)
    (key, c), = am.kappa.data.items()
    assert verify_algebraic_model(mutate_kappa(am, key, 3 * c)).passed


@pytest.mark.parametrize("t,c", [("A2", "1"), ("A2", "1,2"), ("B2", "1"), ("B2", "1,2"),
                                 ("C2", "2"), ("C2", "1,2"), ("A1", "1")])
def test_excluded_cases_refused(t, c):
    pd = build_parabolic(t, c)
    for m in harmonic_modules(pd):
        if m.regular:
            with pytest.raises(InvalidInput, match="exclu|rank"):
                build_canonical_model(pd, m)


@pytest.mark.parametrize("t,c", [("G2", "1"), ("B2", "2"), ("C2", "1")])
def test_other_rank_two_cases_build(t, c):
    pd = build_parabolic(t, c)
    for m in harmonic_modules(pd):
        if m.regular:
            assert build_canonical_model(pd, m).report.passed


def test_non_regular_module_refused():
    pd = build_parabolic("G2", "1,2")
    m = harmonic_module(pd, "21")
    assert not m.regular
    with pytest.raises(InvalidInput):
        build_canonical_model(pd, m)


@pytest.mark.parametrize("t,c", [("A4", "1,2"), ("C3", "1,2"), ("B3", "2"), ("D4", "1,2")])
def test_models_both_signs(t, c):
    pd = build_parabolic(t, c)
    for m in harmonic_modules(pd):
        if m.regular:
            for sign in (1, -1):
                am = build_canonical_model(pd, m, sign)
                assert am.report.passed
                assert am.filtration.count(1) == 0 or tanaka_prolong(
                    pd, checked_annihilator(pd, m)).positive_dim


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("A3", "1,2", "21"), ("C3", "1,2", "12"), ("B3", "1", "12")]), st.data())
def test_curvature_recovered_on_random_pairs(case, data):
    t, c, w = case
    pd = build_parabolic(t, c)
    am = build_canonical_model(pd, harmonic_module(pd, w))
    i = data.draw(st.integers(0, am.dim - 1))
    j = data.draw(st.integers(0, am.dim - 1))
    x, y = am.f_basis[i], am.f_basis[j]
    tilde = pd.alg.bracket_vec(x, y)
    for k, v in am.deformed_bracket(i, j).items():
        tilde[k] = tilde.get(k, 0) - v
    tilde = {k: v for k, v in tilde.items() if v}
    assert tilde == am.kappa.evaluate_vec(x, y)


# -- twistor descent ------------------------------------------------------------

def test_twistor_g2():
    assert twistor_descend("G2", {1, 2}, "21") == frozenset({2})
    pd = build_parabolic("G2", "2")
    assert harmonic_module(pd, "21").degree == 1


def test_twistor_commuting_nodes():
    assert twistor_descend("A3", {1, 2, 3}, "13") == frozenset({1, 3})


@pytest.mark.parametrize("m", [2, 3, 4])
def test_twistor_ode(m):
    assert twistor_descend(f"A{m + 1}", {1, 2}, "21") == frozenset({2})
    chk = twistor_check(f"A{m + 1}", {1, 2}, "21")
    assert chk.degree_p > 0 and chk.positive_dim_p == 0
    assert chk.U_q == chk.U_p and chk.passed


def test_twistor_rejects_non_hasse_word():
    with pytest.raises(InvalidInput):
        twistor_descend("A3", {1}, "13")


# -- split real forms ------------------------------------------------------------

def test_g2_sign(g2):
    pd, m = g2
    res = split_real_sign_check(pd, m, "sc")
    assert res.equivalent and res.witness == (-1, 1)
    # torus element diag(a, b): alpha_1 -> a/b, alpha_2 -> a^-3, so mu -> a^-5 b^2
    spec = WeightLatticeSpec.parse("adjoint")
    for a, b in product((1, -1), repeat=2):
        assert spec.value(pd.rs, m.mu, (a * b, a)) == a ** -5 * b ** 2
    assert spec.value(pd.rs, m.mu, (-1, -1)) == -1


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_projective_sign(n):
    pd = build_parabolic(f"A{n}", "1")
    (m,) = harmonic_modules(pd)
    spec = WeightLatticeSpec.parse("pgl")
    # A . phi_0 = a_1^2 a_{n+1} / (a_2^2 a_3) phi_0
    assert spec.coordinates(pd.rs, m.mu) == [2, -2, -1] + [0] * (n - 3) + [1]
    assert spec.value(pd.rs, m.mu, (-1,) + (1,) * (n - 1) + (-1,)) == -1
    assert split_real_sign_check(pd, m, spec).equivalent


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_ode_sign(m):
    pd = build_parabolic(f"A{m + 1}", "1,2")
    mod = harmonic_module(pd, "21")
    pgl = WeightLatticeSpec.parse("pgl")
    # A . phi_0 = a_1 a_2 a_{m+2} / a_3^3 phi_0
    assert pgl.coordinates(pd.rs, mod.mu) == [1, 1, -3] + [0] * (m - 2) + [1]
    res = split_real_sign_check(pd, mod, pgl)
    assert res.equivalent and res.witness == (1,) * (m + 1) + (-1,)
    sl = split_real_sign_check(pd, mod, "sl")
    assert sl.equivalent == (m >= 3)
    if m >= 3:
        # a_3 = a_4 = -1 is an SL witness
        signs = tuple(-1 if i in (2, 3) else 1 for i in range(m + 2))
        assert WeightLatticeSpec.parse("sl").value(pd.rs, mod.mu, signs) == -1
    else:
        assert sl.label == "not reachable by torus/Weyl witnesses"


@pytest.mark.parametrize("t", ["B4", "D5", "B5"])
def test_conformal_split_sign_not_reachable(t):
    pd = build_parabolic(t, "1")
    (m,) = [m for m in harmonic_modules(pd) if m.regular]
    res = split_real_sign_check(pd, m, "so-split")
    assert not res.equivalent


def test_lattice_type_mismatch():
    pd = build_parabolic("G2", "2")
    with pytest.raises(InvalidInput):
        split_real_sign_check(pd, "21", "sl")
    with pytest.raises(InvalidInput):
        split_real_sign_check(build_parabolic("A3", "1"), "12", "so-split")
    with pytest.raises(InvalidInput):
        WeightLatticeSpec.parse("spin")


def test_sign_check_needs_regular_module():
    pd = build_parabolic("G2", "1,2")
    with pytest.raises(InvalidInput):
        split_real_sign_check(pd, "21")


def test_weyl_nodes_fix_phi0():
    pd = build_parabolic("A5", "1")
    (m,) = harmonic_modules(pd)
    res = split_real_sign_check(pd, m, "pgl")
    assert res.weyl_nodes == (4,)
