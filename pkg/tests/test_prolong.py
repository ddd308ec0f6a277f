from fractions import Fraction

import pytest

from symgap.homology import Cochain
from symgap.kostant import harmonic_module, harmonic_modules
from symgap.linalg import Echelon
from symgap.parabolic import build_parabolic
from symgap.prolong import (annihilator, annihilator_closed_form, checked_annihilator,
                            h_from_root_values, module_bound, mu1_holds, mu2_functionals,
                            mu2_witness, prolongation_of, same_span, tanaka_prolong, upper_bounds)
from symgap.rootsystem import InvalidInput


def test_g2_p2_annihilator_and_prolongation():
    pd = build_parabolic("G2", "2")
    (m,) = harmonic_modules(pd)
    a0 = checked_annihilator(pd, m)
    z = pd.grading_coroot({1})
    for k, x in pd.grading_coroot({2}).items():
        z[k] = z.get(k, 0) + 2 * x
    expected = Echelon([z, {pd.alg.basis_index((-1, 0)): 1}])
    assert same_span(a0, expected)
    b = module_bound(pd, m)
    assert b.U_mu == 7
    assert {d: v for d, v in b.prolongation_dims.items() if v} == {-2: 1, -1: 4, 0: 2}


@pytest.mark.parametrize("t,c", [("A3", "1"), ("B3", "1,2"), ("G2", "1"), ("C3", "2")])
def test_zero_curvature_prolongs_to_g(t, c):
    pd = build_parabolic(t, c)
    assert prolongation_of(pd, Cochain(pd, 2)).dim == pd.alg.dim


def test_annihilator_of_zero_cochain_rejected():
    pd = build_parabolic("A3", "1")
    with pytest.raises(InvalidInput):
        annihilator(pd, Cochain(pd, 2))


def test_prolongation_requires_subalgebra():
    pd = build_parabolic("A3", "1")
    alg = pd.alg
    # e_{alpha_2} alone is fine, with e_{-alpha_2} it must contain h_2 too
    with pytest.raises(InvalidInput):
        tanaka_prolong(pd, Echelon([{alg.basis_index((0, 1, 0)): 1},
                                    {alg.basis_index((0, -1, 0)): 1}]))
    with pytest.raises(InvalidInput):
        tanaka_prolong(pd, Echelon([{alg.basis_index((-1, 0, 0)): 1}]))


@pytest.mark.parametrize("t,c", [("A4", "1,2"), ("B4", "1"), ("D5", "1,5"), ("F4", "4"),
                                 ("E6", "1"), ("C4", "1,3")])
def test_annihilator_closed_form(t, c):
    pd = build_parabolic(t, c)
    for m in harmonic_modules(pd):
        assert same_span(annihilator(pd, m.phi0), annihilator_closed_form(pd, m))


def test_upper_bounds_projective():
    ub = upper_bounds(build_parabolic("A3", "1"))
    assert ub["U"] == 8


def test_upper_bound_undefined_without_regular_modules():
    ub = upper_bounds(build_parabolic("A1", "1"))
    assert ub == {"modules": [], "U": None}


@pytest.mark.parametrize("t,c", [("A3", "1"), ("B3", "1,3"), ("E6", "2"), ("F4", "1")])
def test_mu_properties(t, c):
    pd = build_parabolic(t, c)
    fs = mu2_functionals(pd.rs)
    for m in harmonic_modules(pd):
        if not m.regular:
            continue
        assert mu1_holds(pd, m)
        tv, f = mu2_witness(pd, m)
        assert f is None
        assert sum(a * b for a, b in zip(m.mu, tv)) == 0
        assert all(sum(a * b for a, b in zip(g, tv)) != 0 for g in fs)
        # H_0 lies in the annihilator
        h = h_from_root_values(pd, tv)
        assert checked_annihilator(pd, m).contains(h)


def test_mu2_reports_proportional_functional_in_rank_two():
    pd = build_parabolic("G2", "1")
    (m,) = [m for m in harmonic_modules(pd) if m.regular]
    tv, f = mu2_witness(pd, m)
    assert tv is None
    ratio = Fraction(f[0]) / m.mu[0]
    assert tuple(ratio * x for x in m.mu) == f


def test_h_from_root_values():
    pd = build_parabolic("B3", "1")
    t = (Fraction(1), Fraction(-2), Fraction(3))
    h = h_from_root_values(pd, t)
    alg = pd.alg
    for i in range(3):
        e = alg.basis_index(pd.rs.simple_root(i + 1))
        assert alg.bracket_vec(h, {e: 1}) == {e: t[i]}
