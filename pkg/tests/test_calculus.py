import itertools

import numpy as np
import pytest

from geocalc import calculus as cal
from geocalc import symexpr as se
from geocalc.connection import RicciSlot, from_contorsion, levi_civita, ricci_data
from geocalc.manifold import IndexedForms, build_geometry
from geocalc.multivector import Multivector, left_contract, mv_equal, mv_max_abs, wedge
from geocalc.scenarios import random_torsion, sample_forms

from identities import curved_geometries

t = se.sym("t")
TOL = 1e-9


def mx(G, A):
    return mv_max_abs(A, G.domain)


def flat_plane():
    return build_geometry(["x", "y"], {"x": (-1, 1), "y": (-1, 1)}, (2, 0), [[1, 0], [0, 1]])


@pytest.fixture(scope="module")
def warped():
    G = curved_geometries()["Cl(3,0)"]
    return G, levi_civita(G)


# d, δ and the covariant derivative on S² -----------------------------------


def test_d_of_scalar_on_sphere(s2):
    assert mv_equal(cal.ext_d(s2, s2.scalar(se.sin(t))), s2.form({0: se.cos(t)}), s2.domain)


def test_d_theta2_on_sphere(s2):
    assert mv_equal(s2.d(s2.theta(1)), s2.form({(0, 1): se.cot(t)}), s2.domain)


def test_codifferential_of_scalar_vanishes(s2):
    assert cal.codifferential(s2, s2.scalar(se.cos(t))).is_zero


def test_codifferential_of_x_dx_is_minus_one():
    G = flat_plane()
    out = cal.codifferential(G, G.form({0: se.sym("x")}))
    assert mv_equal(out, G.scalar(-1), G.domain)


def test_cov_deriv_of_theta2(s2, s2_lc, s2_nunes):
    assert cal.cov_deriv(s2_lc, s2.theta(1), 0).is_zero or mx(s2, cal.cov_deriv(s2_lc, s2.theta(1), 0)) < TOL
    assert mv_equal(cal.cov_deriv(s2_lc, s2.theta(1), 1), s2.form({0: -se.cot(t)}), s2.domain)
    for a, b in itertools.product(range(2), repeat=2):
        assert mx(s2, cal.cov_deriv(s2_nunes, s2.theta(b), a)) < TOL


def test_dirac_of_cos(s2, s2_lc):
    assert mv_equal(cal.dirac(s2_lc, s2.scalar(se.cos(t))), s2.form({0: -se.sin(t)}), s2.domain)


def test_d_delta_through_teleparallel_connection(s2, s2_nunes):
    A = s2.theta(1)
    dA, dl = cal.d_delta_via_rc(s2_nunes, A)
    assert mv_equal(dA, s2.form({(0, 1): se.cot(t)}), s2.domain)
    assert mv_equal(dl, cal.codifferential(s2, A), s2.domain)
    printed, _ = cal.d_delta_via_rc(s2_nunes, A, flip_torsion_term=True)
    assert not mv_equal(printed, dA, s2.domain)


@pytest.mark.parametrize("seed", [1, 2])
def test_d_delta_through_random_torsion(e3, e3_rc, seed):
    for A in sample_forms(e3, seed):
        dA, dl = cal.d_delta_via_rc(e3_rc, A)
        assert mx(e3, dA - e3.d(A)) < TOL
        assert mx(e3, dl - cal.codifferential(e3, A)) < TOL


def test_printed_torsion_sign_in_d_fails_on_dense_forms(e3, e3_rc):
    worst = max(mx(e3, cal.d_delta_via_rc(e3_rc, A, flip_torsion_term=True)[0] - e3.d(A)) for A in sample_forms(e3, 3))
    assert worst > 1.0


# squares of the Dirac operator --------------------------------------------


def test_hodge_dalembertian_of_constant(s2):
    assert cal.hodge_dalembertian(s2, s2.scalar(1)).is_zero


def test_square_split_routes_agree_with_torsion(e3, e3_rc):
    for A in sample_forms(e3, 4, per_grade=1):
        dot, wdg = cal.square_split(e3_rc, A)
        assert mx(e3, cal.dot_square_dilation(e3_rc, A) - dot) < TOL
        assert mx(e3, cal.dot_square_symmetrized(e3_rc, A) - dot) < TOL
        assert mx(e3, cal.dot_square_components(e3_rc, A) - dot) < TOL
        assert mx(e3, cal.wedge_square_torsion(e3_rc, A) - wdg) < TOL


def test_levi_civita_has_no_dilation(e3):
    assert all(se.num_equal(v, 0, e3.domain) for v in cal.contorsion_like_dilation(levi_civita(e3)))


def test_flat_wedge_square_and_einstein_vanish(polar, polar_lc):
    for a in range(2):
        th = polar.theta(a)
        assert mx(polar, cal.ricci_operator(polar_lc, th)) < TOL
        assert mx(polar, cal.einstein_operator(polar_lc, th)) < TOL


def test_box_theta_via_M(s2, s2_lc, warped):
    for G, C in ((s2, s2_lc), warped):
        for mu in range(G.n):
            direct = cal.covariant_dalembertian(C, G.theta(mu))
            assert mx(G, cal.dalembertian_theta_via_M(C, mu) - direct) < TOL


def test_ricci_operator_via_curvature_all_grades(warped):
    G, C = warped
    for A in sample_forms(G, 5):
        assert mx(G, cal.ricci_operator_via_curvature(C, A) - cal.ricci_operator(C, A)) < TOL


def test_ricci_operator_with_swapped_contractions_fails_on_bivectors(warped):
    G, C = warped
    n, eta = G.n, G.eta
    rf = ricci_data(C).ricci_forms
    A = [X for X in sample_forms(G, 5) if X.grades() == {2}][0]
    swapped = cal._zero(G)
    for s in range(n):
        swapped = swapped + wedge(rf[s], left_contract(G.theta_lower(s), A))
        for r in range(n):
            Rrs = C.curvature[r, s] * eta[s]
            swapped = swapped + wedge(Rrs, left_contract(G.theta_lower(r), left_contract(G.theta_lower(s), A)))
    assert mx(G, swapped - cal.ricci_operator(C, A)) > 1e-3


def test_einstein_operator_on_cotetrad_gives_einstein_forms(s2, s2_lc, warped):
    for G, C in ((s2, s2_lc), warped):
        ein = ricci_data(C, RicciSlot.FIRST).einstein_forms
        for a in range(G.n):
            assert mx(G, cal.einstein_operator(C, G.theta(a)) - ein[a]) < TOL


def test_einstein_operator_two_forms_agree(warped):
    G, C = warped
    for A in sample_forms(G, 6):
        assert mx(G, cal.einstein_operator_alt(C, A) - cal.einstein_operator(C, A)) < TOL


def test_curvature_contraction_scalar_is_minus_first_slot_scalar(s2, s2_lc, warped):
    for G, C in ((s2, s2_lc), warped):
        R_first = ricci_data(C, RicciSlot.FIRST).scalar
        assert mx(G, cal.curvature_contraction_scalar(C) + G.scalar(R_first)) < TOL


# exterior covariant derivative ---------------------------------------------


@pytest.mark.parametrize("name", ["s2_lc", "s2_nunes", "polar_lc", "e3_rc"])
def test_D_theta_is_torsion(request, name):
    C = request.getfixturevalue(name)
    assert (cal.ext_cov_d(C, cal.theta_family(C.geometry)) - C.torsion).is_zero()


@pytest.mark.parametrize("name", ["s2_lc", "s2_nunes", "e3_rc"])
def test_metric_is_covariantly_constant(request, name):
    C = request.getfixturevalue(name)
    assert cal.ext_cov_d(C, cal.metric_family(C.geometry)).is_zero()


@pytest.mark.parametrize("name", ["s2_lc", "s2_nunes", "e3_rc"])
def test_DD_is_curvature_action(request, name):
    C = request.getfixturevalue(name)
    G = C.geometry
    ones = [A for A in sample_forms(G, 9, per_grade=3) if A.grades() == {1}]
    data = np.empty((G.n, G.n), dtype=object)
    for a, b in itertools.product(range(G.n), repeat=2):
        data[a, b] = ones[(a + b) % len(ones)] * (a - b + 1)
    X = IndexedForms(G, 1, 1, data)
    assert (cal.ext_cov_d_twice(C, X) - cal.curvature_action(C, X)).is_zero()


def test_D_leibniz(e3, e3_rc):
    n = e3.n
    forms = sample_forms(e3, 11, per_grade=3)
    ones = [A for A in forms if A.grades() == {1}]
    twos = [A for A in forms if A.grades() == {2}]
    X = IndexedForms(e3, 1, 0, np.array(ones[:n], dtype=object))
    Y = IndexedForms(e3, 0, 1, np.array(twos[:n], dtype=object))
    r = 1
    lhs = cal.ext_cov_d(e3_rc, X.wedge(Y))
    rhs = cal.ext_cov_d(e3_rc, X).wedge(Y) + X.map(lambda A: A * (-1) ** r).wedge(cal.ext_cov_d(e3_rc, Y))
    assert (lhs - rhs).is_zero()


def test_ext_cov_d_shape_mismatch(s2_lc, e3):
    with pytest.raises(ValueError, match="does not match"):
        cal.ext_cov_d(s2_lc, cal.theta_family(e3))


# Bianchi identities ---------------------------------------------------------


@pytest.mark.parametrize("name", ["s2_lc", "s2_nunes", "polar_lc", "e3_rc"])
def test_bianchi_identities_hold(request, name):
    rep = cal.bianchi_reports(request.getfixturevalue(name))
    assert rep.passed(), rep.max_abs


def test_dual_bianchi_sign_matters(e3_rc):
    assert cal.dual_bianchi_residual(e3_rc, sign=-1).is_zero()
    assert not cal.dual_bianchi_residual(e3_rc, sign=1).is_zero()


def test_dual_curvature_trace_routes_agree_in_four_dimensions():
    G = curved_geometries()["Cl(1,3)"]
    C = from_contorsion(G, random_torsion(G, 3))
    a, b = cal.dual_curvature_trace(C), cal.dual_curvature_trace_epsilon(C)
    assert all(se.num_equal(x, y, G.domain) for x, y in zip(a.flat, b.flat))
    assert not all(se.num_equal(x, 0, G.domain) for x in a.flat)


def test_dual_curvature_trace_epsilon_needs_four_dimensions(s2_lc):
    with pytest.raises(ValueError):
        cal.dual_curvature_trace_epsilon(s2_lc)


def test_ricci_not_bounded_by_trace_on_sphere(s2, s2_lc):
    # the trace of the dual curvature vanishes in two dimensions while the
    # Ricci tensor does not, so no equality between them can hold
    tr = cal.dual_curvature_trace(s2_lc)
    ric = ricci_data(s2_lc).ricci
    assert all(se.num_equal(v, 0, s2.domain) for v in tr.flat)
    assert not all(se.num_equal(v, 0, s2.domain) for v in ric.flat)


# D⋆𝒯 and the Evans equation -----------------------------------------------


def test_dual_torsion_of_levi_civita_vanishes(s2_lc):
    rep = cal.dual_torsion_D(s2_lc)
    assert rep.direct.is_zero()
    assert rep.residual < TOL


def test_dual_torsion_of_teleparallel_sphere(s2, s2_nunes):
    rep = cal.dual_torsion_D(s2_nunes)
    assert rep.direct[0].is_zero or mx(s2, rep.direct[0]) < TOL
    assert mv_equal(rep.direct[1], s2.form({0: -1 / se.sin(t) ** 2}), s2.domain)
    assert rep.residual < TOL


def test_dual_torsion_two_routes_with_random_torsion(e3_rc):
    rep = cal.dual_torsion_D(e3_rc)
    assert rep.residual < TOL
    # ω∧⋆𝒯 = −⋆(ω⌟𝒯) for 1-forms ω in three dimensions
    assert rep.residual_contraction < TOL


def test_evans_equation_holds_on_flat_plane(polar_lc):
    rep = cal.evans_check(polar_lc)
    assert all(rep.holds)
    assert rep.dual_ricci_residual < TOL


def test_evans_equation_fails_on_curved_sphere_without_torsion(s2_lc):
    # D⋆𝒯 vanishes but ⋆𝓡^a_b∧θ^b = Kθ^a does not
    rep = cal.evans_check(s2_lc)
    assert rep.lhs.is_zero()
    assert rep.max_difference == pytest.approx([1.0, 1.0])
    assert rep.dual_ricci_residual < TOL


def test_evans_equation_fails_for_teleparallel_sphere(s2_nunes):
    rep = cal.evans_check(s2_nunes)
    assert not all(rep.holds)
    assert rep.two_route.residual < TOL


# the cotetrad wave equation ------------------------------------------------


@pytest.mark.parametrize("name", ["mink", "s2", "polar"])
def test_cotetrad_wave_equation(request, name):
    G = request.getfixturevalue(name)
    rep = cal.cotetrad_wave_equation(levi_civita(G))
    assert rep.residual < TOL


def test_box_equals_hodge_only_when_ricci_flat(s2, s2_lc, polar_lc):
    flat = cal.cotetrad_wave_equation(polar_lc)
    assert flat.ricci_flat and flat.box_equals_hodge
    curved = cal.cotetrad_wave_equation(s2_lc)
    assert not curved.ricci_flat and not curved.box_equals_hodge


def test_dual_bianchi_sign_in_four_dimensions():
    # (−1)^{n−2} would be +1 here; the identity needs −1
    G = curved_geometries()["Cl(1,3)"]
    C = from_contorsion(G, random_torsion(G, 3))
    assert cal.dual_bianchi_residual(C).is_zero()
    assert not cal.dual_bianchi_residual(C, sign=1).is_zero()
