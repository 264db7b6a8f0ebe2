import itertools
import math

import numpy as np
import pytest

from geocalc import symexpr as se
from geocalc.connection import (
    RicciSlot,
    christoffel_from_metric,
    contorsion,
    curvature_difference,
    from_coefficients,
    from_contorsion,
    levi_civita,
    levi_civita_from_lie,
    ricci_data,
    tetrad_identity_check,
    zeros,
)
from geocalc.manifold import build_geometry
from geocalc.multivector import mv_equal

t, r = se.sym("t"), se.sym("r")


def all_zero(G, arr):
    return all(se.num_equal(v, 0, G.domain) for v in np.asarray(arr, dtype=object).flat)


def same_arrays(G, a, b):
    return all(se.num_equal(x, y, G.domain) for x, y in zip(np.asarray(a).flat, np.asarray(b).flat))


def flat_plane(extra=None):
    return build_geometry(["x", "y"], {"x": (-1, 1), "y": (-1, 1), **(extra or {})}, (2, 0), [[1, 0], [0, 1]])


# Levi-Civita ---------------------------------------------------------------


def test_sphere_connection_forms(s2, s2_lc):
    W = s2_lc.one_forms
    assert mv_equal(W[1, 0], s2.form({1: se.cot(t)}), s2.domain)
    assert mv_equal(W[0, 1], s2.form({1: -se.cot(t)}), s2.domain)
    assert W[0, 0].is_zero and W[1, 1].is_zero


def test_flat_identity_cotetrad_has_zero_connection():
    C = levi_civita(flat_plane())
    assert all(v is se.ZERO for v in C.omega.flat)


def test_polar_connection(polar, polar_lc):
    assert mv_equal(polar_lc.one_forms[1, 0], polar.form({1: 1 / r}), polar.domain)
    # ω²₁ = dφ in coordinates
    assert polar.render_coordinate(polar_lc.one_forms[1, 0]) == "dp"


@pytest.mark.parametrize("fixture", ["s2", "polar", "e3", "mink"])
def test_levi_civita_properties(fixture, request):
    G = request.getfixturevalue(fixture)
    C = levi_civita(G)
    assert C.is_metric_compatible()
    assert all_zero(G, C.torsion_components)
    assert same_arrays(G, C.omega, levi_civita_from_lie(G).omega)
    assert same_arrays(G, C.omega, from_contorsion(G, zeros(G.n, 3)).omega)
    # coordinate coefficients through the cotetrad match the Christoffel symbols
    assert same_arrays(G, C.coordinate_coefficients, christoffel_from_metric(G))


def test_levi_civita_round_trip(s2, s2_lc):
    C = from_coefficients(s2, s2_lc.omega)
    assert same_arrays(s2, C.curvature_components, s2_lc.curvature_components)


# Nunes and other general connections --------------------------------------


def test_nunes_connection(s2, s2_nunes):
    C = s2_nunes
    assert C.is_metric_compatible()
    assert all_zero(s2, C.curvature_components)
    assert mv_equal(C.torsion[1], s2.form({(0, 1): se.cot(t)}), s2.domain)
    assert C.torsion[0].is_zero
    T = C.torsion_components
    assert se.num_equal(T[1, 0, 1], se.cot(t), s2.domain)
    assert se.num_equal(T[1, 1, 0], -se.cot(t), s2.domain)


def test_from_contorsion_rebuilds_nunes(s2):
    T = zeros(2, 3)
    T[1, 0, 1], T[1, 1, 0] = se.cot(t), -se.cot(t)
    C = from_contorsion(s2, T)
    assert all(se.num_equal(v, 0, s2.domain) for v in C.omega.flat)


def test_from_contorsion_with_opposite_orientation_is_not_nunes(s2):
    # T²₂₁ = cot(t) is the torsion of the Nunes connection only when the
    # torsion 2-form is written with the opposite sign; here it builds a
    # different (curved) connection that still reproduces its own torsion
    T = zeros(2, 3)
    T[1, 1, 0], T[1, 0, 1] = se.cot(t), -se.cot(t)
    C = from_contorsion(s2, T)
    assert same_arrays(s2, C.torsion_components, T)
    assert not all_zero(s2, C.omega)


def test_from_contorsion_closure_random(e3, e3_rc):
    from geocalc.scenarios import random_torsion

    assert same_arrays(e3, e3_rc.torsion_components, random_torsion(e3, 7))
    assert e3_rc.is_metric_compatible()


def test_from_contorsion_rejects_symmetric_input(s2):
    T = zeros(2, 3)
    T[0, 0, 1] = T[0, 1, 0] = se.ONE
    with pytest.raises(ValueError):
        from_contorsion(s2, T)


def test_metric_compatibility_is_reported_not_enforced(s2):
    w = zeros(2, 3)
    w[0, 0, 0] = se.ONE  # ω_{1 1 1} ≠ −ω_{1 1 1}
    C = from_coefficients(s2, w)
    assert not C.is_metric_compatible()
    w = zeros(2, 3)
    w[0, 0, 1], w[1, 0, 0] = se.sin(t), -se.sin(t)
    assert from_coefficients(s2, w).is_metric_compatible()


def test_torsion_from_constant_connection():
    G = flat_plane({"k": (0.5, 2.0)})
    w = zeros(2, 3)
    k = se.sym("k")
    w[0, 0, 1], w[1, 0, 0] = k, -k  # ω¹₂ = kθ¹
    C = from_coefficients(G, w)
    assert mv_equal(C.torsion[0], G.form({(0, 1): k}), G.domain)


def test_shape_mismatch(s2):
    with pytest.raises(ValueError):
        from_coefficients(s2, zeros(3, 3))


# curvature -----------------------------------------------------------------


@pytest.mark.parametrize("fixture,conn", [("s2", "lc"), ("s2", "nunes"), ("e3", "rc"), ("polar", "lc")])
def test_structure_equations_match_component_formulas(fixture, conn, request):
    G = request.getfixturevalue(fixture)
    C = {"lc": lambda: levi_civita(G), "nunes": lambda: request.getfixturevalue("s2_nunes"), "rc": lambda: request.getfixturevalue("e3_rc")}[conn]()
    assert same_arrays(G, C.torsion_components, C.torsion_components_direct)
    assert same_arrays(G, C.curvature_components, C.curvature_components_direct)
    R = C.curvature_components
    for i in np.ndindex(R.shape):
        b, a, c, d = i
        assert se.num_equal(R[b, a, c, d], -R[b, a, d, c], G.domain)


def test_sphere_curvature(s2, s2_lc):
    assert mv_equal(s2_lc.curvature[0, 1], s2.form({(0, 1): 1}), s2.domain)
    R = s2_lc.curvature_components
    # ½ normalisation: 𝓡¹₂ = ½R₂¹_{cd}θ^c∧θ^d
    assert se.num_equal(R[1, 0, 0, 1], 1, s2.domain)


def test_ricci_slots(s2, s2_lc):
    last, first = ricci_data(s2_lc), ricci_data(s2_lc, RicciSlot.FIRST)
    assert se.num_equal(last.scalar, -2, s2.domain)
    assert se.num_equal(first.scalar, 2, s2.domain)
    for a, b in itertools.product(range(2), repeat=2):
        assert se.num_equal(last.ricci[a, b], -first.ricci[a, b], s2.domain)
        assert se.num_equal(last.ricci[a, b], last.ricci[b, a], s2.domain)
    # Einstein forms vanish identically in two dimensions
    assert all(s2.settled(E).is_zero for E in last.einstein_forms)


def test_ricci_flat_cases(s2, s2_nunes, mink):
    assert se.num_equal(ricci_data(s2_nunes).scalar, 0, s2.domain)
    M = ricci_data(levi_civita(mink))
    assert all_zero(mink, M.ricci) and M.scalar is se.ZERO


@pytest.mark.parametrize("fixture", ["s2", "polar", "e3"])
def test_levi_civita_cyclic_and_trace(fixture, request):
    G = request.getfixturevalue(fixture)
    R = levi_civita(G).curvature_components
    n = G.n
    for b, a, c, d in itertools.product(range(n), repeat=4):
        assert se.num_equal(R[b, a, c, d] + R[c, a, d, b] + R[d, a, b, c], 0, G.domain)
    for c, d in itertools.product(range(n), repeat=2):
        # R_a^a_{cd} = 0
        assert se.num_equal(se.esum(R[a, a, c, d] for a in range(n)), 0, G.domain)


# curvature difference --------------------------------------------------------


def test_curvature_difference_nunes(s2, s2_nunes):
    diff = curvature_difference(s2_nunes)
    assert mv_equal(diff.forms[0, 1], s2.form({(0, 1): -1}), s2.domain)
    assert same_arrays(s2, diff.J, diff.J_from_contorsion)


def test_curvature_difference_levi_civita(s2_lc, s2):
    assert all_zero(s2, curvature_difference(s2_lc).J)


def test_curvature_difference_random(e3, e3_rc):
    diff = curvature_difference(e3_rc)
    assert same_arrays(e3, diff.J, diff.J_from_contorsion)
    R, R0 = ricci_data(e3_rc).ricci, ricci_data(levi_civita(e3)).ricci
    for a, b in itertools.product(range(3), repeat=2):
        anti = (R[a, b] - R[b, a]) / 2
        assert se.num_equal(diff.ricci_antisymmetric[a, b], anti, e3.domain)
        assert se.num_equal(R[a, b] - R0[a, b], diff.ricci_J[a, b], e3.domain)


def test_contorsion_strain_split(e3, e3_rc):
    K = contorsion(e3, e3_rc.torsion_components)
    L, L0 = e3_rc.omega, levi_civita(e3).omega
    assert same_arrays(e3, K.K, np.vectorize(lambda x, y: x - y, otypes=[object])(L, L0))


# tetrad identity -------------------------------------------------------------


def test_tetrad_identity_flat():
    rep = tetrad_identity_check(levi_civita(flat_plane()))
    assert all(v is se.ZERO for v in rep.residual.flat)
    assert all(v is se.ZERO for v in rep.d_minus.flat)
    assert all(v is se.ZERO for v in rep.d_plus.flat)


@pytest.mark.parametrize("conn", ["s2_lc", "s2_nunes"])
def test_tetrad_identity_sphere(conn, s2, request):
    rep = tetrad_identity_check(request.getfixturevalue(conn))
    assert all_zero(s2, rep.residual)


def test_tetrad_pieces_on_sphere(s2, s2_lc):
    rep = tetrad_identity_check(s2_lc)
    at = {"t": math.pi / 4, "p": 1.0}
    # D⁻_μ q^a_ν stored [a, μ, ν]
    assert se.eval_at(rep.d_minus[1, 1, 0], at) == pytest.approx(-math.cos(math.pi / 4))
    assert se.eval_at(rep.d_minus[0, 1, 1], at) == pytest.approx(0.5)  # sin t cos t
    assert se.eval_at(rep.d_plus[1, 0, 1], at) == pytest.approx(math.cos(math.pi / 4))
    # the first-index component vanishes identically: ∂_t sin t − Γ^p_{tp} sin t = 0
    assert se.num_equal(rep.d_minus[1, 0, 1], 0, s2.domain)


def test_ricci_slot_accepts_strings(s2_lc):
    for name in ("last", "first"):
        a, b = ricci_data(s2_lc, name), ricci_data(s2_lc, RicciSlot(name))
        assert se.num_equal(a.scalar, b.scalar, s2_lc.geometry.domain)
    with pytest.raises(ValueError):
        ricci_data(s2_lc, "middle")
