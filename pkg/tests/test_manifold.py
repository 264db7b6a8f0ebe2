import itertools

import pytest

from geocalc import symexpr as se
from geocalc.manifold import SingularCotetradError, build_geometry, pfaff_derivative, structure_coefficients
from geocalc.multivector import mv_equal

t, p, r = se.sym("t"), se.sym("p"), se.sym("r")


def eq(G, a, b):
    return se.num_equal(a, b, G.domain)


def test_sphere_metric(s2):
    g = s2.metric
    assert eq(s2, g[0][0], 1) and eq(s2, g[1][1], se.sin(t) ** 2)
    assert g[0][1] is se.ZERO
    assert "sin(t)^2" in s2.render_metric()


def test_euclidean_identity_metric():
    G = build_geometry(["x", "y"], {"x": (-1, 1), "y": (-1, 1)}, (2, 0), [[1, 0], [0, 1]])
    assert G.metric == ((se.ONE, se.ZERO), (se.ZERO, se.ONE))
    c = G.structure_coefficients
    assert all(c[a][b][d] is se.ZERO for a, b, d in itertools.product(range(2), repeat=3))


def test_polar_metric_and_coefficients(polar):
    assert eq(polar, polar.metric[1][1], r * r)
    c = structure_coefficients(polar)
    assert eq(polar, c[1][0][1], -1 / r)
    assert eq(polar, c[1][1][0], 1 / r)


@pytest.mark.parametrize("fixture", ["s2", "polar", "e3", "mink"])
def test_frame_invariants(fixture, request):
    G = request.getfixturevalue(fixture)
    n = G.n
    for m, v in itertools.product(range(n), repeat=2):
        qe = se.esum(G.e[m][a] * G.q[a][v] for a in range(n))
        assert eq(G, qe, 1 if m == v else 0)
        g = se.esum(G.q[a][m] * G.q[a][v] * G.eta[a] for a in range(n))
        assert eq(G, G.metric[m][v], g)
        gi = se.esum(G.inverse_metric[m][k] * G.metric[k][v] for k in range(n))
        assert eq(G, gi, 1 if m == v else 0)
    c = G.structure_coefficients
    for a, b, d in itertools.product(range(n), repeat=3):
        assert eq(G, c[a][b][d], -c[a][d][b])


def test_sphere_structure_coefficients(s2):
    c = s2.structure_coefficients
    assert eq(s2, c[1][0][1], -se.cot(t))
    nonzero = [(a, b, d) for a, b, d in itertools.product(range(2), repeat=3) if not eq(s2, c[a][b][d], 0)]
    assert sorted(nonzero) == [(1, 0, 1), (1, 1, 0)]


@pytest.mark.parametrize("fixture", ["s2", "polar", "e3"])
def test_dtheta_two_ways(fixture, request):
    """dθ^a from c versus the coordinate exterior derivative of q^a_μ dx^μ."""
    G = request.getfixturevalue(fixture)
    n = G.n
    for a in range(n):
        comps = G.coordinate_components(G.dtheta[a])
        for m, v in itertools.combinations(range(n), 2):
            direct = G.partial(G.q[a][v], m) - G.partial(G.q[a][m], v)
            assert eq(G, comps.get((1 << m) | (1 << v), se.ZERO), direct)


def test_pfaff_examples(s2):
    A = s2.form({1: se.sin(t)})
    assert mv_equal(pfaff_derivative(s2, A, 0), s2.form({1: se.cos(t)}), s2.domain)
    assert pfaff_derivative(s2, s2.form({0: se.cos(t) ** 2}), 1).is_zero
    assert mv_equal(pfaff_derivative(s2, s2.form({0: p}), 1), s2.form({0: 1 / se.sin(t)}), s2.domain)


def test_volume_element(s2, polar, mink):
    assert s2.render_frame(s2.volume) == "θ¹∧θ²"
    assert s2.render_coordinate(s2.volume) == "sin(t)·dt∧dp"
    assert polar.render_coordinate(polar.volume) == "r·dr∧dp"
    assert mink.render_frame(mink.volume) == "θ⁰∧θ¹∧θ²∧θ³"


def test_orientation_flag():
    G = build_geometry(["x", "y"], {"x": (-1, 1), "y": (-1, 1)}, (2, 0), [[1, 0], [0, 1]], orientation=-1)
    assert G.volume.coeffs == {0b11: se.const(-1)}


def test_sqrt_det(s2):
    assert eq(s2, s2.sqrt_abs_det_g, se.sin(t))


def test_d_examples(s2):
    assert mv_equal(s2.d(s2.scalar(se.sin(t))), s2.form({0: se.cos(t)}), s2.domain)
    assert mv_equal(s2.d(s2.theta(1)), s2.form({(0, 1): se.cot(t)}), s2.domain)


def test_singular_cotetrad():
    with pytest.raises(SingularCotetradError):
        build_geometry(["x", "y"], {"x": (-1, 1), "y": (-1, 1)}, (2, 0), [[1, 1], [2, 2]])
    with pytest.raises(SingularCotetradError):
        build_geometry(["x", "y"], {"x": (-1, 1), "y": (-1, 1)}, (2, 0), [[1, 0], [0, "ln(x)"]])


def test_unknown_symbol_in_cotetrad():
    with pytest.raises(se.ParseError):
        build_geometry(["x", "y"], {"x": (-1, 1), "y": (-1, 1)}, (2, 0), [[1, 0], [0, "z"]])


def test_indexed_forms_shape_checks(s2):
    from geocalc.manifold import IndexedForms

    with pytest.raises(ValueError):
        IndexedForms(s2, 1, 0, [s2.theta(0)])
    with pytest.raises(ValueError):
        IndexedForms(s2, 1, 0, [s2.theta(0), s2.form({(0, 1): 1})])
