"""Differential operators on Clifford-valued form fields.

Everything acts on :class:`~geocalc.multivector.Multivector` fields whose
coefficients are :mod:`~geocalc.symexpr` expressions in the orthonormal
coframe of a :class:`~geocalc.manifold.Geometry`.

Two kinds of routes live side by side on purpose.  ``ext_d`` and
``codifferential`` are intrinsic (Pfaff derivatives, structure
coefficients, Hodge conjugation).  The Dirac-operator routes go through a
connection.  They are never aliased, so comparing them is a real test.

Sign conventions: torsion is 𝒯^a = dθ^a + ω^a_b∧θ^b, so the
connection-based formulas for d and δ read

    dA = 𝛛∧A + 𝒯^a∧(θ_a⌟A),    δA = −𝛛⌟A − 𝒯^a⌟(θ_a∧A).

``d_delta_via_rc(..., flip_torsion_term=True)`` evaluates the variant with
−𝒯^a∧(θ_a⌟A) in the d formula, which belongs to the opposite torsion
orientation, for comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import symexpr as se
from .connection import (
    Connection,
    RicciSlot,
    frame_to_coordinates,
    levi_civita,
    ricci_data,
    tensor_cov_deriv,
    zeros,
)
from .manifold import Geometry, IndexedForms
from .multivector import (
    Multivector,
    clifford_mul,
    grade_project,
    hodge_inverse,
    hodge_star,
    left_contract,
    mv_max_abs,
    wedge,
)
from .symexpr import Expr

__all__ = [
    "ext_d",
    "codifferential",
    "star",
    "star_inverse",
    "cov_deriv",
    "connection_bivector",
    "dirac",
    "dirac_wedge",
    "dirac_contract",
    "d_delta_via_rc",
    "hodge_dalembertian",
    "square_split",
    "covariant_dalembertian",
    "ricci_operator",
    "dot_square_symmetrized",
    "dot_square_dilation",
    "wedge_square_torsion",
    "dot_square_components",
    "dalembertian_theta_via_M",
    "ricci_operator_via_curvature",
    "einstein_operator",
    "einstein_operator_alt",
    "curvature_contraction_scalar",
    "ext_cov_d",
    "ext_cov_d_twice",
    "curvature_action",
    "BianchiReport",
    "bianchi_reports",
    "dual_bianchi_residual",
    "dual_curvature_trace",
    "dual_curvature_trace_epsilon",
    "theta_family",
    "metric_family",
    "first_bianchi_residual",
    "second_bianchi_residual",
    "first_bianchi_coordinate",
    "second_bianchi_coordinate",
    "DualTorsionReport",
    "dual_torsion_D",
    "EvansReport",
    "evans_check",
    "WaveEquationReport",
    "cotetrad_wave_equation",
]

HALF = se.const(Fraction(1, 2))


def _zero(G: Geometry) -> Multivector:
    return Multivector.zero(G.sig)


def _sum(G: Geometry, items) -> Multivector:
    out = _zero(G)
    for x in items:
        out = out + x
    return out


def _cached(C, key, build):
    cache = C.__dict__.setdefault("_calc_cache", {})
    if key not in cache:
        cache[key] = build()
    return cache[key]


# ---------------------------------------------------------------------------
# d, ⋆, δ


def ext_d(G: Geometry, A: Multivector) -> Multivector:
    """Exterior derivative (intrinsic: Pfaff derivatives plus dθ^a)."""
    return G.d(A)


def star(G: Geometry, A: Multivector) -> Multivector:
    return hodge_star(A, G.volume)


def star_inverse(G: Geometry, A: Multivector) -> Multivector:
    return hodge_inverse(A, G.volume)


def codifferential(G: Geometry, A: Multivector) -> Multivector:
    """δ = (−1)^r ⋆⁻¹ d ⋆ on the grade-r part."""
    out = _zero(G)
    for r in sorted(A.grades()):
        if r == 0:
            continue
        part = star_inverse(G, G.d(star(G, grade_project(A, r))))
        out = out + (part if r % 2 == 0 else -part)
    return out


def hodge_dalembertian(G: Geometry, A: Multivector) -> Multivector:
    """◇A = −(dδ + δd)A."""
    return -(G.d(codifferential(G, A)) + codifferential(G, G.d(A)))


# ---------------------------------------------------------------------------
# covariant derivative and Dirac operators


def connection_bivector(C: Connection, a: int) -> Multivector:
    """ω_a = ½ ω_a^{bc} θ_b∧θ_c, written with upper-index blades as
    ½ Σ η_b ω^b_{ac} θ^b∧θ^c."""

    def build():
        G, n, w, eta = C.geometry, C.n, C.omega, C.geometry.eta
        coeffs = {}
        for b, c in itertools.combinations(range(n), 2):
            # the (b, c) and (c, b) terms combine
            v = (w[b, a, c] * eta[b] - w[c, a, b] * eta[c]) * HALF
            coeffs[(1 << b) | (1 << c)] = v
        return Multivector(G.sig, coeffs)

    return _cached(C, ("omega_a", a), build)


def cov_deriv(C: Connection, A: Multivector, a: int) -> Multivector:
    """D_{e_a}A = ∂_{e_a}A + ½[ω_a, A] (metric-compatible connections)."""
    G = C.geometry
    wa = connection_bivector(C, a)
    pf = A.map(lambda v: G.pfaff(v, a))
    if wa.is_zero:
        return pf
    comm = clifford_mul(wa, A) - clifford_mul(A, wa)
    return pf + comm * HALF


def _derivs(C: Connection, A: Multivector) -> list[Multivector]:
    return [cov_deriv(C, A, a) for a in range(C.n)]


def dirac(C: Connection, A: Multivector) -> Multivector:
    """𝛛A = θ^a D_{e_a}A (Clifford product)."""
    G = C.geometry
    return _sum(G, (clifford_mul(G.theta(a), DA) for a, DA in enumerate(_derivs(C, A))))


def dirac_wedge(C: Connection, A: Multivector) -> Multivector:
    G = C.geometry
    return _sum(G, (wedge(G.theta(a), DA) for a, DA in enumerate(_derivs(C, A))))


def dirac_contract(C: Connection, A: Multivector) -> Multivector:
    G = C.geometry
    return _sum(G, (left_contract(G.theta(a), DA) for a, DA in enumerate(_derivs(C, A))))


def d_delta_via_rc(C: Connection, A: Multivector, flip_torsion_term: bool = False) -> tuple[Multivector, Multivector]:
    """(dA, δA) from a connection with torsion.

    With 𝒯^a = dθ^a + ω^a_b∧θ^b the torsion terms enter as
    dA = 𝛛∧A + 𝒯^a∧(θ_a⌟A) and δA = −𝛛⌟A − 𝒯^a⌟(θ_a∧A).
    ``flip_torsion_term`` flips the torsion term of d.
    """
    G = C.geometry
    s = -1 if flip_torsion_term else 1
    dA = dirac_wedge(C, A)
    dl = -dirac_contract(C, A)
    for a in range(C.n):
        Ta = C.torsion[a]
        if Ta.is_zero:
            continue
        ta = G.theta_lower(a)
        dA = dA + wedge(Ta, left_contract(ta, A)) * s
        dl = dl - left_contract(Ta, wedge(ta, A))
    return dA, dl


# ---------------------------------------------------------------------------
# squares of the Dirac operator


def _second_derivs(C: Connection, A: Multivector):
    """X[a][b] = D_a D_b A − ω^c_{ab} D_c A, the tensorial second derivative."""
    n, w = C.n, C.omega
    D1 = _derivs(C, A)
    X = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = cov_deriv(C, D1[b], a)
            for c in range(n):
                if w[c, a, b] is not se.ZERO:
                    acc = acc - D1[c] * w[c, a, b]
            X[a][b] = acc
    return D1, X


def square_split(C: Connection, A: Multivector) -> tuple[Multivector, Multivector]:
    """(𝛛·𝛛 A, 𝛛∧𝛛 A) with 𝛛² = 𝛛·𝛛 + 𝛛∧𝛛."""
    G, n, eta = C.geometry, C.n, C.geometry.eta
    _, X = _second_derivs(C, A)
    dot = _sum(G, (X[a][a] * eta[a] for a in range(n)))
    wdg = _zero(G)
    for a, b in itertools.combinations(range(n), 2):
        wdg = wdg + clifford_mul(Multivector.blade(G.sig, (a, b)), X[a][b] - X[b][a])
    return dot, wdg


def covariant_dalembertian(C: Connection, A: Multivector) -> Multivector:
    """□A = 𝛛·𝛛 A."""
    return square_split(C, A)[0]


def ricci_operator(C: Connection, A: Multivector) -> Multivector:
    """𝛛∧𝛛 A."""
    return square_split(C, A)[1]


def _lie_b(G: Geometry) -> np.ndarray:
    """b^ρ_{αβ} = −(£_{e^ρ} g)_{αβ} in the orthonormal frame."""
    n, eta, c = G.n, G.eta, G.structure_coefficients
    b = zeros(n, 3)
    for r, a, bb in itertools.product(range(n), repeat=3):
        b[r, a, bb] = (c[bb][r][a] * eta[bb] + c[a][r][bb] * eta[a]) * eta[r]
    return b


def dot_square_symmetrized(C: Connection, A: Multivector) -> Multivector:
    """½ g^{αβ}[D_αD_β + D_βD_α − (L^ρ_{αβ} + L^ρ_{βα})D_ρ] A."""
    G, n, eta, L = C.geometry, C.n, C.geometry.eta, C.omega
    D1 = _derivs(C, A)
    out = _zero(G)
    for a in range(n):
        term = cov_deriv(C, D1[a], a) * 2
        for r in range(n):
            term = term - D1[r] * (L[r, a, a] * 2)
        out = out + term * (HALF * eta[a])
    return out


def dot_square_dilation(C: Connection, A: Multivector) -> Multivector:
    """½ g^{αβ}(D_αD_β + D_βD_α − b^ρ_{αβ}D_ρ) A − s^ρ D_ρ A with b from the
    Lie derivative of the metric and s the dilation of the connection."""
    G, n, eta = C.geometry, C.n, C.geometry.eta
    b = _lie_b(G)
    dil = contorsion_like_dilation(C)
    D1 = _derivs(C, A)
    out = _zero(G)
    for a in range(n):
        term = cov_deriv(C, D1[a], a) * 2
        for r in range(n):
            term = term - D1[r] * b[r, a, a]
        out = out + term * (HALF * eta[a])
    for r in range(n):
        out = out - D1[r] * dil[r]
    return out


def contorsion_like_dilation(C: Connection) -> list[Expr]:
    """s^ρ = ½ g^{μν} S^ρ_{μν} with S the strain L − L̊ − ½T doubled."""
    G, n, eta = C.geometry, C.n, C.geometry.eta
    lc = levi_civita(G)
    T = C.torsion_components
    out = []
    for r in range(n):
        terms = []
        for m in range(n):
            # S^ρ_{μμ} = 2(L − L̊)^ρ_{μμ} − T^ρ_{μμ}, and T^ρ_{μμ} = 0
            terms.append((C.omega[r, m, m] - lc.omega[r, m, m]) * eta[m])
        out.append(se.esum(terms))
    return out


def wedge_square_torsion(C: Connection, A: Multivector) -> Multivector:
    """½ θ^α∧θ^β(D_αD_β − D_βD_α − c^ρ_{αβ}D_ρ) A − 𝒯^ρ D_ρ A."""
    G, n, c = C.geometry, C.n, C.geometry.structure_coefficients
    D1 = _derivs(C, A)
    out = _zero(G)
    for a, b in itertools.combinations(range(n), 2):
        inner = cov_deriv(C, D1[b], a) - cov_deriv(C, D1[a], b)
        for r in range(n):
            if c[r][a][b] is not se.ZERO:
                inner = inner - D1[r] * c[r][a][b]
        out = out + clifford_mul(Multivector.blade(G.sig, (a, b)), inner)
    for r in range(n):
        Tr = C.torsion[r]
        if not Tr.is_zero:
            out = out - clifford_mul(Tr, D1[r])
    return out


def dot_square_components(C: Connection, A: Multivector) -> Multivector:
    """□ on a homogeneous form, component by component:
    (1/r!) g^{αβ} D_αD_β ω_{α1…αr} θ^{α1}∧…∧θ^{αr}."""
    G, n, eta, L = C.geometry, C.n, C.geometry.eta, C.omega
    if A.is_zero:
        return A
    if len(A.grades()) > 1:
        return _sum(G, (dot_square_components(C, grade_project(A, k)) for k in sorted(A.grades())))
    r = A.homogeneous_grade()
    if r == 0:
        comp = np.empty((), dtype=object)
        comp[()] = A.scalar_part()
    else:
        comp = zeros(n, r)
        for idx in itertools.permutations(range(n), r):
            mask = sum(1 << i for i in idx)
            sgn = _perm_sign(idx)
            # lower-index components ω_{a1…ar} = η…η × upper coefficients
            v = A[mask]
            for i in idx:
                v = v * eta[i]
            comp[idx] = v if sgn > 0 else -v
    kinds = "l" * r
    D = tensor_cov_deriv(L, G.pfaff, comp, kinds=kinds)  # D[β, α1…]
    DD = tensor_cov_deriv(L, G.pfaff, D, kinds="l" + kinds)  # DD[α, β, α1…]
    out = {}
    for idx in itertools.combinations(range(n), r):
        mask = sum(1 << i for i in idx)
        v = se.esum(DD[(a, a) + idx] * eta[a] for a in range(n))
        for i in idx:
            v = v * eta[i]
        out[mask] = v
    return Multivector(G.sig, out)


def _perm_sign(idx) -> int:
    s = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                s = -s
    return s


def dalembertian_theta_via_M(C: Connection, mu: int) -> Multivector:
    """(𝛛·𝛛)θ^μ = −½ g^{αβ} M_ρ^μ_{αβ} θ^ρ with
    M_ρ^μ_{αβ} = e_α(L^μ_{βρ}) + e_β(L^μ_{αρ}) − L^μ_{ασ}L^σ_{βρ}
    − L^μ_{βσ}L^σ_{αρ} − b^σ_{αβ}L^μ_{σρ}.

    Valid for connections with vanishing dilation (in particular the
    Levi-Civita connection)."""
    G, n, eta, L = C.geometry, C.n, C.geometry.eta, C.omega
    b = _lie_b(G)
    coeffs = {}
    for r in range(n):
        terms = []
        for a in range(n):
            M = [G.pfaff(L[mu, a, r], a) * 2]
            for s in range(n):
                M.append(-(L[mu, a, s] * L[s, a, r]) * 2)
                M.append(-(b[s, a, a] * L[mu, s, r]))
            terms.append(se.esum(M) * eta[a])
        coeffs[1 << r] = -se.esum(terms) * HALF
    return Multivector(G.sig, coeffs)


def ricci_operator_via_curvature(C: Connection, A: Multivector) -> Multivector:
    """𝓡^σ∧(θ_σ⌟A) + 𝓡^{ρσ}∧(θ_σ⌟(θ_ρ⌟A)) for the Levi-Civita connection.

    𝓡^σ are the Ricci 1-forms with R_{ab} = R_a^c_{bc}, so that
    (∂|∧∂|)θ^σ = 𝓡^σ.  Note the order of the two contractions: the inner
    one is with the first index of 𝓡^{ρσ}."""
    G, n, eta = C.geometry, C.n, C.geometry.eta
    rf = ricci_data(C, RicciSlot.LAST).ricci_forms
    out = _zero(G)
    for s in range(n):
        out = out + wedge(rf[s], left_contract(G.theta_lower(s), A))
        for r in range(n):
            Rrs = C.curvature[r, s] * eta[s]
            if Rrs.is_zero:
                continue
            out = out + wedge(Rrs, left_contract(G.theta_lower(s), left_contract(G.theta_lower(r), A)))
    return out


def einstein_operator(C: Connection, A: Multivector) -> Multivector:
    """■A = ½ ⋆⁻¹(𝓡^{ρσ}∧ i_ρ i_σ ⋆A), i_σ = θ_σ⌟."""
    G, n, eta = C.geometry, C.n, C.geometry.eta
    sA = star(G, A)
    acc = _zero(G)
    for r in range(n):
        for s in range(n):
            Rrs = C.curvature[r, s] * eta[s]
            if Rrs.is_zero:
                continue
            acc = acc + wedge(Rrs, left_contract(G.theta_lower(r), left_contract(G.theta_lower(s), sA)))
    return star_inverse(G, acc) * HALF


def einstein_operator_alt(C: Connection, A: Multivector) -> Multivector:
    """■A = −½((∂|∧∂|)A + 𝓡^σ⌟(θ_σ∧A)).

    Here 𝓡^σ are the Ricci 1-forms of the other contraction,
    R_{μν} = R_μ^ρ_{ρν}; they are minus the ones with (∂|∧∂|)θ^σ = 𝓡^σ."""
    G, n = C.geometry, C.n
    rf = ricci_data(C, RicciSlot.FIRST).ricci_forms
    acc = ricci_operator(C, A)
    for s in range(n):
        acc = acc + left_contract(rf[s], wedge(G.theta_lower(s), A))
    return -acc * HALF


def curvature_contraction_scalar(C: Connection) -> Multivector:
    """θ_ρ∧θ_σ 𝓡^{ρσ} (Clifford product), summed."""
    G, n, eta = C.geometry, C.n, C.geometry.eta
    out = _zero(G)
    for r in range(n):
        for s in range(n):
            Rrs = C.curvature[r, s] * eta[s]
            if Rrs.is_zero:
                continue
            out = out + clifford_mul(wedge(G.theta_lower(r), G.theta_lower(s)), Rrs)
    return out


# ---------------------------------------------------------------------------
# exterior covariant derivative


def _check_shape(C: Connection, X: IndexedForms):
    if X.geometry.n != C.n or any(s != C.n for s in X.shape):
        raise ValueError(f"index extent {X.shape} does not match connection dimension {C.n}")


def ext_cov_d(C: Connection, X: IndexedForms) -> IndexedForms:
    """DX = dX + Σ_upper ω∧X − Σ_lower ω∧X."""
    _check_shape(C, X)
    G, n, W = C.geometry, C.n, C.one_forms
    k = X.upper + X.lower
    out = np.empty(X.shape, dtype=object)
    for idx in X.indices():
        acc = G.d(X[idx])
        for pos in range(k):
            for s in range(n):
                rep = idx[:pos] + (s,) + idx[pos + 1 :]
                if pos < X.upper:
                    w = W[idx[pos], s]
                    if not w.is_zero:
                        acc = acc + wedge(w, X[rep])
                else:
                    w = W[s, idx[pos]]
                    if not w.is_zero:
                        acc = acc - wedge(w, X[rep])
        out[idx] = acc
    return IndexedForms(G, X.upper, X.lower, out)


def ext_cov_d_twice(C: Connection, X: IndexedForms) -> IndexedForms:
    return ext_cov_d(C, ext_cov_d(C, X))


def curvature_action(C: Connection, X: IndexedForms) -> IndexedForms:
    """Σ_upper 𝓡∧X − Σ_lower 𝓡∧X, the expected value of DDX."""
    _check_shape(C, X)
    G, n, Rf = C.geometry, C.n, C.curvature
    k = X.upper + X.lower
    out = np.empty(X.shape, dtype=object)
    for idx in X.indices():
        acc = _zero(G)
        for pos in range(k):
            for s in range(n):
                rep = idx[:pos] + (s,) + idx[pos + 1 :]
                if pos < X.upper:
                    acc = acc + wedge(Rf[idx[pos], s], X[rep])
                else:
                    acc = acc - wedge(Rf[s, idx[pos]], X[rep])
        out[idx] = acc
    return IndexedForms(G, X.upper, X.lower, out)


def theta_family(G: Geometry) -> IndexedForms:
    data = np.empty(G.n, dtype=object)
    for a in range(G.n):
        data[a] = G.theta(a)
    return IndexedForms(G, 1, 0, data)


def metric_family(G: Geometry) -> IndexedForms:
    """g_{ab} = η_{ab} as a 0-form family with two lower indices."""
    data = np.empty((G.n, G.n), dtype=object)
    for a, b in itertools.product(range(G.n), repeat=2):
        data[a, b] = G.scalar(G.eta[a] if a == b else 0)
    return IndexedForms(G, 0, 2, data)


# ---------------------------------------------------------------------------
# Bianchi identities


@dataclass
class BianchiReport:
    """Residuals of the Bianchi identities.  Every entry should vanish."""

    first_frame: IndexedForms  # D𝒯^a − 𝓡^a_b∧θ^b
    second_frame: IndexedForms  # D𝓡^a_b
    first_coordinate: np.ndarray  # [ρ, μ, α, β] cyclic residual
    second_coordinate: np.ndarray  # [α, β, μ, ν, ρ] cyclic residual
    dual_first: IndexedForms  # δ⋆𝒯^a + θ^b⌟⋆𝓡^a_b − ω^a_b⌟⋆𝒯^b
    max_abs: dict = field(default_factory=dict)

    def passed(self, tol: float = 1e-9) -> bool:
        return all(v <= tol for v in self.max_abs.values())


def first_bianchi_residual(C: Connection) -> IndexedForms:
    G, n = C.geometry, C.n
    DT = ext_cov_d(C, C.torsion)
    out = np.empty(n, dtype=object)
    for a in range(n):
        out[a] = DT[a] - _sum(G, (wedge(C.curvature[a, b], G.theta(b)) for b in range(n)))
    return IndexedForms(G, 1, 0, out)


def second_bianchi_residual(C: Connection) -> IndexedForms:
    return ext_cov_d(C, C.curvature)


def _coordinate_tensors(C: Connection):
    def build():
        G = C.geometry
        Tc = frame_to_coordinates(G, C.torsion_components, kinds="ull")
        Rc = frame_to_coordinates(G, C.curvature_components, kinds="lull")
        gamma = C.coordinate_coefficients
        return Tc, Rc, gamma

    return _cached(C, "coord_tensors", build)


def first_bianchi_coordinate(C: Connection) -> np.ndarray:
    """Σ_cyc(μαβ)[R_μ^ρ_{αβ} − D_μT^ρ_{αβ} − T^κ_{μα}T^ρ_{κβ}]."""
    G, n = C.geometry, C.n
    Tc, Rc, gamma = _coordinate_tensors(C)
    DT = tensor_cov_deriv(gamma, G.partial, Tc, kinds="ull")  # [μ, ρ, α, β]
    out = zeros(n, 4)
    for r in range(n):
        for m, a, b in itertools.combinations(range(n), 3):
            terms = []
            for x, y, z in ((m, a, b), (a, b, m), (b, m, a)):
                terms.append(Rc[x, r, y, z])
                terms.append(-DT[x, r, y, z])
                for k in range(n):
                    terms.append(-(Tc[k, x, y] * Tc[r, k, z]))
            out[r, m, a, b] = se.esum(terms)
    return out


def second_bianchi_coordinate(C: Connection) -> np.ndarray:
    """Σ_cyc(μνρ)[D_μR_β^α_{νρ} + T^κ_{μν}R_β^α_{κρ}], stored [β, α, μ, ν, ρ]."""
    G, n = C.geometry, C.n
    Tc, Rc, gamma = _coordinate_tensors(C)
    DR = tensor_cov_deriv(gamma, G.partial, Rc, kinds="lull")  # [μ, β, α, ν, ρ]
    out = zeros(n, 5)
    for be, al in itertools.product(range(n), repeat=2):
        for m, nu, r in itertools.combinations(range(n), 3):
            terms = []
            for x, y, z in ((m, nu, r), (nu, r, m), (r, m, nu)):
                terms.append(DR[x, be, al, y, z])
                for k in range(n):
                    terms.append(Tc[k, x, y] * Rc[be, al, k, z])
            out[be, al, m, nu, r] = se.esum(terms)
    return out


def dual_bianchi_residual(C: Connection, sign: int | None = None) -> IndexedForms:
    """δ⋆𝒯^a − s(θ^b⌟⋆𝓡^a_b − ω^a_b⌟⋆𝒯^b).

    s = −1 in every dimension, from δ⋆X = −⋆dX on 2-forms and the first
    Bianchi identity.  A factor (−1)^{n−2} agrees only for odd n."""
    G, n, W = C.geometry, C.n, C.one_forms
    s = -1 if sign is None else sign
    out = np.empty(n, dtype=object)
    for a in range(n):
        lhs = codifferential(G, star(G, C.torsion[a]))
        rhs = _zero(G)
        for b in range(n):
            rhs = rhs + left_contract(G.theta(b), star(G, C.curvature[a, b]))
            rhs = rhs - left_contract(W[a, b], star(G, C.torsion[b]))
        out[a] = lhs - rhs * s
    return IndexedForms(G, 1, 0, out)


def dual_curvature_trace(C: Connection) -> np.ndarray:
    """⋆R^{ca}_{cd}, read off θ^b⌟⋆𝓡^a_b = ⋆R^{ca}_{cd} θ^d; stored [a, d].

    These are components of a dual, not of the Ricci tensor.  The 1-form
    only exists for n = 4; in other dimensions the grade-1 part is empty
    and the array is zero."""
    G, n = C.geometry, C.n
    out = zeros(n, 2)
    for a in range(n):
        X = _sum(G, (left_contract(G.theta(b), star(G, C.curvature[a, b])) for b in range(n)))
        for d in range(n):
            out[a, d] = X[1 << d]
    return out


def dual_curvature_trace_epsilon(C: Connection) -> np.ndarray:
    """Same components from 1/(n−2)! R^{makl} ε_{mkld} (four dimensions)."""
    import math

    G, n, eta = C.geometry, C.n, C.geometry.eta
    if n != 4:
        raise ValueError("the epsilon formula needs four dimensions")
    R = C.curvature_components  # R[b, a, c, d] = R_b^a_{cd}
    out = zeros(n, 2)
    fact = se.const(Fraction(1, math.factorial(n - 2)))
    orient = G.chart.orientation
    for a, d in itertools.product(range(n), repeat=2):
        terms = []
        for m, k, l in itertools.permutations(range(n), 3):
            idx = (m, k, l, d)
            if len(set(idx)) != n:
                continue
            eps = _perm_sign(idx) * orient
            # R^{makl} = η^m η^k η^l R_m^a_{kl}
            v = R[m, a, k, l] * (eta[m] * eta[k] * eta[l])
            terms.append(v if eps > 0 else -v)
        out[a, d] = se.esum(terms) * fact
    return out


def bianchi_reports(C: Connection, samples: int = se.DEFAULT_SAMPLES) -> BianchiReport:
    G = C.geometry
    dom = G.domain
    f1 = first_bianchi_residual(C)
    f2 = second_bianchi_residual(C)
    c1 = first_bianchi_coordinate(C)
    c2 = second_bianchi_coordinate(C)
    du = dual_bianchi_residual(C)
    ss = se.sample_set(dom, samples)

    def arr_max(arr):
        worst = 0.0
        for v in arr.flat:
            if v is not se.ZERO:
                worst = max(worst, float(np.abs(ss.eval(v)).max()))
        return worst

    mx = {
        "first_frame": f1.max_abs(samples),
        "second_frame": f2.max_abs(samples),
        "first_coordinate": arr_max(c1),
        "second_coordinate": arr_max(c2),
        "dual_first": du.max_abs(samples),
    }
    return BianchiReport(f1, f2, c1, c2, du, mx)


# ---------------------------------------------------------------------------
# D⋆𝒯 and the Evans equation


@dataclass
class DualTorsionReport:
    direct: IndexedForms  # d⋆𝒯^a + ω^a_b∧⋆𝒯^b
    decomposed: IndexedForms  # −⋆□̊θ − ⋆𝓡 + ⋆𝒥 − ⋆dδθ + ⋆δ(ω∧θ) + ω∧⋆𝒯
    decomposed_contraction: IndexedForms  # same with −⋆(ω^a_b⌟𝒯^b) as last term
    residual: float
    residual_contraction: float


def _star_dual_torsion_direct(C: Connection) -> IndexedForms:
    G, n, W = C.geometry, C.n, C.one_forms
    st = [star(G, C.torsion[b]) for b in range(n)]
    out = np.empty(n, dtype=object)
    for a in range(n):
        acc = G.d(st[a])
        for b in range(n):
            acc = acc + wedge(W[a, b], st[b])
        out[a] = acc
    return IndexedForms(G, 1, 0, out)


def dual_torsion_D(C: Connection, samples: int = se.DEFAULT_SAMPLES) -> DualTorsionReport:
    """D⋆𝒯^a by the definition and by the decomposition through the
    Levi-Civita operators.

    In the decomposition 𝓡^a − 𝒥^a = 𝓡̊^a is the Levi-Civita Ricci 1-form
    and d⋆𝒯^a is rewritten through ⋆δ𝒯^a with the grade sign of the
    codifferential made explicit."""
    G, n, W = C.geometry, C.n, C.one_forms
    lc = C if C.kind == "levi-civita" else levi_civita(G)
    ric = ricci_data(C).ricci_forms
    ric0 = ricci_data(lc).ricci_forms
    direct = _star_dual_torsion_direct(C)
    dec = np.empty(n, dtype=object)
    dec2 = np.empty(n, dtype=object)
    for a in range(n):
        th = G.theta(a)
        box = covariant_dalembertian(lc, th)
        Ja = ric[a] - ric0[a]
        wt = _sum(G, (wedge(W[a, b], G.theta(b)) for b in range(n)))
        # δ𝒯 = −□̊θ − 𝓡̊ − dδθ + δ(ω∧θ); d⋆ = (−1)^{r−1}... handled by
        # applying ⋆ to δ𝒯 with the sign that makes d⋆X = ±⋆δX exact
        delta_T = -box - ric[a] + Ja - G.d(codifferential(G, th)) + codifferential(G, wt)
        sgn = _dstar_sign(G, 2)
        base = star(G, delta_T) * sgn
        dec[a] = base + _sum(G, (wedge(W[a, b], star(G, C.torsion[b])) for b in range(n)))
        dec2[a] = base - _sum(G, (star(G, left_contract(W[a, b], C.torsion[b])) for b in range(n)))
    decomposed = IndexedForms(G, 1, 0, dec)
    decomposed2 = IndexedForms(G, 1, 0, dec2)
    return DualTorsionReport(
        direct,
        decomposed,
        decomposed2,
        (direct - decomposed).max_abs(samples),
        (direct - decomposed2).max_abs(samples),
    )


def _dstar_sign(G: Geometry, r: int) -> int:
    """s with d⋆X = s ⋆δX for X of grade r.

    From δ = (−1)^r ⋆⁻¹d⋆ we get d⋆X = (−1)^r ⋆δX."""
    return (-1) ** r


@dataclass
class EvansReport:
    lhs: IndexedForms  # D⋆𝒯^a
    rhs: IndexedForms  # ⋆𝓡^a_b∧θ^b
    difference: IndexedForms
    holds: list  # per index a
    max_difference: list
    two_route: DualTorsionReport
    dual_ricci_residual: float  # θ^b∧⋆𝓡^a_b + ⋆𝓡^a


def evans_check(C: Connection, samples: int = se.DEFAULT_SAMPLES, tol: float = se.DEFAULT_TOL) -> EvansReport:
    G, n = C.geometry, C.n
    two = dual_torsion_D(C, samples)
    lhs = two.direct
    rhs_data = np.empty(n, dtype=object)
    dual_ricci = np.empty(n, dtype=object)
    ric = ricci_data(C).ricci_forms
    for a in range(n):
        rhs_data[a] = _sum(G, (wedge(star(G, C.curvature[a, b]), G.theta(b)) for b in range(n)))
        dual_ricci[a] = _sum(G, (wedge(G.theta(b), star(G, C.curvature[a, b])) for b in range(n))) + star(G, ric[a])
    rhs = IndexedForms(G, 1, 0, rhs_data)
    diff = lhs - rhs
    holds = [diff[a].is_zero or mv_max_abs(diff[a], G.domain, samples) <= tol for a in range(n)]
    mx = [mv_max_abs(diff[a], G.domain, samples) for a in range(n)]
    return EvansReport(lhs, rhs, diff, holds, mx, two, IndexedForms(G, 1, 0, dual_ricci).max_abs(samples))


# ---------------------------------------------------------------------------
# Einstein equations as a wave equation for the cotetrad


@dataclass
class WaveEquationReport:
    source: IndexedForms  # 𝐓^a := 𝒢̊^a
    wave_form: IndexedForms  # −½R̊θ^a − □̊θ^a − dδθ^a − δdθ^a
    residual: float
    box: IndexedForms  # □̊θ^a
    hodge: IndexedForms  # ◇θ^a
    box_equals_hodge: bool
    ricci_flat: bool


def cotetrad_wave_equation(
    C: Connection, source: IndexedForms | None = None, samples: int = se.DEFAULT_SAMPLES, tol: float = se.DEFAULT_TOL
) -> WaveEquationReport:
    """Check 𝐓^a = −½R̊θ^a − □̊θ^a − dδθ^a − δdθ^a where 𝐓^a defaults to the
    Einstein 1-forms 𝓡̊^a − ½R̊θ^a of the geometry."""
    G, n = C.geometry, C.n
    data = ricci_data(C)
    src = data.einstein_forms if source is None else source
    wave = np.empty(n, dtype=object)
    box = np.empty(n, dtype=object)
    hod = np.empty(n, dtype=object)
    for a in range(n):
        th = G.theta(a)
        box[a] = covariant_dalembertian(C, th)
        hod[a] = hodge_dalembertian(G, th)
        wave[a] = (
            -(th * (data.scalar * HALF))
            - box[a]
            - G.d(codifferential(G, th))
            - codifferential(G, G.d(th))
        )
    wave_f = IndexedForms(G, 1, 0, wave)
    box_f, hod_f = IndexedForms(G, 1, 0, box), IndexedForms(G, 1, 0, hod)
    ricci_flat = all(se.num_equal(v, 0, G.domain, samples, tol) for v in data.ricci.flat)
    return WaveEquationReport(
        src,
        wave_f,
        (src - wave_f).max_abs(samples),
        box_f,
        hod_f,
        box_f.equal(hod_f, samples, tol),
        ricci_flat,
    )
