"""Connections in the orthonormal frame and the data they determine.

A connection is stored by its frame coefficients ``omega[a, c, b]`` =
ω^a_{cb} = L^a_{cb}, meaning D_{e_c} e_b = ω^a_{cb} e_a and
ω^a_b = ω^a_{cb} θ^c.  Torsion and curvature come from Cartan's structure
equations::

    𝒯^a   = dθ^a + ω^a_b ∧ θ^b
    𝓡^a_b = dω^a_b + ω^a_c ∧ ω^c_b

and components are read off with the ½ normalisation
𝒯^a = ½ T^a_{bc} θ^b∧θ^c, 𝓡^a_b = ½ R_b^a_{cd} θ^c∧θ^d.  The component
formulas (torsion and curvature directly from L and c) are kept as a
separate code path so the two routes can be compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable

import numpy as np

from . import symexpr as se
from .manifold import Geometry, IndexedForms
from .multivector import Multivector
from .symexpr import Expr

__all__ = [
    "RicciSlot",
    "Connection",
    "CurvatureData",
    "Contorsion",
    "CurvatureDifference",
    "TetradReport",
    "levi_civita",
    "levi_civita_from_lie",
    "christoffel_from_metric",
    "from_coefficients",
    "from_contorsion",
    "contorsion",
    "torsion_forms",
    "curvature_forms",
    "ricci_data",
    "curvature_difference",
    "tetrad_identity_check",
    "tensor_cov_deriv",
    "frame_to_coordinates",
    "zeros",
]


class RicciSlot(str, Enum):
    """Which slot of R_μ^ρ_{αβ} is contracted with ρ.

    ``LAST``:  R_{μα} = R_μ^ρ_{αρ}  (default)
    ``FIRST``: R_{μα} = R_μ^ρ_{ρα}  (opposite sign)
    """

    LAST = "last"
    FIRST = "first"


def zeros(n: int, k: int) -> np.ndarray:
    arr = np.empty((n,) * k, dtype=object)
    arr.fill(se.ZERO)
    return arr


def _as_array(data, n: int, k: int, what: str) -> np.ndarray:
    src = np.asarray(data, dtype=object)
    if src.shape != (n,) * k:
        raise ValueError(f"{what} must have shape {(n,) * k}, got {src.shape}")
    out = np.empty(src.shape, dtype=object)
    for idx in np.ndindex(src.shape):
        out[idx] = se.as_expr(src[idx])
    return out


def _prod(*xs: Expr) -> Expr:
    out = se.ONE
    for x in xs:
        if x is se.ZERO:
            return se.ZERO
        out = out * x
    return out


def tensor_cov_deriv(
    L: np.ndarray,
    deriv: Callable[[Expr, int], Expr],
    T: np.ndarray,
    upper: int = 0,
    lower: int = 0,
    kinds: str | None = None,
) -> np.ndarray:
    """Components (D_α T)^{ρ…}_{β…} in whatever basis L and deriv refer to.

    The result has the derivative index α first.  With D_{e_α} e_β =
    L^ρ_{αβ} e_ρ, each upper index adds L^ρ_{ασ} T^{σ…} and each lower
    index subtracts L^σ_{αβ} T_{…σ…}.
    """
    n = L.shape[0]
    if kinds is None:
        kinds = "u" * upper + "l" * lower
    k = len(kinds)
    out = zeros(n, k + 1)
    for alpha in range(n):
        for idx in np.ndindex((n,) * k):
            terms = [deriv(T[idx], alpha)]
            for pos in range(k):
                for s in range(n):
                    rep = idx[:pos] + (s,) + idx[pos + 1 :]
                    if kinds[pos] == "u":
                        terms.append(_prod(L[idx[pos], alpha, s], T[rep]))
                    else:
                        terms.append(-_prod(L[s, alpha, idx[pos]], T[rep]))
            out[(alpha,) + idx] = se.esum(terms)
    return out


def frame_to_coordinates(
    G: Geometry, T: np.ndarray, upper: int = 0, lower: int = 0, kinds: str | None = None
) -> np.ndarray:
    """Change a tensor's components from the orthonormal frame to the
    coordinate basis (upper indices with the tetrad, lower with the
    cotetrad).

    ``kinds`` spells out the index positions when upper indices are not
    all in front, e.g. ``"lull"`` for R_μ^ρ_{αβ}.
    """
    n = G.n
    if kinds is None:
        kinds = "u" * upper + "l" * lower
    k = len(kinds)
    cur = T
    for pos in range(k):
        nxt = zeros(n, k)
        for idx in np.ndindex((n,) * k):
            terms = []
            for a in range(n):
                rep = idx[:pos] + (a,) + idx[pos + 1 :]
                m = G.e[idx[pos]][a] if kinds[pos] == "u" else G.q[a][idx[pos]]
                terms.append(_prod(m, cur[rep]))
            nxt[idx] = se.esum(terms)
        cur = nxt
    return cur


@dataclass
class CurvatureData:
    """Torsion, curvature and Ricci data of a connection."""

    torsion: IndexedForms
    curvature: IndexedForms
    T: np.ndarray  # T[a, b, c] = T^a_{bc}
    R: np.ndarray  # R[b, a, c, d] = R_b^a_{cd}
    ricci: np.ndarray  # ricci[a, b] = R_{ab}
    scalar: Expr
    ricci_forms: IndexedForms  # 𝓡^a = R^a_b θ^b
    einstein_forms: IndexedForms  # 𝒢^a = 𝓡^a − ½ R θ^a
    slot: RicciSlot


class Connection:
    """Frame connection coefficients plus everything derived from them."""

    def __init__(self, geometry: Geometry, omega, kind: str = "general", name: str = ""):
        n = geometry.n
        self.geometry = geometry
        self.omega = _as_array(omega, n, 3, "omega")
        self.kind = kind
        self.name = name

    @property
    def n(self) -> int:
        return self.geometry.n

    @property
    def L(self) -> np.ndarray:
        """Alias: L^ρ_{αβ} = ω^ρ_{αβ}."""
        return self.omega

    # forms -------------------------------------------------------------
    @cached_property
    def one_forms(self) -> np.ndarray:
        """W[a, b] = ω^a_b = ω^a_{cb} θ^c."""
        n, sig = self.n, self.geometry.sig
        W = np.empty((n, n), dtype=object)
        for a in range(n):
            for b in range(n):
                W[a, b] = Multivector(sig, {1 << c: self.omega[a, c, b] for c in range(n)})
        return W

    @cached_property
    def torsion(self) -> IndexedForms:
        G, n, W = self.geometry, self.n, self.one_forms
        out = np.empty(n, dtype=object)
        for a in range(n):
            acc = G.dtheta[a]
            for b in range(n):
                acc = acc + W[a, b].wedge(G.theta(b))
            out[a] = acc
        return IndexedForms(G, 1, 0, out)

    @cached_property
    def curvature(self) -> IndexedForms:
        G, n, W = self.geometry, self.n, self.one_forms
        out = np.empty((n, n), dtype=object)
        for a in range(n):
            for b in range(n):
                acc = G.d(W[a, b])
                for c in range(n):
                    acc = acc + W[a, c].wedge(W[c, b])
                out[a, b] = acc
        return IndexedForms(G, 1, 1, out)

    # components --------------------------------------------------------
    @cached_property
    def torsion_components(self) -> np.ndarray:
        """T[a, b, c] = T^a_{bc} read from 𝒯^a with the ½ convention."""
        n = self.n
        T = zeros(n, 3)
        for a in range(n):
            form = self.torsion[a]
            for b, c in itertools.combinations(range(n), 2):
                v = form[(1 << b) | (1 << c)]
                T[a, b, c] = v
                T[a, c, b] = -v
        return T

    @cached_property
    def curvature_components(self) -> np.ndarray:
        """R[b, a, c, d] = R_b^a_{cd} read from 𝓡^a_b with the ½ convention."""
        n = self.n
        R = zeros(n, 4)
        for a in range(n):
            for b in range(n):
                form = self.curvature[a, b]
                for c, d in itertools.combinations(range(n), 2):
                    v = form[(1 << c) | (1 << d)]
                    R[b, a, c, d] = v
                    R[b, a, d, c] = -v
        return R

    @cached_property
    def torsion_components_direct(self) -> np.ndarray:
        """T^ρ_{αβ} = L^ρ_{αβ} − L^ρ_{βα} − c^ρ_{αβ}."""
        n, L, c = self.n, self.omega, self.geometry.structure_coefficients
        T = zeros(n, 3)
        for r, a, b in itertools.product(range(n), repeat=3):
            T[r, a, b] = L[r, a, b] - L[r, b, a] - c[r][a][b]
        return T

    @cached_property
    def curvature_components_direct(self) -> np.ndarray:
        """R_μ^ρ_{αβ} = e_α(L^ρ_{βμ}) − e_β(L^ρ_{αμ}) + L^ρ_{ασ}L^σ_{βμ}
        − L^ρ_{βσ}L^σ_{αμ} − c^σ_{αβ} L^ρ_{σμ}."""
        G, n, L, c = self.geometry, self.n, self.omega, self.geometry.structure_coefficients
        R = zeros(n, 4)
        for m, r, a, b in itertools.product(range(n), repeat=4):
            terms = [G.pfaff(L[r, b, m], a), -G.pfaff(L[r, a, m], b)]
            for s in range(n):
                terms.append(_prod(L[r, a, s], L[s, b, m]))
                terms.append(-_prod(L[r, b, s], L[s, a, m]))
                terms.append(-_prod(c[s][a][b], L[r, s, m]))
            R[m, r, a, b] = se.esum(terms)
        return R

    # metric compatibility ---------------------------------------------------
    @cached_property
    def metric_compatibility_residual(self) -> np.ndarray:
        """ω_{abc} + ω_{cba} with ω_{abc} = η_{ad} ω^d_{bc}; zero iff
        the connection preserves the metric."""
        n, eta, w = self.n, self.geometry.eta, self.omega
        out = zeros(n, 3)
        for a, b, c in itertools.product(range(n), repeat=3):
            out[a, b, c] = w[a, b, c] * eta[a] + w[c, b, a] * eta[c]
        return out

    def is_metric_compatible(self, samples: int = se.DEFAULT_SAMPLES, tol: float = se.DEFAULT_TOL) -> bool:
        dom = self.geometry.domain
        return all(se.num_equal(v, 0, dom, samples, tol) for v in self.metric_compatibility_residual.flat)

    # coordinate view ------------------------------------------------------
    @cached_property
    def coordinate_coefficients(self) -> np.ndarray:
        """Γ[ρ, μ, ν] with D_{∂_μ} ∂_ν = Γ^ρ_{μν} ∂_ρ, from the frame
        coefficients by the change of basis ∂_ν = q^a_ν e_a."""
        G, n, w = self.geometry, self.n, self.omega
        out = zeros(n, 3)
        for mu, nu in itertools.product(range(n), repeat=2):
            # frame components X^b of D_{∂μ} ∂_ν
            X = []
            for b in range(n):
                terms = [G.partial(G.q[b][nu], mu)]
                for c in range(n):
                    for a in range(n):
                        terms.append(_prod(G.q[c][mu], G.q[a][nu], w[b, c, a]))
                X.append(se.esum(terms))
            for r in range(n):
                out[r, mu, nu] = se.esum(_prod(G.e[r][b], X[b]) for b in range(n))
        return out

    def ricci(self, slot: RicciSlot = RicciSlot.LAST) -> CurvatureData:
        return ricci_data(self, slot)

    def __repr__(self) -> str:
        return f"Connection({self.name or self.kind}, on {self.geometry!r})"


# --------------------------------------------------------------------------
# constructors


def levi_civita(G: Geometry) -> Connection:
    """Levi-Civita connection from the structure coefficients:

    ω^{cd}_k = ½(−c^c_{jk}η^{dj} + c^d_{jk}η^{cj} − η^{ca}η_{bk}η^{dj}c^b_{ja})

    and ω^c_{kd} = ω^{ce}_k η_{ed}.
    """
    n, eta, c = G.n, G.eta, G.structure_coefficients
    w = zeros(n, 3)
    for cc, d, k in itertools.product(range(n), repeat=3):
        # η diagonal: j = d in the first and third terms, j = c in the second, a = c
        val = (
            -c[cc][d][k] * eta[d]
            + c[d][cc][k] * eta[cc]
            - c[k][d][cc] * (eta[cc] * eta[k] * eta[d])
        ) * se.const(se.Fraction(1, 2))
        w[cc, k, d] = val * eta[d]
    return Connection(G, w, kind="levi-civita", name="Levi-Civita")


def levi_civita_from_lie(G: Geometry) -> Connection:
    """Independent route to the Levi-Civita coefficients:
    L̊^ρ_{αβ} = ½(b^ρ_{αβ} + c^ρ_{αβ}) with b^ρ_{αβ} = −(£_{e^ρ} g)_{αβ}.

    In the orthonormal frame g(e_α, e_β) is constant, so
    (£_X g)(e_α, e_β) = −g([X, e_α], e_β) − g(e_α, [X, e_β]) with
    X = e^ρ = η^{ρρ} e_ρ.
    """
    n, eta, c = G.n, G.eta, G.structure_coefficients
    w = zeros(n, 3)
    half = se.const(se.Fraction(1, 2))
    for r, a, b in itertools.product(range(n), repeat=3):
        lie = -eta[r] * (c[b][r][a] * eta[b] + c[a][r][b] * eta[a])
        w[r, a, b] = (-lie + c[r][a][b]) * half
    return Connection(G, w, kind="levi-civita", name="Levi-Civita (Lie route)")


def christoffel_from_metric(G: Geometry) -> np.ndarray:
    """Coordinate Christoffel symbols Γ[ρ, μ, ν] = ½ g^{ρσ}(∂_μ g_{σν} +
    ∂_ν g_{σμ} − ∂_σ g_{μν})."""
    n, g, gi = G.n, G.metric, G.inverse_metric
    out = zeros(n, 3)
    half = se.const(se.Fraction(1, 2))
    for r, m, v in itertools.product(range(n), repeat=3):
        terms = []
        for s in range(n):
            if gi[r][s] is se.ZERO:
                continue
            inner = G.partial(g[s][v], m) + G.partial(g[s][m], v) - G.partial(g[m][v], s)
            terms.append(_prod(gi[r][s], inner))
        out[r, m, v] = se.esum(terms) * half
    return out


def from_coefficients(G: Geometry, omega, name: str = "") -> Connection:
    """Store ω^a_{cb} verbatim; metric compatibility is reported by
    :meth:`Connection.is_metric_compatible`, not enforced."""
    return Connection(G, omega, kind="general", name=name)


@dataclass
class Contorsion:
    """K^ρ_{αβ} together with the strain split S = 2K − T = Š + (2/n) s g."""

    K: np.ndarray
    S: np.ndarray
    dilation: np.ndarray  # s^ρ = ½ g^{μν} S^ρ_{μν}
    shear: np.ndarray  # Š, traceless part of S


def contorsion(G: Geometry, T) -> Contorsion:
    """Metric-compatible contorsion of a frame torsion T[a, b, c] = T^a_{bc}:

    K^ρ_{αβ} = ½ η^{ρσ}(T_{σαβ} + T_{ασβ} + T_{βσα}),  T_{σαβ} = η_{σμ} T^μ_{αβ}.

    It is the unique K with K^ρ_{αβ} − K^ρ_{βα} = T^ρ_{αβ} and
    K_{ραβ} = −K_{βαρ}.
    """
    n, eta = G.n, G.eta
    T = _as_array(T, n, 3, "torsion")
    half = se.const(se.Fraction(1, 2))
    K = zeros(n, 3)
    for r, a, b in itertools.product(range(n), repeat=3):
        val = T[r, a, b] * eta[r] + T[a, r, b] * eta[a] + T[b, r, a] * eta[b]
        K[r, a, b] = val * (half * eta[r])
    S = zeros(n, 3)
    for r, a, b in itertools.product(range(n), repeat=3):
        S[r, a, b] = K[r, a, b] * 2 - T[r, a, b]
    dil = np.empty(n, dtype=object)
    for r in range(n):
        dil[r] = se.esum(S[r, m, m] * eta[m] for m in range(n)) * half
    shear = zeros(n, 3)
    for r, a, b in itertools.product(range(n), repeat=3):
        shear[r, a, b] = S[r, a, b] - (dil[r] * se.const(se.Fraction(2, n)) * eta[a] if a == b else se.ZERO)
    return Contorsion(K, S, dil, shear)


def from_contorsion(G: Geometry, T, name: str = "") -> Connection:
    """Metric-compatible connection with prescribed frame torsion:
    L = L̊ + K."""
    n = G.n
    T = _as_array(T, n, 3, "torsion")
    dom = G.domain
    for a, b, c in itertools.product(range(n), repeat=3):
        if b <= c and not se.num_equal(T[a, b, c] + T[a, c, b], 0, dom):
            raise ValueError(f"torsion is not antisymmetric in its lower indices at {(a, b, c)}")
    K = contorsion(G, T).K
    lc = levi_civita(G).omega
    w = zeros(n, 3)
    for idx in np.ndindex(w.shape):
        w[idx] = lc[idx] + K[idx]
    return Connection(G, w, kind="general", name=name or "from torsion")


# --------------------------------------------------------------------------
# derived data


def torsion_forms(C: Connection) -> IndexedForms:
    return C.torsion


def curvature_forms(C: Connection) -> IndexedForms:
    return C.curvature


def ricci_data(C: Connection, slot: RicciSlot = RicciSlot.LAST) -> CurvatureData:
    slot = RicciSlot(slot)
    G, n, eta = C.geometry, C.n, C.geometry.eta
    R = C.curvature_components
    ric = zeros(n, 2)
    for m, a in itertools.product(range(n), repeat=2):
        if slot is RicciSlot.LAST:
            ric[m, a] = se.esum(R[m, r, a, r] for r in range(n))
        else:
            ric[m, a] = se.esum(R[m, r, r, a] for r in range(n))
    scalar = se.esum(ric[a, a] * eta[a] for a in range(n))
    rforms = np.empty(n, dtype=object)
    gforms = np.empty(n, dtype=object)
    half = se.const(se.Fraction(1, 2))
    for a in range(n):
        rforms[a] = Multivector(G.sig, {1 << b: ric[a, b] * eta[a] for b in range(n)})
        gforms[a] = rforms[a] - G.theta(a) * (scalar * half)
    return CurvatureData(
        torsion=C.torsion,
        curvature=C.curvature,
        T=C.torsion_components,
        R=R,
        ricci=ric,
        scalar=scalar,
        ricci_forms=IndexedForms(G, 1, 0, rforms),
        einstein_forms=IndexedForms(G, 1, 0, gforms),
        slot=slot,
    )


@dataclass
class CurvatureDifference:
    """R = R̊ + J for a connection and the Levi-Civita connection of the
    same metric."""

    J: np.ndarray  # J[m, r, a, b] = R_m^r_{ab} − R̊_m^r_{ab}
    forms: IndexedForms  # 𝔍^a_b = 𝓡^a_b − 𝓡̊^a_b
    J_from_contorsion: np.ndarray  # D̊_α K^ρ_{βμ} − D̊_β K^ρ_{αμ} + K K − K K
    ricci_J: np.ndarray  # J_{μα} = R_{μα} − R̊_{μα}
    ricci_antisymmetric: np.ndarray  # R_{[μα]}
    ricci_symmetric: np.ndarray  # R_{(μα)}
    levi_civita: Connection


def curvature_difference(C: Connection, slot: RicciSlot = RicciSlot.LAST) -> CurvatureDifference:
    G, n = C.geometry, C.n
    lc = levi_civita(G)
    R, R0 = C.curvature_components, lc.curvature_components
    J = zeros(n, 4)
    for idx in np.ndindex(J.shape):
        J[idx] = R[idx] - R0[idx]
    forms = C.curvature - lc.curvature

    # independent route through the contorsion K = L − L̊
    K = zeros(n, 3)
    for idx in np.ndindex(K.shape):
        K[idx] = C.omega[idx] - lc.omega[idx]
    DK = tensor_cov_deriv(lc.omega, G.pfaff, K, 1, 2)  # DK[α, ρ, β, μ] = D̊_α K^ρ_{βμ}
    JK = zeros(n, 4)
    for m, r, a, b in itertools.product(range(n), repeat=4):
        terms = [DK[a, r, b, m], -DK[b, r, a, m]]
        for s in range(n):
            terms.append(_prod(K[r, a, s], K[s, b, m]))
            terms.append(-_prod(K[r, b, s], K[s, a, m]))
        JK[m, r, a, b] = se.esum(terms)

    ric = ricci_data(C, slot).ricci
    ric0 = ricci_data(lc, slot).ricci
    half = se.const(se.Fraction(1, 2))
    rJ, anti, symm = zeros(n, 2), zeros(n, 2), zeros(n, 2)
    for a, b in itertools.product(range(n), repeat=2):
        rJ[a, b] = ric[a, b] - ric0[a, b]
        anti[a, b] = (ric[a, b] - ric[b, a]) * half
        symm[a, b] = (ric[a, b] + ric[b, a]) * half
    return CurvatureDifference(J, forms, JK, rJ, anti, symm, lc)


@dataclass
class TetradReport:
    """Freshman identity ∂_μ q^a_ν + ω^a_{μb} q^b_ν − Γ^ρ_{μν} q^a_ρ = 0
    and the two partial derivatives that are often confused with it."""

    residual: np.ndarray  # [a, μ, ν]
    d_minus: np.ndarray  # D⁻_μ q^a_ν = ∂_μ q^a_ν − Γ^ρ_{μν} q^a_ρ, stored [a, μ, ν]
    d_plus: np.ndarray  # D⁺_μ q^a_ν = ∂_μ q^a_ν + ω^a_{μb} q^b_ν, stored [a, μ, ν]
    gamma: np.ndarray
    gamma_source: str


def tetrad_identity_check(C: Connection) -> TetradReport:
    """For Levi-Civita connections Γ is taken from the metric (Christoffel
    symbols), an independent route; otherwise from the change of frame."""
    G, n, w = C.geometry, C.n, C.omega
    if C.kind == "levi-civita":
        gamma, source = christoffel_from_metric(G), "christoffel symbols of the metric"
    else:
        gamma, source = C.coordinate_coefficients, "change of frame from omega"
    res, dm, dp = zeros(n, 3), zeros(n, 3), zeros(n, 3)
    for a, mu, nu in itertools.product(range(n), repeat=3):
        dq = G.partial(G.q[a][nu], mu)
        # ω^a_{μb} = q^c_μ ω^a_{cb}
        wq = se.esum(_prod(G.q[c][mu], w[a, c, b], G.q[b][nu]) for b in range(n) for c in range(n))
        gq = se.esum(_prod(gamma[r, mu, nu], G.q[a][r]) for r in range(n))
        res[a, mu, nu] = dq + wq - gq
        dm[a, mu, nu] = dq - gq
        dp[a, mu, nu] = dq + wq
    return TetradReport(res, dm, dp, gamma, source)
