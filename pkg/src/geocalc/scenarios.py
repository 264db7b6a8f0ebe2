"""Built-in fixtures and the named checks that run on them.

A check is a function of a :class:`Case` (geometry + connection + sampling
settings) that returns a :class:`CheckResult`.  Scenarios bundle cases
with a list of checks and with expected values that carry a provenance tag:

``reference``  a published value, compared literally
``derived``    obtained by an independent hand computation
``trivial``    follows from the definitions (zero torsion, flat space...)

Statuses are ``pass``, ``fail`` and ``discrepancy-noted``.  The last one is
used when a reference value differs from ours only by a documented
convention (sign of torsion, slot of the Ricci contraction, normalisation
of components); the report then quotes both versions.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable

import numpy as np

from . import calculus as cal
from . import symexpr as se
from .connection import (
    Connection,
    RicciSlot,
    curvature_difference,
    from_coefficients,
    from_contorsion,
    levi_civita,
    levi_civita_from_lie,
    ricci_data,
    tensor_cov_deriv,
    tetrad_identity_check,
    zeros,
)
from .manifold import Geometry, IndexedForms, build_geometry
from .multivector import Multivector, left_contract, mv_max_abs, wedge
from .symexpr import Expr

__all__ = [
    "PASS",
    "FAIL",
    "NOTED",
    "Artifact",
    "CheckResult",
    "Case",
    "Scenario",
    "CHECKS",
    "GENERIC_CHECKS",
    "SCENARIOS",
    "get_scenario",
    "sphere_geometry",
    "flat_polar_geometry",
    "minkowski_geometry",
    "euclid3_geometry",
    "random_torsion",
    "sphere_levi_civita",
    "sphere_nunes",
    "flat_polar",
    "rc_euclid3",
    "maxwell_lorentzian",
    "maxwell_rc",
    "MaxwellReport",
    "MaxwellRCReport",
    "maxwell_fixtures",
    "sample_forms",
    "nunes_connection",
    "evans_scenario",
    "maxwell_flat",
    "maxwell_rc_scenario",
    "DEFAULT_CHECKS",
    "compare",
]

PASS, FAIL, NOTED = "pass", "fail", "discrepancy-noted"


# ---------------------------------------------------------------------------
# report records


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def pretty_indices(name: str) -> str:
    """'ω^2_1' -> 'ω²₁' (numeric indices only)."""
    name = re.sub(r"\^(\d+)", lambda m: m.group(1).translate(_SUP), name)
    return re.sub(r"_(\d+)", lambda m: m.group(1).translate(_SUB), name)


@dataclass
class Artifact:
    """A computed object, optionally with an expected value."""

    name: str
    value: object  # Multivector or Expr
    expected: object = None
    provenance: str = "derived"
    status: str = ""  # filled when expected is given
    note: str = ""

    def __post_init__(self):
        self.name = pretty_indices(self.name)


@dataclass
class CheckResult:
    name: str
    status: str
    max_residual: float = 0.0
    artifacts: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    values: dict = field(default_factory=dict)


@dataclass
class Case:
    """One geometry + connection with the sampling settings of a run."""

    label: str
    geometry: Geometry
    connection: Connection
    samples: int = se.DEFAULT_SAMPLES
    tol: float = se.DEFAULT_TOL
    extra: dict = field(default_factory=dict)

    @cached_property
    def lc(self) -> Connection:
        if self.connection.kind == "levi-civita":
            return self.connection
        return levi_civita(self.geometry)

    def mv_max(self, A: Multivector) -> float:
        return mv_max_abs(A, self.geometry.domain, self.samples)

    def expr_max(self, e: Expr) -> float:
        return se.max_abs_diff(e, 0, self.geometry.domain, self.samples)

    def close(self, value: float, scale: float = 0.0) -> bool:
        return value <= self.tol * (1 + scale)

    def equal(self, a, b) -> bool:
        if isinstance(a, Multivector) or isinstance(b, Multivector):
            a = a if isinstance(a, Multivector) else self.geometry.scalar(a)
            b = b if isinstance(b, Multivector) else self.geometry.scalar(b)
            return all(
                se.num_equal(a[m], b[m], self.geometry.domain, self.samples, self.tol)
                for m in set(a.coeffs) | set(b.coeffs)
            )
        return se.num_equal(a, b, self.geometry.domain, self.samples, self.tol)

    def residual(self, a, b) -> float:
        if isinstance(a, Multivector) or isinstance(b, Multivector):
            a = a if isinstance(a, Multivector) else self.geometry.scalar(a)
            b = b if isinstance(b, Multivector) else self.geometry.scalar(b)
            return self.mv_max(a - b)
        return se.max_abs_diff(a, b, self.geometry.domain, self.samples)


def _worst(*xs: float) -> float:
    return max([0.0, *xs])


def _forms_max(case: Case, X: IndexedForms) -> float:
    return X.max_abs(case.samples)


def _array_max(case: Case, arr) -> float:
    ss = se.sample_set(case.geometry.domain, case.samples)
    worst = 0.0
    for v in np.asarray(arr, dtype=object).flat:
        if v is not se.ZERO:
            worst = max(worst, float(np.abs(ss.eval(v)).max()))
    return worst


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def compare(case: Case, name: str, value, expected, provenance: str, alt=None, alt_note: str = "") -> Artifact:
    """Artifact with a literal comparison.  ``alt`` is the value expected
    under a different convention; matching it gives discrepancy-noted."""
    art = Artifact(name, value, expected, provenance)
    if case.equal(value, expected):
        art.status = PASS
    elif alt is not None and case.equal(value, alt):
        art.status = NOTED
        art.note = alt_note
    else:
        art.status = FAIL
    return art


def _combine(arts: list[Artifact], residual_ok: bool = True) -> str:
    states = {a.status for a in arts if a.status}
    if not residual_ok or FAIL in states:
        return FAIL
    if NOTED in states:
        return NOTED
    return PASS


# ---------------------------------------------------------------------------
# geometries


def sphere_geometry() -> Geometry:
    """Unit sphere, θ¹ = dt, θ² = sin(t) dp, away from the poles and seam."""
    return build_geometry(
        ["t", "p"], {"t": (0.2, 2.9), "p": (0.2, 6.0)}, (2, 0), [[1, 0], [0, "sin(t)"]], name="S2"
    )


def flat_polar_geometry() -> Geometry:
    return build_geometry(
        ["r", "p"], {"r": (0.5, 2.0), "p": (0.2, 6.0)}, (2, 0), [[1, 0], [0, "r"]], name="flat-polar"
    )


def euclid3_geometry() -> Geometry:
    """Euclidean 3-space in cylindrical coordinates."""
    return build_geometry(
        ["r", "p", "z"],
        {"r": (0.5, 2.0), "p": (0.2, 6.0), "z": (-1.0, 1.0)},
        (3, 0),
        [[1, 0, 0], [0, "r", 0], [0, 0, 1]],
        name="euclid3-cylindrical",
    )


def minkowski_geometry(parameters: dict | None = None) -> Geometry:
    names = ["x0", "x1", "x2", "x3"]
    bounds = {n: (-1.0, 1.0) for n in names}
    bounds.update(parameters or {})
    eye = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    return build_geometry(names, bounds, (1, 3), eye, name="minkowski", index_base=0)


_TEMPLATES = ("{x}", "{x}*{y}", "sin({x})", "cos({y})*{x}", "{x}^2 - {y}", "exp({x}/3)", "sin({x})*cos({y})")


def random_torsion(G: Geometry, seed: int = 7) -> np.ndarray:
    """Antisymmetric T[a, b, c] with coefficients drawn from a small menu of
    expressions in the chart coordinates (deterministic for a seed)."""
    rng = np.random.default_rng(seed)
    n, names = G.n, G.coords
    T = zeros(n, 3)
    for a in range(n):
        for b, c in itertools.combinations(range(n), 2):
            if rng.random() < 0.3:
                continue
            tpl = _TEMPLATES[rng.integers(len(_TEMPLATES))]
            x, y = names[rng.integers(n)], names[rng.integers(n)]
            k = int(rng.integers(1, 4)) * (1 if rng.random() < 0.5 else -1)
            v = se.parse_expr(tpl.format(x=x, y=y), set(names)) * Fraction(k, 2)
            T[a, b, c] = v
            T[a, c, b] = -v
    return T


def sample_forms(G: Geometry, seed: int = 11, per_grade: int = 2) -> list[Multivector]:
    """Deterministic test forms: ``per_grade`` homogeneous forms of each
    grade plus one inhomogeneous sum."""
    rng = np.random.default_rng(seed)
    n, names = G.n, G.coords
    out = []
    for r in range(n + 1):
        for _ in range(per_grade):
            coeffs = {}
            for idx in itertools.combinations(range(n), r):
                tpl = _TEMPLATES[rng.integers(len(_TEMPLATES))]
                x, y = names[rng.integers(n)], names[rng.integers(n)]
                coeffs[idx] = se.parse_expr(tpl.format(x=x, y=y), set(names))
            out.append(G.form(coeffs))
    total = Multivector.zero(G.sig)
    for A in out:
        total = total + A
    out.append(total)
    return out


# ---------------------------------------------------------------------------
# generic checks


def check_summary(case: Case) -> CheckResult:
    """Render the basic objects; no residual."""
    G, C = case.geometry, case.connection
    n = G.n
    arts = [Artifact("metric", G.scalar(0), note=G.render_metric(), provenance="derived")]
    c = G.structure_coefficients
    for a, b, d in itertools.product(range(n), repeat=3):
        if b < d and c[a][b][d] is not se.ZERO:
            arts.append(Artifact(f"c^{G.frame_label(a)}_{G.frame_label(b, d)}", se.settle(c[a][b][d], G.domain)))
    for a, b in itertools.product(range(n), repeat=2):
        W = C.one_forms[a, b]
        if not W.is_zero:
            arts.append(Artifact(f"ω^{G.frame_label(a)}_{G.frame_label(b)}", W))
    for a in range(n):
        if not C.torsion[a].is_zero:
            arts.append(Artifact(f"𝒯^{G.frame_label(a)}", C.torsion[a]))
    for a, b in itertools.product(range(n), repeat=2):
        if a < b and not C.curvature[a, b].is_zero:
            arts.append(Artifact(f"𝓡^{G.frame_label(a)}_{G.frame_label(b)}", C.curvature[a, b]))
    return CheckResult("summary", PASS, 0.0, arts)


def check_metric_compatibility(case: Case) -> CheckResult:
    C = case.connection
    res = _array_max(case, C.metric_compatibility_residual)
    return CheckResult("metric-compatibility", _status(case.close(res)), res, notes=["ω_{abc} + ω_{cba} = 0"])


def check_structure_routes(case: Case) -> CheckResult:
    """Torsion and curvature from the structure equations versus the
    component formulas in L and c."""
    C = case.connection
    n = C.n
    rt = _array_max(case, [C.torsion_components[i] - C.torsion_components_direct[i] for i in np.ndindex((n,) * 3)])
    rr = _array_max(
        case, [C.curvature_components[i] - C.curvature_components_direct[i] for i in np.ndindex((n,) * 4)]
    )
    res = _worst(rt, rr)
    return CheckResult(
        "structure-routes",
        _status(case.close(res)),
        res,
        values={"torsion": rt, "curvature": rr},
        notes=["T = L − L − c and R from L, e(L), c agree with Cartan's structure equations"],
    )


def check_bianchi(case: Case) -> CheckResult:
    rep = cal.bianchi_reports(case.connection, case.samples)
    res = _worst(*rep.max_abs.values())
    return CheckResult(
        "bianchi",
        _status(case.close(res)),
        res,
        values=dict(rep.max_abs),
        notes=[
            "frame: D𝒯^a − 𝓡^a_b∧θ^b and D𝓡^a_b",
            "coordinates: Σcyc R_μ^ρ_{αβ} = Σcyc (D_μT^ρ_{αβ} + T^κ_{μα}T^ρ_{κβ})",
            "coordinates: Σcyc (D_μR_β^α_{νρ} + T^κ_{μν}R_β^α_{κρ}) = 0",
            "dual: δ⋆𝒯^a = −(θ^b⌟⋆𝓡^a_b − ω^a_b⌟⋆𝒯^b)",
        ],
    )


def check_exterior_covariant(case: Case) -> CheckResult:
    """Dθ = 𝒯, DDX = Σ𝓡∧X, Dg = 0 and the graded Leibniz rule."""
    C, G = case.connection, case.geometry
    th = cal.theta_family(G)
    r1 = _forms_max(case, cal.ext_cov_d(C, th) - C.torsion)
    r2 = _forms_max(case, cal.ext_cov_d_twice(C, th) - cal.curvature_action(C, th))
    r3 = _forms_max(case, cal.ext_cov_d_twice(C, C.curvature) - cal.curvature_action(C, C.curvature))
    r4 = _forms_max(case, cal.ext_cov_d(C, cal.metric_family(G)))
    # Leibniz: D(θ ⊗ 𝒯) = Dθ ⊗ 𝒯 + (−1)^1 θ ⊗ D𝒯
    X, Y = th, C.torsion
    lhs = cal.ext_cov_d(C, X.wedge(Y))
    rhs = cal.ext_cov_d(C, X).wedge(Y) - X.wedge(cal.ext_cov_d(C, Y))
    r5 = _forms_max(case, lhs - rhs)
    vals = {"D theta - T": r1, "DD theta": r2, "DD R": r3, "D g": r4, "leibniz": r5}
    res = _worst(*vals.values())
    return CheckResult("exterior-covariant", _status(case.close(res)), res, values=vals)


def check_exterior_calculus(case: Case) -> CheckResult:
    """d² = 0, δ² = 0, the ⋆ commutation rules and the Levi-Civita Dirac
    operator identities on deterministic sample forms."""
    G, lc = case.geometry, case.lc
    worst: dict[str, float] = {}

    def upd(key, v):
        worst[key] = max(worst.get(key, 0.0), v)

    for A in sample_forms(G):
        dA, dlA = G.d(A), cal.codifferential(G, A)
        upd("dd", case.mv_max(G.d(dA)))
        upd("deltadelta", case.mv_max(cal.codifferential(G, dlA)))
        upd("wedge=d", case.mv_max(cal.dirac_wedge(lc, A) - dA))
        upd("contract=-delta", case.mv_max(cal.dirac_contract(lc, A) + dlA))
        box = cal.hodge_dalembertian(G, A)
        sq = cal.dirac(lc, cal.dirac(lc, A))
        upd("hodge=dirac^2", case.mv_max(box - sq))
        dot, wdg = cal.square_split(lc, A)
        upd("dot+wedge=dirac^2", case.mv_max(dot + wdg - sq))
        split2 = cal.dirac_contract(lc, cal.dirac_wedge(lc, A)) + cal.dirac_wedge(lc, cal.dirac_contract(lc, A))
        upd("contract-wedge+wedge-contract", case.mv_max(split2 - sq))
        upd("hodge*star", case.mv_max(cal.hodge_dalembertian(G, cal.star(G, A)) - cal.star(G, box)))
        for r in sorted(A.grades()):
            Ar = A.grade(r)
            # δ⋆ = (−1)^{r+1} ⋆d and ⋆δ = (−1)^r d⋆
            s1 = 1 if (r + 1) % 2 == 0 else -1
            upd("delta*star", case.mv_max(cal.codifferential(G, cal.star(G, Ar)) - cal.star(G, G.d(Ar)) * s1))
            s2 = 1 if r % 2 == 0 else -1
            upd("star*delta", case.mv_max(cal.star(G, cal.codifferential(G, Ar)) - G.d(cal.star(G, Ar)) * s2))
    res = _worst(*worst.values())
    return CheckResult("exterior-calculus", _status(case.close(res)), res, values=worst)


def check_d_delta_connection(case: Case) -> CheckResult:
    """d and δ through the connection with torsion equal the intrinsic ones."""
    G, C = case.geometry, case.connection
    rd = rl = rp = 0.0
    for A in sample_forms(G, seed=13):
        d1, l1 = cal.d_delta_via_rc(C, A)
        rd = max(rd, case.mv_max(d1 - G.d(A)))
        rl = max(rl, case.mv_max(l1 - cal.codifferential(G, A)))
        d2, _ = cal.d_delta_via_rc(C, A, flip_torsion_term=True)
        rp = max(rp, case.mv_max(d2 - G.d(A)))
    res = _worst(rd, rl)
    notes = ["dA = 𝛛∧A + 𝒯^a∧(θ_a⌟A), δA = −𝛛⌟A − 𝒯^a⌟(θ_a∧A) with 𝒯^a = dθ^a + ω^a_b∧θ^b"]
    status = _status(case.close(res))
    if not case.close(rp):
        notes.append(
            f"the variant dA = 𝛛∧A − 𝒯^a∧(θ_a⌟A) misses the intrinsic d by {rp:.3e}; "
            "it corresponds to the opposite orientation of the torsion 2-forms"
        )
        if status == PASS:
            status = NOTED
    return CheckResult("d-delta-via-connection", status, res, values={"d": rd, "delta": rl, "variant d": rp}, notes=notes)


def check_square_forms(case: Case) -> CheckResult:
    """The alternative expressions for 𝛛·𝛛 and 𝛛∧𝛛."""
    G, C = case.geometry, case.connection
    worst: dict[str, float] = {}
    for A in sample_forms(G, seed=17):
        dot, wdg = cal.square_split(C, A)
        full = cal.dirac(C, cal.dirac(C, A))
        for key, v in (
            ("dot+wedge", dot + wdg - full),
            ("symmetrized", cal.dot_square_symmetrized(C, A) - dot),
            ("dilation", cal.dot_square_dilation(C, A) - dot),
            ("torsion", cal.wedge_square_torsion(C, A) - wdg),
            ("components", cal.dot_square_components(C, A) - dot),
        ):
            worst[key] = max(worst.get(key, 0.0), case.mv_max(v))
    res = _worst(*worst.values())
    return CheckResult("square-forms", _status(case.close(res)), res, values=worst)


def check_ricci_equation(case: Case) -> CheckResult:
    """(∂|∧∂|)θ^a = 𝓡̊^a, (∂|·∂|)θ^a from the M-tensor, and the curvature
    expansion of ∂|∧∂|."""
    G, lc = case.geometry, case.lc
    rf = ricci_data(lc).ricci_forms
    arts, r1, r2, r3 = [], 0.0, 0.0, 0.0
    for a in range(G.n):
        th = G.theta(a)
        val = cal.ricci_operator(lc, th)
        r1 = max(r1, case.mv_max(val - rf[a]))
        r2 = max(r2, case.mv_max(cal.dalembertian_theta_via_M(lc, a) - cal.covariant_dalembertian(lc, th)))
        arts.append(Artifact(f"(∂|∧∂|)θ^{G.frame_label(a)}", G.settled(val), G.settled(rf[a])))
    for A in sample_forms(G, seed=19):
        r3 = max(r3, case.mv_max(cal.ricci_operator_via_curvature(lc, A) - cal.ricci_operator(lc, A)))
    for art in arts:
        art.status = PASS if case.equal(art.value, art.expected) else FAIL
    res = _worst(r1, r2, r3)
    return CheckResult(
        "ricci-equation",
        _status(case.close(res)),
        res,
        arts,
        values={"ricci forms": r1, "M tensor": r2, "curvature expansion": r3},
        notes=["𝓡^a = R^a_b θ^b with R_{ab} = R_a^c_{bc}"],
    )


def check_einstein_operator(case: Case) -> CheckResult:
    G, lc = case.geometry, case.lc
    gf = ricci_data(lc).einstein_forms
    r1 = r2 = 0.0
    arts = []
    for a in range(G.n):
        th = G.theta(a)
        val = cal.einstein_operator(lc, th)
        r1 = max(r1, case.mv_max(val - gf[a]))
        arts.append(Artifact(f"■θ^{G.frame_label(a)}", G.settled(val), G.settled(gf[a]), status=PASS))
    for A in sample_forms(G, seed=23):
        r2 = max(r2, case.mv_max(cal.einstein_operator(lc, A) - cal.einstein_operator_alt(lc, A)))
    res = _worst(r1, r2)
    for art in arts:
        art.status = PASS if case.equal(art.value, art.expected) else FAIL
    return CheckResult(
        "einstein-operator", _status(case.close(res)), res, arts, values={"einstein forms": r1, "two forms": r2}
    )


def check_dual_torsion(case: Case) -> CheckResult:
    rep = cal.dual_torsion_D(case.connection, case.samples)
    G = case.geometry
    arts = [Artifact(f"D⋆𝒯^{G.frame_label(a)}", G.settled(rep.direct[a])) for a in range(G.n)]
    res = _worst(rep.residual, rep.residual_contraction)
    return CheckResult(
        "dual-torsion-two-route",
        _status(case.close(res)),
        res,
        arts,
        values={"with ω∧⋆𝒯": rep.residual, "with −⋆(ω⌟𝒯)": rep.residual_contraction},
        notes=["D⋆𝒯^a = d⋆𝒯^a + ω^a_b∧⋆𝒯^b versus −⋆□̊θ^a − ⋆𝓡^a + ⋆𝒥^a − ⋆dδθ^a + ⋆δ(ω^a_b∧θ^b) + ω^a_b∧⋆𝒯^b"],
    )


def check_evans(case: Case) -> CheckResult:
    """Does D⋆𝒯^a = ⋆𝓡^a_b∧θ^b hold?  ``fail`` when it does not."""
    G = case.geometry
    rep = cal.evans_check(case.connection, case.samples, case.tol)
    arts = []
    for a in range(G.n):
        lab = G.frame_label(a)
        arts.append(Artifact(f"D⋆𝒯^{lab}", G.settled(rep.lhs[a])))
        arts.append(Artifact(f"⋆𝓡^{lab}_b∧θ^b", G.settled(rep.rhs[a])))
    held = all(rep.holds)
    notes = [f"index {G.frame_label(a)}: {'holds' if h else 'violated'}" for a, h in enumerate(rep.holds)]
    notes.append(f"θ^b∧⋆𝓡^a_b + ⋆𝓡^a residual {rep.dual_ricci_residual:.3e}")
    return CheckResult(
        "evans-equation",
        PASS if held else FAIL,
        max(rep.max_difference),
        arts,
        notes=notes,
        values={"max |LHS − RHS| per index": [float(x) for x in rep.max_difference]},
    )


def check_tetrad(case: Case) -> CheckResult:
    G, C = case.geometry, case.connection
    rep = tetrad_identity_check(C)
    res = _array_max(case, rep.residual)
    ss = se.sample_set(G.domain, case.samples)
    dm = {}
    for a, mu, nu in itertools.product(range(G.n), repeat=3):
        v = rep.d_minus[a, mu, nu]
        if v is not se.ZERO:
            dm[f"D⁻_{G.coords[mu]} q^{G.frame_label(a)}_{G.coords[nu]}"] = se.render(v)
    notes = [
        "∂_μ q^a_ν + ω^a_{μb} q^b_ν − Γ^ρ_{μν} q^a_ρ = 0 with Γ from " + rep.gamma_source,
        "the separate pieces D⁻ = ∂q − Γq and D⁺ = ∂q + ωq are not zero in general",
    ]
    return CheckResult(
        "tetrad-identity",
        _status(case.close(res)),
        res,
        notes=notes,
        values={"nonzero D⁻ components": dm, "max |D⁻|": _array_max(case, rep.d_minus)},
    )


def check_wave_equation(case: Case) -> CheckResult:
    G, lc = case.geometry, case.lc
    rep = cal.cotetrad_wave_equation(lc, samples=case.samples, tol=case.tol)
    ok = case.close(rep.residual) and rep.box_equals_hodge == rep.ricci_flat
    return CheckResult(
        "wave-equation",
        _status(ok),
        rep.residual,
        values={"box equals hodge": rep.box_equals_hodge, "ricci flat": rep.ricci_flat},
        notes=[
            "𝐓^a := 𝓡̊^a − ½R̊θ^a equals −½R̊θ^a − □̊θ^a − dδθ^a − δdθ^a",
            "□̊θ^a = ◇θ^a exactly when the metric is Ricci flat",
        ],
    )


def check_contorsion(case: Case) -> CheckResult:
    """Rebuild the connection from its torsion and compare R − R̊ with the
    contorsion formula."""
    C, G = case.connection, case.geometry
    n = G.n
    rebuilt = from_contorsion(G, C.torsion_components)
    r1 = _array_max(case, [C.omega[i] - rebuilt.omega[i] for i in np.ndindex((n,) * 3)])
    diff = curvature_difference(C)
    r2 = _array_max(case, [diff.J[i] - diff.J_from_contorsion[i] for i in np.ndindex((n,) * 4)])
    r3 = _array_max(case, [levi_civita_from_lie(G).omega[i] - case.lc.omega[i] for i in np.ndindex((n,) * 3)])
    res = _worst(r1, r2, r3)
    return CheckResult(
        "contorsion",
        _status(case.close(res)),
        res,
        values={"rebuild from torsion": r1, "curvature difference": r2, "levi-civita two routes": r3},
        notes=["K^ρ_{αβ} = ½η^{ρσ}(T_{σαβ} + T_{ασβ} + T_{βσα}); L = L̊ + K"],
    )


def check_ricci_slot(case: Case) -> CheckResult:
    """Both contraction slots side by side."""
    C = case.connection
    last, first = ricci_data(C, RicciSlot.LAST), ricci_data(C, RicciSlot.FIRST)
    G = case.geometry
    arts = [
        Artifact("R (R_{μα} = R_μ^ρ_{αρ})", se.settle(last.scalar, G.domain)),
        Artifact("R (R_{μν} = R_μ^ρ_{ρν})", se.settle(first.scalar, G.domain)),
        Artifact("θ_ρ∧θ_σ𝓡^{ρσ}", G.settled(cal.curvature_contraction_scalar(C))),
    ]
    same = all(se.num_equal(v, 0, G.domain, case.samples, case.tol) for v in last.ricci.flat)
    notes = [
        "two contractions of R_μ^ρ_{αβ} are in use: R_{μα} = R_μ^ρ_{αρ} (used here) and R_{μν} = R_μ^ρ_{ρν}",
        "they differ by an overall sign; the identity θ_ρ∧θ_σ𝓡^{ρσ} = −R holds with the second one",
    ]
    return CheckResult("ricci-slot", PASS if same else NOTED, 0.0, arts, notes=notes)


GENERIC_CHECKS: dict[str, Callable[[Case], CheckResult]] = {
    "summary": check_summary,
    "metric-compatibility": check_metric_compatibility,
    "structure-routes": check_structure_routes,
    "bianchi": check_bianchi,
    "exterior-covariant": check_exterior_covariant,
    "exterior-calculus": check_exterior_calculus,
    "d-delta-via-connection": check_d_delta_connection,
    "square-forms": check_square_forms,
    "ricci-equation": check_ricci_equation,
    "einstein-operator": check_einstein_operator,
    "dual-torsion-two-route": check_dual_torsion,
    "evans-equation": check_evans,
    "tetrad-identity": check_tetrad,
    "wave-equation": check_wave_equation,
    "contorsion": check_contorsion,
    "ricci-slot": check_ricci_slot,
}

# run by default on spec files; the Evans check is opt-in because a failure
# there is the expected outcome
DEFAULT_CHECKS = [k for k in GENERIC_CHECKS if k != "evans-equation"]


# ---------------------------------------------------------------------------
# sphere fixtures


def _s2_golden(case: Case) -> CheckResult:
    G, C = case.geometry, case.connection
    t = se.sym("t")
    cot, sin = se.cot(t), se.sin(t)
    c = G.structure_coefficients
    arts = [
        compare(case, "c^2_12", c[1][0][1], -cot, "reference"),
        compare(case, "ω^2_1", C.one_forms[1, 0], G.form({1: cot}), "reference"),
        compare(case, "𝓡^1_2", C.curvature[0, 1], G.form({(0, 1): 1}), "reference"),
        compare(case, "⋆𝓡^1_2", cal.star(G, C.curvature[0, 1]), G.scalar(1), "reference"),
        compare(
            case,
            "⋆𝓡^1_b∧θ^b",
            G.settled(cal.evans_check(C).rhs[0]),
            G.theta(1),
            "reference",
        ),
        compare(case, "𝒯^a", C.torsion[0] + C.torsion[1], G.scalar(0), "trivial"),
        compare(case, "d(sin t)", G.d(G.scalar(sin)), G.form({0: se.cos(t)}), "trivial"),
        compare(case, "d(θ^2)", G.d(G.theta(1)), G.form({(0, 1): cot}), "reference"),
        compare(case, "D_{e_1}θ^2", cal.cov_deriv(C, G.theta(1), 0), G.scalar(0), "derived"),
        compare(case, "D_{e_2}θ^2", cal.cov_deriv(C, G.theta(1), 1), G.form({0: -cot}), "derived"),
    ]
    bi = cal.first_bianchi_coordinate(C)
    arts.append(compare(case, "Σcyc R_μ^ρ_{αβ}", G.scalar(_sum_abs_free(bi)), G.scalar(0), "reference"))
    for art in arts:
        art.value = G.settled(art.value) if isinstance(art.value, Multivector) else se.settle(art.value, G.domain)
    return CheckResult("golden", _combine(arts), 0.0, arts)


def _sum_abs_free(arr) -> Expr:
    """Sum of squares of an array's entries, zero iff every entry is."""
    return se.esum(v * v for v in np.asarray(arr, dtype=object).flat)


def _s2_normalisation(case: Case) -> CheckResult:
    """Component normalisation of the curvature 2-forms."""
    C, G = case.connection, case.geometry
    R = C.curvature_components
    ours = se.settle(R[1, 0, 0, 1], G.domain)
    arts = [
        Artifact("R_2^1_12 with 𝓡^a_b = ½R_b^a_{cd}θ^c∧θ^d", ours, provenance="derived"),
        Artifact("R_2^1_12 with 𝓡^a_b = R_b^a_{cd}θ^c∧θ^d (½)", se.const(Fraction(1, 2)), provenance="reference"),
        Artifact("R with R_{μα} = R_μ^ρ_{αρ}", se.settle(ricci_data(C).scalar, G.domain)),
        Artifact("R quoted with the ½ components", se.const(-1), provenance="reference"),
    ]
    ok = case.equal(ours, 1)
    notes = [
        "𝓡^1_2 = θ^1∧θ^2 and the ½ normalisation give R_2^1_12 = −R_2^1_21 = 1",
        "the value ½ (and the scalar −1 that goes with it) needs 𝓡^a_b = R_b^a_{cd}θ^c∧θ^d without the ½",
    ]
    return CheckResult("curvature-normalisation", NOTED if ok else FAIL, 0.0, arts, notes=notes)


def _s2_tetrad_misreading(case: Case) -> CheckResult:
    """D⁻_μ q^a_ν = ∂_μ q^a_ν − Γ^ρ_{μν} q^a_ρ and D⁺_μ q^a_ν = ∂_μ q^a_ν +
    ω^a_{μb} q^b_ν are not zero separately, only their combination is."""
    G, C = case.geometry, case.connection
    rep = tetrad_identity_check(C)
    point = {"t": math.pi / 4, "p": 1.0}
    dm, dp = {}, {}
    for a, mu, nu in itertools.product(range(G.n), repeat=3):
        lab = f"_{mu + 1} q^{a + 1}_{nu + 1}"
        dm["D⁻" + lab] = se.eval_at(rep.d_minus[a, mu, nu], point)
        dp["D⁺" + lab] = se.eval_at(rep.d_plus[a, mu, nu], point)
    biggest = max(abs(v) for v in (*dm.values(), *dp.values()))
    named = abs(dm["D⁻_1 q^2_2"])
    notes = [
        "values at t = π/4",
        "D⁻_2 q^2_1 = −cos(t), D⁻_2 q^1_2 = sin(t)cos(t) and D⁺_1 q^2_2 = cos(t) are nonzero",
        "D⁻_1 q^2_2 = cos(t) − Γ^p_{tp} sin(t) = cos(t) − cot(t)sin(t) vanishes identically, "
        "so the misreading cannot be shown on that particular component",
    ]
    status = FAIL if biggest < 0.1 else (PASS if named >= 0.1 else NOTED)
    return CheckResult(
        "tetrad-misreading",
        status,
        _array_max(case, rep.residual),
        notes=notes,
        values={"D⁻ at t=π/4": dm, "D⁺ at t=π/4": dp, "max |D±|": biggest, "|D⁻_1 q^2_2|": named},
    )


def _nunes_golden(case: Case) -> CheckResult:
    G, C = case.geometry, case.connection
    t = se.sym("t")
    cot, sin = se.cot(t), se.sin(t)
    orient = (
        "opposite orientation of the torsion 2-form: with 𝒯^a = dθ^a + ω^a_b∧θ^b and ω = 0 one gets "
        "𝒯^2 = dθ^2 = cot(t)θ^1∧θ^2"
    )
    T = C.torsion_components
    lhs = cal.dual_torsion_D(C).direct
    arts = [
        compare(case, "𝓡^a_b", G.scalar(_sum_abs_free(C.curvature_components)), G.scalar(0), "reference"),
        compare(
            case, "𝒯^2", C.torsion[1], G.form({(0, 1): -cot}), "reference", alt=G.form({(0, 1): cot}), alt_note=orient
        ),
        compare(case, "T^2_21", T[1, 1, 0], cot, "reference", alt=-cot, alt_note=orient),
        compare(case, "T^2_12", T[1, 0, 1], cot, "derived"),
        compare(case, "metric compatibility", G.scalar(_sum_abs_free(C.metric_compatibility_residual)), G.scalar(0), "reference"),
        compare(
            case,
            "D⋆𝒯^2",
            lhs[1],
            G.form({0: 1 / (sin * sin)}),
            "derived",
            alt=G.form({0: -1 / (sin * sin)}),
            alt_note="⋆𝒯^2 = cot(t) here, so D⋆𝒯^2 = d cot(t) = −θ^1/sin²(t)",
        ),
        compare(case, "⋆𝓡^a_b∧θ^b", cal.evans_check(C).rhs[1], G.scalar(0), "derived"),
    ]
    for a in range(2):
        for b in range(2):
            arts.append(compare(case, f"D_{{e_{a + 1}}}θ^{b + 1}", cal.cov_deriv(C, G.theta(b), a), G.scalar(0), "reference"))
    for art in arts:
        art.value = G.settled(art.value) if isinstance(art.value, Multivector) else se.settle(art.value, G.domain)
    return CheckResult("golden", _combine(arts), 0.0, arts)


def _polar_golden(case: Case) -> CheckResult:
    G, C = case.geometry, case.connection
    r = se.sym("r")
    c = G.structure_coefficients
    arts = [
        compare(case, "c^2_12", c[1][0][1], -1 / r, "derived"),
        compare(case, "𝓡^1_2", C.curvature[0, 1], G.scalar(0), "trivial"),
        compare(case, "ω^2_1", C.one_forms[1, 0], G.form({1: 1 / r}), "derived"),
    ]
    return CheckResult("golden", _combine(arts), 0.0, arts)


# ---------------------------------------------------------------------------
# Maxwell


def _lower_components(G: Geometry, F: Multivector) -> np.ndarray:
    """F_{ab} from F = ½F_{ab}θ^a∧θ^b (frame, indices down)."""
    n = G.n
    out = zeros(n, 2)
    for a, b in itertools.combinations(range(n), 2):
        v = F[(1 << a) | (1 << b)]
        out[a, b], out[b, a] = v, -v
    return out


@dataclass
class MaxwellReport:
    dF: float
    delta_plus_J: float
    dirac_minus_J: float
    divergence: float
    equivalence: bool

    @property
    def max_residual(self) -> float:
        return max(self.dF, self.delta_plus_J, self.dirac_minus_J, self.divergence)


def maxwell_lorentzian(
    F: Multivector, J: Multivector, G: Geometry | None = None, samples: int = se.DEFAULT_SAMPLES, tol: float = se.DEFAULT_TOL
) -> MaxwellReport:
    """Residuals of dF = 0, δF = −J, ∂|F = J and
    (1/√|g|)∂_ρ(√|g|F^{ρν}) = J^ν."""
    G = G or minkowski_geometry()
    if G.n != 4 or (G.sig.p, G.sig.q) != (1, 3):
        raise ValueError("Maxwell fixtures need a 4-dimensional Lorentzian geometry")
    if F.homogeneous_grade() != 2 or (not J.is_zero and J.homogeneous_grade() != 1):
        raise ValueError("F must be a 2-form and J a 1-form")
    lc = levi_civita(G)
    dom = G.domain
    mx = lambda A: mv_max_abs(A, dom, samples)
    r1 = mx(G.d(F))
    r2 = mx(cal.codifferential(G, F) + J)
    r3 = mx(cal.dirac(lc, F) - J)
    r4 = _divergence_residual(G, F, J, samples)
    ok12 = r1 <= tol and r2 <= tol
    return MaxwellReport(r1, r2, r3, r4, ok12 == (r3 <= tol))


def _divergence_residual(G: Geometry, F: Multivector, J: Multivector, samples: int) -> float:
    n = G.n
    Fc = G.coordinate_components(F)
    Jc = G.coordinate_components(J)
    Fl = zeros(n, 2)
    for m, v in Fc.items():
        idx = [i for i in range(n) if m >> i & 1]
        Fl[idx[0], idx[1]], Fl[idx[1], idx[0]] = v, -v
    gi = G.inverse_metric
    Fu = zeros(n, 2)
    for r, v in itertools.product(range(n), repeat=2):
        Fu[r, v] = se.esum(gi[r][a] * gi[v][b] * Fl[a, b] for a in range(n) for b in range(n))
    Ju = [se.esum(gi[v][m] * Jc.get(1 << m, se.ZERO) for m in range(n)) for v in range(n)]
    sg = G.sqrt_abs_det_g
    worst = 0.0
    for v in range(n):
        div = se.esum(G.partial(sg * Fu[r, v], r) for r in range(n)) / sg
        worst = max(worst, se.max_abs_diff(div, Ju[v], G.domain, samples))
    return worst


@dataclass
class MaxwellRCReport:
    dF: float
    delta_plus_J: float
    cyclic: float  # Σcyc D_αF_{μν} + F·T terms
    cyclic_variant: float  # with the mixed-sign F·T terms
    divergence: float  # D_μF^{μν} + T^α_{σα}F^{σν} − ½T^ν_{μσ}F^{μσ} − J^ν
    divergence_variant: float  # same with +½
    clifford: float  # 𝛛F − J + 𝒯^a⌟(θ_a∧F) + 𝒯^a∧(θ_a⌟F)
    clifford_variant: float  # 𝛛F − J − 𝒯^a⌟(θ_a∧F) + 𝒯^a∧(θ_a⌟F)
    cyclic_identity: float  # cyclic expression minus the components of dF, for any F
    divergence_identity: float  # divergence expression plus (δF)^ν, for any F

    @property
    def max_residual(self) -> float:
        return max(self.dF, self.delta_plus_J, self.cyclic, self.divergence, self.clifford)


def maxwell_rc(
    F: Multivector, J: Multivector, C: Connection, samples: int = se.DEFAULT_SAMPLES, tol: float = se.DEFAULT_TOL
) -> MaxwellRCReport:
    """Maxwell's equations written with a metric-compatible connection with
    torsion, in frame components and in Clifford form."""
    G, n, eta = C.geometry, C.n, C.geometry.eta
    dom = G.domain
    mx = lambda A: mv_max_abs(A, dom, samples)
    ss = se.sample_set(dom, samples)
    amax = lambda e: 0.0 if e is se.ZERO else float(np.abs(ss.eval(e)).max())
    T = C.torsion_components
    Fl = _lower_components(G, F)
    DF = tensor_cov_deriv(C.omega, G.pfaff, Fl, kinds="ll")  # DF[α, μ, ν]
    dF = G.d(F)
    cyc = cyc_v = cyc_id = 0.0
    for al, mu, nu in itertools.combinations(range(n), 3):
        base = [DF[al, mu, nu], DF[mu, nu, al], DF[nu, al, mu]]
        good = base + [
            e
            for s in range(n)
            for e in (Fl[s, nu] * T[s, al, mu], Fl[s, al] * T[s, mu, nu], Fl[s, mu] * T[s, nu, al])
        ]
        variant = base + [
            e
            for s in range(n)
            for e in (Fl[s, al] * T[s, mu, nu], Fl[mu, s] * T[s, nu, al], Fl[nu, s] * T[s, al, mu])
        ]
        g = se.esum(good)
        cyc = max(cyc, amax(g))
        cyc_v = max(cyc_v, amax(se.esum(variant)))
        cyc_id = max(cyc_id, amax(g - dF[(1 << al) | (1 << mu) | (1 << nu)]))
    # divergence form with upper indices
    Fu = zeros(n, 2)
    for a, b in itertools.product(range(n), repeat=2):
        Fu[a, b] = Fl[a, b] * (eta[a] * eta[b])
    DFu = tensor_cov_deriv(C.omega, G.pfaff, Fu, kinds="uu")  # DFu[μ, α, ν]
    dl = cal.codifferential(G, F)
    half = se.const(Fraction(1, 2))
    div = div_v = div_id = 0.0
    for nu in range(n):
        base = [DFu[m, m, nu] for m in range(n)]
        base += [T[a, s, a] * Fu[s, nu] for a in range(n) for s in range(n)]
        tt = se.esum(T[nu, m, s] * Fu[m, s] for m in range(n) for s in range(n)) * half
        Jnu = J[1 << nu] * eta[nu]
        e_good = se.esum(base) - tt
        div = max(div, amax(e_good - Jnu))
        div_v = max(div_v, amax(se.esum(base) + tt - Jnu))
        div_id = max(div_id, amax(e_good + dl[1 << nu] * eta[nu]))
    # Clifford form
    dirF = cal.dirac(C, F)
    t1 = cal._sum(G, (left_contract(C.torsion[a], wedge(G.theta_lower(a), F)) for a in range(n)))
    t2 = cal._sum(G, (wedge(C.torsion[a], left_contract(G.theta_lower(a), F)) for a in range(n)))
    cl = mx(dirF - J + t1 + t2)
    cl_v = mx(dirF - J - t1 + t2)
    return MaxwellRCReport(mx(dF), mx(dl + J), cyc, cyc_v, div, div_v, cl, cl_v, cyc_id, div_id)


def maxwell_fixtures(G: Geometry) -> dict[str, tuple[Multivector, Multivector]]:
    """Three (F, J) pairs on Minkowski space.

    The plane wave mixes two polarisations so that it has components along
    both θ^2 and θ^3; each polarisation is closed and coclosed on its own,
    which is checked when the scenario runs."""
    names = set(G.coords) | {k for k, _ in G.domain.fixed} | set(G.domain.names)
    P = lambda s: se.parse_expr(s, names)
    E = G.form({(0, 1): P("3/2")})
    wave = G.form(
        {
            (0, 2): P("cos(x0 - x1)"),
            (1, 2): P("-cos(x0 - x1)"),
            (0, 3): P("sin(x0 - x1)"),
            (1, 3): P("-sin(x0 - x1)"),
        }
    )
    lin = G.form({(0, 1): P("x1")})
    zero = Multivector.zero(G.sig)
    return {
        "constant": (E, zero),
        "plane-wave": (wave, zero),
        # F^{10} = x1 gives J^0 = ∂_1 F^{10} = 1, so J = θ^0
        "linear": (lin, G.theta(0)),
    }


def _maxwell_check(case: Case, fixture: str) -> CheckResult:
    G = case.geometry
    F, J = maxwell_fixtures(G)[fixture]
    rep = maxwell_lorentzian(F, J, G, case.samples, case.tol)
    ok = case.close(rep.max_residual) and rep.equivalence
    arts = [Artifact("F", F), Artifact("J", J), Artifact("δF", cal.codifferential(G, F))]
    return CheckResult(
        f"maxwell[{fixture}]",
        _status(ok),
        rep.max_residual,
        arts,
        values={"dF": rep.dF, "δF+J": rep.delta_plus_J, "∂|F−J": rep.dirac_minus_J, "divergence": rep.divergence},
        notes=["dF = 0 and δF = −J  ⇔  ∂|F = J  ⇔  (1/√|g|)∂_ρ(√|g|F^{ρν}) = J^ν"],
    )


def _maxwell_rc_check(case: Case, fixture: str) -> CheckResult:
    G, C = case.geometry, case.connection
    F, J = maxwell_fixtures(G)[fixture]
    rep = maxwell_rc(F, J, C, case.samples, case.tol)
    ok = case.close(rep.max_residual) and case.close(rep.cyclic_identity) and case.close(rep.divergence_identity)
    status = _status(ok)
    notes = [
        "Σcyc(αμν) [D_αF_{μν} + F_{σν}T^σ_{αμ}] = (dF)_{αμν}",
        "D_μF^{μν} + T^α_{σα}F^{σν} − ½T^ν_{μσ}F^{μσ} = J^ν",
        "𝛛F = J − 𝒯^a⌟(θ_a∧F) − 𝒯^a∧(θ_a⌟F)",
    ]
    for label, v in (
        ("mixed-sign F·T cyclic terms", rep.cyclic_variant),
        ("+½T^ν_{μσ}F^{μσ} in the divergence form", rep.divergence_variant),
        ("+𝒯^a⌟(θ_a∧F) in the Clifford form", rep.clifford_variant),
    ):
        if not case.close(v):
            notes.append(f"variant with {label} leaves a residual {v:.3e}")
            if status == PASS:
                status = NOTED
    return CheckResult(
        f"maxwell-rc[{fixture}]",
        status,
        rep.max_residual,
        values={
            "dF": rep.dF,
            "δF+J": rep.delta_plus_J,
            "cyclic": rep.cyclic,
            "divergence": rep.divergence,
            "clifford": rep.clifford,
            "cyclic identity": rep.cyclic_identity,
            "divergence identity": rep.divergence_identity,
            "cyclic variant": rep.cyclic_variant,
            "divergence variant": rep.divergence_variant,
            "clifford variant": rep.clifford_variant,
        },
        notes=notes,
    )


# ---------------------------------------------------------------------------
# scenarios


@dataclass
class Scenario:
    name: str
    description: str
    cases: dict  # label -> Case factory arguments (geometry, connection)
    checks: list  # (check name, case label, function)

    def run(self, samples: int = se.DEFAULT_SAMPLES, tol: float = se.DEFAULT_TOL, only: set | None = None):
        built = {
            label: Case(label, G, C, samples, tol) for label, (G, C) in self.cases.items()
        }
        results = []
        for name, label, fn in self.checks:
            base = name.split("[")[0]
            if only and name not in only and base not in only:
                continue
            res = fn(built[label])
            res.name = name
            results.append(res)
        return sorted(results, key=lambda r: r.name)


def _named(fn, name):
    return (name, fn)


def sphere_levi_civita() -> Scenario:
    G = sphere_geometry()
    lc = levi_civita(G)
    names = [
        "summary",
        "metric-compatibility",
        "structure-routes",
        "bianchi",
        "exterior-covariant",
        "exterior-calculus",
        "d-delta-via-connection",
        "square-forms",
        "ricci-equation",
        "einstein-operator",
        "dual-torsion-two-route",
        "tetrad-identity",
        "wave-equation",
        "contorsion",
        "ricci-slot",
    ]
    checks = [(k, "s2", GENERIC_CHECKS[k]) for k in names]
    checks += [
        ("golden", "s2", _s2_golden),
        ("curvature-normalisation", "s2", _s2_normalisation),
        ("tetrad-misreading", "s2", _s2_tetrad_misreading),
    ]
    return Scenario("s2-levi-civita", "unit sphere with the Levi-Civita connection", {"s2": (G, lc)}, checks)


def nunes_connection(G: Geometry) -> Connection:
    """The flat, metric-compatible connection with D θ^a = 0."""
    return from_coefficients(G, zeros(G.n, 3), name="nunes")


def sphere_nunes() -> Scenario:
    G = sphere_geometry()
    C = nunes_connection(G)
    names = [
        "summary",
        "metric-compatibility",
        "structure-routes",
        "bianchi",
        "exterior-covariant",
        "d-delta-via-connection",
        "square-forms",
        "dual-torsion-two-route",
        "tetrad-identity",
        "contorsion",
    ]
    checks = [(k, "nunes", GENERIC_CHECKS[k]) for k in names]
    checks.append(("golden", "nunes", _nunes_golden))
    return Scenario("s2-nunes", "punctured sphere with the teleparallel (navigator) connection", {"nunes": (G, C)}, checks)


def flat_polar() -> Scenario:
    G = flat_polar_geometry()
    lc = levi_civita(G)
    names = ["summary", "bianchi", "exterior-calculus", "ricci-equation", "einstein-operator", "wave-equation", "tetrad-identity"]
    checks = [(k, "polar", GENERIC_CHECKS[k]) for k in names]
    checks.append(("golden", "polar", _polar_golden))
    checks.append(("evans-equation", "polar", check_evans))
    return Scenario("flat-polar", "Euclidean plane in polar coordinates", {"polar": (G, lc)}, checks)


def rc_euclid3(seed: int = 7) -> Scenario:
    G = euclid3_geometry()
    C = from_contorsion(G, random_torsion(G, seed), name=f"random torsion (seed {seed})")
    names = [
        "summary",
        "metric-compatibility",
        "structure-routes",
        "bianchi",
        "exterior-covariant",
        "d-delta-via-connection",
        "square-forms",
        "dual-torsion-two-route",
        "contorsion",
        "tetrad-identity",
        "einstein-operator",
        "ricci-equation",
    ]
    checks = [(k, "rc3", GENERIC_CHECKS[k]) for k in names]
    return Scenario("rc-euclid3", "Euclidean 3-space with a random metric-compatible torsion", {"rc3": (G, C)}, checks)


def evans_scenario() -> Scenario:
    G = sphere_geometry()
    P = flat_polar_geometry()
    cases = {"s2-levi-civita": (G, levi_civita(G)), "s2-nunes": (G, nunes_connection(G)), "flat-polar": (P, levi_civita(P))}
    checks = []
    for label in cases:
        checks.append((f"evans-equation[{label}]", label, check_evans))
        checks.append((f"dual-torsion-two-route[{label}]", label, check_dual_torsion))
    return Scenario("evans", "D⋆𝒯^a against ⋆𝓡^a_b∧θ^b on three structures", cases, checks)


def maxwell_flat() -> Scenario:
    G = minkowski_geometry()
    checks = [(f"maxwell[{k}]", "mink", (lambda c, k=k: _maxwell_check(c, k))) for k in ("constant", "plane-wave", "linear")]
    checks.append(("exterior-calculus", "mink", check_exterior_calculus))
    return Scenario("maxwell-flat", "Maxwell's equations on Minkowski space", {"mink": (G, levi_civita(G))}, checks)


def maxwell_rc_scenario() -> Scenario:
    G = minkowski_geometry({"k": (0.5, 2.0)})
    T = zeros(4, 3)
    k = se.sym("k")
    T[0, 1, 2], T[0, 2, 1] = k, -k
    C = from_contorsion(G, T, name="constant torsion T^0_12 = k")
    cases = {"rc": (G, C), "lc": (G, levi_civita(G))}
    checks = []
    for fx in ("constant", "plane-wave", "linear"):
        checks.append((f"maxwell-rc[{fx}]", "rc", (lambda c, fx=fx: _maxwell_rc_check(c, fx))))
        checks.append((f"maxwell-rc-torsion-free[{fx}]", "lc", (lambda c, fx=fx: _maxwell_rc_check(c, fx))))
    checks.append(("metric-compatibility", "rc", check_metric_compatibility))
    checks.append(("bianchi", "rc", check_bianchi))
    return Scenario("maxwell-rc", "Maxwell's equations with a constant-torsion connection", cases, checks)


SCENARIOS: dict[str, Callable[[], Scenario]] = {
    "s2-levi-civita": sphere_levi_civita,
    "s2-nunes": sphere_nunes,
    "flat-polar": flat_polar,
    "rc-euclid3": rc_euclid3,
    "evans": evans_scenario,
    "maxwell-flat": maxwell_flat,
    "maxwell-rc": maxwell_rc_scenario,
}

CHECKS = GENERIC_CHECKS


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None
