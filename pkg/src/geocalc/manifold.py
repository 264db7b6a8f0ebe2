"""Charts, cotetrads and the quantities derived from them.

A :class:`Geometry` is a chart together with a cotetrad matrix
``q[a][μ]`` so that θ^a = q^a_μ dx^μ is orthonormal for η = diag(+1 × p,
−1 × q).  Everything downstream works in this orthonormal coframe; the
coordinate coframe only appears when results are rendered.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import symexpr as se
from .multivector import Multivector, Signature, pseudoscalar
from .symexpr import Domain, Expr, ExprLike

__all__ = [
    "Chart",
    "Geometry",
    "IndexedForms",
    "SingularCotetradError",
    "build_geometry",
    "structure_coefficients",
    "pfaff_derivative",
    "volume_element",
    "symbolic_inverse",
    "symbolic_det",
]


class IndexedForms:
    """A family of r-forms carrying ``upper`` then ``lower`` frame indices,
    stored as a numpy object array of shape (n,) * (upper + lower)."""

    def __init__(self, geometry: "Geometry", upper: int, lower: int, data):
        arr = np.empty((geometry.n,) * (upper + lower), dtype=object)
        src = np.asarray(data, dtype=object) if not isinstance(data, np.ndarray) else data
        if upper + lower == 0:
            arr[()] = data if isinstance(data, Multivector) else src[()]
        else:
            if src.shape != arr.shape:
                raise ValueError(f"index shape {src.shape} does not match n={geometry.n}, ({upper},{lower})")
            for idx in np.ndindex(arr.shape):
                arr[idx] = src[idx]
        grades = set()
        for idx in np.ndindex(arr.shape):
            v = arr[idx]
            if not isinstance(v, Multivector):
                raise TypeError("entries must be Multivectors")
            g = v.grades()
            if len(g) > 1:
                raise ValueError("entries must be homogeneous")
            grades |= g
        if len(grades) > 1:
            raise ValueError(f"entries have different grades {sorted(grades)}")
        self.geometry = geometry
        self.upper = upper
        self.lower = lower
        self.data = arr
        self.grade = grades.pop() if grades else None

    @property
    def shape(self):
        return self.data.shape

    def __getitem__(self, idx) -> Multivector:
        return self.data[idx]

    def indices(self):
        return list(np.ndindex(self.data.shape))

    def map(self, fn) -> "IndexedForms":
        out = np.empty(self.shape, dtype=object)
        for idx in np.ndindex(self.shape):
            out[idx] = fn(self.data[idx])
        return IndexedForms(self.geometry, self.upper, self.lower, out)

    def _zip(self, other: "IndexedForms", fn) -> "IndexedForms":
        if (self.upper, self.lower) != (other.upper, other.lower):
            raise ValueError("index shapes differ")
        out = np.empty(self.shape, dtype=object)
        for idx in np.ndindex(self.shape):
            out[idx] = fn(self.data[idx], other.data[idx])
        return IndexedForms(self.geometry, self.upper, self.lower, out)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map(lambda a: -a)

    def wedge(self, other: "IndexedForms") -> "IndexedForms":
        """Tensor product of the index sets, wedge of the forms.  Upper
        indices of self, then of other; likewise lower."""
        n = self.geometry.n
        pu, pl, qu, ql = self.upper, self.lower, other.upper, other.lower
        shape = (n,) * (pu + pl + qu + ql)
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(shape):
            a_up, b_up = idx[:pu], idx[pu : pu + qu]
            a_lo, b_lo = idx[pu + qu : pu + qu + pl], idx[pu + qu + pl :]
            out[idx] = self.data[a_up + a_lo].wedge(other.data[b_up + b_lo])
        return IndexedForms(self.geometry, pu + qu, pl + ql, out)

    def equal(self, other: "IndexedForms", samples: int = se.DEFAULT_SAMPLES, tol: float = se.DEFAULT_TOL) -> bool:
        from .multivector import mv_equal

        dom = self.geometry.domain
        return all(mv_equal(self.data[i], other.data[i], dom, samples, tol) for i in np.ndindex(self.shape))

    def max_abs(self, samples: int = se.DEFAULT_SAMPLES) -> float:
        from .multivector import mv_max_abs

        dom = self.geometry.domain
        return max((mv_max_abs(self.data[i], dom, samples) for i in np.ndindex(self.shape)), default=0.0)

    def is_zero(self, samples: int = se.DEFAULT_SAMPLES, tol: float = se.DEFAULT_TOL) -> bool:
        return self.max_abs(samples) <= tol

    def __repr__(self):
        return f"IndexedForms(upper={self.upper}, lower={self.lower}, grade={self.grade})"


class SingularCotetradError(ValueError):
    """The cotetrad determinant vanishes (or nearly so) at a sample point."""


@dataclass(frozen=True)
class Chart:
    coords: tuple[str, ...]
    domain: Domain
    orientation: int = 1

    def __post_init__(self):
        if len(set(self.coords)) != len(self.coords):
            raise ValueError("coordinate names must be distinct")
        missing = [c for c in self.coords if c not in self.domain.names]
        if missing:
            raise ValueError(f"domain has no interval for coordinates {missing}")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.coords)


def symbolic_det(M: Sequence[Sequence[Expr]]) -> Expr:
    """Determinant by Laplace expansion with memoised minors; zero entries
    are skipped, so sparse matrices stay cheap."""
    n = len(M)
    memo: dict[tuple[int, tuple[int, ...]], Expr] = {}

    def minor(row: int, cols: tuple[int, ...]) -> Expr:
        if not cols:
            return se.ONE
        key = (row, cols)
        if key in memo:
            return memo[key]
        terms = []
        for k, c in enumerate(cols):
            entry = M[row][c]
            if entry is se.ZERO:
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1 :])
            if sub is se.ZERO:
                continue
            term = entry * sub
            terms.append(term if k % 2 == 0 else -term)
        memo[key] = out = se.esum(terms)
        return out

    return minor(0, tuple(range(n)))


def symbolic_inverse(M: Sequence[Sequence[Expr]]) -> tuple[tuple[Expr, ...], ...]:
    """Inverse via the adjugate.  Diagonal matrices take a shortcut."""
    n = len(M)
    if all(M[i][j] is se.ZERO for i in range(n) for j in range(n) if i != j):
        return tuple(tuple(se.ONE / M[i][i] if i == j else se.ZERO for j in range(n)) for i in range(n))
    det = symbolic_det(M)
    inv_det = se.ONE / det
    out = [[se.ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[M[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = symbolic_det(sub) if sub else se.ONE
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof * inv_det
    return tuple(tuple(r) for r in out)


class Geometry:
    """Chart + signature + cotetrad, with derived metric data.

    ``q[a][mu]`` is the cotetrad (θ^a = q^a_μ dx^μ) and ``e[mu][a]`` the
    tetrad (e_a = q^μ_a ∂_μ).  Frame indices a, b, c and coordinate indices
    μ, ν are both 0-based; ``index_base`` only affects rendering.
    """

    def __init__(
        self,
        chart: Chart,
        sig: Signature,
        cotetrad: Sequence[Sequence[ExprLike]],
        name: str = "",
        index_base: int = 1,
        samples: int = se.DEFAULT_SAMPLES,
    ):
        n = sig.n
        if chart.n != n:
            raise ValueError(f"chart has {chart.n} coordinates but signature has dimension {n}")
        if len(cotetrad) != n or any(len(row) != n for row in cotetrad):
            raise ValueError(f"cotetrad must be a {n}x{n} matrix")
        self.chart = chart
        self.sig = sig
        self.name = name
        self.index_base = index_base
        self.q = tuple(tuple(se.as_expr(v) for v in row) for row in cotetrad)
        allowed = set(chart.domain.names) | {k for k, _ in chart.domain.fixed}
        for row in self.q:
            for v in row:
                unknown = v.free_symbols() - allowed
                if unknown:
                    raise ValueError(f"cotetrad uses symbols without values: {sorted(unknown)}")
        self.det_q = symbolic_det(self.q)
        ss = se.sample_set(chart.domain, samples)
        try:
            dv = ss.eval(self.det_q)
        except se.EvaluationError as exc:
            raise SingularCotetradError(f"cotetrad cannot be evaluated: {exc}") from None
        if np.any(np.abs(dv) < 1e-12):
            raise SingularCotetradError("cotetrad determinant vanishes at a sample point")
        self._det_sign = 1 if np.all(dv > 0) else (-1 if np.all(dv < 0) else 0)
        self.e = symbolic_inverse(self.q)

    # basic data --------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def coords(self) -> tuple[str, ...]:
        return self.chart.coords

    @property
    def domain(self) -> Domain:
        return self.chart.domain

    @property
    def eta(self) -> tuple[int, ...]:
        return self.sig.eta

    @cached_property
    def metric(self) -> tuple[tuple[Expr, ...], ...]:
        """g_{μν} = q^a_μ q^b_ν η_{ab}."""
        n, q, eta = self.n, self.q, self.eta
        return tuple(
            tuple(se.esum(q[a][m] * q[a][v] * eta[a] for a in range(n)) for v in range(n)) for m in range(n)
        )

    @cached_property
    def inverse_metric(self) -> tuple[tuple[Expr, ...], ...]:
        """g^{μν} = q^μ_a q^ν_b η^{ab}."""
        n, e, eta = self.n, self.e, self.eta
        return tuple(
            tuple(se.esum(e[m][a] * e[v][a] * eta[a] for a in range(n)) for v in range(n)) for m in range(n)
        )

    @cached_property
    def sqrt_abs_det_g(self) -> Expr:
        """√|det g| = |det q|, written without abs() when the sign of det q
        is constant on the sampled domain."""
        if self._det_sign == 1:
            return self.det_q
        if self._det_sign == -1:
            return -self.det_q
        return se.abs_(self.det_q)

    # derivatives ---------------------------------------------------------
    def pfaff(self, f: ExprLike, a: int) -> Expr:
        """e_a(f) = q^μ_a ∂_μ f."""
        f = se.as_expr(f)
        return se.esum(self.e[m][a] * se.diff(f, x) for m, x in enumerate(self.coords) if self.e[m][a] is not se.ZERO)

    def partial(self, f: ExprLike, mu: int) -> Expr:
        return se.diff(se.as_expr(f), self.coords[mu])

    @cached_property
    def structure_coefficients(self) -> tuple:
        """c[a][b][c] with [e_b, e_c] = c^a_{bc} e_a."""
        n, q, e = self.n, self.q, self.e
        comm = [[None] * n for _ in range(n)]
        for b in range(n):
            for c in range(n):
                if b < c:
                    # coordinate components of [e_b, e_c]
                    comm[b][c] = [self.pfaff(e[v][c], b) - self.pfaff(e[v][b], c) for v in range(n)]
        out = [[[se.ZERO] * n for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                for c in range(b + 1, n):
                    val = se.esum(q[a][v] * comm[b][c][v] for v in range(n))
                    out[a][b][c] = val
                    out[a][c][b] = -val
        return tuple(tuple(tuple(r) for r in m) for m in out)

    # forms -----------------------------------------------------------------
    def theta(self, a: int) -> Multivector:
        return Multivector.basis(self.sig, a)

    def theta_lower(self, a: int) -> Multivector:
        """θ_a = η_{ab} θ^b."""
        return Multivector.basis(self.sig, a) * self.eta[a]

    def scalar(self, f: ExprLike) -> Multivector:
        return Multivector.scalar(self.sig, f)

    def form(self, coeffs: dict) -> Multivector:
        """Build a form from ``{(a, b, ...): coef}`` with 0-based frame indices."""
        out = Multivector.zero(self.sig)
        for idx, v in coeffs.items():
            if isinstance(idx, int):
                idx = (idx,)
            out = out + Multivector.blade(self.sig, idx, v)
        return out

    @cached_property
    def dtheta(self) -> tuple[Multivector, ...]:
        """dθ^a = −½ c^a_{bc} θ^b∧θ^c."""
        c = self.structure_coefficients
        n = self.n
        return tuple(
            Multivector(self.sig, {(1 << b) | (1 << d): -c[a][b][d] for b in range(n) for d in range(b + 1, n)})
            for a in range(n)
        )

    def _d_blade(self, mask: int) -> Multivector:
        """d of a unit blade, by d(θ^i∧R) = dθ^i∧R − θ^i∧dR."""
        cache = self.__dict__.setdefault("_dblade_cache", {})
        if mask in cache:
            return cache[mask]
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        head = self.dtheta[low]
        if rest == 0:
            out = head
        else:
            rest_mv = Multivector(self.sig, {rest: se.ONE})
            out = head.wedge(rest_mv) - self.theta(low).wedge(self._d_blade(rest))
        cache[mask] = out
        return out

    def d(self, A: Multivector) -> Multivector:
        """Exterior derivative, intrinsically: Pfaff derivatives of the
        coefficients plus dθ^a from the structure coefficients."""
        A._check(self.volume)
        n = self.n
        acc: dict[int, list] = {}
        for mask, v in A.items():
            for a in range(n):
                if mask >> a & 1:
                    continue
                dv = self.pfaff(v, a)
                if dv is se.ZERO:
                    continue
                # θ^a ∧ θ^mask: move θ^a past the factors with smaller index
                below = bin(mask & ((1 << a) - 1)).count("1")
                acc.setdefault(mask | (1 << a), []).append(-dv if below % 2 else dv)
            if mask:
                for m2, w in self._d_blade(mask).items():
                    acc.setdefault(m2, []).append(v * w)
        return Multivector(self.sig, {m: se.esum(vs) for m, vs in acc.items()})

    @cached_property
    def volume(self) -> Multivector:
        return pseudoscalar(self.sig, self.chart.orientation)

    # rendering -------------------------------------------------------------
    def coordinate_components(self, A: Multivector) -> dict[int, Expr]:
        """Components on dx^{μ1}∧…∧dx^{μr} (μ ascending, bitmask keys),
        obtained by substituting θ^a = q^a_μ dx^μ."""
        n = self.n
        acc: dict[int, list] = {}
        for mask, v in A.items():
            frame = [i for i in range(n) if mask >> i & 1]
            r = len(frame)
            if r == 0:
                acc.setdefault(0, []).append(v)
                continue
            for mus in itertools.combinations(range(n), r):
                sub = [[self.q[a][m] for m in mus] for a in frame]
                d = symbolic_det(sub)
                if d is se.ZERO:
                    continue
                cmask = sum(1 << m for m in mus)
                acc.setdefault(cmask, []).append(v * d)
        out = {}
        for m, vs in sorted(acc.items()):
            s = se.esum(vs)
            if s is not se.ZERO:
                out[m] = s
        return out

    def settled(self, A: Multivector) -> Multivector:
        """A with numerically constant coefficients replaced by constants."""
        return A.map(lambda v: se.settle(v, self.domain))

    def render_frame(self, A: Multivector) -> str:
        return A.render(self.index_base)

    def render_coordinate(self, A: Multivector) -> str:
        comps = self.coordinate_components(A)
        if not comps:
            return "0"
        parts = []
        for mask, v in comps.items():
            name = "∧".join(f"d{self.coords[i]}" for i in range(self.n) if mask >> i & 1)
            if mask == 0:
                parts.append(se.render(v))
            elif v is se.ONE:
                parts.append(name)
            elif isinstance(v, se.Add):
                parts.append(f"({se.render(v)})·{name}")
            else:
                parts.append(f"{se.render(v)}·{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def render_metric(self) -> str:
        parts = []
        for m in range(self.n):
            for v in range(self.n):
                g = self.metric[m][v]
                if g is se.ZERO:
                    continue
                name = f"d{self.coords[m]}⊗d{self.coords[v]}"
                parts.append(name if g is se.ONE else f"{se.render(g) if not isinstance(g, se.Add) else '(' + se.render(g) + ')'}·{name}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def frame_label(self, *indices: int) -> str:
        return "".join(str(i + self.index_base) for i in indices)

    def __repr__(self) -> str:
        return f"Geometry({self.name or 'unnamed'}, Cl{self.sig.p, self.sig.q}, coords={self.coords})"


def build_geometry(
    coords: Sequence[str],
    bounds: dict,
    sig: Signature | tuple[int, int],
    cotetrad: Sequence[Sequence[ExprLike | str]],
    *,
    orientation: int = 1,
    fixed: dict | None = None,
    name: str = "",
    index_base: int = 1,
) -> Geometry:
    """Convenience builder: ``bounds`` maps coordinate (and free parameter)
    names to intervals; string cotetrad entries are parsed."""
    if not isinstance(sig, Signature):
        sig = Signature(*sig)
    dom = Domain.box(bounds, fixed)
    names = set(dom.names) | {k for k, _ in dom.fixed}
    q = [[se.parse_expr(v, names) if isinstance(v, str) else se.as_expr(v) for v in row] for row in cotetrad]
    return Geometry(Chart(tuple(coords), dom, orientation), sig, q, name=name, index_base=index_base)


def structure_coefficients(G: Geometry):
    return G.structure_coefficients


def pfaff_derivative(G: Geometry, A: Multivector, a: int) -> Multivector:
    """Apply e_a to every blade coefficient of A."""
    return A.map(lambda v: G.pfaff(v, a))


def volume_element(G: Geometry) -> Multivector:
    return G.volume

