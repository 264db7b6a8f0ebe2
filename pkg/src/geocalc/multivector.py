"""Clifford algebra Cl(p,q) of an orthonormal coframe over Expr coefficients.

Basis blades are bitmasks: bit i set means θ^i is a factor, factors in
ascending index order.  Frame indices are 0-based internally; renderers
take an ``index_base`` so a 2-sphere can print θ¹, θ² while Minkowski space
prints θ⁰ … θ³.

Conventions (all checked by the test-suite rather than assumed):

* ``θ^a θ^b + θ^b θ^a = 2 η^{ab}`` with η = diag(+1 × p, −1 × q).
* left contraction ``A_r ⌟ B_s = ⟨A_r B_s⟩_{s−r}`` (zero if r > s);
* right contraction ``A_r ⌞ B_s = ⟨A_r B_s⟩_{r−s}`` (zero if s > r);
* scalar product ``A·B = ⟨Ã B⟩₀`` (the Gram determinant on simple blades);
* Hodge star ``⋆A = Ã τ`` with τ the oriented unit pseudoscalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

from . import symexpr as se
from .symexpr import Domain, Expr, ExprLike

__all__ = [
    "Signature",
    "SignatureError",
    "Multivector",
    "blade_grade",
    "wedge",
    "left_contract",
    "right_contract",
    "clifford_mul",
    "scalar_product",
    "reversion",
    "involution",
    "grade_project",
    "hodge_star",
    "hodge_inverse",
    "pseudoscalar",
    "mv_equal",
    "mv_max_abs",
    "commutator",
]

MAX_DIM = 8


class SignatureError(ValueError):
    """Operands live in different algebras, or a signature is invalid."""


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise SignatureError("p and q must be non-negative")
        if not 1 <= self.p + self.q <= MAX_DIM:
            raise SignatureError(f"dimension must be between 1 and {MAX_DIM}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def eta(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q

    @property
    def sign(self) -> int:
        """sgn g = (−1)^q."""
        return -1 if self.q % 2 else 1

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


def blade_grade(mask: int) -> int:
    return bin(mask).count("1")


def _reorder_sign(a: int, b: int) -> int:
    a >>= 1
    swaps = 0
    while a:
        swaps += blade_grade(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _product_table(sig: Signature) -> tuple[tuple[int, ...], ...]:
    """table[a][b] = signed factor s with θ^A θ^B = s θ^(A xor B)."""
    eta = sig.eta
    size = 1 << sig.n
    rows = []
    for a in range(size):
        row = []
        for b in range(size):
            s = _reorder_sign(a, b)
            common = a & b
            i = 0
            while common:
                if common & 1:
                    s *= eta[i]
                common >>= 1
                i += 1
            row.append(s)
        rows.append(tuple(row))
    return tuple(rows)


def _rev_sign(r: int) -> int:
    return -1 if (r * (r - 1) // 2) % 2 else 1


_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def blade_name(mask: int, index_base: int = 1, symbol: str = "θ") -> str:
    if mask == 0:
        return "1"
    idx = [i for i in range(MAX_DIM) if mask >> i & 1]
    return "∧".join(f"{symbol}{str(i + index_base).translate(_SUPERSCRIPT)}" for i in idx)


Scalar = Union[Expr, int, Fraction, float]


class Multivector:
    """Sparse element of Cl(p,q): ``{blade mask: Expr}`` with no stored
    literal-zero coefficient.  Immutable."""

    __slots__ = ("sig", "_c")

    def __init__(self, sig: Signature, coeffs: Mapping[int, ExprLike] | None = None):
        self.sig = sig
        c = {}
        if coeffs:
            full = sig.full_mask
            for mask, v in coeffs.items():
                if mask & ~full:
                    raise SignatureError(f"blade {mask:b} outside Cl{sig.p, sig.q}")
                v = se.as_expr(v)
                if v is not se.ZERO:
                    c[mask] = v
        self._c = dict(sorted(c.items()))

    # constructors ---------------------------------------------------------
    @classmethod
    def scalar(cls, sig: Signature, value: ExprLike) -> "Multivector":
        return cls(sig, {0: value})

    @classmethod
    def basis(cls, sig: Signature, i: int) -> "Multivector":
        """θ^i (0-based index)."""
        if not 0 <= i < sig.n:
            raise IndexError(f"frame index {i} out of range for n={sig.n}")
        return cls(sig, {1 << i: se.ONE})

    @classmethod
    def blade(cls, sig: Signature, indices: Iterable[int], coef: ExprLike = 1) -> "Multivector":
        """coef · θ^{i1} ∧ θ^{i2} ∧ … in the given (not necessarily sorted) order."""
        out = cls.scalar(sig, coef)
        for i in indices:
            out = out.wedge(cls.basis(sig, i))
        return out

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig)

    # access ------------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Expr]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __getitem__(self, mask: int) -> Expr:
        return self._c.get(mask, se.ZERO)

    def coef(self, *indices: int) -> Expr:
        """Coefficient of θ^{i1}∧…∧θ^{ik} with the sign of the given order."""
        mask = 0
        for i in indices:
            if mask >> i & 1:
                return se.ZERO
            mask |= 1 << i
        sign = Multivector.blade(self.sig, indices)[mask]
        return self[mask] * sign

    @property
    def is_zero(self) -> bool:
        return not self._c

    def grades(self) -> set[int]:
        return {blade_grade(m) for m in self._c}

    def homogeneous_grade(self) -> int | None:
        g = self.grades()
        if not g:
            return None
        if len(g) > 1:
            raise ValueError(f"multivector is not homogeneous (grades {sorted(g)})")
        return g.pop()

    def map(self, fn: Callable[[Expr], ExprLike]) -> "Multivector":
        return Multivector(self.sig, {m: fn(v) for m, v in self._c.items()})

    # arithmetic ------------------------------------------------------------
    def _check(self, other: "Multivector"):
        if other.sig != self.sig:
            raise SignatureError(f"Cl{self.sig.p, self.sig.q} vs Cl{other.sig.p, other.sig.q}")

    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        return Multivector.scalar(self.sig, se.as_expr(other))

    def __add__(self, other) -> "Multivector":
        other = self._coerce(other)
        out = dict(self._c)
        for m, v in other._c.items():
            out[m] = out[m] + v if m in out else v
        return Multivector(self.sig, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Multivector":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Multivector":
        return self._coerce(other) - self

    def __neg__(self) -> "Multivector":
        return self.map(lambda v: -v)

    def __mul__(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            return clifford_mul(self, other)
        k = se.as_expr(other)
        return self.map(lambda v: v * k)

    def __rmul__(self, other) -> "Multivector":
        k = se.as_expr(other)
        return self.map(lambda v: k * v)

    def __truediv__(self, other) -> "Multivector":
        k = se.as_expr(other)
        return self.map(lambda v: v / k)

    def __xor__(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    def wedge(self, other) -> "Multivector":
        return wedge(self, self._coerce(other))

    def lc(self, other) -> "Multivector":
        return left_contract(self, self._coerce(other))

    def rc(self, other) -> "Multivector":
        return right_contract(self, self._coerce(other))

    def reverse(self) -> "Multivector":
        return reversion(self)

    def involute(self) -> "Multivector":
        return involution(self)

    def grade(self, r: int) -> "Multivector":
        return grade_project(self, r)

    def scalar_part(self) -> Expr:
        return self[0]

    # presentation -------------------------------------------------------
    def render(self, index_base: int = 1, symbol: str = "θ") -> str:
        if not self._c:
            return "0"
        parts = []
        for mask, v in self._c.items():
            name = blade_name(mask, index_base, symbol)
            neg = isinstance(v, (se.Mul, se.Const)) and (
                (isinstance(v, se.Mul) and v.coef < 0) or (isinstance(v, se.Const) and v.value < 0)
            )
            mag = -v if neg else v
            if mask == 0:
                term = se.render(mag)
            elif mag is se.ONE:
                term = name
            elif isinstance(mag, se.Add):
                term = f"({se.render(mag)})·{name}"
            else:
                term = f"{se.render(mag)}·{name}"
            parts.append((neg, term))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, term in parts[1:]:
            out += (" - " if neg else " + ") + term
        return out

    def __repr__(self) -> str:
        return f"Multivector(Cl{self.sig.p, self.sig.q}: {self.render()})"

    def __str__(self) -> str:
        return self.render()


def _bilinear(A: Multivector, B: Multivector, keep: Callable[[int, int], bool]) -> Multivector:
    A._check(B)
    table = _product_table(A.sig)
    acc: dict[int, list] = {}
    for ma, va in A._c.items():
        row = table[ma]
        for mb, vb in B._c.items():
            if not keep(ma, mb):
                continue
            s = row[mb]
            prod = va * vb
            acc.setdefault(ma ^ mb, []).append(prod if s == 1 else -prod)
    return Multivector(A.sig, {m: se.esum(vs) for m, vs in acc.items()})


def clifford_mul(A: Multivector, B: Multivector) -> Multivector:
    return _bilinear(A, B, lambda a, b: True)


def wedge(A: Multivector, B: Multivector) -> Multivector:
    return _bilinear(A, B, lambda a, b: a & b == 0)


def left_contract(A: Multivector, B: Multivector) -> Multivector:
    """A ⌟ B; on blades nonzero only when A's indices are a subset of B's."""
    return _bilinear(A, B, lambda a, b: a & b == a)


def right_contract(A: Multivector, B: Multivector) -> Multivector:
    """A ⌞ B; on blades nonzero only when B's indices are a subset of A's."""
    return _bilinear(A, B, lambda a, b: a & b == b)


def scalar_product(A: Multivector, B: Multivector) -> Expr:
    """A·B = ⟨Ã B⟩₀, zero between different grades."""
    A._check(B)
    eta = A.sig.eta
    terms = []
    for m, va in A._c.items():
        vb = B._c.get(m)
        if vb is None:
            continue
        g = 1
        for i in range(A.sig.n):
            if m >> i & 1:
                g *= eta[i]
        prod = va * vb
        terms.append(prod if g == 1 else -prod)
    return se.esum(terms)


def reversion(A: Multivector) -> Multivector:
    return Multivector(A.sig, {m: v if _rev_sign(blade_grade(m)) == 1 else -v for m, v in A._c.items()})


def involution(A: Multivector) -> Multivector:
    """Grade involution Â: grade-r part times (−1)^r."""
    return Multivector(A.sig, {m: -v if blade_grade(m) % 2 else v for m, v in A._c.items()})


def grade_project(A: Multivector, r: int) -> Multivector:
    return Multivector(A.sig, {m: v for m, v in A._c.items() if blade_grade(m) == r})


def pseudoscalar(sig: Signature, orientation: int = 1) -> Multivector:
    """Unit pseudoscalar θ^1∧…∧θ^n, negated for reversed orientation."""
    return Multivector(sig, {sig.full_mask: orientation})


def _check_tau(A: Multivector, tau: Multivector):
    A._check(tau)
    if set(tau._c) != {A.sig.full_mask}:
        raise ValueError("tau must be a pseudoscalar (grade n)")


def hodge_star(A: Multivector, tau: Multivector) -> Multivector:
    """⋆A = Ã τ."""
    _check_tau(A, tau)
    return clifford_mul(reversion(A), tau)


def hodge_inverse(A: Multivector, tau: Multivector) -> Multivector:
    """⋆⁻¹ on each grade r: (−1)^{r(n−r)} sgn g ⋆ applied to the grade-r part
    of the original form, which has grade n − r after the star."""
    _check_tau(A, tau)
    n = A.sig.n
    out = Multivector.zero(A.sig)
    for k in sorted(A.grades()):
        part = hodge_star(grade_project(A, k), tau)
        r = n - k  # grade of the form this undoes
        sign = (-1) ** (r * (n - r)) * A.sig.sign
        out = out + (part if sign == 1 else -part)
    return out


def commutator(A: Multivector, B: Multivector) -> Multivector:
    """[A, B] = AB − BA."""
    return clifford_mul(A, B) - clifford_mul(B, A)


def mv_max_abs(A: Multivector, dom: Domain, samples: int = se.DEFAULT_SAMPLES) -> float:
    """max over blades and sample points of |coefficient|."""
    ss = se.sample_set(dom, samples)
    worst = 0.0
    for v in A._c.values():
        worst = max(worst, float(abs(ss.eval(v)).max()))
    return worst


def mv_equal(
    A: Multivector,
    B: Multivector,
    dom: Domain,
    samples: int = se.DEFAULT_SAMPLES,
    tol: float = se.DEFAULT_TOL,
) -> bool:
    """Blade-wise :func:`num_equal`."""
    A._check(B)
    for m in set(A._c) | set(B._c):
        if not se.num_equal(A[m], B[m], dom, samples, tol):
            return False
    return True
