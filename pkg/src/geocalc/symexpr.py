"""Symbolic scalar expressions on a coordinate chart.

Expressions are immutable, hash-consed trees: two structurally identical
expressions are the same Python object, so identity doubles as structural
equality and shared subtrees are evaluated and differentiated only once.

Only light rewrites are applied while building (constant folding, like-term
collection in sums, exponent collection in products).  Deciding whether two
expressions denote the same function is left to :func:`num_equal`, which
compares them on a fixed set of low-discrepancy sample points.

Grammar accepted by :func:`parse_expr` (EBNF)::

    expr    = term , { ("+" | "-") , term } ;
    term    = unary , { ("*" | "/") , unary } ;
    unary   = ("+" | "-") , unary | power ;
    power   = atom , [ ("^" | "**") , exponent ] ;
    exponent= [ "+" | "-" ] , INTEGER | "(" , [ "+" | "-" ] , INTEGER , ")" ;
    atom    = NUMBER | NAME | FUNC , "(" , expr , ")" | "(" , expr , ")" ;
    FUNC    = "sin" | "cos" | "tan" | "cot" | "sinh" | "cosh"
            | "exp" | "ln" | "sqrt" | "abs" ;

Decimal literals are read as exact rationals (``0.2`` is ``1/5``).  ``pi``
is a named parameter bound to its numeric value at sample time.
"""

from __future__ import annotations

import itertools
import math
import re
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import numpy as np
from scipy.stats import qmc

__all__ = [
    "Expr",
    "Const",
    "Symbol",
    "Add",
    "Mul",
    "Func",
    "FUNCTIONS",
    "ParseError",
    "EvaluationError",
    "Domain",
    "SampleSet",
    "const",
    "sym",
    "as_expr",
    "esum",
    "parse_expr",
    "render",
    "diff",
    "eval_at",
    "num_equal",
    "max_abs_diff",
    "sample_set",
    "settle",
    "sin",
    "cos",
    "tan",
    "cot",
    "sinh",
    "cosh",
    "exp",
    "ln",
    "sqrt",
    "abs_",
    "ZERO",
    "ONE",
    "PI",
    "DEFAULT_SAMPLES",
    "DEFAULT_TOL",
]

DEFAULT_SAMPLES = 16
DEFAULT_TOL = 1e-9

Number = Union[int, Fraction]
ExprLike = Union["Expr", int, Fraction, float]


class ParseError(ValueError):
    """Syntax error or unknown identifier in an expression string."""

    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}\n  {text}\n  {' ' * position}^")


class EvaluationError(ValueError):
    """An expression produced NaN or Inf, or left its function domain."""


# --------------------------------------------------------------------------
# node classes

_serial = itertools.count()
_intern: "weakref.WeakValueDictionary[tuple, Expr]" = weakref.WeakValueDictionary()


def _interned(cls, key, *payload):
    node = _intern.get(key)
    if node is None:
        node = object.__new__(cls)
        node._key = key
        node._order = next(_serial)
        node._dcache = {}
        node._fs = None
        node._init(*payload)
        _intern[key] = node
    return node


class Expr:
    """Base class of expression nodes.  Build nodes with the operators and
    helper functions, never by calling the subclasses directly."""

    __slots__ = ("_key", "_order", "_dcache", "_fs", "__weakref__")

    def _init(self, *payload):  # pragma: no cover - overridden
        pass

    # arithmetic ----------------------------------------------------------
    def __add__(self, other: ExprLike) -> "Expr":
        return _add(self, as_expr(other))

    def __radd__(self, other: ExprLike) -> "Expr":
        return _add(as_expr(other), self)

    def __sub__(self, other: ExprLike) -> "Expr":
        return _add(self, _scale(as_expr(other), Fraction(-1)))

    def __rsub__(self, other: ExprLike) -> "Expr":
        return _add(as_expr(other), _scale(self, Fraction(-1)))

    def __mul__(self, other: ExprLike) -> "Expr":
        return _mul(self, as_expr(other))

    def __rmul__(self, other: ExprLike) -> "Expr":
        return _mul(as_expr(other), self)

    def __truediv__(self, other: ExprLike) -> "Expr":
        return _mul(self, _pow(as_expr(other), -1))

    def __rtruediv__(self, other: ExprLike) -> "Expr":
        return _mul(as_expr(other), _pow(self, -1))

    def __neg__(self) -> "Expr":
        return _scale(self, Fraction(-1))

    def __pos__(self) -> "Expr":
        return self

    def __pow__(self, n: int) -> "Expr":
        if isinstance(n, Const) and n.value.denominator == 1:
            n = n.value.numerator
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported; use sqrt() for roots")
        return _pow(self, n)

    # queries ---------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        """True only for the literal constant 0."""
        return self is ZERO

    def free_symbols(self) -> frozenset:
        """Names of all symbols in the tree (cached)."""
        if self._fs is None:
            self._fs = self._free()
        return self._fs

    def _free(self) -> frozenset:
        return frozenset()

    def diff(self, var: str) -> "Expr":
        return diff(self, var)

    def __repr__(self) -> str:
        return f"Expr({render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    def __bool__(self):
        raise TypeError("the truth value of an Expr is undefined; use num_equal or is_zero")


class Const(Expr):
    __slots__ = ("value",)

    def _init(self, value: Fraction):
        self.value = value

    def _eval(self, ss):
        return np.full(ss.size, float(self.value))


class Symbol(Expr):
    __slots__ = ("name",)

    def _init(self, name: str):
        self.name = name

    def _free(self):
        return frozenset([self.name])

    def _eval(self, ss):
        return ss.value_of(self.name)


class Add(Expr):
    """Sum ``const + Σ coef_i * core_i``; cores are never Const, Add, or
    scaled Mul nodes."""

    __slots__ = ("const", "terms")

    def _init(self, const: Fraction, terms: tuple):
        self.const = const
        self.terms = terms

    def _free(self):
        out = frozenset()
        for core, _ in self.terms:
            out |= core.free_symbols()
        return out

    def _eval(self, ss):
        acc = np.full(ss.size, float(self.const))
        for core, coef in self.terms:
            acc = acc + float(coef) * ss.eval(core)
        return acc


class Mul(Expr):
    """Product ``coef * Π base_i ** exp_i`` with nonzero integer exponents."""

    __slots__ = ("coef", "factors")

    def _init(self, coef: Fraction, factors: tuple):
        self.coef = coef
        self.factors = factors

    def _free(self):
        out = frozenset()
        for base, _ in self.factors:
            out |= base.free_symbols()
        return out

    def _eval(self, ss):
        acc = np.full(ss.size, float(self.coef))
        for base, n in self.factors:
            v = ss.eval(base)
            if n < 0 and np.any(v == 0.0):
                raise EvaluationError(f"division by zero in {render(self)}")
            acc = acc * v**n
        return acc


def _cot(x):
    return np.cos(x) / np.sin(x)


def _checked_ln(x):
    if np.any(x <= 0.0):
        raise EvaluationError("ln of a non-positive value")
    return np.log(x)


def _checked_sqrt(x):
    if np.any(x < 0.0):
        raise EvaluationError("sqrt of a negative value")
    return np.sqrt(x)


_NUMPY_FUNCS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "cot": _cot,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "exp": np.exp,
    "ln": _checked_ln,
    "sqrt": _checked_sqrt,
    "abs": np.abs,
}
FUNCTIONS = frozenset(_NUMPY_FUNCS)


class Func(Expr):
    __slots__ = ("name", "arg")

    def _init(self, name: str, arg: Expr):
        self.name = name
        self.arg = arg

    def _free(self):
        return self.arg.free_symbols()

    def _eval(self, ss):
        x = ss.eval(self.arg)
        with np.errstate(all="ignore"):
            return _NUMPY_FUNCS[self.name](x)


# --------------------------------------------------------------------------
# constructors


def const(value: Number) -> Const:
    """Exact rational constant."""
    if isinstance(value, float):
        value = Fraction(repr(value))
    value = Fraction(value)
    return _interned(Const, ("c", value), value)


def sym(name: str) -> Symbol:
    """Coordinate or parameter symbol."""
    return _interned(Symbol, ("s", name), name)


ZERO = const(0)
ONE = const(1)
PI = sym("pi")


def as_expr(x: ExprLike) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, Fraction, float)) and not isinstance(x, bool):
        return const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Expr")


def _split_scale(e: Expr) -> tuple[Fraction, Expr]:
    """Write e as coef * core with core free of a rational prefactor."""
    if isinstance(e, Mul) and e.coef != 1:
        return e.coef, _make_mul(Fraction(1), dict(e.factors))
    return Fraction(1), e


def _add(a: Expr, b: Expr) -> Expr:
    if a is ZERO:
        return b
    if b is ZERO:
        return a
    const_part = Fraction(0)
    terms: dict[Expr, Fraction] = {}
    for e in (a, b):
        if isinstance(e, Const):
            const_part += e.value
        elif isinstance(e, Add):
            const_part += e.const
            for core, coef in e.terms:
                terms[core] = terms.get(core, Fraction(0)) + coef
        else:
            coef, core = _split_scale(e)
            terms[core] = terms.get(core, Fraction(0)) + coef
    return _make_add(const_part, terms)


def esum(items: Iterable[ExprLike]) -> Expr:
    """Sum of many expressions, collected in a single pass."""
    const_part = Fraction(0)
    terms: dict[Expr, Fraction] = {}
    for e in items:
        e = as_expr(e)
        if e is ZERO:
            continue
        if isinstance(e, Const):
            const_part += e.value
        elif isinstance(e, Add):
            const_part += e.const
            for core, coef in e.terms:
                terms[core] = terms.get(core, Fraction(0)) + coef
        else:
            coef, core = _split_scale(e)
            terms[core] = terms.get(core, Fraction(0)) + coef
    return _make_add(const_part, terms)


def _make_add(const_part: Fraction, terms: dict) -> Expr:
    items = tuple(sorted(((c, k) for c, k in terms.items() if k != 0), key=lambda t: t[0]._order))
    if not items:
        return const(const_part)
    if len(items) == 1 and const_part == 0:
        core, coef = items[0]
        return _scale(core, coef)
    return _interned(Add, ("+", const_part, items), const_part, items)


def _scale(e: Expr, k: Fraction) -> Expr:
    if k == 1:
        return e
    if k == 0 or e is ZERO:
        return ZERO
    if isinstance(e, Const):
        return const(e.value * k)
    if isinstance(e, Add):
        return _make_add(e.const * k, {core: coef * k for core, coef in e.terms})
    if isinstance(e, Mul):
        return _make_mul(e.coef * k, dict(e.factors))
    return _make_mul(k, {e: 1})


def _mul(a: Expr, b: Expr) -> Expr:
    if a is ZERO or b is ZERO:
        return ZERO
    if a is ONE:
        return b
    if b is ONE:
        return a
    if isinstance(a, Const):
        return _scale(b, a.value)
    if isinstance(b, Const):
        return _scale(a, b.value)
    coef = Fraction(1)
    factors: dict[Expr, int] = {}
    for e in (a, b):
        if isinstance(e, Mul):
            coef *= e.coef
            for base, n in e.factors:
                factors[base] = factors.get(base, 0) + n
        else:
            factors[e] = factors.get(e, 0) + 1
    return _make_mul(coef, factors)


def _fold_cot(factors: dict) -> dict:
    """cos(x)^a · sin(x)^b with a > 0 > b  →  cot(x)^m · cos(x)^(a−m) · sin(x)^(b+m)."""
    for base in [b for b in factors if isinstance(b, Func) and b.name == "cos"]:
        a = factors.get(base, 0)
        s_node = _intern.get(("f", "sin", base.arg))
        if s_node is None or a <= 0:
            continue
        b = factors.get(s_node, 0)
        if b >= 0:
            continue
        m = min(a, -b)
        factors[base] = a - m
        factors[s_node] = b + m
        c_node = cot(base.arg)
        factors[c_node] = factors.get(c_node, 0) + m
    return factors


def _make_mul(coef: Fraction, factors: dict) -> Expr:
    if coef == 0:
        return ZERO
    if len(factors) > 1:
        factors = _fold_cot(factors)
    items = tuple(sorted(((b, n) for b, n in factors.items() if n != 0), key=lambda t: t[0]._order))
    if not items:
        return const(coef)
    if len(items) == 1 and items[0][1] == 1:
        base = items[0][0]
        if coef == 1:
            return base
        if isinstance(base, Add):
            return _scale(base, coef)
    return _interned(Mul, ("*", coef, items), coef, items)


def _pow(a: Expr, n: int) -> Expr:
    if n == 0:
        return ONE
    if n == 1:
        return a
    if isinstance(a, Const):
        if a.value == 0 and n < 0:
            raise ZeroDivisionError("0 raised to a negative power")
        return const(a.value**n)
    if isinstance(a, Mul):
        return _make_mul(a.coef**n, {b: k * n for b, k in a.factors})
    return _make_mul(Fraction(1), {a: n})


def _func(name: str, x: ExprLike) -> Expr:
    x = as_expr(x)
    if isinstance(x, Const):
        v = x.value
        if v == 0 and name in ("sin", "tan", "sinh", "sqrt", "abs"):
            return ZERO
        if v == 0 and name in ("cos", "cosh", "exp"):
            return ONE
        if v == 1 and name == "ln":
            return ZERO
        if name == "abs":
            return const(abs(v))
        if name == "sqrt" and v > 0:
            num, den = math.isqrt(v.numerator), math.isqrt(v.denominator)
            if num * num == v.numerator and den * den == v.denominator:
                return const(Fraction(num, den))
    if name == "abs" and isinstance(x, Mul) and x.coef < 0:
        return _func("abs", -x)
    return _interned(Func, ("f", name, x), name, x)


def sin(x: ExprLike) -> Expr:
    return _func("sin", x)


def cos(x: ExprLike) -> Expr:
    return _func("cos", x)


def tan(x: ExprLike) -> Expr:
    return _func("tan", x)


def cot(x: ExprLike) -> Expr:
    return _func("cot", x)


def sinh(x: ExprLike) -> Expr:
    return _func("sinh", x)


def cosh(x: ExprLike) -> Expr:
    return _func("cosh", x)


def exp(x: ExprLike) -> Expr:
    return _func("exp", x)


def ln(x: ExprLike) -> Expr:
    return _func("ln", x)


def sqrt(x: ExprLike) -> Expr:
    return _func("sqrt", x)


def abs_(x: ExprLike) -> Expr:
    return _func("abs", x)


_FUNC_BUILDERS = {
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "cot": cot,
    "sinh": sinh,
    "cosh": cosh,
    "exp": exp,
    "ln": ln,
    "sqrt": sqrt,
    "abs": abs_,
}


# --------------------------------------------------------------------------
# differentiation


def _func_derivative(name: str, x: Expr) -> Expr:
    if name == "sin":
        return cos(x)
    if name == "cos":
        return -sin(x)
    if name == "tan":
        return cos(x) ** -2
    if name == "cot":
        return -(sin(x) ** -2)
    if name == "sinh":
        return cosh(x)
    if name == "cosh":
        return sinh(x)
    if name == "exp":
        return exp(x)
    if name == "ln":
        return x**-1
    if name == "sqrt":
        return const(Fraction(1, 2)) / sqrt(x)
    if name == "abs":
        return x / abs_(x)
    raise KeyError(name)


def diff(e: ExprLike, var: str) -> Expr:
    """Exact partial derivative with respect to the symbol ``var``."""
    e = as_expr(e)
    cached = e._dcache.get(var)
    if cached is not None:
        return cached
    if var not in e.free_symbols():
        out = ZERO
    elif isinstance(e, Symbol):
        out = ONE
    elif isinstance(e, Add):
        out = ZERO
        for core, coef in e.terms:
            out = out + _scale(diff(core, var), coef)
    elif isinstance(e, Mul):
        out = ZERO
        for i, (base, n) in enumerate(e.factors):
            db = diff(base, var)
            if db is ZERO:
                continue
            rest = {b: k for j, (b, k) in enumerate(e.factors) if j != i}
            rest[base] = n - 1
            out = out + _mul(_make_mul(e.coef * n, rest), db)
    elif isinstance(e, Func):
        out = _mul(_func_derivative(e.name, e.arg), diff(e.arg, var))
    else:  # pragma: no cover
        raise TypeError(type(e))
    e._dcache[var] = out
    return out


# --------------------------------------------------------------------------
# rendering


def _render_const(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _render_atomic(e: Expr) -> str:
    """Render e so that it can be used as the base of a power."""
    if isinstance(e, (Symbol, Func)):
        return render(e)
    if isinstance(e, Const) and e.value >= 0 and e.value.denominator == 1:
        return render(e)
    return f"({render(e)})"


def _render_factor(base: Expr, n: int) -> str:
    s = _render_atomic(base)
    return s if n == 1 else f"{s}^{n}"


def _render_mul_abs(e: Mul) -> str:
    c = abs(e.coef)
    num = [] if c.numerator == 1 else [str(c.numerator)]
    den = [] if c.denominator == 1 else [str(c.denominator)]
    for base, n in e.factors:
        (num if n > 0 else den).append(_render_factor(base, abs(n)))
    top = "*".join(num) if num else "1"
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
    return f"{top}/{bottom}"


def render(e: ExprLike) -> str:
    """Text form in the :func:`parse_expr` grammar."""
    e = as_expr(e)
    if isinstance(e, Const):
        return _render_const(e.value)
    if isinstance(e, Symbol):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({render(e.arg)})"
    if isinstance(e, Mul):
        body = _render_mul_abs(e)
        return "-" + body if e.coef < 0 else body
    if isinstance(e, Add):
        parts: list[tuple[bool, str]] = []
        for core, coef in e.terms:
            term = _scale(core, abs(coef))
            s = _render_mul_abs(term) if isinstance(term, Mul) else render(term)
            parts.append((coef < 0, s))
        if e.const != 0:
            parts.append((e.const < 0, _render_const(abs(e.const))))
        neg0, s0 = parts[0]
        out = ("-" if neg0 else "") + s0
        for neg, s in parts[1:]:
            out += (" - " if neg else " + ") + s
        return out
    raise TypeError(type(e))  # pragma: no cover


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[^\W\d]\w*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: frozenset | None):
        self.text = text
        self.names = names
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise ParseError(f"expected {value!r}, found {found}", self.text, pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", self.text, pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                e = e * rhs
            else:
                if rhs is ZERO:
                    raise ParseError("division by literal zero", self.text, self.tokens[self.i - 1][2])
                e = e / rhs
        return e

    def unary(self) -> Expr:
        if self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            e = self.unary()
            return -e if op == "-" else e
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            n = self.exponent()
            if base is ZERO and n < 0:
                raise ParseError("zero raised to a negative power", self.text, self.tokens[self.i - 1][2])
            return base**n
        return base

    def exponent(self) -> int:
        paren = False
        if self.peek()[1] == "(":
            self.take()
            paren = True
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        kind, val, pos = self.take()
        if kind != "num" or not val.isdigit():
            raise ParseError("exponent must be an integer", self.text, pos)
        if paren:
            self.expect(")")
        return sign * int(val)

    def atom(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "num":
            return const(Fraction(val))
        if kind == "name":
            if val in _FUNC_BUILDERS:
                if self.peek()[1] != "(":
                    raise ParseError(f"function {val!r} needs an argument in parentheses", self.text, self.peek()[2])
                self.take()
                arg = self.expr()
                self.expect(")")
                return _FUNC_BUILDERS[val](arg)
            if val != "pi" and self.names is not None and val not in self.names:
                raise ParseError(f"unknown identifier {val!r}", self.text, pos)
            return sym(val)
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {found}", self.text, pos)


def parse_expr(text: str, names: Iterable[str] | None = None) -> Expr:
    """Parse ``text``.  If ``names`` is given, any other identifier (apart
    from ``pi`` and the function names) is rejected."""
    if not isinstance(text, str):
        text = str(text)
    return _Parser(text, frozenset(names) if names is not None else None).parse()


# --------------------------------------------------------------------------
# domains and sampling


@dataclass(frozen=True)
class Domain:
    """Closed sampling box.  ``intervals`` maps each sampled symbol
    (coordinates, and optionally free parameters) to ``(lo, hi)``;
    ``fixed`` binds named constants such as ``pi``."""

    intervals: tuple[tuple[str, float, float], ...]
    fixed: tuple[tuple[str, float], ...] = (("pi", math.pi),)

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("domain has no coordinates")
        seen = set()
        for name, lo, hi in self.intervals:
            if name in seen:
                raise ValueError(f"duplicate domain entry {name!r}")
            seen.add(name)
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"interval for {name!r} has a non-finite endpoint")
            if lo > hi:
                raise ValueError(f"interval for {name!r} is empty")

    @classmethod
    def box(cls, bounds: Mapping[str, tuple[float, float]], fixed: Mapping[str, float] | None = None) -> "Domain":
        fx = {"pi": math.pi}
        if fixed:
            fx.update(fixed)
        return cls(
            tuple((k, float(lo), float(hi)) for k, (lo, hi) in bounds.items()),
            tuple(sorted((k, float(v)) for k, v in fx.items())),
        )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _, _ in self.intervals)

    def restricted(self, name: str, lo: float, hi: float) -> "Domain":
        return Domain(
            tuple((n, lo, hi) if n == name else (n, a, b) for n, a, b in self.intervals),
            self.fixed,
        )

    def with_fixed(self, **values: float) -> "Domain":
        fx = dict(self.fixed)
        fx.update(values)
        return Domain(self.intervals, tuple(sorted(fx.items())))


@dataclass(eq=False)
class SampleSet:
    """Points of a domain plus a per-node evaluation memo.

    The points are the first ``n`` points of the unscrambled Halton
    sequence in ``d`` dimensions (bases 2, 3, 5, ...), skipping the origin,
    mapped affinely onto the box.  The sequence is fixed, so every run
    samples the same points.
    """

    domain: Domain
    n: int
    env: dict = field(init=False)
    memo: "weakref.WeakKeyDictionary" = field(init=False)

    def __post_init__(self):
        d = len(self.domain.intervals)
        halton = qmc.Halton(d=d, scramble=False)
        halton.fast_forward(1)
        unit = halton.random(self.n)
        self.env = {}
        for j, (name, lo, hi) in enumerate(self.domain.intervals):
            self.env[name] = lo + (hi - lo) * unit[:, j]
        for name, v in self.domain.fixed:
            self.env.setdefault(name, np.full(self.n, v))
        self.memo = weakref.WeakKeyDictionary()

    @property
    def size(self) -> int:
        return self.n

    def value_of(self, name: str) -> np.ndarray:
        try:
            return self.env[name]
        except KeyError:
            raise EvaluationError(f"symbol {name!r} has no value on this domain") from None

    def eval(self, e: ExprLike) -> np.ndarray:
        e = as_expr(e)
        out = self.memo.get(e)
        if out is None:
            with np.errstate(all="ignore"):
                out = e._eval(self)
            if not np.all(np.isfinite(out)):
                raise EvaluationError(f"non-finite value while evaluating {_short(e)}")
            self.memo[e] = out
        return out


def _short(e: Expr, limit: int = 200) -> str:
    s = render(e)
    return s if len(s) <= limit else s[:limit] + "..."


@lru_cache(maxsize=64)
def sample_set(domain: Domain, n: int = DEFAULT_SAMPLES) -> SampleSet:
    """Shared, cached sample set for ``domain``."""
    return SampleSet(domain, n)


def eval_at(e: ExprLike, point: Mapping[str, float]) -> float:
    """Evaluate at one point.  ``pi`` is bound automatically."""
    env = {"pi": math.pi}
    env.update(point)
    dom = Domain(tuple((k, float(v), float(v)) for k, v in env.items()), ())
    ss = SampleSet.__new__(SampleSet)
    ss.domain = dom
    ss.n = 1
    ss.env = {k: np.array([float(v)]) for k, v in env.items()}
    ss.memo = weakref.WeakKeyDictionary()
    return float(ss.eval(e)[0])


def max_abs_diff(a: ExprLike, b: ExprLike, dom: Domain, samples: int = DEFAULT_SAMPLES) -> float:
    ss = sample_set(dom, samples)
    return float(np.max(np.abs(ss.eval(a) - ss.eval(b))))


def num_equal(
    a: ExprLike,
    b: ExprLike,
    dom: Domain,
    samples: int = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
) -> bool:
    """True iff |a−b| ≤ tol·(1+max(|a|,|b|)) at every sample point."""
    a, b = as_expr(a), as_expr(b)
    if a is b:
        return True
    ss = sample_set(dom, samples)
    va, vb = ss.eval(a), ss.eval(b)
    return bool(np.all(np.abs(va - vb) <= tol * (1.0 + np.maximum(np.abs(va), np.abs(vb)))))


def settle(e: ExprLike, dom: Domain, samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL) -> Expr:
    """Replace an expression that is numerically a small rational constant
    on the domain by that constant (used when rendering, e.g.
    1/sin(t)^2 − cot(t)^2 → 1).  Anything else is returned unchanged."""
    e = as_expr(e)
    if isinstance(e, Const) or not e.free_symbols():
        return e
    try:
        vals = sample_set(dom, samples).eval(e)
    except EvaluationError:
        return e
    v = float(vals.mean())
    if float(np.abs(vals - v).max()) > tol * (1 + abs(v)):
        return e
    frac = Fraction(v).limit_denominator(64)
    if abs(float(frac) - v) > tol * (1 + abs(v)):
        return e
    return const(frac)
