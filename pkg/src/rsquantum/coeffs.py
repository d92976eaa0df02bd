"""Exact coefficient arithmetic in the parameters r and s.

Two types live here.

``LaurentBi`` is a Laurent polynomial in r, s with rational coefficients.
``RatFn`` is a reduced quotient of Laurent polynomials. It is the coefficient
type of every algebra element in the package.

``RatFn`` stores a triple ``(n, d, e)`` meaning ``x^e * n / d``, where ``n`` and
``d`` are integer polynomials from python-flint with no monomial factor,
``gcd(n, d) = 1`` (integer content included) and the leading coefficient of
``d`` in lex order is positive. This makes equal values structurally equal.
The same class works over any flint polynomial context, which the module
layer uses to add symbolic highest-weight variables.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

import flint

RS = flint.fmpz_mpoly_ctx.get(("r", "s"), "lex")
Q_CTX = flint.fmpz_mpoly_ctx.get(("q",), "lex")

Scalar = Union[int, Fraction, "RatFn"]


class SpecializationPole(ZeroDivisionError):
    """The denominator vanishes under a substitution."""


def _strip(p):
    """Split a nonzero polynomial into (monomial exponents, monomial-free part)."""
    tc = p.term_content()
    exps = tuple(int(x) for x in next(iter(tc.monoms())))
    if not any(exps):
        return exps, p
    return exps, p / p.context().term(exp_vec=exps)


def _shift(p, exps):
    if not any(exps):
        return p
    return p * p.context().term(exp_vec=exps)


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


class RatFn:
    """Reduced rational function ``x^e * n / d`` over a flint polynomial context."""

    __slots__ = ("n", "d", "e")

    def __init__(self, n, d, e):
        self.n = n
        self.d = d
        self.e = e

    # construction

    @staticmethod
    def _make(n, d, e):
        """Normalize an arbitrary triple with nonzero d."""
        ctx = n.context()
        if n.is_zero():
            return RatFn(n, ctx.constant(1), (0,) * ctx.nvars())
        en, n = _strip(n)
        if d.is_one():
            return RatFn(n, d, _vadd(e, en))
        ed, d = _strip(d)
        e = _vsub(_vadd(e, en), ed)
        if not d.is_constant():
            g = n.gcd(d)
            if not g.is_one():
                n = n / g
                d = d / g
        else:
            c = d.leading_coefficient()
            g = flint.fmpz(n.content()).gcd(c)
            if g != 1:
                n = n / g
                d = d / g
        if d.leading_coefficient() < 0:
            n = -n
            d = -d
        return RatFn(n, d, e)

    @classmethod
    def const(cls, c, ctx=RS) -> "RatFn":
        c = Fraction(c)
        zero = (0,) * ctx.nvars()
        if c.denominator == 1:
            return cls(ctx.constant(c.numerator), ctx.constant(1), zero)
        return cls._make(ctx.constant(c.numerator), ctx.constant(c.denominator), zero)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff=1, ctx=RS) -> "RatFn":
        exps = tuple(exps)
        if coeff == 0:
            return cls.const(0, ctx)
        return cls(ctx.constant(coeff), ctx.constant(1), exps)

    @classmethod
    def rs(cls, a: int, b: int) -> "RatFn":
        """The monomial r^a s^b."""
        return cls(RS.constant(1), RS.constant(1), (a, b))

    @classmethod
    def from_poly(cls, p, shift=None) -> "RatFn":
        ctx = p.context()
        return cls._make(p, ctx.constant(1), shift or (0,) * ctx.nvars())

    def coerce(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            return other
        if isinstance(other, LaurentBi):
            return other.to_ratfn()
        return RatFn.const(other, self.n.context())

    # predicates

    def context(self):
        return self.n.context()

    def is_zero(self) -> bool:
        return self.n.is_zero()

    def is_one(self) -> bool:
        return self.n.is_one() and self.d.is_one() and not any(self.e)

    def is_laurent(self) -> bool:
        return self.d.is_one()

    def is_monomial(self) -> bool:
        return self.d.is_one() and self.n.is_constant()

    def __bool__(self) -> bool:
        return not self.n.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFn):
            try:
                other = self.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.e == other.e and self.n == other.n and self.d == other.d

    def __hash__(self) -> int:
        return hash((self.e, str(self.n), str(self.d)))

    # arithmetic

    def __neg__(self) -> "RatFn":
        return RatFn(-self.n, self.d, self.e)

    def __add__(self, other) -> "RatFn":
        other = self.coerce(other)
        if other.n.is_zero():
            return self
        if self.n.is_zero():
            return other
        e = tuple(min(a, b) for a, b in zip(self.e, other.e))
        n1 = _shift(self.n, _vsub(self.e, e))
        n2 = _shift(other.n, _vsub(other.e, e))
        if self.d.is_one() and other.d.is_one():
            n = n1 + n2
            if n.is_zero():
                return RatFn.const(0, n.context())
            en, n = _strip(n)
            return RatFn(n, self.d, _vadd(e, en))
        if self.d == other.d:
            return RatFn._make(n1 + n2, self.d, e)
        return RatFn._make(n1 * other.d + n2 * self.d, self.d * other.d, e)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFn":
        return self + (-self.coerce(other))

    def __rsub__(self, other) -> "RatFn":
        return self.coerce(other) + (-self)

    def __mul__(self, other) -> "RatFn":
        if not isinstance(other, RatFn):
            if isinstance(other, int):
                if other == 0:
                    return RatFn.const(0, self.n.context())
                if self.d.is_one():
                    return RatFn(self.n * other, self.d, self.e)
            other = self.coerce(other)
        if self.n.is_zero():
            return self
        if other.n.is_zero():
            return other
        e = _vadd(self.e, other.e)
        if self.d.is_one() and other.d.is_one():
            return RatFn(self.n * other.n, self.d, e)
        n1, d1, n2, d2 = self.n, self.d, other.n, other.d
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        n, d = n1 * n2, d1 * d2
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFn(n, d, e)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if self.n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n, d = self.d, self.n
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return RatFn(n, d, tuple(-x for x in self.e))

    def __truediv__(self, other) -> "RatFn":
        return self * self.coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFn":
        return self.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFn":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RatFn.const(1, self.n.context())
        return RatFn(self.n**k, self.d**k, tuple(x * k for x in self.e))

    # views

    @property
    def num(self) -> "LaurentBi":
        return LaurentBi.from_poly(self.n, self.e)

    @property
    def den(self) -> "LaurentBi":
        return LaurentBi.from_poly(self.d)

    def terms(self):
        """Numerator terms as (exponents, integer) with the shift applied; only for Laurent values."""
        if not self.d.is_one():
            raise ValueError("not a Laurent polynomial")
        return [(_vadd(m, self.e), int(c)) for m, c in self.n.terms()]

    def subs_monomials(self, images: dict, ctx) -> "RatFn":
        """Substitute each variable by a RatFn monomial; variables absent from images map to themselves."""
        names = self.context().names()

        def image(poly, shift):
            total = RatFn.const(0, ctx)
            for exps, c in poly.terms():
                t = RatFn.const(int(c), ctx)
                for name, k in zip(names, _vadd(exps, shift)):
                    if k:
                        t = t * images[name] ** k
                total = total + t
            return total

        den = image(self.d, (0,) * len(names))
        if den.is_zero():
            raise SpecializationPole("denominator vanishes under substitution")
        return image(self.n, self.e) / den

    def lift(self, ctx) -> "RatFn":
        """Embed into a context that contains all current variable names."""
        if ctx is self.context():
            return self
        src = self.context().names()
        idx = [ctx.names().index(nm) for nm in src]

        def move(poly):
            out = {}
            for exps, c in poly.terms():
                t = [0] * ctx.nvars()
                for i, k in zip(idx, exps):
                    t[i] = k
                out[tuple(t)] = c
            return ctx.from_dict(out)

        e = [0] * ctx.nvars()
        for i, k in zip(idx, self.e):
            e[i] = k
        return RatFn._make(move(self.n), move(self.d), tuple(e))

    # output

    def __str__(self) -> str:
        num = _laurent_str(self.n, self.e)
        if self.d.is_one():
            return num
        den = _laurent_str(self.d, (0,) * len(self.e))
        if len(self.n) > 1:
            num = f"({num})"
        if len(self.d) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFn({self})"

    def to_json(self):
        if self.context() is not RS:
            return {"num": _laurent_str(self.n, self.e), "den": _laurent_str(self.d, (0,) * len(self.e))}
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFn":
        return LaurentBi.from_json(data["num"]).to_ratfn() / LaurentBi.from_json(data["den"]).to_ratfn()


def _laurent_str(p, shift) -> str:
    names = p.context().names()
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.terms():
        exps = _vadd(exps, shift)
        mon = "*".join(
            nm if k == 1 else f"{nm}^{k}" for nm, k in zip(names, exps) if k
        )
        c = int(c)
        if not mon:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{c}*{mon}")
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


ZERO = RatFn.const(0)
ONE = RatFn.const(1)
R = RatFn.rs(1, 0)
S = RatFn.rs(0, 1)


class LaurentBi:
    """Bivariate Laurent polynomial with rational coefficients, ``r^a s^b * p``."""

    __slots__ = ("p", "shift")

    _ctx = flint.fmpq_mpoly_ctx.get(("r", "s"), "lex")

    def __init__(self, terms: dict | None = None):
        terms = {(int(k[0]), int(k[1])): Fraction(v) for k, v in (terms or {}).items() if v != 0}
        if not terms:
            self.p = self._ctx.constant(0)
            self.shift = (0, 0)
            return
        a0 = min(a for a, _ in terms)
        b0 = min(b for _, b in terms)
        self.shift = (a0, b0)
        self.p = self._ctx.from_dict(
            {(a - a0, b - b0): flint.fmpq(c.numerator, c.denominator) for (a, b), c in terms.items()}
        )

    @classmethod
    def from_poly(cls, poly, shift=(0, 0)) -> "LaurentBi":
        return cls({_vadd(m, shift): Fraction(int(c)) for m, c in poly.terms()})

    @property
    def terms(self) -> dict:
        out = {}
        for m, c in self.p.terms():
            out[(int(m[0]) + self.shift[0], int(m[1]) + self.shift[1])] = Fraction(int(c.p), int(c.q))
        return out

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentBi) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def _combine(self, other, sign):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + sign * v
        return LaurentBi(out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return LaurentBi({k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        out = LaurentBi()
        out.p = self.p * other.p
        out.shift = _vadd(self.shift, other.shift)
        return LaurentBi(out.terms) if not out.p.is_zero() else LaurentBi()

    def to_ratfn(self) -> RatFn:
        if self.is_zero():
            return ZERO
        den = 1
        for c in self.terms.values():
            den = _lcm(den, c.denominator)
        poly = RS.from_dict({k: int(v * den) for k, v in self._poly_terms().items()})
        return RatFn._make(poly, RS.constant(den), self.shift)

    def _poly_terms(self):
        return {m: Fraction(int(c.p), int(c.q)) for m, c in self.p.terms()}

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return str(self.to_ratfn())

    __repr__ = __str__

    def to_json(self):
        return [
            [str(c.numerator), str(c.denominator), a, b]
            for (a, b), c in sorted(self.terms.items(), reverse=True)
        ]

    @classmethod
    def from_json(cls, data) -> "LaurentBi":
        return cls({(int(a), int(b)): Fraction(int(n), int(d)) for n, d, a, b in data})


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def lp_arith(op: str, x: LaurentBi, y: LaurentBi) -> LaurentBi:
    """Ring operation on Laurent polynomials: op is 'add', 'sub' or 'mul'."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=None)
def psi(n: int) -> RatFn:
    """Product of (1 - (r/s)^k) for k = 1..n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = ONE
    for k in range(1, n + 1):
        out = out * (ONE - RatFn.rs(k, -k))
    return out


def specialize(x: RatFn) -> RatFn:
    """Image under r -> q, s -> 1/q, as a RatFn in the single variable q."""
    q = RatFn.monomial((1,), ctx=Q_CTX)
    return x.subs_monomials({"r": q, "s": q.inverse()}, Q_CTX)


def q_power(k: int) -> RatFn:
    return RatFn.monomial((k,), ctx=Q_CTX)


def parse(text: str, ctx=RS) -> RatFn:
    """Parse an expression in r, s (and other context variables) with + - * / ^ and integers."""
    import ast

    names = {nm: RatFn.monomial([int(i == j) for j in range(ctx.nvars())], ctx=ctx) for i, nm in enumerate(ctx.names())}
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return RatFn.const(node.value, ctx)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                k = node.right
                sign = 1
                if isinstance(k, ast.UnaryOp) and isinstance(k.op, ast.USub):
                    sign, k = -1, k.operand
                if not (isinstance(k, ast.Constant) and isinstance(k.value, int)):
                    raise ValueError("exponents must be integers")
                return ev(node.left) ** (sign * k.value)
            a, b = ev(node.left), ev(node.right)
            ops = {ast.Add: a.__add__, ast.Sub: a.__sub__, ast.Mult: a.__mul__, ast.Div: a.__truediv__}
            for t, f in ops.items():
                if isinstance(node.op, t):
                    return f(b)
        raise ValueError(f"cannot parse {text!r}")

    return ev(tree)
