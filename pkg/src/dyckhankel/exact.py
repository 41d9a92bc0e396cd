"""Exact coefficient arithmetic over Q.

Rationals are :class:`fractions.Fraction`.  On top of that this module has
dense polynomials (:class:`Poly`), reduced quotients of polynomials
(:class:`RatFun`) and power series truncated at a fixed order
(:class:`TruncSeries`), plus the solver for quadratic equations of the shape
``F = x^d / (u + x^k v F)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class PoleAtOriginError(ArithmeticError):
    """A rational function with den(0) = 0 was asked for a power series."""


class OrderMismatchError(ValueError):
    pass


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial, ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, e: int, c: Number = 1) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent in a polynomial")
        return cls([0] * e + [c])

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls([c])

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("valuation of the zero polynomial")

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def lc(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, t):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k (k >= 0) or divide exactly by x^-k (k < 0)."""
        if k >= 0:
            return Poly([0] * k + list(self.coeffs))
        if any(self.coeffs[: -k]):
            raise ValueError("polynomial not divisible by that power of x")
        return Poly(self.coeffs[-k:])

    def __divmod__(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [ZERO] * (len(rem) - dq)
        lead = other.lc()
        for i in range(len(rem) - 1 - dq, -1, -1):
            c = rem[i + dq] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        return self * (1 / self.lc()) if self.coeffs else self


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic()


X = Poly([0, 1])


# ---------------------------------------------------------------------------
# rational functions


class RatFun:
    """Reduced quotient num/den of polynomials.

    Canonical form: gcd(num, den) = 1 and den is scaled so that den(0) = 1,
    or, when den(0) = 0, so that its lowest nonzero coefficient is 1.  Two
    equal rational functions therefore have identical (num, den).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = Poly._coerce(num)
        den = Poly.const(1) if den is None else Poly._coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFun needs polynomial or scalar parts")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        scale = den[den.valuation]
        self.num = num * (1 / scale)
        self.den = den * (1 / scale)

    @classmethod
    def monomial(cls, e: int, c: Number = 1) -> "RatFun":
        """c * x^e for any integer e (negative e gives a pole at 0)."""
        if e >= 0:
            return cls(Poly.monomial(e, c))
        return cls(Poly.const(c), Poly.monomial(-e))

    def __repr__(self):
        return f"RatFun({self.num!s} / {self.den!s})"

    def __str__(self):
        if self.den == Poly.const(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __eq__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return RatFun(other)
        return NotImplemented

    def __add__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return other
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFun._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFun._coerce(other) / self

    def shift(self, e: int) -> "RatFun":
        """Multiply by x^e."""
        return self * RatFun.monomial(e)

    @property
    def has_pole_at_origin(self) -> bool:
        return self.den[0] == 0

    def at_zero(self) -> Fraction:
        if self.has_pole_at_origin:
            raise PoleAtOriginError(f"{self} has a pole at x = 0")
        return self.num[0] / self.den[0]

    @property
    def valuation(self) -> int:
        """Order at x = 0 (negative for a pole)."""
        if not self.num:
            raise ValueError("valuation of the zero rational function")
        return self.num.valuation - (self.den.valuation if self.den else 0)

    def is_polynomial(self) -> bool:
        return self.den == Poly.const(1)


def geom_sum(a: int, b: int) -> RatFun:
    """x^a + ... + x^b, extended to all integer limits as (x^a - x^(b+1))/(1 - x).

    With this convention an empty range (b = a - 1) gives 0 and a reversed
    range gives minus the sum over b+1..a-1.
    """
    return (RatFun.monomial(a) - RatFun.monomial(b + 1)) / RatFun(Poly([1, -1]))


def ratfun_arith(f: RatFun, g: RatFun, op: str) -> RatFun:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# truncated power series


class TruncSeries:
    """Power series known modulo x^(order+1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number], order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is not None:
            if order < -1:
                raise ValueError("order must be >= -1")
            cs = (cs + [ZERO] * (order + 1 - len(cs)))[: order + 1]
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls((1,), order)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncSeries":
        return cls(p.coeffs, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"TruncSeries([{', '.join(str(c) for c in self.coeffs)}], order={self.order})"

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _check(self, other: "TruncSeries"):
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected TruncSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries((other,), self.order)
        self._check(other)
        return TruncSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(-a for a in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries((other,), self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncSeries(a * other for a in self.coeffs)
        self._check(other)
        n = len(self.coeffs)
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * n
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return TruncSeries(out)

    __rmul__ = __mul__

    def reciprocal(self) -> "TruncSeries":
        a = self.coeffs
        if not a or a[0] == 0:
            raise ZeroDivisionError("reciprocal of a series with zero constant term")
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, len(a)):
            s = sum(a[i] * out[n - i] for i in range(1, n + 1) if a[i])
            out.append(-s * inv0)
        return TruncSeries(out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / _frac(other))
        return self * other.reciprocal()

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by x^k keeping the order (k >= 0), or drop the first -k
        coefficients, which must vanish, lowering the order by -k."""
        if k >= 0:
            return TruncSeries([ZERO] * k + list(self.coeffs), self.order)
        if any(self.coeffs[:-k]):
            raise ValueError("series not divisible by that power of x")
        return TruncSeries(self.coeffs[-k:])

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def ints(self) -> list[int]:
        """Coefficients as Python ints; raises if any is not integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            out.append(c.numerator)
        return out


def series_arith(a: TruncSeries, b: TruncSeries | None, op: str) -> TruncSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "reciprocal":
        return a.reciprocal()
    raise ValueError(f"unknown operation {op!r}")


def series_expand(f: RatFun, order: int) -> TruncSeries:
    """Coefficients 0..order of the power series of f."""
    if f.has_pole_at_origin:
        raise PoleAtOriginError(f"{f} has a pole at x = 0")
    return TruncSeries.from_poly(f.num, order) / TruncSeries.from_poly(f.den, order)


# ---------------------------------------------------------------------------
# quadratic functional equations


@dataclass(frozen=True)
class QuadEq:
    """The equation F = x^d / (u + x^k v F) with u(0), v(0) nonzero."""

    d: int
    k: int
    u: RatFun
    v: RatFun

    def __post_init__(self):
        if self.d < 0:
            raise ValueError(f"d must be >= 0, got {self.d}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        for name in ("u", "v"):
            f = getattr(self, name)
            if not isinstance(f, RatFun):
                object.__setattr__(self, name, f := RatFun(f))
            if f.has_pole_at_origin:
                raise PoleAtOriginError(f"{name} = {f} has a pole at the origin")
            if f.at_zero() == 0:
                raise ValueError(f"{name}(0) must be nonzero, {name} = {f}")

    def residual(self, F: TruncSeries) -> TruncSeries:
        """F (u + x^k v F) - x^d, to the order of F."""
        N = F.order
        U, V = series_expand(self.u, N), series_expand(self.v, N)
        return F * (U + (V * F).shift(self.k)) - TruncSeries.from_poly(Poly.monomial(self.d), N)

    def __str__(self):
        return f"F = x^{self.d} / ({self.u} + x^{self.k} * ({self.v}) * F)"


def solve_fraction_equation(numer: TruncSeries, base: TruncSeries, k: int,
                            coef: TruncSeries) -> TruncSeries:
    """Power series G with G (base + x^k coef G) = numer, base(0) != 0, k >= 1.

    Coefficient n of G only involves coefficients < n of G on the right-hand
    side, so the fixed point is read off one coefficient at a time.
    """
    N = numer.order
    if base.order != N or coef.order != N:
        raise OrderMismatchError("numer, base and coef must share one order")
    if k < 1:
        raise ValueError("k must be >= 1")
    b0 = base[0]
    if b0 == 0:
        raise ZeroDivisionError("base(0) must be nonzero")
    g: list[Fraction] = []
    sq: list[Fraction] = []  # coefficients of G^2
    for n in range(N + 1):
        s = numer[n]
        for i in range(n):
            if g[i]:
                s -= g[i] * base[n - i]
        j = n - k
        if j >= 0:
            s -= sum(coef[l] * sq[j - l] for l in range(j + 1) if coef[l])
        g.append(s / b0)
        sq.append(sum(g[i] * g[n - i] for i in range(n + 1)))
    return TruncSeries(g)


def solve_quadratic(eq: QuadEq, order: int) -> TruncSeries:
    """The unique power series solution of eq, to x^order."""
    return solve_fraction_equation(
        TruncSeries.from_poly(Poly.monomial(eq.d), order),
        series_expand(eq.u, order),
        eq.k,
        series_expand(eq.v, order),
    )


def iterate_fraction_equation(numer: RatFun, base: RatFun, k: int, coef: RatFun,
                              order: int, steps: int | None = None) -> TruncSeries:
    """Plain fixed-point iteration G <- numer / (base + x^k coef G) from G = 0.

    Each pass fixes at least one more coefficient, so order + 2 passes are
    always enough.  Slower than :func:`solve_fraction_equation`; kept as an
    independent route.
    """
    Nm, B, C = (series_expand(f, order) for f in (numer, base, coef))
    G = TruncSeries.zero(order)
    for _ in range(order + 2 if steps is None else steps):
        G = Nm / (B + (C * G).shift(k))
    return G


def solve_quadratic_iterative(eq: QuadEq, order: int) -> TruncSeries:
    return iterate_fraction_equation(RatFun.monomial(eq.d), eq.u, eq.k, eq.v, order)
