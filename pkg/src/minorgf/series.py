"""Truncated exponential-generating-function arithmetic over exact rationals.

A TruncatedEGF holds coefficients c_0..c_N of Sum c_n x^n with c_n = |A_n|/n!.
Coefficients are Fractions by default, but any commutative ring element with
+, -, * and division by integers works; bivariate series use `Poly`
coefficients, and the implicit-equation solver differentiates functionals by
running them over `Dual` coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class Poly:
    """Dense univariate polynomial with exact-rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence[Fraction] = ()):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @staticmethod
    def const(value) -> "Poly":
        return Poly((Fraction(value),))

    @staticmethod
    def var() -> "Poly":
        return Poly((ZERO, ONE))

    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        return self.c == Poly.const(other).c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Poly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-v for v in self.c))

    def __sub__(self, other):
        if isinstance(other, Poly):
            return self + (-other)
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self + Poly.const(-Fraction(other))

    def __rsub__(self, other):
        return Poly.const(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            q = Fraction(other)
            return Poly(tuple(v * q for v in self.c))
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, va in enumerate(a):
            if va:
                for j, vb in enumerate(b):
                    out[i + j] += va * vb
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        q = Fraction(other)
        return Poly(tuple(v / q for v in self.c))

    def __call__(self, value):
        """Horner evaluation; works for Fractions and for series."""
        if not self.c:
            return ZERO
        acc = self.c[-1]
        for v in reversed(self.c[:-1]):
            acc = acc * value + v
        return acc

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if k < len(self.c) else ZERO

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for i, v in enumerate(self.c):
            if v:
                parts.append(f"{v}" if i == 0 else (f"{v}*y^{i}" if i > 1 else f"{v}*y"))
        return " + ".join(parts)


class Dual:
    """a + b*eps with eps^2 = 0; components live in any coefficient ring."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=ZERO):
        self.a = a
        self.b = b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a + other.a, self.b + other.b)
        return Dual(self.a + other, self.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a - other.a, self.b - other.b)
        return Dual(self.a - other, self.b)

    def __rsub__(self, other):
        return Dual(other - self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a * other.a, self.a * other.b + self.b * other.a)
        return Dual(self.a * other, self.b * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            raise TypeError("division by dual numbers is not needed here")
        return Dual(self.a / other, self.b / other)


class TruncatedEGF:
    """Exact truncated power series; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = tuple(coeffs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int) -> "TruncatedEGF":
        return TruncatedEGF((ZERO,) * (order + 1))

    @staticmethod
    def one(order: int) -> "TruncatedEGF":
        return TruncatedEGF((ONE,) + (ZERO,) * order)

    @staticmethod
    def x(order: int) -> "TruncatedEGF":
        return TruncatedEGF((ZERO, ONE) + (ZERO,) * (order - 1))

    @staticmethod
    def const(value, order: int) -> "TruncatedEGF":
        return TruncatedEGF((Fraction(value),) + (ZERO,) * order)

    @staticmethod
    def from_coeffs(coeffs: Sequence, order: int) -> "TruncatedEGF":
        c = list(coeffs)[: order + 1]
        c += [ZERO] * (order + 1 - len(c))
        return TruncatedEGF(c)

    # -- basics ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedEGF) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"TruncatedEGF([{inner}{tail}]; order={self.order})"

    def is_zero(self) -> bool:
        return not any(bool(c) for c in self.coeffs)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; order+1 when all vanish."""
        for i, c in enumerate(self.coeffs):
            if bool(c):
                return i
        return self.order + 1

    def truncate(self, order: int) -> "TruncatedEGF":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedEGF(self.coeffs[: order + 1])

    def map(self, f: Callable) -> "TruncatedEGF":
        return TruncatedEGF(tuple(f(c) for c in self.coeffs))

    # -- ring ops ------------------------------------------------------------

    def _aligned(self, other: "TruncatedEGF") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, TruncatedEGF):
            n = self._aligned(other)
            return TruncatedEGF(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))
        out = list(self.coeffs)
        out[0] = out[0] + other
        return TruncatedEGF(out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedEGF(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, TruncatedEGF):
            return self + (-other)
        out = list(self.coeffs)
        out[0] = out[0] - other
        return TruncatedEGF(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedEGF):
            return TruncatedEGF(tuple(c * other for c in self.coeffs))
        n = self._aligned(other)
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if not bool(ai):
                continue
            for j in range(n + 1 - i):
                bj = b[j]
                if bool(bj):
                    out[i + j] = out[i + j] + ai * bj
        return TruncatedEGF(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedEGF":
        """Multiply by x^k, keeping the order."""
        if k == 0:
            return self
        return TruncatedEGF((ZERO,) * k + self.coeffs[: self.order + 1 - k])

    def shift_down(self, k: int) -> "TruncatedEGF":
        """Divide by x^k; the dropped coefficients must vanish."""
        if any(bool(c) for c in self.coeffs[:k]):
            raise ValueError(f"series is not divisible by x^{k}")
        return TruncatedEGF(self.coeffs[k:])

    def derive(self) -> "TruncatedEGF":
        return TruncatedEGF(tuple((i + 1) * self.coeffs[i + 1] for i in range(self.order)))

    def integrate(self, constant=ZERO) -> "TruncatedEGF":
        out = [constant]
        for i, c in enumerate(self.coeffs[:-1]):
            out.append(c / (i + 1))
        return TruncatedEGF(out)

    def exp(self) -> "TruncatedEGF":
        c0 = self.coeffs[0]
        if bool(c0):
            # a nilpotent (dual) constant term splits off as exp(eps*b) = 1 + eps*b
            if isinstance(c0, Dual) and not bool(c0.a):
                body = TruncatedEGF((ZERO,) + self.coeffs[1:]).exp()
                return body * Dual(ONE, c0.b)
            raise ValueError("exp needs a vanishing constant term")
        n = self.order
        out = [ONE] + [ZERO] * n
        df = self.derive().coeffs
        for m in range(n):
            acc = ZERO
            for k in range(m + 1):
                if bool(df[k]):
                    acc = acc + df[k] * out[m - k]
            out[m + 1] = acc / (m + 1)
        return TruncatedEGF(out)

    def log(self) -> "TruncatedEGF":
        if self.coeffs[0] != ONE:
            raise ValueError("log needs constant term 1")
        n = self.order
        out = [ZERO] * (n + 1)
        f = self.coeffs
        # f * L' = f'
        for m in range(1, n + 1):
            acc = m * f[m]
            for k in range(1, m):
                acc = acc - f[k] * ((m - k) * out[m - k])
            out[m] = acc / m
        return TruncatedEGF(out)

    def inverse(self) -> "TruncatedEGF":
        c0 = self.coeffs[0]
        if not bool(c0):
            raise ValueError("series with zero constant term has no inverse")
        if isinstance(c0, Fraction) or isinstance(c0, int):
            inv0 = ONE / c0
        elif isinstance(c0, Poly) and c0.degree() <= 0:
            inv0 = ONE / c0.c[0]
        else:
            raise TypeError("inverse needs an invertible scalar constant term")
        n = self.order
        out = [inv0] + [ZERO] * n
        for m in range(1, n + 1):
            acc = ZERO
            for k in range(1, m + 1):
                if bool(self.coeffs[k]):
                    acc = acc + self.coeffs[k] * out[m - k]
            out[m] = -inv0 * acc
        return TruncatedEGF(out)

    def __truediv__(self, other):
        if isinstance(other, TruncatedEGF):
            v = other.valuation()
            if v == 0:
                return self * other.inverse()
            if self.valuation() < v:
                raise ValueError("division would produce negative powers")
            return self.shift_down(v) * other.shift_down(v).inverse()
        return TruncatedEGF(tuple(c / other for c in self.coeffs))

    def __rtruediv__(self, other):
        return TruncatedEGF.const(other, self.order) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedEGF.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def compose(self, inner: "TruncatedEGF") -> "TruncatedEGF":
        """self(inner); inner needs a zero (or nilpotent dual) constant term."""
        c0 = inner.coeffs[0]
        if bool(c0) and not (isinstance(c0, Dual) and not bool(c0.a)):
            raise ValueError("composition needs an inner series with zero constant term")
        n = inner.order
        acc = TruncatedEGF.zero(n) + self.coeffs[min(self.order, n)]
        for k in range(min(self.order, n) - 1, -1, -1):
            acc = acc * inner + self.coeffs[k]
        return acc

    def sqrt(self) -> "TruncatedEGF":
        """Square root with constant term +1."""
        if self.coeffs[0] != ONE:
            raise ValueError("sqrt needs constant term 1")
        n = self.order
        out = [ONE] + [ZERO] * n
        for m in range(1, n + 1):
            acc = self.coeffs[m]
            for k in range(1, m):
                acc = acc - out[k] * out[m - k]
            out[m] = acc / 2
        return TruncatedEGF(out)

    # -- conveniences --------------------------------------------------------

    def counts(self) -> list:
        """n! * c_n -- the labelled counting sequence."""
        from math import factorial
        return [self.coeffs[n] * factorial(n) for n in range(self.order + 1)]

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def subs_poly_at_one(self) -> "TruncatedEGF":
        """For Poly-coefficient series: the slice at symbol value 1."""
        return TruncatedEGF(tuple(
            c(ONE) if isinstance(c, Poly) else c for c in self.coeffs))


class NonContractiveError(ValueError):
    pass


def newton_implicit(phi: Callable[[TruncatedEGF], TruncatedEGF], order: int,
                    max_iter: int | None = None) -> TruncatedEGF:
    """The unique series y = phi(y) with increasing correct prefix.

    `phi` must act on series over any coefficient ring (it is evaluated over
    dual numbers to extract its y-derivative).  The fixed point must be
    contractive in valuation: phi(x, 0) has positive valuation and the
    y-derivative vanishes at the origin.
    """
    y = TruncatedEGF.zero(order)
    last_val = -1
    limit = max_iter if max_iter is not None else order.bit_length() + 4
    one = TruncatedEGF.one(order)
    for _ in range(limit):
        lifted = y.map(lambda c: Dual(c, ZERO))
        lifted = TruncatedEGF((Dual(lifted.coeffs[0].a, ONE),) + lifted.coeffs[1:])
        out = phi(lifted)
        if out.order < order:
            raise ValueError("functional truncated the series below the requested order")
        value = out.map(lambda d: d.a if isinstance(d, Dual) else d)
        deriv = out.map(lambda d: d.b if isinstance(d, Dual) else ZERO)
        residual = value - y
        if residual.is_zero():
            return y
        val = residual.valuation()
        if val <= last_val:
            raise NonContractiveError(
                f"fixed-point iteration stalled at valuation {val}")
        last_val = val
        if bool(deriv.coeffs[0]):
            d0 = deriv.coeffs[0]
            if isinstance(d0, Fraction) and d0 == ONE:
                raise NonContractiveError("unit derivative at the origin")
        y = y + residual / (one - deriv)
    raise NonContractiveError("fixed point not reached within the iteration budget")
