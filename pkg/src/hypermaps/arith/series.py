"""Truncated Laurent series over an arbitrary commutative Q-algebra.

A TruncSeries represents a series known *exactly* for all exponents <= order:
finitely many negative exponents are allowed (truncated Laurent series), and
coefficients below the stored support are exact zeros.  Reading a coefficient
beyond the truncation order raises instead of silently returning zero --
silent zero-extension is the classic source of wrong residues.

Windows combine conservatively: the product of series known to orders N1, N2
with valuations v1, v2 is only known to min(N1 + v2, N2 + v1).
"""

from .rat import Rat, ZERO, ONE


class WindowError(ArithmeticError):
    """Coefficient requested beyond the validity window of a series."""


def _inv_coeff(c):
    if hasattr(c, "inverse"):
        return c.inverse()
    return ONE / c


class TruncSeries:
    """sum of coeffs[k] * t^(lo+k), exact through t^order."""

    __slots__ = ("lo", "order", "coeffs", "zero")

    def __init__(self, lo: int, order: int, coeffs, zero):
        # normalize: strip exact leading/trailing zeros so lo is the valuation
        cs = list(coeffs)
        while cs and cs[-1] == zero:
            cs.pop()
        shift = 0
        while shift < len(cs) and cs[shift] == zero:
            shift += 1
        if shift:
            cs = cs[shift:]
            lo += shift
        if not cs:
            lo = order + 1
        if lo + len(cs) - 1 > order:
            raise WindowError("support exceeds declared truncation order")
        self.lo = lo
        self.order = order
        self.coeffs = cs
        self.zero = zero

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_terms(cls, terms: dict, order: int, zero) -> "TruncSeries":
        if not terms:
            return cls(order + 1, order, [], zero)
        lo = min(terms)
        hi = max(terms)
        cs = [zero] * (hi - lo + 1)
        for k, v in terms.items():
            cs[k - lo] = v
        return cls(lo, order, cs, zero)

    @classmethod
    def zero_series(cls, order: int, zero) -> "TruncSeries":
        return cls(order + 1, order, [], zero)

    @classmethod
    def const(cls, value, order: int, zero) -> "TruncSeries":
        return cls.from_terms({0: value}, order, zero)

    # -- basic access ---------------------------------------------------

    def __getitem__(self, k: int):
        if k > self.order:
            raise WindowError(
                f"coefficient t^{k} requested but series only valid through t^{self.order}"
            )
        if k < self.lo or k >= self.lo + len(self.coeffs):
            return self.zero
        return self.coeffs[k - self.lo]

    def valuation(self) -> int:
        """Exponent of the first nonzero term; order+1 if zero so far."""
        return self.lo if self.coeffs else self.order + 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self):
        for i, c in enumerate(self.coeffs):
            if c != self.zero:
                yield self.lo + i, c

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        order = min(self.order, other.order)
        lo = min(self.valuation(), other.valuation())
        if lo > order:
            return TruncSeries.zero_series(order, self.zero)
        cs = [self[k] + other[k] for k in range(lo, order + 1)]
        return TruncSeries(lo, order, cs, self.zero)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.lo, self.order, [-c for c in self.coeffs], self.zero)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        v1, v2 = self.valuation(), other.valuation()
        order = min(self.order + v2, other.order + v1)
        if self.is_zero() or other.is_zero():
            return TruncSeries.zero_series(order, self.zero)
        lo = v1 + v2
        n_out = min(order - lo + 1, len(self.coeffs) + len(other.coeffs) - 1)
        out = [self.zero] * n_out
        for i, a in enumerate(self.coeffs):
            if a == self.zero:
                continue
            jmax = min(len(other.coeffs), n_out - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b != other.zero:
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(lo, order, out, self.zero)

    def scale(self, c) -> "TruncSeries":
        return TruncSeries(self.lo, self.order, [x * c for x in self.coeffs], self.zero)

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; leading coefficient must be a unit."""
        if self.is_zero():
            raise ZeroDivisionError("inverting a series with no visible terms")
        v = self.lo
        n = self.order - 2 * v  # inverse is valid through this many terms past -v
        if n < 0:
            raise WindowError("window too small to invert")
        d0 = _inv_coeff(self.coeffs[0])
        out = [d0]
        for k in range(1, n + 1):
            acc = self.zero
            jmax = min(k, len(self.coeffs) - 1)
            for j in range(1, jmax + 1):
                cj = self.coeffs[j]
                if cj != self.zero:
                    acc = acc + cj * out[k - j]
            out.append(-(d0 * acc))
        return TruncSeries(-v, self.order - 2 * v, out, self.zero)

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        return self * other.inverse()

    def pow(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.inverse().pow(-n)
        base = self
        out = None
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        if out is None:
            return TruncSeries.from_terms({0: _one_like(self.zero)}, self.order, self.zero)
        return out

    def deriv(self) -> "TruncSeries":
        cs = [(self.lo + i) * c for i, c in enumerate(self.coeffs)]
        return TruncSeries(self.lo - 1, self.order - 1, cs, self.zero)

    def negate_var(self) -> "TruncSeries":
        """Substitute t -> -t."""
        cs = [c if (self.lo + i) % 2 == 0 else -c for i, c in enumerate(self.coeffs)]
        return TruncSeries(self.lo, self.order, cs, self.zero)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise WindowError("cannot extend a window by truncation")
        cs = self.coeffs[: max(0, order - self.lo + 1)]
        return TruncSeries(self.lo, order, cs, self.zero)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k."""
        return TruncSeries(self.lo + k, self.order + k, list(self.coeffs), self.zero)

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.valuation() == other.valuation()
            and self.coeffs == other.coeffs
        )

    def agrees_through(self, other: "TruncSeries", order: int) -> bool:
        """Coefficientwise equality for all exponents <= order."""
        lo = min(self.valuation(), other.valuation(), order)
        return all(self[k] == other[k] for k in range(lo, order + 1))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{k}" for k, c in self.terms()) or "0"
        return f"<{body} + O(t^{self.order + 1})>"


def _one_like(zero):
    """Multiplicative identity of the coefficient ring, derived from its zero."""
    if hasattr(zero, "ring"):
        return zero.ring.one()
    if hasattr(zero, "coeffs"):  # HbarPoly
        return type(zero).const(1)
    return ONE


def series_exp(s: TruncSeries) -> TruncSeries:
    """exp of a series with zero constant term, to the same order."""
    if s.valuation() < 1:
        raise ValueError("series_exp requires zero constant term")
    n = s.order
    out = [_one_like(s.zero)]
    for k in range(1, n + 1):
        acc = s.zero
        for j in range(1, k + 1):
            sj = s[j]
            if sj != s.zero:
                acc = acc + (sj * out[k - j]) * Rat(j)
        out.append(acc * Rat(1, k))
    return TruncSeries(0, n, out, s.zero)


def series_log(s: TruncSeries) -> TruncSeries:
    """log of a series with constant term 1, to the same order."""
    one = _one_like(s.zero)
    if s.valuation() != 0 or s[0] != one:
        raise ValueError("series_log requires constant term 1")
    n = s.order
    out = [s.zero]
    for k in range(1, n + 1):
        acc = s[k] * Rat(k)
        for j in range(1, k):
            sj = s[k - j]
            if sj != s.zero:
                acc = acc - (out[j] * sj) * Rat(j)
        out.append(acc * Rat(1, k))
    return TruncSeries(0, n, out, s.zero)


def lagrange_invert(f: TruncSeries, order: int) -> TruncSeries:
    """Invert a Laurent series x = f(z) with a simple pole at z = 0.

    f must look like c/z + O(1) with c a nonzero rational.  Returns the
    branch z(x) = c/x + O(x^-2) as a power series in 1/x, to x^-order,
    satisfying f(z(x)) = x through the same order.

    The fixed-point form z = (c + z * g(z)) / x with g(z) = z * (f(z) - c/z)
    gains at least one order of accuracy per iteration.
    """
    if f.valuation() != -1:
        raise ValueError("expected a simple pole c/z at z = 0")
    c = f[-1]
    # tail(z) = z*(f(z) - c/z) = sum_{k>=0} f_k z^{k+1}, a polynomial-like series
    tail_terms = {k + 1: f[k] for k in range(0, f.order + 1) if f[k] != ZERO}
    # z as a series in u = 1/x; iterate z <- u*(c + tail(z))
    z = TruncSeries.from_terms({1: c}, order, ZERO)
    for _ in range(order):
        acc = TruncSeries.const(c, order - 1, ZERO)
        for k, fk in sorted(tail_terms.items()):
            zk = z.pow(k).truncate(order - 1)
            acc = acc + zk.scale(fk)
        z_new = acc.shift(1)
        if z_new.coeffs == z.coeffs and z_new.lo == z.lo:
            break
        z = z_new
    return z
