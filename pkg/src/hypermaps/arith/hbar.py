"""Laurent polynomials in the deformation parameter h (sparse exponent table).

Exponents range over a wide, mostly empty window (negative powers allowed),
so coefficients are stored in a dict keyed by exponent with no explicit
zeros.  Instances are treated as immutable values.
"""

from .rat import Rat, ZERO, ONE, rat_str


class HbarPoly:
    """Element of Q[h, h^-1]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        table = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Rat(v)
                if v != 0:
                    table[int(k)] = v
        self.coeffs = table

    @classmethod
    def const(cls, value) -> "HbarPoly":
        return cls({0: Rat(value)})

    @classmethod
    def term(cls, coeff, exponent: int) -> "HbarPoly":
        return cls({exponent: Rat(coeff)})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, HbarPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, type(ONE))):
            other = HbarPoly.const(other)
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other) -> "HbarPoly":
        if not isinstance(other, HbarPoly):
            other = HbarPoly.const(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, ZERO) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        res = HbarPoly.__new__(HbarPoly)
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "HbarPoly":
        res = HbarPoly.__new__(HbarPoly)
        res.coeffs = {k: -v for k, v in self.coeffs.items()}
        return res

    def __sub__(self, other) -> "HbarPoly":
        if not isinstance(other, HbarPoly):
            other = HbarPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "HbarPoly":
        return (-self) + other

    def __mul__(self, other) -> "HbarPoly":
        if not isinstance(other, HbarPoly):
            c = Rat(other)
            res = HbarPoly.__new__(HbarPoly)
            res.coeffs = {} if c == 0 else {k: v * c for k, v in self.coeffs.items()}
            return res
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                s = out.get(k, ZERO) + v1 * v2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        res = HbarPoly.__new__(HbarPoly)
        res.coeffs = out
        return res

    __rmul__ = __mul__

    def shift(self, k: int) -> "HbarPoly":
        """Multiply by h^k."""
        res = HbarPoly.__new__(HbarPoly)
        res.coeffs = {e + k: v for e, v in self.coeffs.items()}
        return res

    def eval_at(self, value):
        """Evaluate at a nonzero rational (negative exponents allowed)."""
        value = Rat(value)
        total = ZERO
        for k, v in self.coeffs.items():
            total += v * value**k
        return total

    def exponent_range(self) -> tuple[int, int] | None:
        if not self.coeffs:
            return None
        ks = self.coeffs.keys()
        return min(ks), max(ks)

    def items_sorted(self):
        return sorted(self.coeffs.items())

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in self.items_sorted():
            vs = rat_str(v)
            if k == 0:
                parts.append(vs)
            else:
                e = f"h^{k}" if k != 1 else "h"
                parts.append(e if vs == "1" else f"({vs})*{e}")
        return " + ".join(parts)


HB_ZERO = HbarPoly()
HB_ONE = HbarPoly.const(1)


def falling_factorial(k: int) -> HbarPoly:
    """The product (-1/h)(-1/h - 1)...(-1/h - k + 1) as a Laurent polynomial.

    Expanding in unsigned Stirling numbers of the first kind gives
    (-1)^k * sum_j [k j] (-t)^j at t = -1/h, i.e. the coefficient of h^-j
    is the Stirling number [k j].
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    out = HB_ONE
    t = HbarPoly.term(-1, -1)
    for i in range(k):
        out = out * (t - i)
    return out
