"""Arithmetic in Q[s]/(m(s)) for squarefree m, with dynamic splitting.

The branch locus of the curves handled downstream is the zero set of a
squarefree but possibly reducible polynomial (e.g. s^2 - 1).  Rather than
factoring up front, we compute in the single quotient ring and split it on
demand: inverting a zero divisor raises SplitEvent carrying the discovered
factorization, and the caller redoes the computation in each factor and sums
the results (dynamic evaluation).  Summing traces over the factors equals
the trace over the original ring, so residue sums are unaffected by when or
whether a split happens.
"""

from .rat import Rat, ZERO, ONE
from .poly import (
    Poly,
    P_ONE,
    p_add,
    p_degree,
    p_deriv,
    p_exact_div,
    p_gcd,
    p_is_squarefree,
    p_mod,
    p_mul,
    p_scale,
    p_str,
    p_sub,
    p_xgcd,
    poly,
)


class SplitEvent(Exception):
    """A zero divisor exposed a factorization m = m1 * m2 of the modulus."""

    def __init__(self, factor1: Poly, factor2: Poly):
        self.factors = (factor1, factor2)
        super().__init__(
            f"modulus splits as ({p_str(factor1)}) * ({p_str(factor2)})"
        )


class EtaleRing:
    """Q[s]/(m(s)) with m squarefree; behaves as a product of number fields."""

    __slots__ = ("modulus", "degree", "_zero", "_one", "_power_sums", "_divdiff")

    def __init__(self, modulus: Poly):
        modulus = poly(modulus)
        if p_degree(modulus) < 1:
            raise ValueError("modulus must have degree >= 1")
        if not p_is_squarefree(modulus):
            raise ValueError("modulus must be squarefree")
        self.modulus = modulus
        self.degree = p_degree(modulus)
        self._zero = EtaleElem(self, ())
        self._one = EtaleElem(self, P_ONE)
        self._power_sums = None
        self._divdiff = None

    def zero(self) -> "EtaleElem":
        return self._zero

    def one(self) -> "EtaleElem":
        return self._one

    def gen(self) -> "EtaleElem":
        """The image of s."""
        return self.elem((0, 1))

    def elem(self, value) -> "EtaleElem":
        if isinstance(value, EtaleElem):
            if value.ring is not self:
                return EtaleElem(self, p_mod(value.value, self.modulus))
            return value
        if isinstance(value, (tuple, list)):
            return EtaleElem(self, p_mod(poly(value), self.modulus))
        return EtaleElem(self, poly([Rat(value)]))

    def power_sums(self, upto: int) -> list:
        """Newton power sums p_k = sum over roots alpha of alpha^k, k <= upto."""
        if self._power_sums is None:
            self._power_sums = [Rat(self.degree)]
        ps = self._power_sums
        n = self.degree
        lead = self.modulus[-1]
        monic = [c / lead for c in self.modulus]  # monic coefficients, index = exponent
        while len(ps) <= upto:
            k = len(ps)
            acc = ZERO
            for i in range(1, min(k, n) + 1):
                acc += monic[n - i] * ps[k - i]
            if k <= n:
                acc += Rat(k) * monic[n - k]
            ps.append(-acc)
        return ps

    def trace(self, u: "EtaleElem"):
        """Sum of u over all roots of the modulus, exactly (no root extraction)."""
        ps = self.power_sums(self.degree - 1)
        total = ZERO
        for j, c in enumerate(u.value):
            if c != 0:
                total += c * ps[j]
        return total

    def divided_difference(self) -> list["EtaleElem"]:
        """Coefficients q_r(s) of (m(z) - m(s))/(z - s) = sum_r q_r(s) z^r.

        Since m(s) = 0 here, (z - s) * sum_r q_r(s) z^r = m(z) in the ring,
        i.e. 1/(z - s) = (sum_r q_r z^r)/m(z): the key identity behind exact
        partial fractions over the branch locus.
        """
        if self._divdiff is None:
            m = self.modulus
            out = []
            for r in range(self.degree):
                out.append(self.elem(tuple(m[r + 1 + q] for q in range(self.degree - r)) + ()))
            # q_r(s) = sum_q m_{r+1+q} s^q
            self._divdiff = out
        return self._divdiff

    def __eq__(self, other) -> bool:
        return isinstance(other, EtaleRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self) -> str:
        return f"EtaleRing({p_str(self.modulus)})"


class EtaleElem:
    """An element of an EtaleRing, stored reduced (degree < deg modulus)."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: EtaleRing, value: Poly):
        self.ring = ring
        self.value = value

    def __bool__(self) -> bool:
        return bool(self.value)

    def _coerce(self, other) -> "EtaleElem":
        if isinstance(other, EtaleElem):
            if other.ring.modulus != self.ring.modulus:
                raise ValueError("elements of different quotient rings")
            return other
        return self.ring.elem(other)

    def __add__(self, other) -> "EtaleElem":
        other = self._coerce(other)
        return EtaleElem(self.ring, p_add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self) -> "EtaleElem":
        return EtaleElem(self.ring, tuple(-c for c in self.value))

    def __sub__(self, other) -> "EtaleElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "EtaleElem":
        return (-self) + other

    def __mul__(self, other) -> "EtaleElem":
        if isinstance(other, EtaleElem):
            if other.ring.modulus != self.ring.modulus:
                raise ValueError("elements of different quotient rings")
            return EtaleElem(
                self.ring, p_mod(p_mul(self.value, other.value), self.ring.modulus)
            )
        c = Rat(other)
        return EtaleElem(self.ring, p_scale(self.value, c))

    __rmul__ = __mul__

    def inverse(self) -> "EtaleElem":
        """Inverse via extended Euclid; raises SplitEvent on a zero divisor."""
        if not self.value:
            raise ZeroDivisionError("inverting zero in a quotient ring")
        g, u, _ = p_xgcd(self.value, self.ring.modulus)
        dg = p_degree(g)
        if dg == 0:
            return EtaleElem(self.ring, p_mod(u, self.ring.modulus))
        if dg == p_degree(self.ring.modulus):
            raise ZeroDivisionError("inverting zero in a quotient ring")
        raise SplitEvent(g, p_exact_div(self.ring.modulus, g))

    def pow(self, n: int) -> "EtaleElem":
        if n < 0:
            return self.inverse().pow(-n)
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def trace(self):
        return self.ring.trace(self)

    def is_rational(self) -> bool:
        return p_degree(self.value) <= 0

    def as_rational(self):
        if p_degree(self.value) > 0:
            raise ValueError("element is not in the base field")
        return self.value[0] if self.value else ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, EtaleElem):
            return self.ring.modulus == other.ring.modulus and self.value == other.value
        if isinstance(other, (int,)) or type(other) is type(ONE):
            return self.value == self.ring.elem(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.modulus, self.value))

    def __repr__(self) -> str:
        return f"<{p_str(self.value)} mod {p_str(self.ring.modulus)}>"


def quotient_invert(u: EtaleElem) -> EtaleElem:
    """Invert u in its quotient ring (SplitEvent/ZeroDivisionError per etale.py)."""
    return u.inverse()


def trace_to_base(u: EtaleElem):
    return u.trace()


def sum_over_factors(modulus: Poly, computation, zero_value):
    """Run computation(ring) over Q[s]/(m); on SplitEvent, redo per factor.

    `computation` must be a pure function of the ring whose results are
    additive over factor rings (e.g. anything built from traces).  Returns
    the sum of results over the final split, starting from zero_value.
    """
    total = zero_value
    work = [poly(modulus)]
    while work:
        m = work.pop()
        try:
            total = total + computation(EtaleRing(m))
        except SplitEvent as event:
            work.extend(event.factors)
    return total
