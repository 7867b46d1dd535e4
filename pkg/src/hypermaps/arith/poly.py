"""Dense univariate polynomials over the rationals.

Coefficient lists are indexed by exponent, trailing zeros stripped, so the
zero polynomial is the empty tuple.  These carry the branch-locus moduli
m(s), quotient-ring element values, and numerators of one-variable rational
functions.
"""

from .rat import Rat, ZERO, ONE, rat_str

Poly = tuple  # coefficient tuple, index = exponent, no trailing zeros

P_ZERO: Poly = ()
P_ONE: Poly = (ONE,)


def poly(coeffs) -> Poly:
    """Normalize an iterable of coefficients into a Poly."""
    cs = [Rat(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def p_degree(p: Poly) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def p_add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def p_neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def p_sub(p: Poly, q: Poly) -> Poly:
    return p_add(p, p_neg(q))


def p_scale(p: Poly, c) -> Poly:
    if c == 0:
        return P_ZERO
    return tuple(c * x for x in p)


def p_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return P_ZERO
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def p_pow(p: Poly, n: int) -> Poly:
    out = P_ONE
    base = p
    while n:
        if n & 1:
            out = p_mul(out, base)
        n >>= 1
        if n:
            base = p_mul(base, base)
    return out


def p_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Exact rational division with remainder; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quo = [ZERO] * max(0, len(p) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        f = c / lead
        quo[i - dq] = f
        for j, b in enumerate(q):
            rem[i - dq + j] -= f * b
    while rem and rem[-1] == 0:
        rem.pop()
    while quo and quo[-1] == 0:
        quo.pop()
    return tuple(quo), tuple(rem)


def p_mod(p: Poly, q: Poly) -> Poly:
    return p_divmod(p, q)[1]


def p_exact_div(p: Poly, q: Poly) -> Poly:
    quo, rem = p_divmod(p, q)
    if rem:
        raise ValueError("polynomial division is not exact")
    return quo


def p_monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = p[-1]
    if lead == 1:
        return p
    return tuple(c / lead for c in p)


def p_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while q:
        p, q = q, p_mod(p, q)
    return p_monic(p)


def p_xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, u, v) with u*p + v*q = g, g monic."""
    r0, r1 = p, q
    u0, u1 = P_ONE, P_ZERO
    v0, v1 = P_ZERO, P_ONE
    while r1:
        quo, rem = p_divmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, p_sub(u0, p_mul(quo, u1))
        v0, v1 = v1, p_sub(v0, p_mul(quo, v1))
    if r0:
        lead = r0[-1]
        inv = ONE / lead
        r0, u0, v0 = p_scale(r0, inv), p_scale(u0, inv), p_scale(v0, inv)
    return r0, u0, v0


def p_deriv(p: Poly) -> Poly:
    return tuple(Rat(i) * p[i] for i in range(1, len(p)))


def p_eval(p: Poly, x):
    """Horner evaluation; x may be any commutative ring element."""
    acc = None
    for c in reversed(p):
        acc = c if acc is None else acc * x + c
    if acc is None:
        return ZERO if not hasattr(x, "__mul__") else x * 0
    return acc


def p_is_squarefree(p: Poly) -> bool:
    return p_degree(p_gcd(p, p_deriv(p))) <= 0


def p_str(p: Poly, var: str = "s") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        cs = rat_str(c)
        if i == 0:
            parts.append(cs)
        elif i == 1:
            parts.append(f"{cs}*{var}" if cs != "1" else var)
        else:
            parts.append(f"{cs}*{var}^{i}" if cs != "1" else f"{var}^{i}")
    return " + ".join(parts)
