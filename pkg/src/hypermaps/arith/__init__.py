"""Exact arithmetic kernel: rationals, polynomials, Laurent polynomials in h,
truncated series, and quotient-ring (etale algebra) arithmetic with trace."""

from .rat import Rat, rat, as_int_pair, rat_str
from .poly import poly, p_degree, p_add, p_sub, p_mul, p_pow, p_divmod, p_mod, \
    p_exact_div, p_gcd, p_xgcd, p_deriv, p_eval, p_is_squarefree, p_monic, p_str
from .hbar import HbarPoly, HB_ZERO, HB_ONE, falling_factorial
from .series import TruncSeries, WindowError, series_exp, series_log, lagrange_invert
from .etale import EtaleRing, EtaleElem, SplitEvent, quotient_invert, \
    trace_to_base, sum_over_factors
