"""The j-invariant from theta functions and the sign of the 1728/c expansion."""

from __future__ import annotations

from fractions import Fraction

from ..report import CheckReport, make_report, stopwatch
from .generators import divisor_sums, euler_product, modulus_square_w, theta_power
from .laurent import LaurentSeries, series_inverse, series_pow


def _theta8(order: int):
    return theta_power(2, 8, order), theta_power(3, 8, order), theta_power(4, 8, order)


def j_oracle(order: int) -> LaurentSeries:
    """j = 1/Q + 744 + 196884 Q + ... through Q^order, Q = q^2.

    Assembled as 32 (t2^8 + t3^8 + t4^8)^3 / (t2 t3 t4)^8 in q and contracted.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    base = 2 * order + 6
    t2, t3, t4 = _theta8(base)
    num = series_pow(t2 + t3 + t4, 3).scale(32)
    j = (num * series_inverse(t2 * t3 * t4)).contract(2)
    j = j.truncate(order + 1)
    if not j.is_integral():
        raise ArithmeticError("theta assembly of j produced non-integral coefficients")
    return j


def j_from_eisenstein(order: int) -> LaurentSeries:
    """E4^3 / Delta in Q, an independent oracle for j."""
    if order < 1:
        raise ValueError("order must be >= 1")
    n = order + 2
    sig = divisor_sums(n, 3)
    e4 = LaurentSeries(0, [1] + [240 * sig[m] for m in range(1, n + 1)], n + 1)
    delta = series_pow(euler_product(n), 24).shift(1)
    return (series_pow(e4, 3) * series_inverse(delta)).truncate(order + 1)


def s_series(order: int) -> LaurentSeries:
    """S(q) = 1728 / c(k(q)) = -64 (1 - 4w)^3 / w, known through q^order."""
    w = modulus_square_w(order + 2)
    return (series_pow(1 - w.scale(4), 3) * series_inverse(w)).scale(-64).truncate(order + 1)


def lemma1_check(order: int) -> CheckReport:
    """S(-Q) against j(Q) through Q^order, plus the (2kk')^2 at -q^2 identity.

    The substitution q -> -Q realises tau -> 2tau + 1 in the nome.  The
    assembled series equals +j(Q); the report also records that the opposite
    sign already fails at the Q^-1 term.
    """
    if order < 3:
        raise ValueError("order must be >= 3")
    with stopwatch() as ms:
        base = order + 4
        # w(-q^2) = -(1/4) (t2^4 / (t3^2 t4^2))^2
        w = modulus_square_w(base)
        lhs = w.subs_neg().subs_power(2)
        t2 = theta_power(2, 4, base)
        t3 = theta_power(3, 2, base)
        t4 = theta_power(4, 2, base)
        ratio = t2 * series_inverse(t3 * t4)
        rhs = (ratio * ratio).scale(Fraction(-1, 4))
        through = min(lhs.trunc, rhs.trunc) - 1
        bad = lhs.first_difference(rhs, through)
        if bad is not None:
            return make_report("lemma1", False, f"w(-q^2) identity differs at q^{bad}", ms())
        s = s_series(order + 2)
        s_neg = s.subs_neg().truncate(order + 1)
        j = j_oracle(order)
        jj = j_from_eisenstein(order)
        if j.first_difference(jj, order) is not None:
            e = j.first_difference(jj, order)
            return make_report("lemma1", False, f"theta and Eisenstein j disagree at Q^{e}", ms())
        e = s_neg.first_difference(j, order)
        if e is not None:
            return make_report("lemma1", False,
                               f"S(-Q) differs from j(Q) at Q^{e}: {s_neg.coeff(e)} vs {j.coeff(e)}",
                               ms())
        neg = s_neg.first_difference(-j, order)
        return make_report("lemma1", True,
                           f"S(-Q) = j(Q) through Q^{order} (c0={j.coeff(0)}, c1={j.coeff(1)}); "
                           f"the -j reading fails at Q^{neg}", ms())
