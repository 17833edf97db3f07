"""Exact and numeric evaluation at the singular moduli n = 19, 43, 67, 163.

For n = 163 everything lives in Q(u), u the real root of 2x^3 + 40x^2 + 400x - 1,
which equals (2kk')^(1/3) at q = exp(-pi sqrt 163).  Symbols: w = (2kk')^2,
c = -27w/(1-4w)^3, and 2v = (1-2k^2)(1+8w)/(1-4w)^(3/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .numkernel import (AlgebraicNumber, BigReal, IntPoly, alg_eval, bigreal_nth_root,
                        number_field, poly_eval_alg)
from .qseries import (eisenstein_P_numeric, euler_numeric, gram_theta_numeric, nome,
                      theta_numeric)
from .quatforms import SPAN_WEIGHTS, gram_matrices
from .report import CheckReport, make_report, stopwatch

# n -> (minimal polynomial of (2kk')^(1/3) at exp(-pi sqrt n), ascending; G2)
CM_DATA = {
    19: ((-1, 4, 4, 2), -4),
    43: ((-1, 16, -8, 2), -24),
    67: ((-1, 36, 12, 2), -76),
    163: ((-1, 400, 40, 2), -1448),
}

# minimal polynomials of the values at tau = i/sqrt 163 (ascending coefficients)
MINPOLYS = {
    "f": (-160, -512, -400, 231),
    "g1": (-211600, -148896, -36436, 231),
    "g2": (-11153, -19899, -11843, 231),
    "g3": (-176, 216, -80, 3),
    "g4": (-335, -7, -117, 11),
    "g5": (-81, -63, -19, 11),
    "g6": (-116964, 86760, -22020, 77),
}

# theta_{I_i}/theta_{I_1} at tau = i/sqrt 163 as (c0, c1, c2, denominator) in Q(u)
THETA_RATIOS = {
    2: (10681241, 1015272, 51856, 21360009),
    3: (59401, 12408, 644, 176529),
    4: (26905, 2592, -124, 102201),
    5: (1634123, -68928, 448, 7120003),
    6: (81593, 17064, 868, 374737),
    7: (1528883, 77288, -3792, 7120003),
    8: (133633, 19864, 400, 647273),
}

F_VALUE = (11680, 1372, 64, 4389)
J_AT_163 = -640320 ** 3
CHUD_A, CHUD_B, CHUD_C = 13591409, 545140134, 640320


@dataclass(frozen=True)
class SingularContext:
    n: int
    minpoly_s: IntPoly
    generator: AlgebraicNumber
    G2_expected: int

    def element(self, c0, c1=0, c2=0, den=1) -> AlgebraicNumber:
        u = self.generator
        return (u * u * c2 + u * c1 + c0) / den


@lru_cache(maxsize=None)
def singular_context(n: int) -> SingularContext:
    if n not in CM_DATA:
        raise ValueError(f"no singular modulus data for n = {n}")
    coeffs, g2 = CM_DATA[n]
    m = IntPoly(coeffs)
    return SingularContext(n, m, number_field(m), g2)


def _ctx163() -> SingularContext:
    return singular_context(163)


def table4_ratios() -> dict[int, AlgebraicNumber]:
    ctx = _ctx163()
    return {i: ctx.element(*row) for i, row in THETA_RATIOS.items()}


def values_from_ratios() -> dict[str, AlgebraicNumber]:
    """f and g1..g6 at i/sqrt 163 from the theta ratios (theta_1 normalised to 1)."""
    r = table4_ratios()
    r[1] = r[2].lift(1)
    d = r[6] - r[7]
    out = {"f": (r[7] - r[8]) / d, "g1": (r[1] - r[2]) / d}
    for i in range(2, 6):
        out[f"g{i}"] = (r[i] - r[i + 1]) / d
    out["g6"] = r[6] * 4 / d
    return out


def discriminant3(p: IntPoly) -> int:
    d, c, b, a = p.coeffs
    return 18 * a * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * a * c ** 3 - 27 * a * a * d * d


# numeric building blocks

def modulus_numeric(q0: BigReal, precision_bits: int) -> dict[str, BigReal]:
    """k^2, k'^2, w and the thetas at the real nome q0."""
    t2 = theta_numeric(2, q0, precision_bits)
    t3 = theta_numeric(3, q0, precision_bits)
    t4 = theta_numeric(4, q0, precision_bits)
    t3_4 = t3 ** 4
    k2 = t2 ** 4 / t3_4
    kp2 = t4 ** 4 / t3_4
    return {"t2": t2, "t3": t3, "t4": t4, "k2": k2, "kp2": kp2, "w": k2 * kp2 * 4}


def c_of_w(w: BigReal) -> BigReal:
    return w * -27 / (1 - w * 4) ** 3


def theta_ratios_numeric(precision_bits: int, data=None) -> dict[int, BigReal]:
    q0 = nome(163, precision_bits, inverse=True)
    th = [gram_theta_numeric(g.entries, q0, precision_bits) for g in gram_matrices(data)]
    return {i + 1: th[i] / th[0] for i in range(8)}


def f_numeric(precision_bits: int, data=None) -> BigReal:
    r = theta_ratios_numeric(precision_bits, data)
    return (r[7] - r[8]) / (r[6] - r[7])


# exact checks

def verify_f_value(precision_bits: int = 128, data=None) -> CheckReport:
    with stopwatch() as ms:
        ctx = _ctx163()
        v = ctx.element(*F_VALUE)
        cubic = IntPoly(MINPOLYS["f"])
        if not poly_eval_alg(cubic, v).is_zero():
            return make_report("f_value", False, "cubic does not vanish at the f value", ms())
        disc = discriminant3(cubic)
        if disc >= 0:
            return make_report("f_value", False, f"cubic discriminant {disc} is not negative",
                               ms())
        prec = precision_bits + 32
        exact = alg_eval(v, prec)
        resid = abs(cubic(exact))
        diff = abs(exact - f_numeric(prec, data))
        ok = diff < 1e-20 and resid < Fraction(1, 10 ** 25)
        return make_report("f_value", ok,
                           f"exact membership holds; |f - v| = {float(diff):.2e}, "
                           f"cubic residual {float(resid):.2e}, discriminant {disc} < 0", ms())


def verify_table_consistency(precision_bits: int = 128, data=None) -> list[CheckReport]:
    """Minimal-polynomial membership of every value built from the theta ratios, plus
    numeric agreement of the ratios themselves."""
    reports = []
    vals = values_from_ratios()
    for name in ("f", "g1", "g2", "g3", "g4", "g5", "g6"):
        with stopwatch() as ms:
            ok = poly_eval_alg(IntPoly(MINPOLYS[name]), vals[name]).is_zero()
            reports.append(make_report(f"minpoly_{name}", ok,
                                       "exact zero in Q(u)" if ok else
                                       f"{IntPoly(MINPOLYS[name])} does not vanish", ms()))
    with stopwatch() as ms:
        ctx = _ctx163()
        same = vals["f"] == ctx.element(*F_VALUE)
        reports.append(make_report("f_value_matches", same,
                                   "ratio route equals the stated f value" if same else
                                   "ratio route and stated f value differ", ms()))
    prec = precision_bits + 32
    num = theta_ratios_numeric(prec, data)
    for i, r in table4_ratios().items():
        with stopwatch() as ms:
            diff = abs(alg_eval(r, prec) - num[i])
            reports.append(make_report(f"ratio_r{i}", diff < 1e-20,
                                       f"|exact - numeric| = {float(diff):.2e}", ms()))
    return reports


def span_combination() -> AlgebraicNumber:
    """A = 6 + 12 r2 + 24 (r3 + ... + r8), the span weights applied to Table 4."""
    r = table4_ratios()
    acc = r[2].lift(SPAN_WEIGHTS[0])
    for i in range(2, 9):
        acc = acc + r[i] * SPAN_WEIGHTS[i - 1]
    return acc


def g2_chain(precision_bits: int = 128) -> tuple[int, list[str]]:
    """The exact G2 computation; returns (G2, notes) or raises on a failed step."""
    ctx = _ctx163()
    u = ctx.generator
    notes = []
    A = span_combination()
    if A != ctx.element(336327974, 33631776, 1044640, 7120003):
        raise ArithmeticError("span combination differs from (1044640u^2+33631776u+336327974)/7120003")
    closed = ctx.element(8003, 748992, 40, 209)
    if A * (1 + u ** 3) != closed:
        raise ArithmeticError("A (1 + u^3) differs from (40u^2+748992u+8003)/209")
    notes.append("A (1+u^3) = (40u^2+748992u+8003)/209")
    radical = ctx.element(8003, -1066800, 40)
    if (1 - u ** 6) * (163 * 418 ** 2) != radical * radical:
        raise ArithmeticError("163 (1-u^6) 418^2 != (40u^2-1066800u+8003)^2")
    if alg_eval(radical, precision_bits).sign() <= 0:
        raise ArithmeticError("40u^2-1066800u+8003 is not positive at u")
    notes.append("sqrt(163(1-u^6)) = (40u^2-1066800u+8003)/418 with positive sign")
    g2 = (radical - ctx.element(8003, 748992, 40)) / (u * (418 * 3))
    if not g2.is_rational() or g2.rational_value().denominator != 1:
        raise ArithmeticError(f"G2 = {g2} is not a rational integer")
    return int(g2.rational_value()), notes


def g2_exact() -> int:
    return g2_chain()[0]


def g2_check() -> CheckReport:
    with stopwatch() as ms:
        try:
            g2, notes = g2_chain()
        except ArithmeticError as exc:
            return make_report("g2_exact", False, str(exc), ms())
        ok = g2 == CM_DATA[163][1]
        return make_report("g2_exact", ok, f"G2 = {g2}; " + "; ".join(notes), ms())


def v_c_residual() -> tuple[IntPoly, IntPoly]:
    """Residuals in Z[k] of (2v)^2 = 1 - c after clearing (1-4w)^3.

    The first uses 2v = (1-2k^2)(1+8w)/(1-4w)^(3/2) and must vanish.  The
    second keeps an extra factor (1-4w) on the squared numerator, which is what
    a denominator of (1-4w) instead of (1-4w)^(3/2) would give; it does not vanish.
    """
    k2 = IntPoly([0, 0, 1])
    w = k2 * (1 - k2) * 4
    a = 1 - w * 4
    num = (1 - k2 * 2) * (1 + w * 8)
    good = num * num - a ** 3 - w * 27
    literal = num * num * a + w * 27 - a ** 3
    return good, literal


def verify_v_c_identity() -> CheckReport:
    with stopwatch() as ms:
        good, literal = v_c_residual()
        if good:
            return make_report("v_c_identity", False, f"residual {good}", ms())
        # rational spot values, squared form
        for k in (Fraction(1, 2), Fraction(0), Fraction(1, 3)):
            w = 4 * k * k * (1 - k * k)
            lhs = ((1 - 2 * k * k) * (1 + 8 * w)) ** 2
            if lhs != (1 - 4 * w) ** 3 + 27 * w:
                return make_report("v_c_identity", False, f"spot value k = {k} fails", ms())
        return make_report("v_c_identity", True,
                           "((1-2k^2)(1+8w))^2 - (1-4w)^3 - 27w = 0 in Z[k]; "
                           f"with denominator (1-4w) the residual is {literal}", ms())


# numeric identities

def _tol_report(name, lhs, rhs, precision_bits, tol=None, extra=""):
    diff = abs(lhs - rhs)
    bound = Fraction(1, 1 << precision_bits) if tol is None else Fraction(tol)
    detail = f"residual {float(diff):.3e} (tolerance {float(bound):.1e})" + extra
    return make_report(name, diff < bound, detail), diff


def cvalue_sides(precision_bits: int):
    prec = precision_bits + 32
    m = modulus_numeric(nome(163, prec), prec)
    rhs = BigReal.of(Fraction(-1, 53360 ** 3), prec)
    if Fraction(-12 ** 3, 640320 ** 3) != Fraction(-1, 53360 ** 3):
        raise ArithmeticError("12/640320 != 1/53360")
    if Fraction(1728) / J_AT_163 != Fraction(-1, 53360 ** 3):
        raise ArithmeticError("1728/j does not reduce to -1/53360^3")
    return c_of_w(m["w"]), rhs


def minpoly_sides(n: int, precision_bits: int):
    prec = precision_bits + 32
    ctx = singular_context(n)
    m = modulus_numeric(nome(n, prec), prec)
    s = bigreal_nth_root(m["w"], 6, prec)
    return ctx.minpoly_s(s), BigReal.of(0, prec)


def lemma2_sides(n: int, precision_bits: int):
    prec = precision_bits + 32
    q0 = nome(n, prec, inverse=True)
    form = [[2, 1], [1, (n + 1) // 2]]
    lhs = gram_theta_numeric(form, q0, prec) ** 2
    m = modulus_numeric(q0, prec)
    rhs = m["t3"] ** 4 * (1 + m["w"].sqrt()) / (BigReal.of(n, prec).sqrt() * 2)
    return lhs, rhs


def etatranslog_sides(n: int, precision_bits: int):
    prec = precision_bits + 32
    lhs = (eisenstein_P_numeric(nome(n, prec), prec) * n
           + eisenstein_P_numeric(nome(n, prec, inverse=True), prec))
    rhs = BigReal.of(n, prec).sqrt() * 6 / BigReal.pi(prec)
    return lhs, rhs


def kexp_sides(q, precision_bits: int):
    """theta_3^4(q) against 2^(4/3) eta^4(q^2) (kk')^(-2/3), eta(x) = x^(1/24) prod (1-x^n)."""
    prec = precision_bits + 32
    q0 = BigReal.of(q, prec) if not isinstance(q, BigReal) else q.with_precision(prec)
    m = modulus_numeric(q0, prec)
    x = q0 * q0
    eta = bigreal_nth_root(x, 24, prec) * euler_numeric(x, prec)
    kk = (m["k2"] * m["kp2"]).sqrt()
    rhs = bigreal_nth_root(BigReal.of(16, prec), 3) * eta ** 4 / bigreal_nth_root(kk * kk, 3)
    return m["t3"] ** 4, rhs


class OutsideDomain(ValueError):
    pass


def hypergeometric_3f2(c: BigReal, precision_bits: int) -> BigReal:
    """3F2(1/6, 5/6, 1/2; 1, 1; c) by direct summation.

    Term ratios are (m+1/6)(m+5/6)(m+1/2)/(m+1)^3 * c, bounded by |c|, so the
    tail after term t_M is at most |t_M| |c| / (1 - |c|).
    """
    prec = precision_bits + 16
    ac = abs(c)
    if ac >= 1:
        raise OutsideDomain(f"|argument| = {float(ac):.4f} >= 1; the series diverges")
    bound = Fraction(1, 1 << (precision_bits + 8))
    geo = ac / (1 - ac)
    total = BigReal.of(1, prec)
    term = BigReal.of(1, prec)
    m = 0
    while True:
        term = term * c * Fraction((6 * m + 1) * (6 * m + 5) * (2 * m + 1), 72 * (m + 1) ** 3)
        total = total + term
        m += 1
        if abs(term) * geo < bound:
            return total


def clausen_sides(q, precision_bits: int):
    """(1-4w)^(1/2) theta_3^4(q) against 3F2(...; c(w)) at the real nome q."""
    prec = precision_bits + 32
    q0 = BigReal.of(q, prec) if not isinstance(q, BigReal) else q.with_precision(prec)
    m = modulus_numeric(q0, prec)
    a = 1 - m["w"] * 4
    if a.sign() <= 0:
        raise OutsideDomain(f"1 - 4w = {float(a):.4f} <= 0 at q = {float(q0):.4g}; "
                            "outside convergence domain")
    c = c_of_w(m["w"])
    return a.sqrt() * m["t3"] ** 4, hypergeometric_3f2(c, prec)


def constant_recovery_check() -> CheckReport:
    """Both Chudnovsky constants from 2 sqrt(n) v and G2 = -1448, in exact integers.

    (12 B)^2 = 163 (640320^3 + 1728) fixes 2 sqrt(163) v = 12 B / 640320^(3/2), and
    G0 = sqrt(163) v / 3 + G2 sqrt(640320) / 640320^2 = (2 B + G2 640320) / 640320^(3/2).
    """
    with stopwatch() as ms:
        g2 = g2_exact()
        v_ok = (12 * CHUD_B) ** 2 == 163 * (CHUD_C ** 3 + 1728)
        a_ok = 2 * CHUD_B + g2 * CHUD_C == 12 * CHUD_A
        ok = v_ok and a_ok and 12 * 53360 == CHUD_C
        detail = (f"{2 * CHUD_B} - {-g2}*{CHUD_C} = {2 * CHUD_B + g2 * CHUD_C} = 12*{CHUD_A}; "
                  f"(12*{CHUD_B})^2 = 163*({CHUD_C}^3 + 1728)")
        if not ok:
            detail = "integer identity fails: " + detail
        return make_report("G0_integer", ok, detail, ms())


def g0_sides(precision_bits: int):
    """G0 numerically from the theta values, and exactly as 12*13591409/640320^(3/2)."""
    prec = precision_bits + 32
    if 2 * CHUD_B - 1448 * CHUD_C != 12 * CHUD_A:
        raise ArithmeticError("1090280268 - 1448*640320 != 12*13591409")
    if (12 * CHUD_B) ** 2 != 163 * (CHUD_C ** 3 + 1728):
        raise ArithmeticError("(12*545140134)^2 != 163 (640320^3 + 1728)")
    if 12 * 53360 != CHUD_C:
        raise ArithmeticError("12 * 53360 != 640320")
    m = modulus_numeric(nome(163, prec), prec)
    w = m["w"]
    a = 1 - w * 4
    v = (m["kp2"] - m["k2"]) * (1 + w * 8) / (a * a.sqrt() * 2)
    c = c_of_w(w)
    sixth = bigreal_nth_root(-c / 1728, 6, prec)
    g0_num = BigReal.of(163, prec).sqrt() * v / 3 + sixth * CM_DATA[163][1]
    root = BigReal.of(CHUD_C, prec).sqrt()
    g0_exact = BigReal.of(2 * CHUD_B - 1448 * CHUD_C, prec) / (root * CHUD_C)
    return g0_num, g0_exact


def numeric_check(name: str, precision_bits: int = 128, arg=None, tol=None) -> CheckReport:
    """Dispatch a named numeric identity: cvalue, minpoly_s, lemma2, etatranslog,
    clausen, kexp, G0_const.  ``arg`` is n or q where the identity takes one."""
    with stopwatch() as ms:
        try:
            if name == "cvalue":
                lhs, rhs = cvalue_sides(precision_bits)
                label = "cvalue"
            elif name == "minpoly_s":
                n = 163 if arg is None else int(arg)
                lhs, rhs = minpoly_sides(n, precision_bits)
                label = f"minpoly_s_{n}"
            elif name == "lemma2":
                n = 163 if arg is None else int(arg)
                lhs, rhs = lemma2_sides(n, precision_bits)
                label = f"lemma2_{n}"
            elif name == "etatranslog":
                n = 163 if arg is None else int(arg)
                lhs, rhs = etatranslog_sides(n, precision_bits)
                label = f"etatranslog_{n}"
            elif name == "kexp":
                q = arg if arg is not None else "0.05"
                lhs, rhs = kexp_sides(q, precision_bits)
                label = f"kexp_{_qlabel(q)}"
            elif name == "clausen":
                q = arg if arg is not None else "0.05"
                label = f"clausen_{_qlabel(q)}"
                lhs, rhs = clausen_sides(q, precision_bits)
            elif name == "G0_const":
                lhs, rhs = g0_sides(precision_bits)
                label = "G0_const"
            else:
                raise ValueError(f"unknown numeric check {name!r}")
        except OutsideDomain as exc:
            return make_report(label, False, str(exc), ms())
        report, _ = _tol_report(label, lhs, rhs, precision_bits, tol)
        return make_report(report.name, report.passed, report.detail, ms())


def _qlabel(q) -> str:
    if isinstance(q, BigReal):
        return f"{float(q):.3g}"
    return str(q)


def numeric_residual(name: str, precision_bits: int = 128, arg=None) -> BigReal:
    """|LHS - RHS| for a numeric identity (raises OutsideDomain where it is undefined)."""
    sides = {
        "cvalue": lambda: cvalue_sides(precision_bits),
        "minpoly_s": lambda: minpoly_sides(arg, precision_bits),
        "lemma2": lambda: lemma2_sides(163 if arg is None else arg, precision_bits),
        "etatranslog": lambda: etatranslog_sides(163 if arg is None else arg, precision_bits),
        "kexp": lambda: kexp_sides(arg, precision_bits),
        "clausen": lambda: clausen_sides(arg, precision_bits),
        "G0_const": lambda: g0_sides(precision_bits),
    }
    if name not in sides:
        raise ValueError(f"unknown numeric check {name!r}")
    lhs, rhs = sides[name]()
    return abs(lhs - rhs)
