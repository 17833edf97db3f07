"""Acceptance suite: one group of tests per criterion, summarised at the end of the run."""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from modpi import modeq, quatforms, singular
from modpi.cli import run
from modpi.numkernel import IntPoly, poly_eval_alg
from modpi.pi_engine import general_series_pi, ramanujan_series_check
from modpi.qseries import j_from_eisenstein, nome, s_series
from modpi.quatforms import gram_matrices


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@criterion(1, "pi digits: chudnovsky --digits 1000 --check matches the Machin oracle in < 10 s")
def test_c01_pi_digits(capsys):
    start = time.perf_counter()
    code = run(["pi", "chudnovsky", "--digits", "1000", "--check"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert out[-1] == "CHECK pi_1000 PASS 1000 digits agree"
    assert len("".join(out[:-1]).replace(".", "")) == 1000
    assert elapsed < 10


@criterion(2, "G2 = -1448 exactly in Q(u)")
def test_c02_g2_exact():
    g2 = singular.g2_exact()
    assert type(g2) is int and g2 == -1448
    assert singular.g2_check().passed


@criterion(3, "constant recovery: 1090280268 - 1448*640320 = 12*13591409")
def test_c03_constant_recovery():
    assert 1090280268 == 2 * 545140134
    assert 1090280268 - 1448 * 640320 == 12 * 13591409
    assert (12 * 545140134) ** 2 == 163 * (640320 ** 3 + 1728)
    r = singular.constant_recovery_check()
    assert r.passed, r.detail


@criterion(4, "span identity through q^400 in < 60 s")
def test_c04_span_identity():
    start = time.perf_counter()
    lhs, rhs = quatforms.span_sides(400)
    assert lhs.first_difference(rhs, 400) is None
    assert all(c.denominator == 1 for _, c in lhs.items())
    assert time.perf_counter() - start < 60


@pytest.fixture(scope="module")
def modeq_setup():
    tables = modeq.load_modeq_tables()
    need = max(t.required_base_order(120) for t in tables.values())
    return tables, modeq.modular_functions(need)


@criterion(5, "seven modular equations vanish through q^120 and re-derive exactly")
@pytest.mark.parametrize("tid", modeq.TABLE_IDS)
def test_c05_modular_equations(modeq_setup, tid):
    tables, funcs = modeq_setup
    table = tables[tid]
    rel = modeq.relation_series(table, funcs)
    assert rel.trunc > 120
    assert rel.first_nonzero(120) is None
    solved = modeq.solve_table(tid, 120)
    assert solved == table


@criterion(6, "f value in the cubic, P27 = cubic x (deg 12)^2, pole sextic roots")
def test_c06_specialisation():
    ctx = singular.singular_context(163)
    f = ctx.element(11680, 1372, 64, 4389)
    assert poly_eval_alg(IntPoly([-160, -512, -400, 231]), f).is_zero()
    table = modeq.load_modeq_tables()["f-varphi"]
    P = modeq.specialize_varphi(table)
    cubic = IntPoly([-160, -512, -400, 231])
    prod = cubic * modeq.FACTOR_DEG12 * modeq.FACTOR_DEG12
    assert P.degree == 27 and P.primitive() == prod.primitive()
    assert modeq.FACTOR_DEG12.degree == 12
    roots = modeq.integer_roots(modeq.leading_coeff_poly(table))
    assert roots == [-70, -37, 70, 70, 70, 74]


@criterion(7, "exact minimal-polynomial membership and theta ratios to 1e-20 at 128 bits")
def test_c07_tables():
    vals = singular.values_from_ratios()
    for name in ("g1", "g2", "g3", "g4", "g5", "g6"):
        assert poly_eval_alg(IntPoly(singular.MINPOLYS[name]), vals[name]).is_zero(), name
    from modpi.numkernel import alg_eval
    num = singular.theta_ratios_numeric(128)
    for i, r in singular.table4_ratios().items():
        assert abs(alg_eval(r, 128) - num[i]) < Fraction(1, 10 ** 20), i


@criterion(8, "T(163) = 8, genus 13, h(-163) = 1, theta rank 8 at order 100")
def test_c08_arithmetic():
    assert quatforms.type_number(163) == 8
    assert quatforms.genus_x0(163) == 13
    assert quatforms.class_number(-163) == 1
    thetas = quatforms.theta_series_all(100)
    assert quatforms.independence_rank(thetas, 100) == 8


Q163 = "exp(-pi sqrt 163)"
NUMERIC_SUITE = [
    ("cvalue", None, 1e-30),
    ("minpoly_s", 19, 1e-30),
    ("minpoly_s", 43, 1e-30),
    ("minpoly_s", 67, 1e-30),
    ("minpoly_s", 163, 1e-30),
    ("lemma2", 163, 1e-20),
    ("etatranslog", 163, 1e-25),
    ("kexp", "0.05", 1e-25),
    ("kexp", Q163, 1e-25),
    ("clausen", "0.05", 1e-25),
    ("clausen", Q163, 1e-25),
]


@criterion(9, "numeric identity suite at 128 bits")
@pytest.mark.parametrize("name,arg,tol", NUMERIC_SUITE,
                         ids=[f"{n}-{a}".replace(" ", "_") for n, a, _ in NUMERIC_SUITE])
def test_c09_numeric(name, arg, tol):
    if arg == Q163:
        arg = nome(163, 192)
    r = singular.numeric_check(name, 128, arg, tol)
    assert r.passed, r.line()


@criterion(9, "numeric identity suite at 128 bits")
@pytest.mark.parametrize("t", [Fraction(1, 2), 2])
def test_c09_fricke(t):
    for M in gram_matrices():
        r = quatforms.fricke_numeric_check(M, t, 128, tol=1e-20)
        assert r.passed, r.line()


@criterion(10, "S(-Q) = j(Q) through Q^5 with 744 and 196884 against E4^3/Delta")
def test_c10_j_expansion():
    s_neg = s_series(7).subs_neg().truncate(6)
    j = j_from_eisenstein(5)
    assert s_neg.valuation == -1
    assert [s_neg.coeff(e) for e in range(-1, 6)] == [j.coeff(e) for e in range(-1, 6)]
    assert s_neg.coeff(0) == 744 and s_neg.coeff(1) == 196884
    assert all(c.denominator == 1 for _, c in s_neg.items())


@criterion(11, "general series to 30/60 digits and Ramanujan series to 100 digits")
@pytest.mark.parametrize("n,digits,g2", [(19, 30, -4), (43, 30, -24), (67, 30, -76),
                                         (163, 60, -1448)])
def test_c11_general_series(n, digits, g2):
    assert singular.CM_DATA[n][1] == g2
    r = general_series_pi(n, digits)
    assert r.passed, r.line()


@criterion(11, "general series to 30/60 digits and Ramanujan series to 100 digits")
@pytest.mark.parametrize("which", ["rampi1", "rampi2"])
def test_c11_ramanujan(which):
    r = ramanujan_series_check(which, 100)
    assert r.passed, r.line()


@criterion(12, "2v = sqrt(1 - c): residual polynomial identically zero")
def test_c12_v_c_identity():
    good, _ = singular.v_c_residual()
    assert good.is_zero()
