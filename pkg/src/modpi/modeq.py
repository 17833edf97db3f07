"""Modular equations between f and varphi, g1..g6 on X0+(163).

Each relation has the shape sum_{i<=7} h^i y_i(f) = 0 with y_7 = +-1.  The
functions are built from the Gram thetas and the eta quotient, the stored
coefficient tables are verified exactly, and they can be re-derived by
solving the linear system for the unknown coefficients.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path

from .linalg import integer_kernel_vector
from .numkernel import BigReal, IntPoly, isolate_real_roots, poly_mul
from .paths import data_file
from .qseries import LaurentSeries, eta4_quotient, gram_theta_numeric, nome, series_inverse
from .quatforms import gram_matrices
from .report import CheckReport, make_report, stopwatch

MODEQ_FILE = "modeq_p163.txt"
TABLE_IDS = ("f-varphi", "f-g6", "f-g5", "f-g4", "f-g3", "f-g2", "f-g1")
# q-adic valuations of f and of each partner function h
VALUATIONS = {"f": -2, "varphi": -54, "g1": -12, "g2": -10, "g3": -8, "g4": -6, "g5": -4,
              "g6": -14}
MAX_DEGREE = {"f-varphi": 27}
DEFAULT_MAX_DEGREE = 12
# relative precision lost dividing by theta_6 - theta_7 (valuation 14, twice) plus one
_DIVISION_LOSS = 13
_BUDGET_MARGIN = 16

FACTOR_CUBIC = IntPoly([-160, -512, -400, 231])
FACTOR_DEG12 = IntPoly([-44044178, -500041768, -1716358972, -1771347457, 949502158,
                        1855221822, -251575929, -706717664, 79493657, 121939618, -18956160,
                        -7891968, 1622016])
POLE_SEXTIC = IntPoly([-65739380000, 989898000, 49392000, -1069320, -2442, 177, -1])


@dataclass(frozen=True)
class ModEqTable:
    id: str
    lead_sign: int
    coeff_rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in r) for r in self.coeff_rows)
        object.__setattr__(self, "coeff_rows", rows)
        if self.id not in TABLE_IDS:
            raise ValueError(f"unknown modular equation id {self.id!r}")
        if self.lead_sign not in (1, -1):
            raise ValueError("lead_sign must be +1 or -1")
        if len(rows) != 7:
            raise ValueError(f"{self.id}: expected rows y0..y6, got {len(rows)}")
        cap = MAX_DEGREE.get(self.id, DEFAULT_MAX_DEGREE)
        for i, r in enumerate(rows):
            if len(r) - 1 > cap:
                raise ValueError(f"{self.id}: y{i} has degree {len(r) - 1} > {cap}")

    @property
    def partner(self) -> str:
        return self.id.split("-", 1)[1]

    def polys(self) -> list[IntPoly]:
        """y_0 .. y_7 as integer polynomials (y_7 is the constant lead sign)."""
        return [IntPoly(r) for r in self.coeff_rows] + [IntPoly([self.lead_sign])]

    @property
    def deg_f(self) -> int:
        return max(p.degree for p in self.polys())

    def pole_depth(self) -> int:
        """Largest pole order among the terms h^i y_i(f)."""
        vh, vf = VALUATIONS[self.partner], VALUATIONS["f"]
        return max(-(i * vh + p.degree * vf) for i, p in enumerate(self.polys()) if p)

    def required_base_order(self, check_order: int) -> int:
        return self.pole_depth() + check_order + _BUDGET_MARGIN

    def perturbed(self, row: int, index: int, delta: int = 1) -> ModEqTable:
        rows = [list(r) for r in self.coeff_rows]
        rows[row][index] += delta
        return ModEqTable(self.id, self.lead_sign, rows)


def parse_modeq_tables(text: str) -> dict[str, ModEqTable]:
    tables: dict[str, ModEqTable] = {}
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    pos = 0
    while pos < len(lines):
        head = lines[pos].split()
        if len(head) != 4 or head[0] != "modeq" or head[2] != "lead":
            raise ValueError(f"bad modular equation header: {lines[pos]}")
        if pos + 8 > len(lines):
            raise ValueError(f"{head[1]}: expected rows y0..y6")
        rows = []
        for i in range(7):
            tag, _, body = lines[pos + 1 + i].partition(":")
            if tag.strip() != f"y{i}":
                raise ValueError(f"{head[1]}: expected y{i}, found {tag}")
            rows.append([int(x) for x in body.split()])
        tables[head[1]] = ModEqTable(head[1], int(head[3]), rows)
        pos += 8
    return tables


def format_modeq_tables(tables) -> str:
    out = []
    for t in (tables.values() if isinstance(tables, dict) else tables):
        out.append(f"modeq {t.id} lead {'+1' if t.lead_sign > 0 else '-1'}")
        for i, r in enumerate(t.coeff_rows):
            out.append(f"y{i}: " + " ".join(str(c) for c in r))
    return "\n".join(out) + "\n"


def load_modeq_tables(data=None) -> dict[str, ModEqTable]:
    return parse_modeq_tables(data_file(MODEQ_FILE, data).read_text())


def write_modeq_tables(tables, path) -> None:
    Path(path).write_text(format_modeq_tables(tables))


@dataclass(frozen=True)
class ModularFunctionSet:
    f: LaurentSeries
    g1: LaurentSeries
    g2: LaurentSeries
    g3: LaurentSeries
    g4: LaurentSeries
    g5: LaurentSeries
    g6: LaurentSeries
    varphi: LaurentSeries
    phi_cusp: LaurentSeries
    base_order: int

    def partner(self, name: str) -> LaurentSeries:
        return getattr(self, name)

    @property
    def relative_precision(self) -> int:
        return min(s.trunc - VALUATIONS[name] for name, s in
                   [("f", self.f), ("varphi", self.varphi)]
                   + [(f"g{i}", getattr(self, f"g{i}")) for i in range(1, 7)])


def _expect_leading(s: LaurentSeries, valuation: int, coeff: int, what: str) -> None:
    if s.is_zero() or s.valuation != valuation or s.leading_coefficient != coeff:
        got = "0" if s.is_zero() else f"{s.leading_coefficient} q^{s.valuation}"
        raise ArithmeticError(f"{what}: expected leading term {coeff} q^{valuation}, got {got}"
                              " (check the Gram data)")


def build_modular_functions(order: int, data=None) -> ModularFunctionSet:
    """f, g1..g6, varphi and phi_cusp from theta series known through q^order."""
    thetas = [g.theta(order) for g in gram_matrices(data)]
    if len(thetas) != 8:
        raise ValueError("eight Gram matrices are required")
    d67 = thetas[5] - thetas[6]
    d78 = thetas[6] - thetas[7]
    _expect_leading(d67, 14, 4, "theta_6 - theta_7")
    _expect_leading(d78, 12, 4, "theta_7 - theta_8")
    inv = series_inverse(d67)
    f = d78 * inv
    gs = [(thetas[0] - thetas[1]) * inv]
    gs += [(thetas[i] - thetas[i + 1]) * inv for i in range(1, 5)]
    gs.append(thetas[5].scale(4) * inv)
    varphi = eta4_quotient(163, order)
    return ModularFunctionSet(f, *gs, varphi, d67.scale(Fraction(1, 4)), order)


_funcs_cache: dict = {}
_funcs_lock = threading.Lock()


def modular_functions(order: int, data=None) -> ModularFunctionSet:
    """Cached build_modular_functions; reuses any set built at a larger order."""
    key = None if data is None else str(data)
    with _funcs_lock:
        cached = _funcs_cache.get(key)
    if cached is not None and cached.base_order >= order:
        return cached
    funcs = build_modular_functions(order, data)
    with _funcs_lock:
        _funcs_cache[key] = funcs
    return funcs


def _poly_of_series(p: IntPoly, powers: list[LaurentSeries]) -> LaurentSeries:
    acc = None
    for j, c in enumerate(p.coeffs):
        if c:
            term = powers[j].scale(c)
            acc = term if acc is None else acc + term
    if acc is None:
        return LaurentSeries.zero(powers[0].trunc)
    return acc


def relation_series(table: ModEqTable, funcs: ModularFunctionSet) -> LaurentSeries:
    """sum_i h^i y_i(f): y_i(f) from shared powers of f, then Horner in h."""
    f = funcs.f
    h = funcs.partner(table.partner)
    powers = [LaurentSeries.one(f.trunc - f.valuation)]
    for _ in range(table.deg_f):
        powers.append(powers[-1] * f)
    ys = [_poly_of_series(p, powers) for p in table.polys()]
    acc = ys[-1]
    for y in reversed(ys[:-1]):
        acc = acc * h + y
    return acc


def verify_modeq(table: ModEqTable, funcs: ModularFunctionSet | None = None,
                 order: int = 120, data=None) -> CheckReport:
    """Assert every coefficient from the deepest pole through q^order vanishes."""
    name = f"modeq_{table.id}"
    with stopwatch() as ms:
        need = table.required_base_order(order)
        if funcs is None:
            funcs = modular_functions(need, data)
        if funcs.relative_precision < table.pole_depth() + order + 1:
            raise ValueError(f"{name}: functions known to relative precision "
                             f"{funcs.relative_precision}; base order {need} is required")
        rel = relation_series(table, funcs)
        if rel.trunc <= order:
            raise ValueError(f"{name}: relation known only below q^{rel.trunc}")
        bad = rel.first_nonzero(order)
        depth = table.pole_depth()
        if bad is not None:
            return make_report(name, False,
                               f"coefficient of q^{bad} is {rel.coeff(bad)}", ms())
        return make_report(name, True, f"vanishes from q^{-depth} through q^{order}"
                           f" (base order {funcs.base_order})", ms())


def verify_all_modeq(order: int = 120, data=None) -> list[CheckReport]:
    tables = load_modeq_tables(data)
    need = max(t.required_base_order(order) for t in tables.values())
    funcs = modular_functions(need, data)
    return [verify_modeq(tables[i], funcs, order) for i in TABLE_IDS]


def solve_modeq(h: LaurentSeries, f: LaurentSeries, deg_h: int, deg_f: int, order: int,
                lead: int = 1) -> list[list[int]]:
    """Recover y_0..y_deg_h with sum h^i y_i(f) = 0 and y_deg_h = lead.

    Unknowns are the coefficients of h^i f^j for i < deg_h, j <= deg_f, plus
    h^deg_h itself; the equations are the q-coefficients from the deepest pole
    through q^order.  The kernel is found modulo word-sized primes, lifted by
    CRT and then confirmed exactly against every equation.
    """
    if lead not in (1, -1):
        raise ValueError("lead must be +1 or -1")
    hp = [LaurentSeries.one(h.trunc - h.valuation)]
    for _ in range(deg_h):
        hp.append(hp[-1] * h)
    fp = [LaurentSeries.one(f.trunc - f.valuation)]
    for _ in range(deg_f):
        fp.append(fp[-1] * f)
    monos = [(i, j) for i in range(deg_h) for j in range(deg_f + 1)] + [(deg_h, 0)]
    cols = [hp[i] * fp[j] for i, j in monos]
    low = min(c.valuation for c in cols if not c.is_zero())
    for (i, j), c in zip(monos, cols):
        if c.trunc <= order:
            raise ValueError(f"h^{i} f^{j} known only below q^{c.trunc}; raise the precision")
    n_eq = order - low + 1
    if n_eq < len(monos) + 8:
        raise ValueError(f"{n_eq} equations for {len(monos)} unknowns; raise the order")
    den = 1
    for c in cols:
        den = lcm(den, c.denominator)
    matrix = [[int(c.coeff(e) * den) for c in cols] for e in range(low, order + 1)]
    x = integer_kernel_vector(matrix, len(monos) - 1, lead)
    for row in matrix:
        if sum(a * b for a, b in zip(row, x) if a):
            raise ArithmeticError("lifted kernel vector fails an equation exactly")
    rows = [[0] * (deg_f + 1) for _ in range(deg_h)]
    for (i, j), v in zip(monos[:-1], x[:-1]):
        rows[i][j] = v
    out = []
    for r in rows:
        while r and r[-1] == 0:
            r.pop()
        out.append(r)
    return out + [[x[-1]]]


def solve_table(table_id: str, order: int = 120, data=None) -> ModEqTable:
    """Re-derive a stored table from the q-expansions alone."""
    ref = load_modeq_tables(data)[table_id]
    deg_f = ref.deg_f
    funcs = modular_functions(ref.required_base_order(order), data)
    rows = solve_modeq(funcs.partner(ref.partner), funcs.f, 7, deg_f, order, ref.lead_sign)
    return ModEqTable(table_id, rows[7][0], rows[:7])


def round_trip_check(table_id: str, order: int = 120, data=None) -> CheckReport:
    with stopwatch() as ms:
        ref = load_modeq_tables(data)[table_id]
        got = solve_table(table_id, order, data)
        for i, (a, b) in enumerate(zip(got.coeff_rows, ref.coeff_rows)):
            if a != b:
                k = next((k for k in range(max(len(a), len(b)))
                          if (a[k] if k < len(a) else 0) != (b[k] if k < len(b) else 0)), 0)
                return make_report(f"solve_{table_id}", False,
                                   f"y{i} differs at x^{k}", ms())
        return make_report(f"solve_{table_id}", True, "re-derived table equals the stored one",
                           ms())


def specialize_varphi(table: ModEqTable, value=326) -> IntPoly:
    """P(x) = sum_i value^i y_i(x) for the f-varphi equation."""
    if table.id != "f-varphi":
        raise ValueError("specialisation applies to the f-varphi equation")
    acc = IntPoly()
    for i, p in enumerate(table.polys()):
        acc = acc + p * (int(value) ** i)
    return acc


def factorization_check(table: ModEqTable, value=326) -> CheckReport:
    """P_27 = +- cubic * (degree 12)^2, up to content."""
    with stopwatch() as ms:
        P = specialize_varphi(table, value)
        prod = poly_mul(FACTOR_CUBIC, poly_mul(FACTOR_DEG12, FACTOR_DEG12))
        if P.degree != 27:
            return make_report("specialize_326", False, f"degree {P.degree}, expected 27", ms())
        a, b = P.primitive(), prod.primitive()
        if a != b:
            k = next(k for k in range(28) if a.coeffs[k] != b.coeffs[k])
            return make_report("specialize_326", False, f"first difference at x^{k}", ms())
        scale = P.lc // prod.lc
        return make_report("specialize_326", True,
                           f"P27 = {scale} * cubic * (degree-12)^2", ms())


def f_value_numeric(precision_bits: int, data=None) -> BigReal:
    """f(i/sqrt 163) = (theta_7 - theta_8)/(theta_6 - theta_7) at q0 = exp(-pi/sqrt 163)."""
    q0 = nome(163, precision_bits + 32, inverse=True)
    th = [gram_theta_numeric(g.entries, q0, precision_bits + 32)
          for g in gram_matrices(data)[5:8]]
    return (th[1] - th[2]) / (th[0] - th[1])


def cubic_root_check(precision_bits: int = 128, data=None) -> CheckReport:
    """The real root interval of the cubic factor contains the numeric f value."""
    with stopwatch() as ms:
        fv = f_value_numeric(precision_bits, data)
        roots = isolate_real_roots(FACTOR_CUBIC, max_width=Fraction(1, 1 << 40))
        hits = [r for r in roots if r[0] < fv.to_fraction() < r[1]]
        ok = len(roots) == 1 and len(hits) == 1
        return make_report("f_root_interval", ok,
                           f"f(i/sqrt163) = {fv.to_str(25)}; {len(roots)} real root(s)", ms())


def leading_coeff_poly(table: ModEqTable) -> IntPoly:
    """Coefficient of x^27 in each y_i, as a polynomial in the varphi variable."""
    if table.id != "f-varphi":
        raise ValueError("the pole-value polynomial comes from the f-varphi equation")
    d = table.deg_f
    return IntPoly([p.coeffs[d] if p.degree >= d else 0 for p in table.polys()])


def integer_roots(p: IntPoly) -> list[int]:
    """All integer roots with multiplicity, by divisor testing and deflation."""
    roots = []
    while p.degree > 0:
        low = next(i for i, c in enumerate(p.coeffs) if c)
        if low:
            roots.extend([0] * low)
            p = IntPoly(p.coeffs[low:])
            continue
        c0 = abs(p.coeffs[0])
        found = None
        for d in _divisors(c0):
            for r in (d, -d):
                if p(r) == 0:
                    found = r
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        p = _deflate(p, found)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _deflate(p: IntPoly, r: int) -> IntPoly:
    """p / (x - r) by synthetic division; r must be a root."""
    cs = list(p.coeffs)
    out = [0] * (len(cs) - 1)
    acc = 0
    for k in range(len(cs) - 1, 0, -1):
        acc = acc * r + cs[k]
        out[k - 1] = acc
    if acc * r + cs[0] != 0:
        raise ValueError(f"{r} is not a root")
    return IntPoly(out)


def pole_value_check(table: ModEqTable) -> CheckReport:
    with stopwatch() as ms:
        L = leading_coeff_poly(table)
        same = L == POLE_SEXTIC or L == -POLE_SEXTIC
        roots = integer_roots(L)
        ok = same and roots == [-70, -37, 70, 70, 70, 74]
        return make_report("pole_sextic", ok,
                           f"sextic {'matches' if same else 'differs'}; integer roots {roots}",
                           ms())
