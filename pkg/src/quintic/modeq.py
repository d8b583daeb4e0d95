"""Degree-5 modular equations and the twisted operators on the localized
ring.

The modular equations
    y^5 + sum_j a_j(5 tau) y^j = 0        (a_j polynomials in y)
    x^5 + sum_k b_k(5 tau) x^k = 0        (b_k polynomials in x, b_5 := 1)
are stored in the factored shape of their printed coefficient tables and
verified by q-expansion.  The twisted operators

    U^(i)(f) = U5(F * Z^(1-i) * f) / F

act on elements y^m/(1+5y)^n of the localized ring.  Their action is
realised twice:

* numerically, straight from the definition above (``u_op_numeric``);
* symbolically, from the ten fundamental relations for U^(i)(y^k),
  k = 0..4, via the binomial reduction
      U^(i)(y^m/(1+5y)^n) = 5^-m sum_r (-1)^(m-r) C(m,r) U^(i)((1+5y)^(r-n))
  with powers of (1+5y) outside -5..4 reached through the x modular
  equation (``u_y_over_x``).

Every symbolic result is cross-checkable against the numeric route, and
every division by a power of 5 is asserted exact -- the exactness is the
arithmetic content being verified.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

from .localring import (LocalizedElement, pi0, pi1, poly_add, poly_mul,
                        poly_trim, v5, x_power_poly)
from .series import InexactDivision, QSeries
from .specialfns import f_series, x_series, y_series, z_series

KAPPA = {1: 4, 0: 2}

#: Guard terms added below the output target before the factor-5 precision
#: loss of U5; asserted sufficient by the overlap computation itself.
NUMERIC_GUARD = 25


class IdentityViolation(Exception):
    """A claimed identity of q-series or ring elements fails."""


class FundamentalRelationViolation(Exception):
    """A hard-coded base relation disagrees with the numeric operator."""


class SymbolicNumericMismatch(Exception):
    """The symbolic engine disagrees with the numeric operator."""


class ValuationViolation(Exception):
    """A coefficient falls below its guaranteed 5-adic valuation floor."""


class CongruenceViolation(Exception):
    """One of the discrete-array congruences fails."""


# ---------------------------------------------------------------------------
# Modular equation data.  A_POLYS[j][d] is the coefficient of y^(d+1) in
# a_j, kept as (mantissa, power-of-5) pairs mirroring the printed tables;
# B_POLYS_X[k][d] likewise for the coefficient of x^d in b_k.
# ---------------------------------------------------------------------------

A_POLYS_FACTORED = (
    ((-1, 0), (-4, 1), (-6, 2), (-4, 3), (-1, 4)),
    ((-3, 1), (-61, 1), (-93, 2), (-63, 3), (-16, 4)),
    ((-17, 1), (-14, 3), (-541, 2), (-372, 3), (-96, 4)),
    ((-43, 1), (-179, 2), (-56, 4), (-976, 3), (-256, 4)),
    ((-41, 1), (-172, 2), (-272, 3), (-192, 4), (-256, 4)),
)

B_POLYS_X = (
    (0, 0, 0, 0, 0, -1),
    (1, 5, 5, 5, 5, -16),
    (-4, -15, 10, 35, 60, -96),
    (6, 15, -35, 40, 240, -256),
    (-4, -5, 20, -80, 320, -256),
    (1,),
)


def a_poly(j: int) -> tuple:
    """a_j as a y-coefficient tuple (constant term zero)."""
    return (0,) + tuple(m * 5 ** e for m, e in A_POLYS_FACTORED[j])


def b_poly_x(k: int) -> tuple:
    """b_k as an x-coefficient tuple; b_5 is the constant 1."""
    return B_POLYS_X[k]


def _substitute_x(coeffs_x) -> tuple:
    """Rewrite a polynomial in x as a polynomial in y via x = 1 + 5y."""
    out: list = [0]
    for k, c in enumerate(coeffs_x):
        if c:
            out = poly_add(out, [c * v for v in x_power_poly(k)])
    return tuple(out)


def b_poly_y(k: int) -> tuple:
    return _substitute_x(b_poly_x(k))


# ---------------------------------------------------------------------------
# Modular equation verification.
# ---------------------------------------------------------------------------


def _poly_series(coeffs, s: QSeries) -> QSeries:
    """Evaluate an integer polynomial at the series s (Horner)."""
    acc = QSeries.zero(s.precision)
    for c in reversed(coeffs):
        acc = acc * s + int(c)
    return acc


def verify_modeq_y(precision: int = 300) -> None:
    """Assert y^5 + sum_j a_j(5 tau) y^j = O(q^precision)."""
    y = y_series(precision)
    y5t = y_series(-(-precision // 5) + 1).dilate(5).truncate(precision)
    acc = y.pow_int(5)
    for j in range(5):
        acc = acc + _poly_series(a_poly(j), y5t) * y.pow_int(j)
    if not acc.is_zero():
        raise IdentityViolation(
            f"modular equation for y: first nonzero term q^{acc.order()}"
        )


def verify_modeq_x(precision: int = 300) -> None:
    """Assert x^5 + sum_k b_k(5 tau) x^k = O(q^precision)."""
    x = x_series(precision)
    x5t = x_series(-(-precision // 5) + 1).dilate(5).truncate(precision)
    acc = x.pow_int(5)
    for k in range(5):
        acc = acc + _poly_series(b_poly_x(k), x5t) * x.pow_int(k)
    if not acc.is_zero():
        raise IdentityViolation(
            f"modular equation for x: first nonzero term q^{acc.order()}"
        )


def b_from_a_consistency() -> bool:
    """The x equation is the y equation under x = 1+5y: as bivariate
    polynomials, modX(1+5y, 1+5Y) = 5^5 * modY(y, Y) exactly."""
    # Bivariate polynomials as dicts {(deg_y, deg_Y): int}.
    def bi_add(p, q):
        out = dict(p)
        for key, v in q.items():
            out[key] = out.get(key, 0) + v
        return {k: v for k, v in out.items() if v}

    def bi_mul(p, q):
        out: dict = {}
        for (i1, j1), v1 in p.items():
            for (i2, j2), v2 in q.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + v1 * v2
        return {k: v for k, v in out.items() if v}

    def from_uni(coeffs, var: int) -> dict:
        return {((d, 0) if var == 0 else (0, d)): c
                for d, c in enumerate(coeffs) if c}

    x_of_y = from_uni((1, 5), 0)        # 1 + 5y
    big_x_of_y = from_uni((1, 5), 1)    # 1 + 5Y

    def power(p, e):
        acc = {(0, 0): 1}
        for _ in range(e):
            acc = bi_mul(acc, p)
        return acc

    mod_x: dict = power(x_of_y, 5)
    for k in range(5):
        bk = {(0, 0): 0}
        for d, c in enumerate(b_poly_x(k)):
            if c:
                bk = bi_add(bk, bi_mul({(0, 0): c}, power(big_x_of_y, d)))
        mod_x = bi_add(mod_x, bi_mul(bk, power(x_of_y, k)))

    mod_y: dict = {(5, 0): 1}
    for j in range(5):
        aj = from_uni(a_poly(j), 1)
        mod_y = bi_add(mod_y, bi_mul(aj, {(j, 0): 1}))

    scale = 5 ** 5
    for key, v in mod_x.items():
        if v % scale:
            return False
    return {k: v // scale for k, v in mod_x.items()} == mod_y


# ---------------------------------------------------------------------------
# Numeric twisted operator.
# ---------------------------------------------------------------------------


def u_op_numeric(i: int, f: QSeries) -> QSeries:
    """U5(F * Z^(1-i) * f) / F, computed from q-series.

    F is a unit series with constant term 1, so the final division is an
    exact integer back-substitution.
    """
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    precision = f.precision - min(f.order(), 0)
    weighted = f_series(precision) * f
    if i == 0:
        weighted = weighted * z_series(precision)
    sifted = weighted.u5()
    return sifted.div_unit(f_series(max(sifted.precision, 1)))


def u_input_precision(target: int) -> int:
    """Input truncation so that the numeric operator reaches ``target``."""
    return 5 * (target + NUMERIC_GUARD)


# ---------------------------------------------------------------------------
# The ten fundamental relations (hard data, factored as printed).
# ---------------------------------------------------------------------------

_GROUP_I = {
    0: (((1, 0), (1, 2), (16, 1)), 1),
    1: (((0, 0), (1, 0)), 0),
    2: (((0, 0), (51, 0), (471, 1), (1364, 2), (1776, 3), (1088, 4),
         (256, 5)), 0),
    3: (((0, 0), (41, 0), (2474, 1), (29193, 2), (152248, 3), (2231024, 3),
         (814336, 5), (4833536, 5), (3753984, 6), (1847296, 7), (524288, 8),
         (65536, 9)), 0),
    4: (((0, 0), (11, 0), (3981, 1), (138181, 2), (8956203, 2),
         (62033852, 3), (53739872, 5), (791357952, 5), (1662808832, 6),
         (2561985536, 7), (14663327744, 7), (2496888832, 9),
         (7817854976, 9), (3503816704, 10), (1065353216, 11),
         (197132288, 12), (16777216, 13)), 0),
}

_GROUP_II = {
    0: (((0, 0), (-1, 1), (-4, 1)), 1),
    1: (((0, 0), (1, 1), (4, 1)), 0),
    2: (((0, 0), (1, 1), (153, 1), (3956, 1), (8528, 2), (9152, 3),
         (4864, 4), (1024, 5)), 0),
    3: (((0, 0), (1, 0), (1874, 0), (40101, 1), (309864, 2), (1252624, 3),
         (3071232, 4), (4892928, 5), (26039296, 5), (18464768, 6),
         (8404992, 7), (2228224, 8), (262144, 9)), 0),
    4: (((0, 0), (0, 0), (329, 1), (116926, 1), (2285653, 2),
         (21410212, 3), (119101984, 4), (438497152, 5), (45458688, 8),
         (2150618112, 7), (3033554944, 8), (3217784832, 9),
         (12811829248, 9), (37793038336, 9), (16051601408, 10),
         (4647288832, 11), (822083584, 12), (67108864, 13)), 0),
}


def fundamental_relation(i: int, k: int) -> LocalizedElement:
    """Right-hand side of the base relation for U^(i)(y^k), k = 0..4."""
    table = _GROUP_I if i == 1 else _GROUP_II
    factored, denom = table[k]
    coeffs = tuple(m * 5 ** e for m, e in factored)
    return LocalizedElement(coeffs, denom)


def verify_fundamental_relation(i: int, k: int, trunc: int = 60) -> None:
    """Check one base relation against the numeric operator to O(q^trunc)."""
    p_in = u_input_precision(trunc)
    lhs = u_op_numeric(i, y_series(p_in).pow_int(k) if k
                       else QSeries.one(p_in))
    rhs = fundamental_relation(i, k).to_qseries(trunc)
    limit = min(lhs.precision, rhs.precision)
    for n in range(min(lhs.offset, rhs.offset, 0), limit):
        if lhs[n] != rhs[n]:
            raise FundamentalRelationViolation(
                f"U^({i})(y^{k}): stored relation disagrees with the "
                f"numeric operator at q^{n}"
            )


_base_verified: set = set()
_base_lock = threading.Lock()


def ensure_base_relations(trunc: int = 60) -> None:
    """Verify all ten base relations once per truncation (memoised)."""
    with _base_lock:
        if trunc in _base_verified:
            return
        for i in (0, 1):
            for k in range(5):
                verify_fundamental_relation(i, k, trunc)
        _base_verified.add(trunc)


# ---------------------------------------------------------------------------
# Symbolic engine.
# ---------------------------------------------------------------------------

_upx_memo: dict = {}
_uyx_memo: dict = {}
_engine_lock = threading.RLock()


def u_power_x(i: int, n: int) -> LocalizedElement:
    """U^(i)((1+5y)^n) for any integer n, canonical form, memoised.

    0..4 by binomial over the base relations; n >= 5 upward and n <= -1
    downward through the x modular equation.
    """
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    with _engine_lock:
        return _u_power_x(i, n)


def _u_power_x(i: int, n: int) -> LocalizedElement:
    key = (i, n)
    if key in _upx_memo:
        return _upx_memo[key]
    ensure_base_relations()
    if 0 <= n <= 4:
        acc = LocalizedElement.zero()
        for k in range(n + 1):
            acc = acc + fundamental_relation(i, k).scale(
                math.comb(n, k) * 5 ** k)
    elif n >= 5:
        acc = LocalizedElement.zero()
        for k in range(5):
            acc = acc + _u_power_x(i, k + n - 5).mul_poly(b_poly_y(k))
        acc = acc.scale(-1)
    else:
        acc = LocalizedElement.zero()
        for k in range(1, 6):
            acc = acc + _u_power_x(i, n + k).mul_poly(b_poly_y(k))
        acc = LocalizedElement(acc.numer, acc.denom_exp + 5)
    result = acc.canonical()
    _upx_memo[key] = result
    return result


def u_y_over_x(i: int, m: int, n: int) -> LocalizedElement:
    """U^(i)(y^m / (1+5y)^n) via the binomial reduction, canonical form.

    The division by 5^m is asserted exact on every coefficient.  Any
    integers m >= 0 and n are accepted; the localization-exponent law
    (denominator 5n - kappa_i) applies on the grid m, n >= 1.
    """
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if m < 0:
        raise ValueError("m must be nonnegative")
    with _engine_lock:
        key = (i, m, n)
        if key in _uyx_memo:
            return _uyx_memo[key]
        acc = LocalizedElement.zero()
        for r in range(m + 1):
            sign = -1 if (m - r) % 2 else 1
            acc = acc + _u_power_x(i, r - n).scale(sign * math.comb(m, r))
        result = acc.exact_div(5 ** m).canonical()
        _uyx_memo[key] = result
        return result


def u_local(i: int, e: LocalizedElement) -> LocalizedElement:
    """Apply U^(i) to an arbitrary localized element by linearity."""
    acc = LocalizedElement.zero()
    for m, c in enumerate(e.numer):
        if c:
            acc = acc + u_y_over_x(i, m, e.denom_exp).scale(c)
    return acc


def grid_element(i: int, m: int, n: int) -> LocalizedElement:
    """U^(i)(y^m/(1+5y)^n) re-expressed at the theorem's denominator
    exponent 5n - kappa_i (m, n >= 1)."""
    if m < 1 or n < 1:
        raise ValueError("the localization-exponent law needs m, n >= 1")
    element = u_y_over_x(i, m, n)
    want = 5 * n - KAPPA[i]
    if element.denom_exp > want:
        raise ValuationViolation(
            f"U^({i})(y^{m}/(1+5y)^{n}) has denominator exponent "
            f"{element.denom_exp} > {want}"
        )
    return element.with_denom(want)


def support_floor(i: int, m: int) -> int:
    """First possibly-nonzero power of y in U^(i)(y^m/(1+5y)^n)."""
    return -(-m // 5) if i == 1 else -(-(m + 2) // 5)


def check_symbolic_vs_numeric(i: int, m: int, n: int,
                              target: int = 45) -> None:
    """Dual-route check: the symbolic image must match the numeric
    operator on the overlap precision."""
    p_in = u_input_precision(target)
    f = LocalizedElement.y_power(m, n).to_qseries(p_in)
    numeric = u_op_numeric(i, f)
    symbolic = u_y_over_x(i, m, n).to_qseries(min(numeric.precision, target))
    limit = min(numeric.precision, symbolic.precision)
    for idx in range(min(numeric.offset, symbolic.offset, 0), limit):
        if numeric[idx] != symbolic[idx]:
            raise SymbolicNumericMismatch(
                f"U^({i})(y^{m}/(1+5y)^{n}) at q^{idx}: symbolic "
                f"{symbolic[idx]} vs numeric {numeric[idx]}"
            )


# ---------------------------------------------------------------------------
# Discrete arrays.
# ---------------------------------------------------------------------------


@dataclass
class HTable:
    """Integer cofactors h_i(m,n,r) after stripping 5^pi_i(m,r).

    margins[(m,n,r)] = v5(coeff_r) - pi_i(m,r) for nonzero coefficients;
    support and valuation floors are enforced at construction.
    """

    i: int
    kappa: int
    entries: dict = field(default_factory=dict)
    margins: dict = field(default_factory=dict)

    def h(self, m: int, n: int, r: int) -> int:
        return self.entries.get((m, n, r), 0)


def h_table(i: int, m_max: int, n_max: int) -> HTable:
    """Factor U^(i)(y^m/(1+5y)^n) as sum h_i(m,n,r) 5^pi_i(m,r) y^r over
    1 <= m <= m_max, 1 <= n <= n_max."""
    pi = pi1 if i == 1 else pi0
    table = HTable(i=i, kappa=KAPPA[i])
    for m in range(1, m_max + 1):
        floor_r = support_floor(i, m)
        for n in range(1, n_max + 1):
            element = grid_element(i, m, n)
            if element.coeff(0):
                raise ValuationViolation(
                    f"U^({i})(y^{m}/(1+5y)^{n}) has a constant term"
                )
            for r in range(1, element.degree + 1):
                c = element.coeff(r)
                if r < floor_r:
                    if c:
                        raise ValuationViolation(
                            f"U^({i})(y^{m}/x^{n}): support starts at "
                            f"y^{floor_r} but y^{r} has coefficient {c}"
                        )
                    continue
                if c == 0:
                    table.entries[(m, n, r)] = 0
                    continue
                need = pi(m, r)
                margin = v5(c) - need
                if margin < 0:
                    raise ValuationViolation(
                        f"v5(coeff of y^{r} in U^({i})(y^{m}/x^{n})) = "
                        f"{v5(c)} < pi_{i}({m},{r}) = {need}"
                    )
                table.entries[(m, n, r)] = c // 5 ** need
                table.margins[(m, n, r)] = margin
    return table


def h_value(i: int, m: int, n: int, r: int) -> int:
    """Single cofactor h_i(m,n,r), with its valuation floor asserted."""
    pi = pi1 if i == 1 else pi0
    element = grid_element(i, m, n)
    c = element.coeff(r)
    if c == 0:
        return 0
    need = pi(m, r)
    if v5(c) < need:
        raise ValuationViolation(
            f"v5({c}) < pi_{i}({m},{r}) = {need} at (m,n,r)=({m},{n},{r})"
        )
    return c // 5 ** need


# ---------------------------------------------------------------------------
# Recurrence and congruences.
# ---------------------------------------------------------------------------


def verify_recurrence_step(i: int, m: int, n: int) -> None:
    """Check U^(i)(y^m/x^n) =
    -(1+5y)^-5 sum_{j,k} a_j b_k U^(i)(y^(m+j-5)/x^(n-k))
    as an identity of localized elements (inductive regime).

    Needs m >= 5 so the shifted y-exponents m+j-5 stay nonnegative; the
    intended use is m, n >= 6."""
    if m < 5:
        raise ValueError("recurrence check needs m >= 5 (nonnegative "
                         "shifted y-exponents)")
    lhs = u_y_over_x(i, m, n)
    acc = LocalizedElement.zero()
    for j in range(5):
        for k in range(1, 6):
            product = poly_mul(list(a_poly(j)), list(b_poly_y(k)))
            acc = acc + u_y_over_x(i, m + j - 5, n - k).mul_poly(product)
    rhs = LocalizedElement(acc.scale(-1).numer, acc.denom_exp + 5)
    if lhs != rhs:
        raise IdentityViolation(
            f"recurrence step fails at (i,m,n)=({i},{m},{n})"
        )


#: The eight congruence displays: (label, i, m, r, index map, residue).
COROLLARY_DISPLAYS = (
    ("hmod2", 0, 1, 1, "n", 1),
    ("hmod3", 0, 2, 1, "5n-4", 0),
    ("hmod4", 0, 3, 1, "n", 1),
    ("hmod2a", 0, 1, 2, "n", 4),
    ("hmod3b", 0, 2, 2, "5n-4", 4),
    ("hmod4a", 0, 3, 2, "n", 4),
    ("hmod3c", 0, 2, 3, "5n-4", 1),
    ("hmod1", 1, (1, 2, 3), 1, "n", 1),
)


def corollary_congruences(n_max: int = 25) -> dict:
    """Check all eight displays for n = 1..n_max; returns
    {label: residues seen}; raises CongruenceViolation on failure."""
    seen: dict = {}
    for label, i, ms, r, index, residue in COROLLARY_DISPLAYS:
        ms = ms if isinstance(ms, tuple) else (ms,)
        values = []
        for m in ms:
            for n in range(1, n_max + 1):
                second = 5 * n - 4 if index == "5n-4" else n
                got = h_value(i, m, second, r) % 5
                values.append(got)
                if got != residue:
                    raise CongruenceViolation(
                        f"({label}): h_{i}({m},{second},{r}) = {got} "
                        f"(mod 5), expected {residue}"
                    )
        seen[label] = values
    return seen
