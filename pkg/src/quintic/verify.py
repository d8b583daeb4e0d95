"""Theorem-level verification suites.

Each suite runs a family of checks and returns ``VerificationReport``
records; a check names the single identity, congruence display, or table
it certifies.  Failures are captured as reports (with a witness payload)
rather than exceptions, so a whole suite always reports every check.

The congruence-family suite is logically independent of the operator
machinery: it computes c(n) straight from its defining series and tests
divisibility, making it an external oracle for the rest of the pipeline.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import etaq, localring, modeq, specialfns
from .localring import (LocalizedElement, membership_v, membership_w, phi,
                        pi0, pi1, recover, recover_prefix, theta, v5)
from .series import QSeries
from .specialfns import (c_series, f_series, l_series_direct,
                         l_series_recursive, lam, psi, rho_series, t_series,
                         x_series, y_series, z_series)

#: Numerator coefficients of the first witness identity, as printed.
WITNESS_NUMERATOR = (0, 120, 1805, 12050, 39500, 50000)

#: The same witness with the factor 5 removed: the first member of the
#: localized family.
WITNESS_F1 = (0, 24, 361, 2410, 7900, 10000)

#: Principal part plus constant of the witness identity divided by y^5
#: (coefficients of q^-4 .. q^0).
WITNESS_PRINCIPAL_PART = (120, 365, 2765, 5030, 9375)

#: Laurent coefficients of L1/F in x (exponents -3..2), derived from the
#: witness numerator by y = (x-1)/5.  The printed x-form table they are
#: usually quoted against contains transcription errors; these are the
#: values consistent with the witness identity and its t/rho form, and
#: the q-expansion check below certifies them directly.
WITNESS_X_FORM = (Fraction(-1), Fraction(-4), Fraction(11, 5),
                  Fraction(18, 5), Fraction(-84, 5), Fraction(16))

#: Appendix tables: cell (m, r) of table w holds
#: theta(m) + pi1(m, r) + pi0(r, w) - 2, for m = 1..6, r = 1..3;
#: the (m=6, r=1) cell is not printed and is skipped.
TABLE_DATA = {
    1: ((-1, 0, 1), (-1, 0, 1), (-1, 1, 0), (0, 1, 1), (1, 2, 1),
        (None, 2, 2)),
    2: ((-1, 0, 1), (-1, 0, 1), (-1, 1, 0), (0, 1, 1), (1, 2, 1),
        (None, 2, 2)),
    3: ((0, 0, 2), (0, 0, 2), (0, 1, 1), (1, 1, 2), (2, 2, 2),
        (None, 2, 3)),
}


@dataclass
class VerificationReport:
    """One verified statement: its id, what it asserts, and the outcome."""

    check_id: str
    statement: str
    status: str = "pass"          # "pass" | "fail"
    witness: dict | None = None   # structured counterexample / notes
    runtime_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "statement": self.statement,
            "status": self.status,
            "witness": self.witness,
            "runtime_ms": self.runtime_ms,
        }


def _run(check_id: str, statement: str, fn) -> VerificationReport:
    """Execute one check, timing it and converting failures to reports."""
    start = time.perf_counter()
    try:
        witness = fn()
        status = "pass"
    except Exception as exc:  # noqa: BLE001 - every failure becomes a report
        witness = {"error": f"{type(exc).__name__}: {exc}"}
        status = "fail"
    ms = int(1000 * (time.perf_counter() - start))
    if witness is not None and not isinstance(witness, dict):
        witness = None
    return VerificationReport(check_id, statement, status, witness, ms)


def _assert_series_equal(lhs: QSeries, rhs: QSeries, what: str):
    lhs.assert_matches(rhs, what=what)


# ---------------------------------------------------------------------------
# Witness identity.
# ---------------------------------------------------------------------------


def verify_witness_L1(trunc: int = 200) -> list[VerificationReport]:
    """The closed form of L_1 and its cross-checks.

    Main check: L_1 = F (120y + 1805y^2 + 12050y^3 + 39500y^4 + 50000y^5)
    / (1+5y)^3 coefficientwise, with the numerator recovered from L_1
    itself (not compared table against table).
    """
    reports = []

    def main_check():
        l1 = l_series_direct(1, trunc)
        rhs = (f_series(trunc)
               * LocalizedElement(WITNESS_NUMERATOR, 3).to_qseries(trunc))
        _assert_series_equal(l1, rhs, "witness identity")
        got = recover(l1.div_unit(f_series(trunc)), 3, 5)
        if got.numer != WITNESS_NUMERATOR:
            raise modeq.IdentityViolation(
                f"recovered numerator {got.numer}"
            )
        return {"numerator": list(WITNESS_NUMERATOR[1:]),
                "checked_to": min(l1.precision, rhs.precision)}

    reports.append(_run(
        "witness-main",
        "L1 = F*(120y+1805y^2+12050y^3+39500y^4+50000y^5)/(1+5y)^3",
        main_check))

    def rho_check():
        p = 80
        lhs = rho_series(p).scale(5) - x_series(p).scale(4) - 1
        if not lhs.is_zero():
            raise modeq.IdentityViolation(f"q^{lhs.order()}")
        return None

    reports.append(_run("witness-rho", "5*rho = 4x + 1", rho_check))

    def t_check():
        p = 80
        x = x_series(p)
        lhs = t_series(p).scale(25) + x.pow_int(-1) + 3 - x.scale(4)
        if not lhs.is_zero():
            raise modeq.IdentityViolation(f"q^{lhs.order()}")
        return None

    reports.append(_run("witness-t", "25*t = -1/x - 3 + 4x", t_check))

    def two_variable_check():
        p = min(trunc, 120)
        t = t_series(p)
        rho = rho_series(p)
        t2 = t * t
        rhs = (t.scale(245) + t2.scale(3750) + (t2 * t).scale(15625)
               - rho * (t.scale(125) + t2.scale(3125)))
        lhs = l_series_direct(1, p)
        _assert_series_equal(lhs, f_series(p) * rhs, "t/rho form of L1")
        return None

    reports.append(_run(
        "witness-two-variable",
        "L1 = F((245t+3750t^2+15625t^3) - rho(125t+3125t^2))",
        two_variable_check))

    def principal_part_check():
        # Divide the witness by y^5 to move its pole to infinity:
        # U5( L0/F(5t) * Z * x(5t)^3 / y(5t)^5 ) is the Laurent polynomial
        # 120 y^-4 + 1805 y^-3 + 12050 y^-2 + 39500 y^-1 + 50000.
        target = 40
        p_in = 5 * (target + 30)
        l0 = specialfns.l0_series(p_in)
        f5 = specialfns.dilated(f_series, 5, p_in)
        x5 = specialfns.dilated(x_series, 5, p_in)
        y5 = specialfns.dilated(y_series, 5, p_in)
        inner = (l0.div_unit(f5) * z_series(p_in) * x5.pow_int(3)
                 * y5.pow_int(-5))
        lhs = inner.u5()
        y = y_series(lhs.precision + 30)
        rhs = (y.pow_int(-4).scale(120) + y.pow_int(-3).scale(1805)
               + y.pow_int(-2).scale(12050) + y.pow_int(-1).scale(39500)
               + 50000)
        _assert_series_equal(lhs, rhs, "pole-shifted witness")
        got = tuple(lhs[n] for n in range(-4, 1))
        if got != WITNESS_PRINCIPAL_PART:
            raise modeq.IdentityViolation(f"principal part {got}")
        return {"principal_part": list(got)}

    reports.append(_run(
        "witness-principal-part",
        "U5(L0/F(5t) * Z x(5t)^3/y(5t)^5) has principal part "
        "120,365,2765,5030 and constant 9375",
        principal_part_check))

    def x_form_check():
        # Rewrite the witness numerator over x = 1+5y and pin the Laurent
        # coefficients of L1/F in x.  The usual printed table of this
        # x-form does not match (its own y-form contradicts it); the
        # values asserted here are forced by the witness identity, which
        # the q-expansion certifies independently in witness-main.
        coeffs = _witness_x_form()
        if tuple(coeffs) != WITNESS_X_FORM:
            raise modeq.IdentityViolation(f"x-form {coeffs}")
        return {
            "x_form": [str(c) for c in coeffs],
            "note": "commonly quoted x-form table disagrees; these values "
                    "are the ones consistent with the y- and t/rho-forms",
        }

    reports.append(_run(
        "witness-x-form",
        "L1/F = -x^-3 - 4x^-2 + (11/5)x^-1 + 18/5 - (84/5)x + 16x^2",
        x_form_check))

    def f_order_note():
        f = f_series(10)
        if f.order() != 0 or f[0] != 1:
            raise modeq.IdentityViolation(
                f"F has leading term {f[f.order()]} q^{f.order()}"
            )
        return {
            "order_at_infinity": 0,
            "note": "F = 1 - q - q^2 - ...; a cusp-order table quoting "
                    "order 1 at infinity disagrees with this direct "
                    "expansion",
        }

    reports.append(_run(
        "witness-f-expansion",
        "F is a unit power series with constant term 1 (order 0 at "
        "infinity by direct expansion)",
        f_order_note))

    return reports


def _witness_x_form() -> list[Fraction]:
    """Laurent coefficients (x^-3..x^2) of L1/F from the witness
    numerator, by the exact substitution y = (x-1)/5."""
    # numerator(y) with y = (x-1)/5, then divided by x^3
    poly = [Fraction(0)] * 6
    base = [Fraction(-1, 5), Fraction(1, 5)]
    power = [Fraction(1)]
    for k, c in enumerate(WITNESS_NUMERATOR):
        if k:
            new = [Fraction(0)] * (len(power) + 1)
            for idx, pv in enumerate(power):
                new[idx] += pv * base[0]
                new[idx + 1] += pv * base[1]
            power = new
        if c:
            for idx, pv in enumerate(power):
                poly[idx] += c * pv
    return poly  # index idx corresponds to x^(idx-3) after the /x^3 shift


# ---------------------------------------------------------------------------
# Main theorem at desk scale.
# ---------------------------------------------------------------------------

#: Numerator degrees of the localized family members f_alpha; the full
#: polynomial is recovered (with closure check) where listed.
FULL_RECOVERY_DEGREE = {1: 5, 2: 17, 3: 80}


def _family_member_series(alpha: int, precision: int) -> QSeries:
    """(1+5y)^psi(alpha) * L_alpha / (5^alpha F) as a q-series, every
    division asserted exact."""
    l_alpha = l_series_direct(alpha, precision)
    g = l_alpha * x_series(precision).pow_int(psi(alpha))
    g = g.div_unit(f_series(g.precision))
    return g.exact_div(5 ** alpha)


def verify_main_theorem(alpha_max: int = 4,
                        prefix: int = 20) -> list[VerificationReport]:
    """For alpha <= alpha_max: (1+5y)^psi(alpha) L_alpha/(5^alpha F) is an
    integer polynomial in y, with W1/V0 membership alternating by parity.

    alpha <= 3 recovers the full polynomial (with the closure residual
    check); alpha = 4 recovers the first ``prefix`` coefficients, whose
    divisibility and membership margins are checked on that window.
    Successive members are cross-checked against the symbolic operator
    chain f_{alpha+1} = U^(i)(f_alpha)/5.
    """
    reports = []
    members: dict[int, LocalizedElement] = {}

    for alpha in range(1, alpha_max + 1):
        def check(alpha=alpha):
            exponent = psi(alpha)
            if alpha in FULL_RECOVERY_DEGREE:
                degree = FULL_RECOVERY_DEGREE[alpha]
                g = _family_member_series(alpha, degree + 12)
                poly = recover(g, 0, degree)
                members[alpha] = LocalizedElement(poly.numer, exponent)
            else:
                g = _family_member_series(alpha, prefix + 2)
                coeffs = recover_prefix(g, 0, prefix + 1)
                members[alpha] = LocalizedElement(tuple(coeffs), exponent)
            member = members[alpha]
            if alpha % 2:
                report = membership_w(member)
            else:
                report = membership_v(member, 0)
            if not report.ok:
                raise modeq.ValuationViolation(
                    f"membership fails at m={report.first_violation}, "
                    f"sum_mod5={report.sum_mod5}"
                )
            witness = {"psi": exponent, "kind": report.kind,
                       "coefficients_checked": member.degree}
            if alpha == 1:
                if member.numer != WITNESS_F1:
                    raise modeq.IdentityViolation(
                        f"first member {member.numer}"
                    )
                witness["numerator"] = list(WITNESS_F1[1:])
            return witness

        parity_set = "W1" if alpha % 2 else "V0"
        reports.append(_run(
            f"main-alpha-{alpha}",
            f"(1+5y)^{psi(alpha)} L_{alpha}/(5^{alpha} F) is in Z[y] "
            f"with {parity_set} membership at exponent {psi(alpha)}",
            check))

    def chain_check():
        ops = 0
        for alpha in range(1, alpha_max):
            if alpha not in members or (alpha + 1) not in members:
                continue
            i = 1 if alpha % 2 else 0
            image = modeq.u_local(i, members[alpha]).exact_div(5)
            nxt = members[alpha + 1]
            if alpha + 1 in FULL_RECOVERY_DEGREE:
                if image != nxt:
                    raise modeq.IdentityViolation(
                        f"U^({i})(f_{alpha})/5 != f_{alpha + 1}"
                    )
            else:
                lifted = image.with_denom(nxt.denom_exp)
                for m in range(nxt.degree + 1):
                    if lifted.coeff(m) != nxt.coeff(m):
                        raise modeq.IdentityViolation(
                            f"U^({i})(f_{alpha})/5 differs from "
                            f"f_{alpha + 1} at y^{m}"
                        )
            ops += 1
        return {"steps_checked": ops}

    reports.append(_run(
        "main-chain",
        "successive family members satisfy f_(a+1) = U^(i)(f_a)/5 with i "
        "alternating 1,0",
        chain_check))
    return reports


# ---------------------------------------------------------------------------
# Congruence family (independent oracle).
# ---------------------------------------------------------------------------


def verify_congruence_family(
        alpha_max: int = 4,
        counts=(200, 60, 20, 10)) -> list[VerificationReport]:
    """c(5^alpha n + lambda_alpha) = 0 (mod 5^alpha) for n below the
    per-alpha count, with c computed straight from its definition."""
    reports = []
    needed = max(5 ** a * (counts[a - 1] - 1) + lam(a)
                 for a in range(1, alpha_max + 1))
    c = c_series(needed + 1)
    for alpha in range(1, alpha_max + 1):
        count = counts[alpha - 1]

        def check(alpha=alpha, count=count):
            step, shift, modulus = 5 ** alpha, lam(alpha), 5 ** alpha
            for n in range(count):
                value = c[step * n + shift]
                if value % modulus:
                    raise modeq.CongruenceViolation(
                        f"c({step * n + shift}) = {value} is not divisible "
                        f"by {modulus}"
                    )
            return {"count": count, "lambda": shift}

        reports.append(_run(
            f"family-alpha-{alpha}",
            f"c(5^{alpha} n + {lam(alpha)}) = 0 (mod 5^{alpha}) "
            f"for n < {count}",
            check))
    return reports


# ---------------------------------------------------------------------------
# Appendix tables.
# ---------------------------------------------------------------------------


def verify_appendix_tables() -> list[VerificationReport]:
    """Recompute theta(m) + pi1(m,r) + pi0(r,w) - 2 against the printed
    three tables (51 cells; the (m=6, r=1) cells are blank)."""
    reports = []
    for w, rows in TABLE_DATA.items():
        def check(w=w, rows=rows):
            cells = 0
            for m, row in enumerate(rows, start=1):
                for r, expected in enumerate(row, start=1):
                    if expected is None:
                        continue
                    got = theta(m) + pi1(m, r) + pi0(r, w) - 2
                    if got != expected:
                        raise modeq.IdentityViolation(
                            f"cell (m={m}, r={r}): computed {got}, "
                            f"table says {expected}"
                        )
                    cells += 1
            return {"cells": cells}

        reports.append(_run(
            f"table-w{w}",
            f"table of theta(m)+pi1(m,r)+pi0(r,{w})-2 for m<=6, r<=3 "
            "matches recomputation",
            check))
    return reports


# ---------------------------------------------------------------------------
# Mapping theorems as randomized property checks.
# ---------------------------------------------------------------------------


def _random_element(rng: random.Random, kind: str, n: int,
                    support: int = 12) -> LocalizedElement:
    """Random member of V0/V1/W1 at denominator exponent n: discrete s
    with support <= ``support`` and entries in [-50, 50]; the W condition
    is enforced by adjusting s(3)."""
    profile = phi if kind == "V0" else theta
    degree = rng.randint(3, support)
    s = [rng.randint(-50, 50) for _ in range(degree + 1)]
    s[0] = 0
    if kind == "W1":
        total = (s[1] + s[2] + s[3]) % 5
        s[3] -= total
    coeffs = [0] * (degree + 1)
    for m in range(1, degree + 1):
        coeffs[m] = s[m] * 5 ** profile(m)
    return LocalizedElement(tuple(coeffs), n)


def verify_mapping_theorems(trials: int = 50, n_max: int = 4,
                            seed: int = 1) -> list[VerificationReport]:
    """Randomized instances of the three operator mapping laws:

    (a) f in V0_n  =>  U^(0)(f)/5 in V1_(5n-2);
    (b) f in V1_n  =>  (U^(1)(f) - linear part)/5 in V0_(5n-4);
    (c) f in W1_n  =>  U^(1)(f)/5 in V0_(5n-4) and
                       U^(0)(U^(1)(f))/25 in W1_(25n-22).
    """
    reports = []

    def property_a():
        rng = random.Random(seed)
        for _ in range(trials):
            n = rng.randint(1, n_max)
            f = _random_element(rng, "V0", n)
            image = modeq.u_local(0, f).exact_div(5).with_denom(5 * n - 2)
            report = membership_v(image, 1)
            if not report.ok:
                raise modeq.ValuationViolation(
                    f"V0 -> V1 fails for {f!r} at m={report.first_violation}"
                )
        return {"trials": trials, "seed": seed}

    reports.append(_run(
        "mapping-v0-to-v1",
        "f in V0_n implies U^(0)(f)/5 in V1_(5n-2)",
        property_a))

    def property_b():
        rng = random.Random(seed + 1)
        for _ in range(trials):
            n = rng.randint(1, n_max)
            f = _random_element(rng, "V1", n)
            image = modeq.u_local(1, f).with_denom(5 * n - 4)
            linear = LocalizedElement((0, image.coeff(1)), image.denom_exp)
            rest = (image - linear).exact_div(5).with_denom(5 * n - 4)
            report = membership_v(rest, 0)
            if not report.ok:
                raise modeq.ValuationViolation(
                    f"V1 -> V0 fails for {f!r} at m={report.first_violation}"
                )
        return {"trials": trials, "seed": seed + 1}

    reports.append(_run(
        "mapping-v1-to-v0",
        "f in V1_n implies U^(1)(f) minus its y-linear part is 5 times a "
        "member of V0_(5n-4)",
        property_b))

    def property_c():
        rng = random.Random(seed + 2)
        for _ in range(trials):
            n = rng.randint(1, n_max)
            f = _random_element(rng, "W1", n)
            first = modeq.u_local(1, f).exact_div(5).with_denom(5 * n - 4)
            if not membership_v(first, 0).ok:
                raise modeq.ValuationViolation(
                    f"W1 -> V0 fails for {f!r}"
                )
            second = modeq.u_local(0, first.scale(5)).exact_div(25)
            second = second.with_denom(25 * n - 22)
            if not membership_w(second).ok:
                raise modeq.ValuationViolation(
                    f"W1 -> W1 composite fails for {f!r}"
                )
        return {"trials": trials, "seed": seed + 2}

    reports.append(_run(
        "mapping-w1-composite",
        "f in W1_n implies U^(1)(f)/5 in V0_(5n-4) and "
        "U^(0)(U^(1)(f))/25 in W1_(25n-22)",
        property_c))
    return reports


# ---------------------------------------------------------------------------
# Operator-grid suites (wrappers over modeq).
# ---------------------------------------------------------------------------


def verify_fundamental_suite(trunc: int = 200) -> list[VerificationReport]:
    reports = []
    for i in (1, 0):
        for k in range(5):
            reports.append(_run(
                f"relation-u{i}-y{k}",
                f"stored expansion of U^({i})(y^{k}) matches the numeric "
                f"operator to O(q^{trunc})",
                lambda i=i, k=k: modeq.verify_fundamental_relation(
                    i, k, trunc)))
    return reports


def verify_grid(m_max: int = 5, n_max: int = 5,
                numeric_target: int = 45) -> list[VerificationReport]:
    """The 50 initial expansions: exact 5^m division, denominator
    exponent 5n - kappa_i, valuations >= pi_i, numeric agreement."""
    reports = []
    for i in (1, 0):
        def structure(i=i):
            table = modeq.h_table(i, m_max, n_max)
            worst = min(table.margins.values(), default=0)
            return {"entries": len(table.entries),
                    "min_margin": worst}

        reports.append(_run(
            f"grid-structure-u{i}",
            f"U^({i})(y^m/(1+5y)^n) for m,n <= {m_max}: exact 5^m "
            f"division, denominator 5n-{modeq.KAPPA[i]}, valuations >= "
            f"pi_{i}(m,r)",
            structure))

        def numeric(i=i):
            for m in range(1, m_max + 1):
                for n in range(1, n_max + 1):
                    modeq.check_symbolic_vs_numeric(i, m, n, numeric_target)
            return {"pairs": m_max * n_max, "target": numeric_target}

        reports.append(_run(
            f"grid-numeric-u{i}",
            f"all {m_max * n_max} symbolic expansions for i={i} agree "
            "with the numeric operator on the overlap",
            numeric))

    def recurrence():
        modeq.verify_recurrence_step(1, 6, 6)
        modeq.verify_recurrence_step(0, 7, 6)
        modeq.verify_recurrence_step(0, 6, 7)
        return None

    reports.append(_run(
        "grid-recurrence",
        "the modular-equation recurrence reproduces U^(i)(y^m/(1+5y)^n) "
        "in the inductive regime",
        recurrence))
    return reports


def verify_modeq_suite(trunc: int = 300) -> list[VerificationReport]:
    def substitution():
        if not modeq.b_from_a_consistency():
            raise modeq.IdentityViolation(
                "x-equation under x = 1+5y does not reduce to the "
                "y-equation"
            )

    return [
        _run("modeq-y", f"y^5 + sum a_j(5t) y^j = O(q^{trunc})",
             lambda: modeq.verify_modeq_y(trunc)),
        _run("modeq-x", f"x^5 + sum b_k(5t) x^k = O(q^{trunc})",
             lambda: modeq.verify_modeq_x(trunc)),
        _run("modeq-b-from-a",
             "substituting x = 1+5y into the x equation reproduces the y "
             "equation exactly",
             substitution),
    ]


def verify_corollary(n_max: int = 25) -> list[VerificationReport]:
    reports = []
    for display in modeq.COROLLARY_DISPLAYS:
        label, i, ms, r, index, residue = display
        ms = ms if isinstance(ms, tuple) else (ms,)

        def check(i=i, ms=ms, r=r, index=index, residue=residue):
            for m in ms:
                for n in range(1, n_max + 1):
                    second = 5 * n - 4 if index == "5n-4" else n
                    got = modeq.h_value(i, m, second, r) % 5
                    if got != residue:
                        raise modeq.CongruenceViolation(
                            f"h_{i}({m},{second},{r}) = {got} (mod 5)"
                        )
            return {"n_max": n_max}

        m_label = f"{ms[0]}..{ms[-1]}" if len(ms) > 1 else str(ms[0])
        reports.append(_run(
            f"corollary-{label}",
            f"h_{i}(m={m_label}, {index}, r={r}) = {residue} (mod 5) for "
            f"n = 1..{n_max}",
            check))
    return reports


# ---------------------------------------------------------------------------
# Cusp analysis.
# ---------------------------------------------------------------------------


def verify_cusp_analysis() -> list[VerificationReport]:
    """Newman + Ligozat facts used to certify the fundamental relations."""
    reports = []

    def y_orders():
        inv = etaq.y_quotient() ** -1
        want = {"1/0": Fraction(-1), "1/5": Fraction(0),
                "1/2": Fraction(0), "0/1": Fraction(1)}
        table = etaq.order_table(inv)
        got = {cusp.label(): order for cusp, order in table.items()}
        if got != want:
            raise modeq.IdentityViolation(str(got))
        return {label: str(order) for label, order in got.items()}

    reports.append(_run(
        "cusp-y-orders",
        "orders of 1/y at the four cusps of Gamma_0(10) are "
        "(-1, 0, 0, 1) at (oo, 1/5, 1/2, 0)",
        y_orders))

    def newman_catalog():
        quotients = {
            "y": etaq.y_quotient(), "x": etaq.x_quotient(),
            "z": etaq.z_quotient(), "rho": etaq.rho_quotient(),
            "t": etaq.t_quotient(),
        }
        for i in (0, 1):
            for l in range(1, 6):
                for m in range(1, 6):
                    quotients[f"w_{i}_{l}_{m}"] = etaq.w_quotient(i, l, m)
        bad = [name for name, quot in quotients.items()
               if not etaq.newman_check(quot).is_modular]
        if bad:
            raise modeq.IdentityViolation(f"not modular: {bad}")
        return {"quotients": len(quotients)}

    reports.append(_run(
        "cusp-newman",
        "Newman's four conditions hold for y, x, Z, rho, t and all "
        "w_(i,l,m) with 1 <= l,m <= 5",
        newman_catalog))

    def valence():
        quotients = [etaq.y_quotient(), etaq.x_quotient(), etaq.z_quotient(),
                     etaq.rho_quotient(), etaq.t_quotient(),
                     etaq.hauptmodul(), etaq.w_witness_quotient(),
                     etaq.w_const_quotient(0), etaq.w_const_quotient(1)]
        for i in (0, 1):
            for l in range(1, 6):
                for m in range(1, 6):
                    quotients.append(etaq.w_quotient(i, l, m))
        for quot in quotients:
            etaq.order_table(quot)  # raises ValenceMismatch on failure
        return {"quotients": len(quotients)}

    reports.append(_run(
        "cusp-valence",
        "cusp orders of every catalogued modular eta quotient sum to zero",
        valence))

    def certificate_orders():
        for i in (0, 1):
            for l in range(1, 6):
                for m in range(1, 6):
                    w = etaq.w_quotient(i, l, m)
                    for k in range(1, 5):
                        got = etaq.ligozat_order(w, etaq.Cusp(5, k, 50))
                        if got != m:
                            raise modeq.IdentityViolation(
                                f"ord_{k}/5(w_{i}_{l}_{m}) = {got}"
                            )
                    got = etaq.ligozat_order(w, etaq.Cusp(2, 1, 50))
                    if got != -2 * (1 - i):
                        raise modeq.IdentityViolation(
                            f"ord_1/2(w_{i}_{l}_{m}) = {got}"
                        )
                    got = etaq.ligozat_order(w, etaq.Cusp(1, 0, 50))
                    if got != -(1 - i) - 5 * l + m:
                        raise modeq.IdentityViolation(
                            f"ord_0(w_{i}_{l}_{m}) = {got}"
                        )
        return None

    reports.append(_run(
        "cusp-certificates",
        "w_(i,l,m) has order m at k/5, -2(1-i) at 1/2 and "
        "-(1-i)-5l+m at 0 on Gamma_0(50)",
        certificate_orders))

    def expansion_consistency():
        for name in ("y", "x", "z", "rho", "t", "h"):
            quot = etaq.lookup(name)
            head = etaq.ligozat_order(quot, etaq.Cusp.infinity(quot.level))
            series = quot.q_expansion(int(head) + 8)
            if series.order() != head:
                raise modeq.IdentityViolation(
                    f"{name}: q-expansion starts at {series.order()}, "
                    f"Ligozat says {head}"
                )
        return None

    reports.append(_run(
        "cusp-expansion",
        "Ligozat order at infinity equals the leading q-exponent for the "
        "named quotients",
        expansion_consistency))

    return reports


# ---------------------------------------------------------------------------
# Suite orchestration.
# ---------------------------------------------------------------------------


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(report.ok for report in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [report.to_json() for report in self.checks],
            "all_pass": self.all_pass,
        }


SUITE_NAMES = ("relations", "grid", "modeq", "corollary", "witness",
               "main", "family", "tables", "mappings")


def run_suite(name: str, *, trunc: int = 200, alpha_max: int = 4,
              n_max: int = 25, trials: int = 50, seed: int = 1,
              family_counts=(200, 60, 20, 10)) -> SuiteResult:
    """Run one named suite (or 'all') with the given knobs."""
    if name == "relations":
        checks = verify_fundamental_suite(trunc)
    elif name == "grid":
        checks = verify_grid()
    elif name == "modeq":
        checks = verify_modeq_suite(max(300, trunc))
    elif name == "corollary":
        checks = verify_corollary(n_max)
    elif name == "witness":
        checks = verify_witness_L1(trunc) + verify_cusp_analysis()
    elif name == "main":
        checks = verify_main_theorem(alpha_max)
    elif name == "family":
        checks = verify_congruence_family(alpha_max, family_counts)
    elif name == "tables":
        checks = verify_appendix_tables()
    elif name == "mappings":
        checks = verify_mapping_theorems(trials, seed=seed)
    elif name == "all":
        result = SuiteResult("all")
        for sub in SUITE_NAMES:
            result.checks.extend(run_suite(
                sub, trunc=trunc, alpha_max=alpha_max, n_max=n_max,
                trials=trials, seed=seed, family_counts=family_counts
            ).checks)
        return result
    else:
        raise ValueError(f"unknown suite {name!r}")
    return SuiteResult(name, checks)
