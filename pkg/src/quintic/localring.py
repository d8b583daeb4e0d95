"""The ring of fractions p(y)/(1+5y)^n with integer p, and its 5-adic
valuation structure.

Elements are stored as an integer coefficient vector for the numerator
(index = power of y, index 0 the constant) plus a nonnegative denominator
exponent.  Because 1/(1+5y) expands into an integer power series in q,
every element expands integrally; ``to_qseries``/``recover`` convert in
both directions, with ``recover`` solving the unit-triangular system
p_j = g[j] - sum_{k<j} p_k [q^j](y^k) (all steps integer, no division).

The valuation profiles theta/phi and pi0/pi1 are the piecewise floors that
govern how coefficients of y^m grow 5-adically under the twisted
operators; V/W membership checks coefficients against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .series import InexactDivision, QSeries
from .specialfns import x_series, y_series


class DomainError(ValueError):
    """Profile argument outside m >= 1, r >= 1."""


class NotPolynomial(Exception):
    """A q-series that was expected to be polynomial in y is not."""


# -- valuation profiles -------------------------------------------------


def theta(m: int) -> int:
    """floor((5m-5)/6), lowered by 1 from m = 3 on."""
    if m < 1:
        raise DomainError(f"theta is defined for m >= 1, got {m}")
    return (5 * m - 5) // 6 - (1 if m >= 3 else 0)


def phi(m: int) -> int:
    """floor((5m-5)/6), lowered by 1 from m = 4 on."""
    if m < 1:
        raise DomainError(f"phi is defined for m >= 1, got {m}")
    return (5 * m - 5) // 6 - (1 if m >= 4 else 0)


def pi1(m: int, r: int) -> int:
    """Valuation floor for the i=1 operator images (six branches)."""
    if m < 1 or r < 1:
        raise DomainError(f"pi1 is defined for m, r >= 1, got ({m}, {r})")
    if m <= 2:
        if r == 1:
            return 0
        if r == 3:
            return 3
        return (5 * r + 1) // 6
    if m == 3:
        return 2 if r == 2 else (5 * r - 2) // 6
    return (5 * r - m + 1) // 6


def pi0(m: int, r: int) -> int:
    """Valuation floor for the i=0 operator images (four branches)."""
    if m < 1 or r < 1:
        raise DomainError(f"pi0 is defined for m, r >= 1, got ({m}, {r})")
    if m == 1:
        return (5 * r + 1) // 6
    if m == 2:
        return (5 * r - 5) // 6 if 3 <= r <= 5 else (5 * r + 1) // 6
    return (5 * r - m - 2) // 6


def v5(n: int):
    """5-adic valuation; v5(0) = +infinity (passes every threshold)."""
    if n == 0:
        return math.inf
    k = 0
    while n % 5 == 0:
        n //= 5
        k += 1
    return k


# -- integer polynomial helpers (coefficient lists in y) ------------------


def poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a, b) -> list:
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return poly_trim(out)


def poly_mul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return poly_trim(out)


_x_powers: dict[int, tuple] = {0: (1,)}


def x_power_poly(k: int) -> tuple:
    """(1+5y)^k as a coefficient tuple, memoised."""
    if k < 0:
        raise ValueError("only nonnegative powers of (1+5y) are polynomial")
    if k not in _x_powers:
        _x_powers[k] = tuple(poly_mul(list(x_power_poly(k - 1)), [1, 5]))
    return _x_powers[k]


def _divide_by_x(p: list):
    """Quotient of p by (1+5y) if exact, else None.

    Bottom-up synthetic division: s_0 = p_0, s_k = p_k - 5 s_{k-1};
    exactness is the vanishing of the final remainder.  Integer-only.
    """
    if not p:
        return []
    s = [p[0]]
    for k in range(1, len(p)):
        s.append(p[k] - 5 * s[-1])
    if s[-1] != 0:
        return None
    return poly_trim(s[:-1])


# -- localized elements ---------------------------------------------------


@dataclass(frozen=True)
class LocalizedElement:
    """p(y) / (1+5y)^denom_exp with integer numerator coefficients.

    Construction does not canonicalise: membership is a statement about a
    specific denominator exponent, so the caller's form is preserved.
    Equality compares canonical forms.
    """

    numer: tuple = field(default=())
    denom_exp: int = 0

    def __post_init__(self):
        if self.denom_exp < 0:
            raise ValueError("denominator exponent must be nonnegative")
        trimmed = tuple(poly_trim(list(self.numer)))
        object.__setattr__(self, "numer", trimmed)

    @classmethod
    def from_poly(cls, coeffs, denom_exp: int = 0) -> "LocalizedElement":
        return cls(tuple(coeffs), denom_exp)

    @classmethod
    def y_power(cls, m: int, denom_exp: int = 0) -> "LocalizedElement":
        return cls((0,) * m + (1,), denom_exp)

    @classmethod
    def zero(cls) -> "LocalizedElement":
        return cls((), 0)

    def is_zero(self) -> bool:
        return not self.numer

    @property
    def degree(self) -> int:
        """Numerator degree; -1 for the zero element."""
        return len(self.numer) - 1

    def coeff(self, m: int) -> int:
        return self.numer[m] if 0 <= m < len(self.numer) else 0

    # arithmetic ----------------------------------------------------------

    def __add__(self, other: "LocalizedElement") -> "LocalizedElement":
        n = max(self.denom_exp, other.denom_exp)
        a = poly_mul(list(self.numer), list(x_power_poly(n - self.denom_exp)))
        b = poly_mul(list(other.numer), list(x_power_poly(n - other.denom_exp)))
        return LocalizedElement(tuple(poly_add(a, b)), n)

    def __neg__(self):
        return LocalizedElement(tuple(-c for c in self.numer), self.denom_exp)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "LocalizedElement":
        return LocalizedElement(tuple(v * c for v in self.numer),
                                self.denom_exp)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return LocalizedElement(
            tuple(poly_mul(list(self.numer), list(other.numer))),
            self.denom_exp + other.denom_exp)

    __rmul__ = __mul__

    def mul_poly(self, coeffs) -> "LocalizedElement":
        return LocalizedElement(
            tuple(poly_mul(list(self.numer), list(coeffs))), self.denom_exp)

    def exact_div(self, c: int) -> "LocalizedElement":
        out = []
        for a in self.numer:
            d, r = divmod(a, c)
            if r:
                raise InexactDivision(f"coefficient {a} not divisible by {c}")
            out.append(d)
        return LocalizedElement(tuple(out), self.denom_exp)

    def canonical(self) -> "LocalizedElement":
        """Divide numerator by (1+5y) while possible, lowering the
        denominator exponent."""
        p, n = list(self.numer), self.denom_exp
        if not p:
            return LocalizedElement((), 0)
        while n > 0:
            quotient = _divide_by_x(p)
            if quotient is None:
                break
            p, n = quotient, n - 1
            if not p:
                return LocalizedElement((), 0)
        return LocalizedElement(tuple(p), n)

    def with_denom(self, n: int) -> "LocalizedElement":
        """Re-express at denominator exponent n >= current (numerator is
        multiplied by the matching power of 1+5y)."""
        if n < self.denom_exp:
            raise ValueError(
                f"cannot lower denominator exponent {self.denom_exp} to {n} "
                "without dividing; use canonical()"
            )
        if n == self.denom_exp:
            return self
        lifted = poly_mul(list(self.numer),
                          list(x_power_poly(n - self.denom_exp)))
        return LocalizedElement(tuple(lifted), n)

    def __eq__(self, other):
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.numer == b.numer and a.denom_exp == b.denom_exp

    def __hash__(self):
        a = self.canonical()
        return hash((a.numer, a.denom_exp))

    def __repr__(self):
        terms = [f"{c}*y^{m}" if m else str(c)
                 for m, c in enumerate(self.numer) if c]
        body = " + ".join(terms) if terms else "0"
        if self.denom_exp:
            return f"({body}) / (1+5y)^{self.denom_exp}"
        return body

    # conversion ----------------------------------------------------------

    def to_qseries(self, precision: int) -> QSeries:
        """Expand into the integer q-series numer(y) * (1+5y)^-denom_exp."""
        y = y_series(precision)
        acc = QSeries.zero(precision)
        power = QSeries.one(precision)
        for m, c in enumerate(self.numer):
            if c:
                acc = acc + power.scale(c)
            if m + 1 < len(self.numer):
                power = power * y
        if self.denom_exp and not acc.is_zero():
            acc = acc * x_series(precision).pow_int(-self.denom_exp)
        return acc.truncate(min(acc.precision, precision))


def recover(f: QSeries, denom_exp: int, max_deg: int,
            guard: int = 10) -> LocalizedElement:
    """The unique integer polynomial p with deg <= max_deg and
    p(y)/(1+5y)^denom_exp = f + O(q^P), or NotPolynomial.

    Solves the unit-triangular system against the q-expansions of the
    powers of y (unimodular, so the solution is integral by construction)
    and requires the residual to vanish through the guard window.
    """
    if f.offset < 0:
        raise ValueError("recover expects a series with offset >= 0")
    if f.precision <= max_deg + guard:
        raise ValueError(
            f"precision {f.precision} too low to pin degree {max_deg} "
            f"with guard {guard}"
        )
    coeffs = recover_prefix(f, denom_exp, max_deg + 1)
    element = LocalizedElement(tuple(coeffs), denom_exp)
    residual = f - element.to_qseries(f.precision)
    if not residual.is_zero():
        raise NotPolynomial(
            f"residual of order {residual.order()} past degree {max_deg}"
        )
    return element


def recover_prefix(f: QSeries, denom_exp: int, count: int) -> list:
    """First ``count`` numerator coefficients of f * (1+5y)^denom_exp,
    without the closure check that recover performs."""
    precision = count + 1
    if f.precision < precision:
        raise ValueError(
            f"need precision {precision} to read {count} coefficients"
        )
    g = f.truncate(precision)
    if denom_exp:
        g = g * x_series(precision).pow_int(denom_exp)
    y = y_series(precision)
    y_rows = [QSeries.one(precision)]
    for _ in range(count - 1):
        y_rows.append(y_rows[-1] * y)
    coeffs = []
    for j in range(count):
        value = g[j] - sum(coeffs[k] * y_rows[k][j] for k in range(j)
                           if k < len(coeffs) and coeffs[k])
        coeffs.append(value)
    return coeffs


# -- membership -----------------------------------------------------------


@dataclass
class MembershipReport:
    """Outcome of a V/W membership check at a fixed denominator exponent."""

    kind: str                     # "V1" | "V0" | "W1"
    ok: bool
    s: list                       # s(m) = coeff_m / 5^profile(m), m >= 1
    margins: list                 # v5(coeff_m) - profile(m); None for 0
    first_violation: int | None
    sum_mod5: int | None          # s(1)+s(2)+s(3) mod 5 (W checks only)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "s": list(self.s),
            "first_violation": self.first_violation,
            "sum_mod5": self.sum_mod5,
        }


def membership_v(e: LocalizedElement, kind: int) -> MembershipReport:
    """kind=1: v5(coeff_m) >= theta(m) for all m; kind=0: phi(m).

    Elements of these sets have no constant term; a nonzero constant is
    reported as a violation at m = 0.  The element is examined exactly as
    supplied (membership is tied to the denominator exponent).
    """
    profile = theta if kind == 1 else phi
    label = "V1" if kind == 1 else "V0"
    if e.coeff(0) != 0:
        return MembershipReport(label, False, [], [], 0, None)
    s, margins = [], []
    for m in range(1, e.degree + 1):
        c = e.coeff(m)
        need = profile(m)
        if c == 0:
            s.append(0)
            margins.append(None)
            continue
        margin = v5(c) - need
        if margin < 0:
            return MembershipReport(label, False, s, margins, m, None)
        s.append(c // 5 ** need)
        margins.append(margin)
    return MembershipReport(label, True, s, margins, None, None)


def membership_w(e: LocalizedElement) -> MembershipReport:
    """V1 membership plus s(1) + s(2) + s(3) = 0 (mod 5)."""
    report = membership_v(e, 1)
    if not report.ok:
        report.kind = "W1"
        return report
    total = sum(report.s[:3]) % 5
    return MembershipReport("W1", total == 0, report.s, report.margins,
                            None, total)
