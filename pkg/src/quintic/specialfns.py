"""The named q-series of the congruence family.

Built here: the auxiliary eta quotients Z, x, y, the weight-2 form F, the
coefficient sequence c(n) with

    sum c(n) q^n = (2 E2(2 tau) - E2(tau)) / (q^2; q^2)_inf,

and the generating functions L_alpha that package c along the arithmetic
progressions 5^alpha n + lambda_alpha.  Each L_alpha is available through
two independent routes: directly from c, and through the U_5 recursion
L_{2a} = U5(L_{2a-1}), L_{2a+1} = U5(Z * L_{2a}); they must agree on their
common precision, which the verification suite enforces.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from . import etaq
from .series import InexactDivision, QSeries, e2_series, qpochhammer

DEFAULT_TRUNC = 200

_lock = threading.RLock()
_cache: dict[str, QSeries] = {}


def _cached(name: str, precision: int, build) -> QSeries:
    """Memoise by name, keeping the longest expansion computed so far.

    Single-writer discipline: the lock serialises builds; reads hand out
    immutable truncations.
    """
    with _lock:
        have = _cache.get(name)
        if have is None or have.precision < precision:
            have = build(precision)
            _cache[name] = have
        return have.truncate(precision) if have.precision > precision else have


def clear_cache():
    with _lock:
        _cache.clear()


@dataclass(frozen=True)
class FamilyIndex:
    """Index alpha >= 1 into the congruence family, with its parity split."""

    alpha: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")

    @property
    def parity(self) -> str:
        return "odd" if self.alpha % 2 else "even"


def lam(alpha: int) -> int:
    """Minimal positive solution of 12 x = 1 (mod 5^alpha):
    (1 + 7*5^(2a-1))/12 for odd index, (1 + 11*5^(2a))/12 for even."""
    FamilyIndex(alpha)
    numerator = 1 + (7 if alpha % 2 else 11) * 5 ** alpha
    value, rem = divmod(numerator, 12)
    if rem:
        raise InexactDivision(f"(1 + {numerator - 1}) is not divisible by 12")
    return value


def psi(alpha: int) -> int:
    """Localising exponent floor(5^(alpha+1)/12) + 1."""
    FamilyIndex(alpha)
    return 5 ** (alpha + 1) // 12 + 1


def dilated(series_fn, k: int, precision: int) -> QSeries:
    """series(q^k) to O(q^precision), building the base just long enough."""
    base = series_fn(-(-precision // k) + 1)
    return base.dilate(k).truncate(precision)


def z_series(precision: int) -> QSeries:
    return _cached("z", precision,
                   lambda p: etaq.z_quotient().q_expansion(p))


def x_series(precision: int) -> QSeries:
    return _cached("x", precision,
                   lambda p: etaq.x_quotient().q_expansion(p))


def y_series(precision: int) -> QSeries:
    return _cached("y", precision,
                   lambda p: etaq.y_quotient().q_expansion(p))


def rho_series(precision: int) -> QSeries:
    return _cached("rho", precision,
                   lambda p: etaq.rho_quotient().q_expansion(p))


def t_series(precision: int) -> QSeries:
    return _cached("t", precision,
                   lambda p: etaq.t_quotient().q_expansion(p))


def _build_f(precision: int) -> QSeries:
    f = (dilated(e2_series, 10, precision).scale(50)
         - dilated(e2_series, 5, precision).scale(25)
         - dilated(e2_series, 2, precision).scale(2)
         + e2_series(precision))
    return f.exact_div(24)


def f_series(precision: int) -> QSeries:
    """(50 E2(10t) - 25 E2(5t) - 2 E2(2t) + E2(t))/24; the division by 24
    is asserted exact on every coefficient."""
    return _cached("F", precision, _build_f)


def l0_series(precision: int) -> QSeries:
    """2 E2(2 tau) - E2(tau), the seed of the recursion."""
    return _cached(
        "L0", precision,
        lambda p: dilated(e2_series, 2, p).scale(2) - e2_series(p))


def c_series(precision: int) -> QSeries:
    """c(n) for n < precision.

    Computed by exact division of 2 E2(2t) - E2(t) by (q^2; q^2)_inf; the
    divisor is pentagonal-sparse, so the back-substitution costs
    O(precision * sqrt(precision)).
    """
    return _cached(
        "c", precision,
        lambda p: l0_series(p).div_unit(qpochhammer(2, p)))


def c_values(count: int) -> list[int]:
    return list(c_series(count).coefficients(0, count))


def l_series_direct(alpha: int, precision: int) -> QSeries:
    """L_alpha straight from the definition.

    alpha = 0 returns the seed; odd alpha carries the (q^10; q^10)_inf
    prefactor, even alpha >= 2 the (q^2; q^2)_inf prefactor, both against
    sum_n c(5^alpha n + lambda_alpha) q^(n+1).  Needs c up to index
    5^alpha (precision - 2) + lambda_alpha.
    """
    if alpha == 0:
        return l0_series(precision)
    step = 5 ** alpha
    shift = lam(alpha)
    c = c_series(step * (precision - 2) + shift + 1)
    tail = QSeries(1, [c[step * n + shift] for n in range(precision - 1)],
                   precision)
    prefactor = qpochhammer(10 if alpha % 2 else 2, precision)
    return (prefactor * tail).truncate(precision)


def l_series_recursive(alpha: int, precision: int) -> QSeries:
    """L_alpha through the recursion L_{2a} = U5(L_{2a-1}),
    L_{2a+1} = U5(Z * L_{2a}), seeded by L_1 = U5(Z * L_0).

    Each U5 step divides precision by 5, so the seed is built at
    5^alpha * precision.  Retained as an independent oracle against
    l_series_direct.
    """
    FamilyIndex(alpha)
    p_in = 5 ** alpha * precision
    current = l0_series(p_in)
    for step in range(1, alpha + 1):
        if step % 2:  # even -> odd index: twist by Z first
            current = (z_series(current.precision) * current).u5()
        else:
            current = current.u5()
    return current.truncate(precision)
