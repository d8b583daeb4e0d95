"""Symbolic eta quotients on Gamma_0(N): modularity and cusp orders.

An eta quotient is prod_{delta | N} eta(delta tau)^{r_delta}.  Newman's
criterion decides whether it is a modular function on Gamma_0(N); Ligozat's
formula gives its order at each cusp, in the local-uniformiser convention
(one unit = one power of q^{gcd(c^2,N)/N}).  In that convention the orders
of a modular eta quotient over all cusp representatives sum to zero (a
principal divisor has degree zero), which is used as a structural
self-test throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .series import QSeries, eta_product


class ValenceMismatch(Exception):
    """Cusp orders of a supposed modular function do not sum to zero."""


@dataclass(frozen=True, order=True)
class Cusp:
    """A cusp a/c of Gamma_0(N), canonical within its orbit.

    Canonical form: c | N, gcd(a, c) = 1, and a is the least nonnegative
    representative of its residue class mod gcd(c, N/c) that is coprime to
    c.  Infinity is represented as 1/0.
    """

    c: int
    a: int
    level: int

    def __post_init__(self):
        if math.gcd(self.a, self.c) != 1:
            raise ValueError(f"cusp {self.a}/{self.c} is not reduced")

    @classmethod
    def infinity(cls, level: int) -> "Cusp":
        return cls(0, 1, level)

    @property
    def is_infinity(self) -> bool:
        return self.c == 0

    @property
    def width(self) -> int:
        return self.level // math.gcd(self.c * self.c, self.level)

    def __str__(self):
        if self.is_infinity:
            return "oo"
        if self.c == 1:
            return str(self.a)
        return f"{self.a}/{self.c}"

    def label(self) -> str:
        """Wire label: always "a/c", with infinity as "1/0"."""
        return f"{self.a}/{self.c}"


class EtaQuotient:
    """Level N plus the exponent r_delta of eta(delta tau) per divisor."""

    __slots__ = ("level", "exps")

    def __init__(self, level: int, exps: dict):
        if level < 1:
            raise ValueError("level must be a positive integer")
        cleaned = {}
        for delta, r in exps.items():
            if level % delta:
                raise ValueError(
                    f"divisor {delta} does not divide level {level}"
                )
            if r:
                cleaned[delta] = r
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "exps", dict(sorted(cleaned.items())))

    def __setattr__(self, name, value):
        raise AttributeError("EtaQuotient is immutable")

    def __eq__(self, other):
        return (isinstance(other, EtaQuotient)
                and self.level == other.level and self.exps == other.exps)

    def __hash__(self):
        return hash((self.level, tuple(self.exps.items())))

    def __repr__(self):
        body = ", ".join(f"{d}: {r}" for d, r in self.exps.items())
        return f"EtaQuotient(N={self.level}, {{{body}}})"

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        level = math.lcm(self.level, other.level)
        exps = dict(self.exps)
        for d, r in other.exps.items():
            exps[d] = exps.get(d, 0) + r
        return EtaQuotient(level, exps)

    def __pow__(self, e: int) -> "EtaQuotient":
        return EtaQuotient(self.level, {d: r * e for d, r in self.exps.items()})

    def inverse(self) -> "EtaQuotient":
        return self ** -1

    def dilate(self, k: int) -> "EtaQuotient":
        """The quotient evaluated at k*tau, living on level k*N."""
        return EtaQuotient(self.level * k,
                           {d * k: r for d, r in self.exps.items()})

    def at_level(self, level: int) -> "EtaQuotient":
        if level % self.level:
            raise ValueError(f"{self.level} does not divide {level}")
        return EtaQuotient(level, self.exps)

    def q_expansion(self, precision: int) -> QSeries:
        return eta_product(self.level, self.exps, precision)


@dataclass(frozen=True)
class NewmanReport:
    """The four conditions of Newman's modularity criterion."""

    exponent_sum_zero: bool       # sum r_delta = 0
    weighted_sum_mod24: bool      # sum delta * r_delta = 0 (mod 24)
    dual_weighted_sum_mod24: bool  # sum (N/delta) * r_delta = 0 (mod 24)
    product_is_square: bool       # prod delta^|r_delta| a perfect square

    @property
    def is_modular(self) -> bool:
        return (self.exponent_sum_zero and self.weighted_sum_mod24
                and self.dual_weighted_sum_mod24 and self.product_is_square)

    def as_tuple(self):
        return (self.exponent_sum_zero, self.weighted_sum_mod24,
                self.dual_weighted_sum_mod24, self.product_is_square)


def newman_check(f: EtaQuotient) -> NewmanReport:
    """Evaluate Newman's four conditions for membership in M(Gamma_0(N))."""
    n = f.level
    total = sum(f.exps.values())
    weighted = sum(d * r for d, r in f.exps.items())
    dual = sum((n // d) * r for d, r in f.exps.items())
    prod = 1
    for d, r in f.exps.items():
        prod *= d ** abs(r)
    root = math.isqrt(prod)
    return NewmanReport(total == 0, weighted % 24 == 0, dual % 24 == 0,
                        root * root == prod)


def ligozat_order(f: EtaQuotient, cusp: Cusp) -> Fraction:
    """Order of f at the cusp a/c:
    N/(24 gcd(c^2,N)) * sum_delta r_delta gcd(c,delta)^2 / delta.

    gcd(0, delta) = delta makes the same formula cover infinity (c = 0).
    """
    n = f.level
    c = cusp.c
    acc = Fraction(0)
    for d, r in f.exps.items():
        g = math.gcd(c, d)
        acc += Fraction(r * g * g, d)
    return Fraction(n, 24 * math.gcd(c * c, n)) * acc


def enumerate_cusps(level: int) -> list[Cusp]:
    """One canonical representative per Gamma_0(N)-orbit of cusps.

    For each c | N there are phi(gcd(c, N/c)) orbits, one per residue
    class of a mod gcd(c, N/c) admitting gcd(a, c) = 1.  The class c = N
    is the cusp at infinity.
    """
    cusps = [Cusp.infinity(level)]
    for c in range(1, level):
        if level % c:
            continue
        g = math.gcd(c, level // c)
        for residue in range(g):
            # Classes with gcd(residue, g) > 1 contain no fraction reduced
            # against c (g divides c); the remaining phi(g) classes do.
            if math.gcd(residue, g) != 1:
                continue
            a = residue
            while math.gcd(a, c) != 1:
                a += g
            cusps.append(Cusp(c, a, level))
    return sorted(cusps, key=lambda s: (s.c, s.a))


def order_table(f: EtaQuotient) -> dict[Cusp, Fraction]:
    """Ligozat order at every cusp, with the degree-zero valence check.

    Orders are in local-uniformiser units, so each cusp orbit contributes
    its order once; for a modular eta quotient the total must vanish.
    """
    table = {cusp: ligozat_order(f, cusp) for cusp in enumerate_cusps(f.level)}
    if newman_check(f).is_modular:
        total = sum(table.values())
        if total != 0:
            raise ValenceMismatch(
                f"cusp orders of {f!r} sum to {total}, expected 0"
            )
    return table


# ---------------------------------------------------------------------------
# The named quotients of the verification family.
# ---------------------------------------------------------------------------


def z_quotient() -> EtaQuotient:
    """eta(50 tau)/eta(2 tau); leading term q^2."""
    return EtaQuotient(50, {2: -1, 50: 1})


def x_quotient() -> EtaQuotient:
    """The unit quotient with x = 1 + 5y; constant term 1."""
    return EtaQuotient(10, {1: -5, 2: 5, 5: 1, 10: -1})


def y_quotient() -> EtaQuotient:
    """The hauptmodul-normalised quotient y = q + 3q^2 + ..."""
    return EtaQuotient(10, {1: -3, 2: 1, 5: -1, 10: 3})


def rho_quotient() -> EtaQuotient:
    """eta(2)^2 eta(5)^4 / (eta(1)^4 eta(10)^2); equals (4x+1)/5."""
    return EtaQuotient(10, {1: -4, 2: 2, 5: 4, 10: -2})


def t_quotient() -> EtaQuotient:
    """eta(5)^2 eta(10)^2 / (eta(1)^2 eta(2)^2); equals (-1/x - 3 + 4x)/25."""
    return EtaQuotient(10, {1: -2, 2: -2, 5: 2, 10: 2})


def hauptmodul() -> EtaQuotient:
    """eta(2) eta(5)^5 / (eta(1) eta(10)^5), a hauptmodul for Gamma_0(10)."""
    return EtaQuotient(10, {1: -1, 2: 1, 5: 5, 10: -5})


def w_quotient(i: int, l: int, m: int) -> EtaQuotient:
    """Z^(1-i) * y(tau)^l / y(5 tau)^m on level 50.

    These certify the power relations: their cusp orders pin the image of
    y^l under the twisted operators to a polynomial of degree m.
    """
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    w = (z_quotient() ** (1 - i)) * (y_quotient().at_level(50) ** l)
    return w * (y_quotient().dilate(5) ** -m)


def w_const_quotient(i: int) -> EtaQuotient:
    """Z^(1-i) * x(5 tau) / y(5 tau)^2 on level 50.

    Certifies the relation for the constant: (1+5y)*U(1) is a degree-2
    polynomial in y.
    """
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    w = (z_quotient() ** (1 - i)) * x_quotient().dilate(5)
    return w * (y_quotient().dilate(5) ** -2)


def w_witness_quotient() -> EtaQuotient:
    """Z * x(5 tau)^3 / y(5 tau)^5 on level 50, used by the witness
    identity for the first member of the family."""
    w = z_quotient() * (x_quotient().dilate(5) ** 3)
    return w * (y_quotient().dilate(5) ** -5)


#: Quotients exposed by name on the command line.
CATALOG = {
    "z": z_quotient,
    "x": x_quotient,
    "y": y_quotient,
    "rho": rho_quotient,
    "t": t_quotient,
    "h": hauptmodul,
    "wy": w_witness_quotient,
    "w0": lambda: w_const_quotient(0),
    "w1": lambda: w_const_quotient(1),
}


def lookup(name: str) -> EtaQuotient:
    """Resolve a CLI name; w_<i>_<l>_<m> addresses the power certificates."""
    if name in CATALOG:
        return CATALOG[name]()
    if name.startswith("w_"):
        parts = name.split("_")[1:]
        if len(parts) == 3 and all(p.lstrip("-").isdigit() for p in parts):
            return w_quotient(*map(int, parts))
    raise KeyError(f"unknown eta quotient {name!r}")
