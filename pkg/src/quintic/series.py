"""Exact truncated Laurent series in q with integer coefficients.

Every object tracks an explicit truncation order (``precision``): the series
is known modulo O(q^precision).  All arithmetic propagates precision
pessimistically, coefficients are arbitrary-precision Python ints, and every
division performed anywhere in the package (by a unit leading coefficient,
by 24, by powers of 5) is asserted exact.  Inexact division is a detected
failure, never a rounding.
"""

from __future__ import annotations

import math
from operator import sub


class SeriesError(Exception):
    pass


class PrecisionError(SeriesError):
    """A coefficient at or beyond the declared truncation was requested."""


class NonUnitLeading(SeriesError):
    """Inversion requires the leading coefficient to be +1 or -1."""


class FractionalPrefactor(SeriesError):
    """Eta-quotient exponents whose weighted sum is not divisible by 24."""


class InexactDivision(SeriesError):
    """A coefficientwise division that was required to be exact is not."""


# Dense integer polynomial multiplication.  Above this size the schoolbook
# pair loop is replaced by Kronecker substitution (pack the coefficients
# into one big integer, multiply, unpack), which rides on CPython's fast
# bignum arithmetic.  Correctness of the packed path is pinned against the
# schoolbook path by property tests.
_KRONECKER_CUTOFF = 4096


def _mul_schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _mul_kronecker(a, b):
    amax = max(map(abs, a))
    bmax = max(map(abs, b))
    # Balanced digits: every convolution coefficient is < 2^(bits-1) in
    # absolute value, so packing with headroom H = 2^(bits-1) keeps the
    # plain base-2^bits digits carry-free.
    bound = amax * bmax * min(len(a), len(b))
    bits = ((bound.bit_length() + 9) // 8 + 1) * 8
    words = len(a) + len(b) - 1
    packed_a = sum(ai << (bits * i) for i, ai in enumerate(a) if ai)
    packed_b = sum(bj << (bits * j) for j, bj in enumerate(b) if bj)
    half = 1 << (bits - 1)
    offset = sum(half << (bits * k) for k in range(words))
    raw = (packed_a * packed_b + offset).to_bytes(words * bits // 8, "little")
    step = bits // 8
    return [
        int.from_bytes(raw[k * step:(k + 1) * step], "little") - half
        for k in range(words)
    ]


def _mul_dense(a, b):
    if len(a) * len(b) >= _KRONECKER_CUTOFF:
        return _mul_kronecker(a, b)
    return _mul_schoolbook(a, b)


class QSeries:
    """A truncated integer Laurent series: sum of c_n q^n known mod O(q^P).

    ``offset`` is the exponent of the lowest stored term (may be negative),
    ``coeffs`` the stored coefficients for exponents offset, offset+1, ...,
    and ``precision`` the truncation order P.  Normalisation trims leading
    and trailing zeros; the zero series is stored with empty coeffs and
    offset == precision.
    """

    __slots__ = ("offset", "coeffs", "precision")

    def __init__(self, offset: int, coeffs, precision: int):
        coeffs = list(coeffs)
        if coeffs and offset + len(coeffs) > precision:
            raise PrecisionError(
                f"{len(coeffs)} coefficients at offset {offset} exceed "
                f"declared precision {precision}"
            )
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            offset = precision
            coeffs = []
        else:
            offset += lo
            coeffs = coeffs[lo:hi]
        if coeffs and precision <= offset:
            raise PrecisionError("precision must exceed the leading exponent")
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, precision: int) -> "QSeries":
        return cls(precision, [], precision)

    @classmethod
    def one(cls, precision: int) -> "QSeries":
        return cls.monomial(0, precision)

    @classmethod
    def monomial(cls, n: int, precision: int, coeff: int = 1) -> "QSeries":
        return cls(n, [coeff], precision)

    @classmethod
    def from_coeffs(cls, coeffs, precision: int | None = None,
                    offset: int = 0) -> "QSeries":
        if precision is None:
            precision = offset + len(coeffs)
        return cls(offset, coeffs, precision)

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self) -> int:
        """Exponent of the lowest nonzero term (= precision for the zero
        series, the pessimistic convention used by precision tracking)."""
        return self.offset

    def __getitem__(self, n: int) -> int:
        if n >= self.precision:
            raise PrecisionError(
                f"coefficient of q^{n} requested but series is only known "
                f"mod O(q^{self.precision})"
            )
        if n < self.offset or n >= self.offset + len(self.coeffs):
            return 0
        return self.coeffs[n - self.offset]

    def nonzero_items(self):
        off = self.offset
        return [(off + k, c) for k, c in enumerate(self.coeffs) if c]

    def coefficients(self, start: int, stop: int):
        """Dense coefficient list for exponents start..stop-1."""
        return [self[n] for n in range(start, stop)]

    def matches(self, other: "QSeries", upto: int | None = None) -> bool:
        """Coefficientwise agreement on the common known range."""
        limit = min(self.precision, other.precision)
        if upto is not None:
            limit = min(limit, upto)
        lo = min(self.offset, other.offset)
        return all(self[n] == other[n] for n in range(min(lo, limit), limit))

    def assert_matches(self, other: "QSeries", upto: int | None = None,
                       what: str = "series"):
        limit = min(self.precision, other.precision)
        if upto is not None:
            limit = min(limit, upto)
        lo = min(self.offset, other.offset, limit)
        for n in range(lo, limit):
            if self[n] != other[n]:
                raise SeriesError(
                    f"{what}: mismatch at q^{n}: {self[n]} != {other[n]}"
                )

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.offset == other.offset and self.coeffs == other.coeffs
                and self.precision == other.precision)

    def __hash__(self):
        return hash((self.offset, self.coeffs, self.precision))

    def __repr__(self):
        terms = []
        for n, c in self.nonzero_items()[:6]:
            terms.append(f"{c}*q^{n}" if n else f"{c}")
        if len(self.coeffs) > 6:
            terms.append("...")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.precision}))"

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = QSeries.monomial(0, self.precision, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        precision = min(self.precision, other.precision)
        if self.is_zero():
            return other.truncate(precision)
        if other.is_zero():
            return self.truncate(precision)
        lo = min(self.offset, other.offset)
        hi = min(max(self.offset + len(self.coeffs),
                     other.offset + len(other.coeffs)), precision)
        out = [0] * (hi - lo)
        for n, c in self.nonzero_items():
            if n < hi:
                out[n - lo] = c
        for n, c in other.nonzero_items():
            if n < hi:
                out[n - lo] += c
        return QSeries(lo, out, precision)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.offset, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        if isinstance(other, int):
            other = QSeries.monomial(0, self.precision, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "QSeries":
        if c == 0:
            return QSeries.zero(self.precision)
        return QSeries(self.offset, [c * a for a in self.coeffs],
                       self.precision)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        precision = min(self.precision + other.order(),
                        other.precision + self.order())
        if self.is_zero() or other.is_zero():
            return QSeries.zero(precision)
        lo = self.offset + other.offset
        na = min(len(self.coeffs), precision - lo)
        nb = min(len(other.coeffs), precision - lo)
        prod = _mul_dense(list(self.coeffs[:na]), list(other.coeffs[:nb]))
        return QSeries(lo, prod[:precision - lo], precision)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def truncate(self, precision: int) -> "QSeries":
        """Forget coefficients at or beyond the given order."""
        if precision > self.precision:
            raise PrecisionError(
                f"cannot raise precision {self.precision} to {precision}"
            )
        if precision == self.precision:
            return self
        keep = max(0, min(len(self.coeffs), precision - self.offset))
        return QSeries(self.offset, self.coeffs[:keep], precision)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k exactly."""
        return QSeries(self.offset + k, self.coeffs, self.precision + k)

    def exact_div(self, c: int) -> "QSeries":
        """Divide every coefficient by the integer c, which must be exact."""
        out = []
        for a in self.coeffs:
            d, r = divmod(a, c)
            if r:
                raise InexactDivision(
                    f"coefficient {a} is not divisible by {c}"
                )
            out.append(d)
        return QSeries(self.offset, out, self.precision)

    # -- inversion and powers -------------------------------------------

    def invert_unit(self) -> "QSeries":
        """Inverse of a series whose leading coefficient is +1 or -1.

        The result has offset -offset(f) and precision P - 2*offset(f);
        back-substitution iterates only over the nonzero coefficients of
        f, so inverting a sparse series costs O(P * nnz).
        """
        return QSeries.one(self.precision - self.order()).div_unit(self)

    def div_unit(self, den: "QSeries") -> "QSeries":
        """self / den for den with leading coefficient +-1 (exact integer
        quotient, solved by back-substitution against den's nonzeros)."""
        if den.is_zero():
            raise NonUnitLeading("cannot divide by the zero series")
        lead = den.coeffs[0]
        if lead not in (1, -1):
            raise NonUnitLeading(
                f"leading coefficient {lead} is not +1 or -1"
            )
        d_off = den.offset
        tail = [(n - d_off, c) for n, c in den.nonzero_items()[1:]]
        precision = min(self.precision, den.precision - d_off + self.order()) - d_off
        lo = self.offset - d_off
        size = precision - lo
        if size <= 0 or self.is_zero():
            return QSeries.zero(precision)
        out = [0] * size
        for k in range(size):
            acc = self[k + lo + d_off]
            for j, c in tail:
                if j > k:
                    break
                acc -= c * out[k - j]
            out[k] = acc if lead == 1 else -acc
        return QSeries(lo, out, precision)

    def pow_int(self, e: int) -> "QSeries":
        """Integer power, binary exponentiation; e < 0 via invert_unit."""
        if e == 0:
            return QSeries.one(self.precision - self.order())
        base = self if e > 0 else self.invert_unit()
        e = abs(e)
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    __pow__ = pow_int

    # -- operators from the underlying theory -----------------------------

    def dilate(self, k: int) -> "QSeries":
        """Substitute q -> q^k (k >= 1); offset and precision multiply."""
        if k < 1:
            raise ValueError("dilation step must be a positive integer")
        if k == 1:
            return self
        out = [0] * (len(self.coeffs) * k - k + 1) if self.coeffs else []
        for j, c in enumerate(self.coeffs):
            out[j * k] = c
        return QSeries(self.offset * k, out, self.precision * k)

    def u5(self) -> "QSeries":
        """Pick every coefficient with index divisible by 5:
        sum a(m) q^m  ->  sum a(5m) q^m."""
        precision = -(-self.precision // 5)
        lo = -(-self.offset // 5)
        out = []
        for m in range(lo, precision):
            n = 5 * m
            out.append(self[n] if n < self.precision else 0)
        return QSeries(lo, out, precision)


# -- product constructions ---------------------------------------------


def qpochhammer(delta: int, precision: int) -> QSeries:
    """prod_{m>=1} (1 - q^{delta m}) to O(q^precision).

    One audited code path: repeated sparse multiplication by the binomials
    (1 - q^{delta m}), each an O(P) shift-and-subtract pass.
    """
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    if precision < 1:
        raise PrecisionError("precision must be at least 1")
    c = [0] * precision
    c[0] = 1
    for m in range(delta, precision, delta):
        c[m:] = list(map(sub, c[m:], c))
    return QSeries(0, c, precision)


def eta_product(level: int, exps: dict, precision: int) -> QSeries:
    """Exact expansion of prod_{delta | N} eta(delta tau)^{r_delta}.

    Includes the prefactor q^(sum delta*r_delta / 24), which must be an
    integer exponent; raises FractionalPrefactor otherwise.
    """
    for delta in exps:
        if level % delta:
            raise ValueError(f"divisor {delta} does not divide level {level}")
    weighted = sum(d * r for d, r in exps.items())
    if weighted % 24:
        raise FractionalPrefactor(
            f"sum of delta*r_delta is {weighted}, not divisible by 24"
        )
    shift = weighted // 24
    rel = precision - shift
    if rel < 1:
        raise PrecisionError(
            f"precision {precision} does not reach the leading term q^{shift}"
        )
    acc = QSeries.one(rel)
    for delta in sorted(exps):
        r = exps[delta]
        if r:
            acc = acc * qpochhammer(delta, rel).pow_int(r)
    return acc.truncate(rel).shift(shift)


def e2_series(precision: int) -> QSeries:
    """Weight-2 Eisenstein series 1 - 24 sum sigma_1(n) q^n, sigma_1 by
    divisor sieve."""
    sigma = [0] * precision
    for d in range(1, precision):
        for n in range(d, precision, d):
            sigma[n] += d
    coeffs = [-24 * s for s in sigma]
    if precision > 0:
        coeffs[0] = 1
    return QSeries(0, coeffs, precision)
