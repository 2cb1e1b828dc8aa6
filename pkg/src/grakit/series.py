"""Truncated univariate power series with exact rational coefficients.

A Series of cutoff M stores coefficients c_0..c_M; all operations are
exact through order M and silently forget anything beyond it.  This is
enough for the genus-series identities: the square-root factors of the
Todd class, the A-hat series, and the even-part admissibility test.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class Series:
    __slots__ = ("cutoff", "coeffs")

    def __init__(self, cutoff, coeffs=()):
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        self.cutoff = cutoff
        cs = [Fraction(c) for c in coeffs[:cutoff + 1]]
        cs.extend([Fraction(0)] * (cutoff + 1 - len(cs)))
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(cutoff):
        return Series(cutoff)

    @staticmethod
    def one(cutoff):
        return Series(cutoff, (1,))

    @staticmethod
    def t(cutoff):
        return Series(cutoff, (0, 1))

    def __getitem__(self, n):
        return self.coeffs[n] if 0 <= n <= self.cutoff else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, Series) and self.coeffs == other.coeffs \
            and self.cutoff == other.cutoff

    def __hash__(self):
        return hash((self.cutoff, self.coeffs))

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = Series(self.cutoff, (other,))
        m = min(self.cutoff, other.cutoff)
        return m, other

    def __add__(self, other):
        m, other = self._common(other)
        return Series(m, [self[i] + other[i] for i in range(m + 1)])

    __radd__ = __add__

    def __neg__(self):
        return Series(self.cutoff, [-c for c in self.coeffs])

    def __sub__(self, other):
        m, other = self._common(other)
        return Series(m, [self[i] - other[i] for i in range(m + 1)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series(self.cutoff, [c * other for c in self.coeffs])
        m = min(self.cutoff, other.cutoff)
        out = [Fraction(0)] * (m + 1)
        for i, a in enumerate(self.coeffs[:m + 1]):
            if not a:
                continue
            for j in range(m + 1 - i):
                b = other[j]
                if b:
                    out[i + j] += a * b
        return Series(m, out)

    def __rmul__(self, other):
        return self * other

    def truncate(self, cutoff):
        return Series(min(cutoff, self.cutoff), self.coeffs)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def shift_down(self, k):
        """Divide by t^k; requires the first k coefficients to vanish.
        The cutoff drops by k."""
        if any(self.coeffs[i] != 0 for i in range(min(k, self.cutoff + 1))):
            raise ValueError("series not divisible by t^%d" % k)
        if self.cutoff < k:
            raise ValueError("cutoff too small for shift")
        return Series(self.cutoff - k, self.coeffs[k:])

    def even_part(self):
        return Series(self.cutoff,
                      [c if i % 2 == 0 else Fraction(0)
                       for i, c in enumerate(self.coeffs)])

    def substitute_neg(self):
        """s(-t)"""
        return Series(self.cutoff,
                      [c if i % 2 == 0 else -c
                       for i, c in enumerate(self.coeffs)])

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("%s*t" % c)
            else:
                parts.append("%s*t^%d" % (c, i))
        body = " + ".join(parts) if parts else "0"
        return "Series(%s + O(t^%d))" % (body, self.cutoff + 1)


def series_exp(s: Series) -> Series:
    """exp of a series with vanishing constant term."""
    if s[0] != 0:
        raise ValueError("exp needs constant term 0")
    m = s.cutoff
    out = Series.one(m)
    power = Series.one(m)
    for k in range(1, m + 1):
        power = power * s
        if power.is_zero():
            break
        out = out + power * Fraction(1, factorial(k))
    return out


def series_log(s: Series) -> Series:
    """log of a series with constant term 1."""
    if s[0] != 1:
        raise ValueError("log needs constant term 1")
    m = s.cutoff
    u = s - 1
    out = Series.zero(m)
    power = Series.one(m)
    for k in range(1, m + 1):
        power = power * u
        if power.is_zero():
            break
        out = out + power * Fraction((-1) ** (k + 1), k)
    return out


def series_sqrt(s: Series) -> Series:
    """Square root of a series with constant term 1 (branch with value 1)."""
    if s[0] != 1:
        raise ValueError("sqrt needs constant term 1")
    m = s.cutoff
    out = [Fraction(1)] + [Fraction(0)] * m
    # c_n solves 2*c_n = s_n - sum_{i=1}^{n-1} c_i c_{n-i}
    for n in range(1, m + 1):
        acc = s[n]
        for i in range(1, n):
            acc -= out[i] * out[n - i]
        out[n] = acc / 2
    return Series(m, out)


def series_recip(s: Series) -> Series:
    """1/s for invertible constant term."""
    if s[0] == 0:
        raise ValueError("reciprocal needs nonzero constant term")
    m = s.cutoff
    out = [1 / s[0]] + [Fraction(0)] * m
    for n in range(1, m + 1):
        acc = Fraction(0)
        for i in range(1, n + 1):
            acc += s[i] * out[n - i]
        out[n] = -acc / s[0]
    return Series(m, out)


def series_compose(s: Series, inner: Series) -> Series:
    """s(inner(t)) for inner with vanishing constant term."""
    if inner[0] != 0:
        raise ValueError("composition needs inner constant term 0")
    m = min(s.cutoff, inner.cutoff)
    out = Series(m, (s[0],))
    power = Series.one(m)
    for k in range(1, m + 1):
        power = power * inner
        if power.is_zero():
            break
        out = out + power * s[k]
    return out


def expm1_half(cutoff, half_sign=1):
    """(e^{±t/2} - 1) up to the cutoff."""
    coeffs = [Fraction(0)] * (cutoff + 1)
    for k in range(1, cutoff + 1):
        coeffs[k] = Fraction(half_sign, 2) ** k / factorial(k)
    return Series(cutoff, coeffs)


def a_hat_root(cutoff) -> Series:
    """q(t) = ( t / (e^{t/2} - e^{-t/2}) )^{1/2}, exact to the cutoff."""
    # e^{t/2} - e^{-t/2} = t * u(t) with u(0) = 1
    diff = expm1_half(cutoff + 1, 1) - expm1_half(cutoff + 1, -1)
    u = diff.shift_down(1)
    return series_sqrt(series_recip(u))


def todd_root(cutoff) -> Series:
    """q~(t) = ( t / (1 - e^{-t}) )^{1/2}, exact to the cutoff."""
    # 1 - e^{-t} = t * w(t) with w(0) = 1
    one_minus = -(expm1_half(cutoff + 1, -2))
    w = one_minus.shift_down(1)
    return series_sqrt(series_recip(w))
