"""Power-series solution of  chi y'' + e y' + m y = 0.

The equation has a regular singular point at chi = 0; the exponent-zero
Frobenius branch y = sum a_n chi^n with a_0 = 1 has an infinite radius of
convergence, so the partial sums evaluate the solution on the whole line.
Coefficients come from both the one-step recurrence and the closed product
formula; tests pin their agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class FuchsError(ValueError):
    pass


_MAX_TERMS = 400
_TAIL_REL = 1e-16


def _check_e(e: float) -> None:
    # the recurrence divides by e, e+1, e+2, ...
    if e <= 0 and abs(e - round(e)) < 1e-12:
        raise FuchsError(
            "exponent parameter e = %r hits the recurrence poles {0, -1, -2, ...}" % e
        )


def coefficients_recurrence(e, m, n_max: int):
    """a_0..a_n_max from a_n = -m a_{n-1} / (n (e + n - 1))."""
    _check_e(float(e))
    exact = isinstance(e, Fraction) and isinstance(m, Fraction)
    a = Fraction(1) if exact else 1.0
    out = [a]
    for n in range(1, n_max + 1):
        a = -m * a / (n * (e + n - 1))
        out.append(a)
    return out


def coefficient_closed(e, m, n: int):
    """a_n = (-m)^n / (n! * e (e+1) ... (e+n-1))."""
    _check_e(float(e))
    if n == 0:
        return Fraction(1) if isinstance(e, Fraction) else 1.0
    if isinstance(e, Fraction) and isinstance(m, Fraction):
        poch = Fraction(1)
        for k in range(n):
            poch *= e + k
        return (-m) ** n / (Fraction(math.factorial(n)) * poch)
    poch = 1.0
    for k in range(n):
        poch *= e + k
    return (-float(m)) ** n / (math.factorial(n) * poch)


@dataclass(frozen=True)
class FuchsSeries:
    e: float
    m: float
    coefficients: tuple
    truncation: int
    tail_bound: float

    def __call__(self, chi: float) -> float:
        return self.eval(chi)[0]

    def eval(self, chi: float):
        """(y, y', y'') at chi by term-wise differentiation."""
        y = ypr = ypp = 0.0
        power = 1.0  # chi^n
        prev_power = 0.0  # chi^(n-1)
        prev2 = 0.0
        for n, a in enumerate(self.coefficients):
            y += a * power
            if n >= 1:
                ypr += n * a * prev_power
            if n >= 2:
                ypp += n * (n - 1) * a * prev2
            prev2 = prev_power
            prev_power = power
            power *= chi
        return y, ypr, ypp


def fuchs_series(e: float, m: float, chi_max: float) -> FuchsSeries:
    """Series truncated so the dropped tail is negligible for |chi| <=
    chi_max (both the value and the second-derivative sums)."""
    e = float(e)
    m = float(m)
    _check_e(e)
    coeffs = [1.0]
    a = 1.0
    scaled = 1.0  # |a_n| r^n, tracked incrementally to dodge overflow
    n = 1
    r = max(abs(chi_max), 1.0)
    while True:
        a = -m * a / (n * (e + n - 1))
        scaled *= abs(m) * r / (n * abs(e + n - 1))
        coeffs.append(a)
        # n^2 |a_n| r^n bounds the differentiated term sums too
        if n > 4 and n * n * scaled < _TAIL_REL:
            break
        n += 1
        if n > _MAX_TERMS:
            raise FuchsError(
                "series did not meet the tail bound within %d terms (|chi| <= %r)"
                % (_MAX_TERMS, chi_max)
            )
    tail = (n + 1) ** 2 * scaled
    return FuchsSeries(e, m, tuple(coeffs), len(coeffs) - 1, tail)


def fuchs_solution(e: float, m: float, chi: float) -> float:
    return fuchs_series(e, m, abs(chi))(chi)


def ode_residual(series: FuchsSeries, chi: float) -> float:
    y, ypr, ypp = series.eval(chi)
    return chi * ypp + series.e * ypr + series.m * y


def zero_bracket(series: FuchsSeries, lo: float, hi: float, samples: int = 256):
    """Sign-change bracket of the series on [lo, hi], or None if none is
    seen at the sampling resolution."""
    step = (hi - lo) / samples
    prev_x = lo
    prev_y = series(lo)
    for k in range(1, samples + 1):
        x = lo + k * step
        yv = series(x)
        if prev_y == 0.0 or (prev_y < 0) != (yv < 0):
            return (prev_x, x)
        prev_x, prev_y = x, yv
    return None
