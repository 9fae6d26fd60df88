"""Slow multiprecision reference values for the Faddeeva function.

This is the regression oracle for the fast kernel in ``cerf``: an
independent evaluation of w(z) = exp(-z^2) erfc(-iz) built from first
principles on top of mpmath big-float arithmetic (mpmath is used only as
the number type; the algorithms live here).

Three routes, cross-checked against each other and against published
erf(1)/erfc(1) digits:

* Maclaurin series of erf for |z| <= 8, with working precision scaled to
  absorb the exp(|z|^2)-sized cancellation,
* the Laplace continued fraction of w for |z| > 8 in the upper half plane,
* direct mpmath quadrature of w(z) = (i/pi) Int e^{-t^2}/(z-t) dt as a
  third opinion for spot checks.

Values are produced once, written to a text corpus, and committed; tests
only read the table.
"""

from __future__ import annotations

import math

from mpmath import mp, mpc, mpf, exp as mp_exp, sqrt as mp_sqrt, pi as mp_pi

__all__ = [
    "erf_series", "w_reference", "w_quadrature",
    "ERF_1_DIGITS", "ERFC_1_DIGITS", "ERFI_1_DIGITS",
]

# published reference digits (Abramowitz & Stegun table anchors)
ERF_1_DIGITS = "0.84270079294971486934122063508261"
ERFC_1_DIGITS = "0.15729920705028513065877936491739"
ERFI_1_DIGITS = "1.6504257587975428760253377295495"

_SERIES_RADIUS = 8.0


def erf_series(q, dps: int):
    """erf(q) by its Maclaurin series, summed until terms fall below 10^-dps.

    The series alternates and its largest term is ~exp(|q|^2), so the
    working precision must cover that dynamic range on top of the target.
    """
    guard = int(abs(complex(q)) ** 2 * 0.4343) + 25
    with mp.workdps(dps + guard):
        q = mpc(q)
        q2 = q * q
        term = q
        total = q
        n = 0
        tol = mpf(10) ** (-(dps + 10))
        while True:
            n += 1
            term = term * (-q2) / n
            contrib = term / (2 * n + 1)
            total += contrib
            if abs(contrib) < tol * max(abs(total), mpf(1)) and n > 4:
                break
            if n > 200000:
                raise RuntimeError("erf series failed to converge")
        return total * 2 / mp_sqrt(mp_pi)


def _w_upper_series(z, dps: int):
    # w(z) = e^{-z^2} (1 - erf(-i z))
    with mp.workdps(dps + 15):
        z = mpc(z)
        return mp_exp(-z * z) * (1 - erf_series(-1j * z, dps + 10))


def _w_continued_fraction(z, dps: int, terms: int | None = None):
    """Laplace continued fraction, valid in the upper half plane at large |z|.

    w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...))))
    """
    if terms is None:
        terms = 40 + int(6 * dps / max(abs(complex(z)), 1.0))
    with mp.workdps(dps + 15):
        z = mpc(z)
        tail = mpc(0)
        for n in range(terms, 0, -1):
            tail = (mpf(n) / 2) / (z - tail)
        return (1j / mp_sqrt(mp_pi)) / (z - tail)


def w_reference(z, dps: int = 25):
    """Reference w(z) accurate to ~dps digits; returns an mpmath complex."""
    with mp.workdps(dps + 15):
        z = mpc(z)
        if z.imag < 0:
            # reflection w(z) = 2 exp(-z^2) - w(-z)
            return 2 * mp_exp(-z * z) - w_reference(-z, dps + 5)
        if abs(z) <= _SERIES_RADIUS:
            return _w_upper_series(z, dps)
        if z.imag == 0:
            # real axis: Re w = e^{-x^2} exactly, Im w = e^{-x^2} erfi(x);
            # the erfi series has positive terms only (no cancellation)
            x = z.real
            e = mp_exp(-x * x)
            return mpc(e, e * _erfi_series_real(x, dps))
        val1 = _w_continued_fraction(z, dps)
        val2 = _w_continued_fraction(z, dps, terms=60 + int(8 * dps / abs(complex(z))))
        if abs(val1 - val2) > mpf(10) ** (-dps) * abs(val1):
            raise RuntimeError(f"continued fraction not converged at z={complex(z)}")
        return val1


def _erfi_series_real(x, dps: int):
    guard = int(abs(x) ** 2 * 0.4343) + 20
    with mp.workdps(dps + guard):
        x = mpf(x)
        x2 = x * x
        term = x
        total = x
        n = 0
        tol = mpf(10) ** (-(dps + 10))
        while True:
            n += 1
            term = term * x2 / n
            contrib = term / (2 * n + 1)
            total += contrib
            if contrib < tol * total and n > 4:
                break
            if n > 200000:
                raise RuntimeError("erfi series failed to converge")
        return total * 2 / mp_sqrt(mp_pi)


def w_quadrature(z, dps: int = 20):
    """Third route: w(z) = (i/pi) Int_-inf^inf e^{-t^2}/(z - t) dt, Im z > 0."""
    with mp.workdps(dps + 10):
        z = mpc(z)
        if z.imag <= 0:
            raise ValueError("quadrature route requires Im z > 0")
        f = lambda t: mp_exp(-t * t) / (z - t)
        val = mp.quad(f, [-mp.inf, mp.inf])
        return 1j * val / mp_pi
