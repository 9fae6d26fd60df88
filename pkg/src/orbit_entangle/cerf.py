"""Scalar kernel for the complex error-function family.

Public surface: the Faddeeva function w(z) = exp(-z^2) erfc(-iz) plus the
erfc, erfi and scaled-erfc (erfcx) variants at complex argument.  The fast
path delegates to scipy's Faddeeva implementation; this module owns input
validation, explicit overflow signaling (the pole sums must detect
overflow, never propagate Inf), and exact conjugation symmetry, and is
regression-tested against the independent multiprecision oracle in
``cerf_reference``.

Accuracy target: relative error <= 1e-12 against the oracle corpus for
|z| <= 50 away from zeros of w.
"""

from __future__ import annotations

import cmath
import math

from scipy import special as _sp

__all__ = [
    "CerfOverflowError", "faddeeva", "erfc_complex", "erfi_complex",
    "erfcx_complex",
]

# |exp(u)| overflows double precision past ~709.78
_EXP_OVERFLOW = 705.0


class CerfOverflowError(OverflowError):
    """Result exceeds double-precision range; raised instead of returning Inf."""


def _checked(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"argument must have finite components, got {z!r}")
    return z


def _finite_or_raise(value: complex, z: complex, name: str) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise CerfOverflowError(f"{name}({z!r}) exceeds representable range")
    return value


def faddeeva(z) -> complex:
    """w(z) = exp(-z^2) erfc(-iz).

    Bounded on the closed upper half plane; grows like 2 exp(-z^2) below
    the real axis, where overflow is signaled.  Satisfies
    w(-conj(z)) = conj(w(z)) exactly by construction.
    """
    z = _checked(z)
    if z.real < 0:
        return _finite_or_raise(complex(_sp.wofz(complex(-z.real, z.imag))).conjugate(),
                                z, "faddeeva")
    if z.imag < 0 and z.imag * z.imag - z.real * z.real > _EXP_OVERFLOW:
        raise CerfOverflowError(f"faddeeva({z!r}) exceeds representable range")
    return _finite_or_raise(complex(_sp.wofz(z)), z, "faddeeva")


def erfcx_complex(z) -> complex:
    """Scaled complementary error function erfcx(z) = exp(z^2) erfc(z) = w(iz)."""
    z = _checked(z)
    return _finite_or_raise(faddeeva(complex(-z.imag, z.real)), z, "erfcx")


def erfc_complex(z) -> complex:
    """erfc(z) = exp(-z^2) w(iz); agrees with the real erfc on the real axis.

    Conjugation symmetry erfc(conj(z)) = conj(erfc(z)) holds exactly and
    erfc(z) + erfc(-z) = 2 holds to an ulp through the reflection branch.
    """
    z = _checked(z)
    if z.imag == 0.0:
        return complex(_sp.erfc(z.real))
    if z.imag < 0:
        return erfc_complex(z.conjugate()).conjugate()
    if z.real < 0:
        val = erfc_complex(-z)
        return complex(2.0 - val.real, -val.imag)
    # first quadrant: |w(iz)| <= 1, growth only through exp(-z^2)
    if z.imag * z.imag - z.real * z.real > _EXP_OVERFLOW:
        raise CerfOverflowError(f"erfc({z!r}) exceeds representable range")
    val = cmath.exp(-z * z) * faddeeva(complex(-z.imag, z.real))
    return _finite_or_raise(val, z, "erfc")


def erfi_complex(z) -> complex:
    """erfi(z) = -i erf(iz); odd, purely real on the real axis.

    Grows like exp(z^2)/(z sqrt(pi)) for large real |z|, where overflow is
    signaled rather than saturated.
    """
    z = _checked(z)
    if z.imag == 0.0:
        if z.real * z.real > _EXP_OVERFLOW:
            raise CerfOverflowError(f"erfi({z!r}) exceeds representable range")
        return complex(_sp.erfi(z.real))
    if z.real == 0.0:
        return complex(0.0, float(_sp.erf(z.imag)))
    # erfi(z) = -i (1 - erfc(iz)); route through erfc for its guards
    iz = complex(-z.imag, z.real)
    val = 1.0 - erfc_complex(iz)
    return _finite_or_raise(complex(val.imag, -val.real), z, "erfi")
