"""Closed-form second-order amplitudes of the orbiting detector pair.

A is the single-detector excitation probability and X the cross-detector
(vacuum entanglement) amplitude, both to second order in the coupling and
exact in the orbit, evaluated as finite pole sums over the canonical roots
from ``poles`` plus window and on-axis terms.  Results are quoted in units
of eta0^2 unless a coupling is supplied.

Numerical form: every exponential-times-erfc product is folded into the
scaled function erfcx (equivalently the Faddeeva function w), which is
bounded wherever the physics is, so the sums cannot overflow even deep in
the near-inertial regime where the raw factors exceed exp(10^7).  The
identities used:

    e^{-z_p^2 r/a} e^{-2 i z_p y s} erfc(-i z_p s + y) = e^{-y^2} erfcx(w_p + y),
    e^{-z_p^2 r/a} (1 + i erfi(z_p s))               = w(z_p s),
    e^{-x_0^2 r/a} (erfi(x_0 s) - i)                 = -i w(x_0 s),

with s = sqrt(r/alpha) and w_p = -i z_p s.

The nominally real pieces are assembled from each canonical pole and its
independently evaluated mirror partner -conj(z_p); the residual imaginary
part of that assembly is reported as ``imag_leak``, a cheap global health
metric, never silently dropped.

The entanglement criterion is |X| > A; ``region_scan`` evaluates it on
dense (r, y, alpha) grids with deterministic ordering.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

from scipy import special as _sp

from .params import OrbitPoint
from .poles import PoleSet, solve_a_poles, solve_x_poles, solve_y0, solve_x0

__all__ = [
    "AmplitudeResult", "RegionSample", "ScanRow", "AmplitudeRegimeError",
    "amplitude_a", "amplitude_x", "evaluate_amplitudes",
    "inertial_a", "inertial_x", "longtime_rate_a", "entangled", "region_scan",
]

SQRT_PI = math.sqrt(math.pi)
DEFAULT_K_MAX = 10
_EXP_GUARD = 700.0


class AmplitudeRegimeError(ArithmeticError):
    """A pole term overflowed; carries the offending pole index."""

    def __init__(self, message: str, pole_index: int | None = None):
        super().__init__(message)
        self.pole_index = pole_index


@dataclass(frozen=True)
class AmplitudeResult:
    """The pair (A, X) with truncation and arithmetic-health diagnostics.

    a_val         : transition probability A >= 0, in units of eta0^2
    x_val         : cross amplitude X (complex)
    k_used        : poles summed per branch
    tail_estimate : geometric bound on the truncated pole-sum remainder,
                    max over the A and |X| sums, in amplitude units
    imag_leak     : |Im| of the nominally real pair-assembled sums
    """

    a_val: float
    x_val: complex
    k_used: int
    tail_estimate: float
    imag_leak: float


@dataclass(frozen=True)
class RegionSample:
    """Entanglement verdict at one orbit point: entangled iff margin > 0."""

    point: OrbitPoint
    entangled: bool
    margin: float


@dataclass(frozen=True)
class ScanRow:
    """One grid point of a region scan; ``error`` flags an in-band failure."""

    point: OrbitPoint
    result: AmplitudeResult | None
    entangled: bool | None
    margin: float
    error: str | None = None


# ---------------------------------------------------------------------------
# stable building blocks

def _wofz(q: complex) -> complex:
    return complex(_sp.wofz(q))


def _gauss_scaled_erfcx(q: complex, y: float) -> complex:
    """exp(-y^2) * erfcx(q), stable for any q arising from canonical poles.

    For Re q >= 0 erfcx is bounded; otherwise the reflection
    erfcx(q) = 2 exp(q^2) - erfcx(-q) applies and the combined exponent
    Re(q^2) - y^2 is non-positive for the arguments q = w_p +- y produced
    by the pole sums, so the result never overflows.
    """
    if q.real >= 0.0:
        return math.exp(-y * y) * _wofz(complex(-q.imag, q.real))
    expo = q * q - y * y
    if expo.real > _EXP_GUARD:
        raise AmplitudeRegimeError(f"erfc-exponential product overflow at q={q!r}")
    return 2.0 * cmath.exp(expo) - math.exp(-y * y) * _wofz(complex(q.imag, -q.real))


def _denom_sin(z: complex) -> complex:
    # z (1 - z cot z) through sin/cos products; sin z is bounded away from 0
    # on the canonical root set
    return z * (cmath.sin(z) - z * cmath.cos(z)) / cmath.sin(z)


def _denom_cos(z: complex) -> complex:
    # z (1 + z tan z) = z (cos z + z sin z)/cos z
    return z * (cmath.cos(z) + z * cmath.sin(z)) / cmath.cos(z)


def _a_pole_term(z: complex, s: float, y: float) -> complex:
    w = -1j * z * s
    return (_gauss_scaled_erfcx(w + y, y) + _gauss_scaled_erfcx(w - y, y)) / _denom_sin(z)


def _x_pole_term(z: complex, s: float) -> complex:
    return _wofz(z * s) / _denom_cos(z)


def _pair_sum(terms: list[complex], mirror_terms: list[complex]) -> complex:
    """Sum of Im-extractions (t - t_mirror)/(2i); Re is the value, Im the leak."""
    total = 0j
    for t, tm in zip(terms, mirror_terms):
        total += (t - tm) / 2j
    return total


def _geometric_tail(magnitudes: list[float]) -> float:
    """Remainder bound from the decay of the last two pole contributions."""
    if len(magnitudes) < 2:
        return math.inf
    last, prev = magnitudes[-1], magnitudes[-2]
    if last == 0.0:
        return 0.0
    if prev == 0.0:
        return last
    ratio = min(last / prev, 0.95)
    return last * ratio / (1.0 - ratio)


# ---------------------------------------------------------------------------
# inertial closed forms (beta -> 0 limits, exact)

def inertial_a(r: float, y: float, eta0: float = 1.0) -> float:
    """A for detectors at rest: (eta0^2/4pi)(e^{-y^2} - sqrt(pi) y erfc(y))."""
    if not (r > 0 and y > 0):
        raise ValueError("r and y must be > 0")
    return eta0 ** 2 / (4.0 * math.pi) * (math.exp(-y * y) - SQRT_PI * y * _sp.erfc(y))


def inertial_x(r: float, y: float, eta0: float = 1.0) -> complex:
    """X for detectors at rest, separation 2r in window units.

    -(eta0^2/4 sqrt(pi)) (1/2r) e^{-r^2-y^2} (erfi(r) - i); the +i e^{-...}
    imaginary part is the timelike-ordering contribution.
    """
    if not (r > 0 and y > 0):
        raise ValueError("r and y must be > 0")
    pref = -eta0 ** 2 / (4.0 * SQRT_PI) / (2.0 * r) * math.exp(-r * r - y * y)
    return pref * complex(_sp.erfi(r), -1.0)


# ---------------------------------------------------------------------------
# pole-sum closed forms

def _amplitude_a_parts(pt: OrbitPoint, pole_set: PoleSet,
                       eta0: float) -> tuple[float, float, float]:
    """Returns (A, pole tail bound, imag leak)."""
    r, y, alpha = pt.r, pt.y, pt.alpha
    gamma_sq = pt.gamma_sq
    s = math.sqrt(r / alpha)
    sqa = math.sqrt(alpha / r)

    t_window = math.exp(-y * y) - SQRT_PI * y * _sp.erfc(y)

    y0 = pole_set.special.imag
    s0 = y0 * s
    # y0 coth y0 - 1 cancels badly for small y0; switch to its series
    if y0 < 1e-2:
        cothm1 = y0 * y0 / 3.0 * (1.0 - y0 * y0 / 15.0 * (1.0 - 2.0 * y0 * y0 / 21.0))
    else:
        cothm1 = y0 / math.tanh(y0) - 1.0
    denom0 = y0 * cothm1
    scaled0 = _gauss_scaled_erfcx(complex(s0 + y, 0.0), y).real \
        + _gauss_scaled_erfcx(complex(s0 - y, 0.0), y).real
    t_z0 = (SQRT_PI / (4.0 * gamma_sq)) * sqa * scaled0 / denom0

    pref_sum = (SQRT_PI / (2.0 * gamma_sq)) * sqa
    terms, mirrors, mags = [], [], []
    for idx, member in enumerate(pole_set.members):
        try:
            t = _a_pole_term(member.z, s, y)
            tm = _a_pole_term(-member.z.conjugate(), s, y)
        except AmplitudeRegimeError as exc:
            raise AmplitudeRegimeError(str(exc), pole_index=idx) from exc
        terms.append(t)
        mirrors.append(tm)
        mags.append(abs(t) * pref_sum)
    assembled = _pair_sum(terms, mirrors)
    t_sum = pref_sum * assembled.real
    leak = pref_sum * abs(assembled.imag)

    unit = eta0 ** 2 / (4.0 * math.pi)
    a_val = unit * (t_window + t_z0 + t_sum)
    return a_val, unit * _geometric_tail(mags), unit * leak


def _amplitude_x_parts(pt: OrbitPoint, pole_set: PoleSet,
                       eta0: float) -> tuple[complex, float, float]:
    """Returns (X, pole tail bound, imag leak)."""
    r, y, alpha = pt.r, pt.y, pt.alpha
    gamma_sq = pt.gamma_sq
    s = math.sqrt(r / alpha)
    sqa = math.sqrt(alpha / r)

    x0 = pole_set.special.real
    t_x0 = -1j * _wofz(complex(x0 * s, 0.0)) / (2.0 * x0 * (1.0 + x0 * math.tan(x0)))

    terms, mirrors, mags = [], [], []
    for idx, member in enumerate(pole_set.members):
        try:
            t = _x_pole_term(member.z, s)
            tm = _x_pole_term(-member.z.conjugate(), s)
        except AmplitudeRegimeError as exc:
            raise AmplitudeRegimeError(str(exc), pole_index=idx) from exc
        terms.append(t)
        mirrors.append(tm)
        mags.append(abs(t))
    assembled = _pair_sum(terms, mirrors)

    pref = -(eta0 ** 2 / (4.0 * SQRT_PI)) / gamma_sq * sqa * math.exp(-y * y)
    x_val = pref * (t_x0 + assembled.real)
    scale = abs(pref)
    return x_val, scale * _geometric_tail(mags), scale * abs(assembled.imag)


def evaluate_amplitudes(pt: OrbitPoint, k_max: int = DEFAULT_K_MAX,
                        eta0: float = 1.0, tol: float | None = None,
                        _max_k: int = 60) -> AmplitudeResult:
    """Evaluate A and X together, sharing the pole solves.

    With ``tol`` set, the pole sums are deepened beyond ``k_max`` until the
    geometric tail bound drops below tol relative to each amplitude (or the
    internal cap is hit).  alpha = 0 dispatches to the exact inertial forms.
    """
    if pt.alpha == 0.0:
        return AmplitudeResult(a_val=inertial_a(pt.r, pt.y, eta0),
                               x_val=inertial_x(pt.r, pt.y, eta0),
                               k_used=0, tail_estimate=0.0, imag_leak=0.0)
    beta = pt.beta
    k = k_max
    while True:
        a_set = solve_a_poles(beta, k)
        x_set = solve_x_poles(beta, k)
        a_val, tail_a, leak_a = _amplitude_a_parts(pt, a_set, eta0)
        x_val, tail_x, leak_x = _amplitude_x_parts(pt, x_set, eta0)
        tail = max(tail_a, tail_x)
        if tol is None or k >= _max_k:
            break
        if tail_a <= tol * max(abs(a_val), 1e-300) and \
           tail_x <= tol * max(abs(x_val), 1e-300):
            break
        k = min(k + 5, _max_k)
    return AmplitudeResult(a_val=a_val, x_val=x_val, k_used=k,
                           tail_estimate=tail, imag_leak=max(leak_a, leak_x))


def amplitude_a(pt: OrbitPoint, k_max: int = DEFAULT_K_MAX,
                eta0: float = 1.0) -> float:
    """Single-detector transition probability A at an orbit point."""
    if pt.alpha == 0.0:
        return inertial_a(pt.r, pt.y, eta0)
    a_val, _, _ = _amplitude_a_parts(pt, solve_a_poles(pt.beta, k_max), eta0)
    return a_val

def amplitude_x(pt: OrbitPoint, k_max: int = DEFAULT_K_MAX,
                eta0: float = 1.0) -> complex:
    """Cross-detector vacuum amplitude X at an orbit point."""
    if pt.alpha == 0.0:
        return inertial_x(pt.r, pt.y, eta0)
    x_val, _, _ = _amplitude_x_parts(pt, solve_x_poles(pt.beta, k_max), eta0)
    return x_val


def longtime_rate_a(omega_gap: float, accel: float, eta0: float = 1.0) -> float:
    """Excitation probability per unit time in the wide-window limit.

    Equals eta0^2 a e^{-sqrt(12) Omega/a} / (8 sqrt(3) pi): the limit of
    A/(sqrt(pi) xi) as xi grows at fixed R and a, normalized by the
    effective window duration sqrt(pi) xi.  The closed constant holds in
    the ultrarelativistic regime gamma >> 1.
    """
    if accel <= 0:
        raise ValueError("accel must be > 0 (the rate vanishes identically at 0)")
    if omega_gap < 0:
        raise ValueError("omega_gap must be >= 0")
    return (eta0 ** 2 * accel / (8.0 * math.sqrt(3.0) * math.pi)
            * math.exp(-math.sqrt(12.0) * omega_gap / accel))


# ---------------------------------------------------------------------------
# entanglement region

def entangled(pt: OrbitPoint, k_max: int = DEFAULT_K_MAX,
              eta0: float = 1.0) -> RegionSample:
    """Entanglement verdict |X| > A at one point; margin = |X| - A."""
    res = evaluate_amplitudes(pt, k_max=k_max, eta0=eta0)
    margin = abs(res.x_val) - res.a_val
    return RegionSample(point=pt, entangled=margin > 0.0, margin=margin)


def _scan_one(args) -> ScanRow:
    r, y, alpha, k_max, eta0 = args
    pt = OrbitPoint(r=r, y=y, alpha=alpha)
    try:
        res = evaluate_amplitudes(pt, k_max=k_max, eta0=eta0)
    except Exception as exc:  # failures stay in-band, the scan continues
        return ScanRow(point=pt, result=None, entangled=None,
                       margin=math.nan, error=f"{type(exc).__name__}: {exc}")
    margin = abs(res.x_val) - res.a_val
    return ScanRow(point=pt, result=res, entangled=margin > 0.0, margin=margin)


def _max_workers() -> int:
    raw = os.environ.get("ORBIT_ENTANGLE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def region_scan(r_values, y_values, alpha_values, k_max: int = DEFAULT_K_MAX,
                eta0: float = 1.0) -> list[ScanRow]:
    """Dense scan of the entanglement criterion over a 3-axis grid.

    Ordering is deterministic and row-major with r fastest (then y, then
    alpha).  Point evaluations are independent; the ORBIT_ENTANGLE_THREADS
    environment variable caps process fan-out (default 1, serial).
    Single-point failures are recorded in-band and the scan continues.
    """
    r_values = [float(v) for v in r_values]
    y_values = [float(v) for v in y_values]
    alpha_values = [float(v) for v in alpha_values]
    if not (r_values and y_values and alpha_values):
        raise ValueError("all three grid axes must be non-empty")
    jobs = [(r, y, a, k_max, eta0)
            for a in alpha_values for y in y_values for r in r_values]
    workers = _max_workers()
    if workers == 1:
        return [_scan_one(job) for job in jobs]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_scan_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
