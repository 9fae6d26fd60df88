"""Physical and dimensionless parameterization of the two-detector orbit.

Two pointlike two-level detectors ride diametrically opposite points of a
circle of radius R at angular frequency omega.  Everything here is pure
kinematics: the instantaneous-rest-frame (IRF) quantities, their images in
the inertial frame at the center of rotation, the dimensionless triple
(r, y, alpha) that the amplitude formulas consume, and the worldlines.

Conventions: hbar = c = 1, metric diag(+,-,-,-).  The proper centripetal
acceleration a, speed beta and radius are tied by R = gamma^2 beta^2 / a
and omega = a / (gamma^2 beta); a = 0 is the exact inertial case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PhysicalParams", "FrameQuantities", "OrbitPoint", "Worldline",
    "derive_orbit_point", "to_lab_frame", "separation_squared", "worldlines",
    "physical_from_orbit", "parse_param_block",
]


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """IRF parameters of one detector pair.

    omega_gap : energy splitting Omega of each detector (1/time)
    coupling  : Gaussian window amplitude eta0 (dimensionless)
    window    : window width xi (time); the switching is eta0*exp(-tau^2/2 xi^2)
    radius    : orbit radius R (length)
    accel     : proper centripetal acceleration a (1/time); a = 0 is inertial
    """

    omega_gap: float
    coupling: float
    window: float
    radius: float
    accel: float = 0.0

    def __post_init__(self):
        _require_positive("omega_gap", self.omega_gap)
        _require_positive("coupling", self.coupling)
        _require_positive("window", self.window)
        _require_positive("radius", self.radius)
        if not (math.isfinite(self.accel) and self.accel >= 0):
            raise ValueError(f"accel must be finite and >= 0, got {self.accel!r}")
        if self.beta >= 1.0:
            raise ValueError("parameters imply beta >= 1")

    @property
    def gamma_sq(self) -> float:
        return self.accel * self.radius + 1.0

    @property
    def gamma(self) -> float:
        return math.sqrt(self.gamma_sq)

    @property
    def beta(self) -> float:
        aR = self.accel * self.radius
        return math.sqrt(aR / (aR + 1.0))

    @property
    def angular_freq(self) -> float:
        """Orbital angular frequency omega = a/(gamma^2 beta); 0 when inertial."""
        if self.accel == 0.0:
            return 0.0
        return self.accel / (self.gamma_sq * self.beta)


@dataclass(frozen=True)
class FrameQuantities:
    """IRF quantities rescaled to the inertial center-of-rotation frame.

    The four primed scalings are Omega' = Omega/gamma, eta' = eta/gamma,
    xi' = gamma*xi, a' = a/gamma.  Note that a' is dv/dtau (the change of
    coordinate velocity per unit comoving proper time) and NOT the
    coordinate acceleration dv/dt = R omega^2 = a/gamma^2, which is exposed
    separately as ``accel_coordinate``.
    """

    omega_gap_lab: float
    coupling_lab: float
    window_lab: float
    accel_lab: float
    gamma: float
    beta: float
    accel_coordinate: float = field(default=0.0)


@dataclass(frozen=True)
class OrbitPoint:
    """One configuration in dimensionless form: r = R/xi, y = Omega*xi, alpha = a*xi."""

    r: float
    y: float
    alpha: float

    def __post_init__(self):
        _require_positive("r", self.r)
        _require_positive("y", self.y)
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha!r}")

    @property
    def gamma_sq(self) -> float:
        """gamma^2 = r*alpha + 1, exactly as stored."""
        return self.r * self.alpha + 1.0

    @property
    def gamma(self) -> float:
        return math.sqrt(self.gamma_sq)

    @property
    def beta(self) -> float:
        """Orbital speed; 0 exactly when alpha = 0."""
        if self.alpha == 0.0:
            return 0.0
        return (1.0 + 1.0 / (self.r * self.alpha)) ** -0.5

    @property
    def angular(self) -> float:
        """Dimensionless angular frequency omega*xi = alpha/(gamma^2 beta)."""
        if self.alpha == 0.0:
            return 0.0
        return self.alpha / (self.gamma_sq * self.beta)

    @property
    def is_inertial(self) -> bool:
        return self.alpha == 0.0


@dataclass(frozen=True)
class Worldline:
    """Helical worldline of one detector in the center-of-rotation frame.

    Position at coordinate time t is (t, s*R*cos(omega t), s*R*sin(omega t), 0)
    with s = +1 for detector A and s = -1 for detector B.
    """

    detector_id: str
    radius: float
    angular: float
    sign: int

    def __post_init__(self):
        if self.detector_id not in ("A", "B"):
            raise ValueError("detector_id must be 'A' or 'B'")
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")

    def position(self, t: float) -> np.ndarray:
        s = self.sign
        return np.array([
            t,
            s * self.radius * math.cos(self.angular * t),
            s * self.radius * math.sin(self.angular * t),
            0.0,
        ])


def derive_orbit_point(p: PhysicalParams) -> OrbitPoint:
    """Map physical parameters to the dimensionless triple (r, y, alpha)."""
    return OrbitPoint(r=p.radius / p.window, y=p.omega_gap * p.window,
                      alpha=p.accel * p.window)


def to_lab_frame(p: PhysicalParams) -> FrameQuantities:
    """Apply the four gamma-scalings from the IRF to the inertial frame."""
    g = p.gamma
    return FrameQuantities(
        omega_gap_lab=p.omega_gap / g,
        coupling_lab=p.coupling / g,
        window_lab=g * p.window,
        accel_lab=p.accel / g,
        gamma=g,
        beta=p.beta,
        accel_coordinate=p.accel / p.gamma_sq,
    )


def worldlines(p: PhysicalParams) -> tuple[Worldline, Worldline]:
    """The two diametrically opposed worldlines sharing R and omega."""
    w = p.angular_freq
    return (Worldline("A", p.radius, w, +1), Worldline("B", p.radius, w, -1))


def separation_squared(line_a: Worldline, line_b: Worldline,
                       t: float, t_prime: float) -> float:
    """Minkowski interval (x_a(t) - x_b(t'))^2 with signature (+,-,-,-).

    For the cross pair this reduces to (t-t')^2 - (2R)^2 cos^2(omega(t-t')/2)
    and for a detector against itself to the sin^2 analogue.
    """
    if not (line_a.radius == line_b.radius and line_a.angular == line_b.angular):
        raise ValueError("worldlines must share radius and angular frequency")
    d = line_a.position(t) - line_b.position(t_prime)
    return float(d[0] ** 2 - d[1] ** 2 - d[2] ** 2 - d[3] ** 2)


def physical_from_orbit(pt: OrbitPoint, xi: float = 1.0,
                        eta0: float = 1.0) -> PhysicalParams:
    """Reconstruct physical parameters from (r, y, alpha) at a chosen window xi."""
    _require_positive("xi", xi)
    return PhysicalParams(omega_gap=pt.y / xi, coupling=eta0, window=xi,
                          radius=pt.r * xi, accel=pt.alpha / xi)


_DIMENSIONLESS_KEYS = {"r", "y", "alpha"}
_PHYSICAL_KEYS = {"omega", "eta0", "xi", "radius", "accel"}


def parse_param_block(block: dict) -> tuple[OrbitPoint, float]:
    """Parse a {r, y, alpha} or {omega, eta0, xi, radius, accel} mapping.

    Exactly one of the two groups must be present.  Returns the orbit point
    and the coupling eta0 (1.0 in dimensionless mode, where results are in
    units of eta0^2).
    """
    keys = set(block)
    has_dimless = bool(keys & _DIMENSIONLESS_KEYS)
    has_physical = bool(keys & _PHYSICAL_KEYS)
    if has_dimless and has_physical:
        raise ValueError("give either {r, y, alpha} or "
                         "{omega, eta0, xi, radius, accel}, not a mixture")
    if has_dimless:
        missing = _DIMENSIONLESS_KEYS - keys
        if missing:
            raise ValueError(f"missing dimensionless parameters: {sorted(missing)}")
        pt = OrbitPoint(float(block["r"]), float(block["y"]), float(block["alpha"]))
        return pt, 1.0
    if has_physical:
        missing = _PHYSICAL_KEYS - keys
        if missing:
            raise ValueError(f"missing physical parameters: {sorted(missing)}")
        p = PhysicalParams(omega_gap=float(block["omega"]),
                           coupling=float(block["eta0"]),
                           window=float(block["xi"]),
                           radius=float(block["radius"]),
                           accel=float(block["accel"]))
        return derive_orbit_point(p), p.coupling
    raise ValueError("parameter block is empty; expected {r, y, alpha} or "
                     "{omega, eta0, xi, radius, accel}")
