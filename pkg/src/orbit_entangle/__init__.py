"""Vacuum entanglement of two qubit detectors on a shared circular orbit.

Natural units hbar = c = 1 throughout; the metric signature is (+,-,-,-).
All dimensionful interfaces carry exactly one free unit (the window width
xi, or pure dimensionless mode via OrbitPoint).
"""

from .params import (
    PhysicalParams,
    FrameQuantities,
    OrbitPoint,
    Worldline,
    derive_orbit_point,
    to_lab_frame,
    separation_squared,
    worldlines,
    physical_from_orbit,
)
from .poles import PoleSet, solve_a_poles, solve_x_poles, y0_approx, x0_approx
from .amplitudes import (
    AmplitudeResult,
    RegionSample,
    amplitude_a,
    amplitude_x,
    evaluate_amplitudes,
    inertial_a,
    inertial_x,
    longtime_rate_a,
    entangled,
    region_scan,
)
from .oracle import Regulator, QuadratureReport, quad_a, quad_x, quad_y, quad_i_pm
from .dynamics import (
    RelaxationProfile,
    BlochTensor,
    TwoQubitState,
    relaxation_profile,
    bloch_solution,
    density_at,
    lindblad_integrate,
    concurrence_general,
    concurrence_closed,
    esd_time,
    equilibrium_state,
)

__version__ = "0.1.0"

__all__ = [
    "PhysicalParams", "FrameQuantities", "OrbitPoint", "Worldline",
    "derive_orbit_point", "to_lab_frame", "separation_squared", "worldlines",
    "physical_from_orbit",
    "PoleSet", "solve_a_poles", "solve_x_poles", "y0_approx", "x0_approx",
    "AmplitudeResult", "RegionSample", "amplitude_a", "amplitude_x",
    "evaluate_amplitudes", "inertial_a", "inertial_x", "longtime_rate_a",
    "entangled", "region_scan",
    "Regulator", "QuadratureReport", "quad_a", "quad_x", "quad_y", "quad_i_pm",
    "RelaxationProfile", "BlochTensor", "TwoQubitState", "relaxation_profile",
    "bloch_solution", "density_at", "lindblad_integrate", "concurrence_general",
    "concurrence_closed", "esd_time", "equilibrium_state",
]
