"""Roots of the transcendental pole equations z = +-beta sin z and z = +-beta cos z.

These are the zeros of the denominators of the orbit correlation functions,
written in the scaled variable z = omega*dt/2.  Each trigonometric kind
carries two sign branches; the full zero set is symmetric under negation
and conjugation, so only canonical representatives with Re z < 0 < Im z are
stored, plus one distinguished on-axis root per kind:

* sin kind: z0 = i*y0 on the positive imaginary axis, where y0 solves
  y = beta*sinh(y);
* cos kind: the real positive root x0 of x = beta*cos(x).

Enumeration strategy: the large-|z| asymptotics place the k-th branch root
in a known window Re z ~ -(2 pi k + phase) with Im z ~ log(2|z|/beta);
those seeds are polished by complex Newton iteration and verified to
residual <= 1e-12, with a dense rectangular grid scan as fallback when
seeding misses.  Duplicate roots within 1e-8 are a hard error (they signal
bad seeding and would double-count in the pole sums).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "PoleSolverError", "PoleFamily", "PoleMember", "PoleSet",
    "y0_approx", "x0_approx", "solve_y0", "solve_x0",
    "solve_a_poles", "solve_x_poles",
]

RESIDUAL_TOL = 1e-12
DEDUP_TOL = 1e-8
DEFAULT_K_MAX = 10


class PoleSolverError(RuntimeError):
    """A root search failed to converge or produced duplicates."""


@dataclass(frozen=True)
class PoleFamily:
    """One sign branch of one trigonometric kind at fixed beta."""

    kind: str     # 'A' -> sin equations, 'X' -> cos equations
    branch: int   # 1: z = +beta trig z, 2: z = -beta trig z
    beta: float

    def __post_init__(self):
        if self.kind not in ("A", "X"):
            raise ValueError("kind must be 'A' or 'X'")
        if self.branch not in (1, 2):
            raise ValueError("branch must be 1 or 2")
        if not (0.0 < self.beta < 1.0):
            raise ValueError(f"beta must lie strictly in (0,1), got {self.beta!r}")

    @property
    def sign(self) -> int:
        return +1 if self.branch == 1 else -1

    def equation(self, z: complex) -> complex:
        """Residual z - (+-beta trig z); zero at a pole."""
        if self.kind == "A":
            return z - self.sign * self.beta * cmath.sin(z)
        return z - self.sign * self.beta * cmath.cos(z)

    def derivative(self, z: complex) -> complex:
        if self.kind == "A":
            return 1.0 - self.sign * self.beta * cmath.cos(z)
        return 1.0 + self.sign * self.beta * cmath.sin(z)

    def seed_centers(self, count: int) -> list[float]:
        """Real parts of the asymptotic root windows, nearest first."""
        if self.kind == "A":
            if self.branch == 1:
                return [-2 * math.pi * m - math.pi / 4 for m in range(1, count + 1)]
            return [-2 * math.pi * m - 5 * math.pi / 4 for m in range(count)]
        if self.branch == 1:
            return [-2 * math.pi * m - 3 * math.pi / 4 for m in range(count)]
        return [-2 * math.pi * (m + 1) + math.pi / 4 for m in range(count)]


@dataclass(frozen=True)
class PoleMember:
    branch: int
    k: int
    z: complex
    residual: float


@dataclass(frozen=True)
class PoleSet:
    """Canonical pole enumeration for one kind at one beta.

    ``members`` merges both branches sorted by distance from the origin
    (strictly increasing); ``k`` counts within each branch.  ``special``
    is i*y0 for the sin kind and x0 for the cos kind; ``special_order``
    records the contour multiplicity bookkeeping of the kind's
    distinguished structure (2 for sin, 1 for cos).  ``degenerate`` marks
    the exact beta = 0 case, which has no poles at all: callers must use
    the inertial closed forms instead.
    """

    kind: str
    beta: float
    special: complex
    special_order: int
    members: tuple[PoleMember, ...]
    residuals: float
    degenerate: bool = False

    @classmethod
    def degenerate_set(cls, kind: str) -> "PoleSet":
        return cls(kind=kind, beta=0.0, special=0j, special_order=0,
                   members=(), residuals=0.0, degenerate=True)

    def branch_members(self, branch: int) -> list[PoleMember]:
        return [m for m in self.members if m.branch == branch]


# ---------------------------------------------------------------------------
# special roots

def y0_approx(beta: float) -> float:
    """Closed approximation y0 ~ sqrt(6(1/beta - 1)); seed value only.

    Good in the relativistic regime beta -> 1; degrades toward small beta.
    """
    if not (0.0 < beta <= 1.0):
        raise ValueError("beta must lie in (0,1]")
    return math.sqrt(6.0 * (1.0 / beta - 1.0))


def x0_approx(beta: float) -> float:
    """Closed approximation x0 ~ -1/beta + sqrt(1/beta^2 + 2); seed value only."""
    if not (0.0 < beta <= 1.0):
        raise ValueError("beta must lie in (0,1]")
    return -1.0 / beta + math.sqrt(beta ** -2 + 2.0)


def solve_y0(beta: float) -> float:
    """Positive root of y = beta*sinh(y) (the on-axis sin-kind pole i*y0).

    Bracketed by w = arccosh(1/beta): the root always exceeds w and stays
    below sqrt(3)*w (the bound saturates as beta -> 1), so [0.9w, 2*sqrt(3)w]
    is a safe bisection bracket for all beta in (0,1).
    """
    if not (0.0 < beta < 1.0):
        raise ValueError(f"beta must lie strictly in (0,1), got {beta!r}")
    w = math.acosh(1.0 / beta)
    f = lambda y: beta * math.sinh(y) - y
    y0 = brentq(f, 0.9 * w, 2.0 * math.sqrt(3.0) * w, xtol=1e-15, rtol=8.9e-16)
    # Newton polish
    for _ in range(4):
        step = f(y0) / (beta * math.cosh(y0) - 1.0)
        y0 -= step
        if abs(step) < 1e-16 * y0:
            break
    return y0


def solve_x0(beta: float) -> float:
    """Root of x = beta*cos(x) in (0, beta] (the real cos-kind pole x0)."""
    if not (0.0 < beta < 1.0):
        raise ValueError(f"beta must lie strictly in (0,1), got {beta!r}")
    f = lambda x: x - beta * math.cos(x)
    x0 = brentq(f, 0.0, beta, xtol=1e-15, rtol=8.9e-16)
    for _ in range(4):
        step = f(x0) / (1.0 + beta * math.sin(x0))
        x0 -= step
        if abs(step) < 1e-16 * max(x0, 1e-30):
            break
    return x0


# ---------------------------------------------------------------------------
# branch roots

def _newton(family: PoleFamily, z: complex, tol: float = 1e-14,
            maxit: int = 80) -> complex | None:
    for _ in range(maxit):
        fz = family.equation(z)
        if abs(fz) < tol:
            return z
        dz = family.derivative(z)
        if dz == 0:
            return None
        z = z - fz / dz
    return z if abs(family.equation(z)) < RESIDUAL_TOL else None


def _seed_imag(beta: float, x: float) -> float:
    v = math.log(2.0 * (abs(x) + 1.0) / beta)
    for _ in range(6):
        v = math.log(2.0 * math.hypot(x, v) / beta)
    return v


def _canonical(z: complex) -> bool:
    return z.real < -1e-9 and z.imag > 1e-9


def _solve_branch_seeded(family: PoleFamily, k_max: int) -> list[complex]:
    roots: list[complex] = []
    for xc in family.seed_centers(k_max + 3):
        z0 = complex(xc, _seed_imag(family.beta, xc))
        z = _newton(family, z0)
        if z is None or not _canonical(z):
            continue
        if abs(family.equation(z)) > RESIDUAL_TOL:
            continue
        if any(abs(z - r) < DEDUP_TOL for r in roots):
            raise PoleSolverError(
                f"duplicate root {z!r} from seed {z0!r} "
                f"(kind={family.kind}, branch={family.branch}, beta={family.beta})")
        roots.append(z)
    roots.sort(key=abs)
    return roots[:k_max]


def _solve_branch_gridscan(family: PoleFamily, k_max: int) -> list[complex]:
    beta = family.beta
    xmax = 2.0 * math.pi * (k_max + 2)
    vmax = max(math.log(4.0 * (xmax + 2.0) / beta), 3.0) + 3.0
    xs = np.linspace(-xmax, -1e-3, max(int(xmax / 0.3), 60))
    vs = np.linspace(0.05, vmax, max(int(vmax / 0.15), 40))
    Z = xs[None, :] + 1j * vs[:, None]
    if family.kind == "A":
        F = np.abs(Z - family.sign * beta * np.sin(Z))
    else:
        F = np.abs(Z - family.sign * beta * np.cos(Z))
    inner = F[1:-1, 1:-1]
    minima = ((inner < F[:-2, 1:-1]) & (inner < F[2:, 1:-1])
              & (inner < F[1:-1, :-2]) & (inner < F[1:-1, 2:]))
    roots: list[complex] = []
    for i, j in zip(*np.nonzero(minima)):
        z = _newton(family, complex(Z[i + 1, j + 1]))
        if z is None or not _canonical(z) or abs(family.equation(z)) > RESIDUAL_TOL:
            continue
        if all(abs(z - r) > DEDUP_TOL for r in roots):
            roots.append(z)
    roots.sort(key=abs)
    return roots[:k_max]


def _solve_branch(family: PoleFamily, k_max: int) -> list[complex]:
    roots = _solve_branch_seeded(family, k_max)
    if len(roots) < k_max:
        roots = _solve_branch_gridscan(family, k_max)
    if len(roots) < k_max:
        raise PoleSolverError(
            f"found only {len(roots)}/{k_max} roots for kind={family.kind} "
            f"branch={family.branch} beta={family.beta}")
    return roots


def _solve_kind(kind: str, beta: float, k_max: int) -> PoleSet:
    if not (0.0 < beta < 1.0):
        raise ValueError(f"beta must lie strictly in (0,1), got {beta!r}")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    members: list[PoleMember] = []
    for branch in (1, 2):
        family = PoleFamily(kind=kind, branch=branch, beta=beta)
        for k, z in enumerate(_solve_branch(family, k_max), start=1):
            members.append(PoleMember(branch=branch, k=k, z=z,
                                      residual=abs(family.equation(z))))
    members.sort(key=lambda m: abs(m.z))
    for a, b in zip(members, members[1:]):
        if abs(a.z - b.z) < DEDUP_TOL:
            raise PoleSolverError(f"cross-branch duplicate at {a.z!r}")
    if kind == "A":
        special, order = complex(0.0, solve_y0(beta)), 2
    else:
        special, order = complex(solve_x0(beta), 0.0), 1
    return PoleSet(kind=kind, beta=beta, special=special, special_order=order,
                   members=tuple(members),
                   residuals=max((m.residual for m in members), default=0.0))


def solve_a_poles(beta: float, k_max: int = DEFAULT_K_MAX) -> PoleSet:
    """Enumerate the sin-kind poles: i*y0 plus k_max canonical roots per branch."""
    return _solve_kind("A", beta, k_max)


def solve_x_poles(beta: float, k_max: int = DEFAULT_K_MAX) -> PoleSet:
    """Enumerate the cos-kind poles: x0 plus k_max canonical roots per branch."""
    return _solve_kind("X", beta, k_max)
