"""Committed reference corpora and their (re)builders.

Three text tables live in the package data directory and are regenerated
only by the explicit ``corpus-rebuild`` command:

* ``oracle_corpus.txt``  — quadrature reference values of A, X, Y on a
  fixed (r, y, alpha) grid: columns r y alpha quantity re im error fingerprint.
* ``cerf_corpus.txt``    — multiprecision Faddeeva values: columns
  z_re z_im w_re w_im precision_digits.
* ``ipm_deviation.txt``  — measured deviation of the closed Re I-+ forms
  from quadrature over a/Omega: columns a_over_omega sign re_quad re_closed
  rel_deviation fingerprint.  The closed forms are a controlled expansion,
  so this is a recorded regression curve, not an asserted tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .params import OrbitPoint
from .oracle import Regulator, quad_a, quad_x, quad_y, quad_i_pm

__all__ = [
    "CorpusRow", "data_dir", "oracle_corpus_path", "cerf_corpus_path",
    "ipm_deviation_path", "read_oracle_corpus", "write_oracle_corpus",
    "build_oracle_corpus", "read_cerf_corpus", "build_cerf_corpus",
    "build_ipm_deviation", "read_ipm_deviation", "DEFAULT_GRID",
]

DEFAULT_GRID = tuple((r, y, a)
                     for a in (0.5, 1.0, 2.0)
                     for y in (0.5, 1.0, 1.5)
                     for r in (0.5, 1.0, 1.5))

_FMT = "%.17g"


def data_dir() -> Path:
    return Path(resources.files("orbit_entangle") / "data")


def oracle_corpus_path() -> Path:
    return data_dir() / "oracle_corpus.txt"


def cerf_corpus_path() -> Path:
    return data_dir() / "cerf_corpus.txt"


def ipm_deviation_path() -> Path:
    return data_dir() / "ipm_deviation.txt"


@dataclass(frozen=True)
class CorpusRow:
    r: float
    y: float
    alpha: float
    quantity: str  # 'A', 'X' or 'Y'
    re: float
    im: float
    error_estimate: float
    fingerprint: str


def build_oracle_corpus(grid=DEFAULT_GRID,
                        reg: Regulator = Regulator()) -> list[CorpusRow]:
    """Evaluate the quadrature oracle on the grid; slow, run explicitly."""
    rows = []
    fp = reg.fingerprint()
    for r, y, alpha in grid:
        pt = OrbitPoint(r=r, y=y, alpha=alpha)
        for name, func in (("A", quad_a), ("X", quad_x), ("Y", quad_y)):
            rep = func(pt, reg)
            v = complex(rep.eps_extrapolated)
            rows.append(CorpusRow(r=r, y=y, alpha=alpha, quantity=name,
                                  re=v.real, im=v.imag,
                                  error_estimate=rep.error_estimate,
                                  fingerprint=fp))
    return rows


def write_oracle_corpus(path, rows: list[CorpusRow]) -> None:
    lines = ["# r y alpha quantity re im error_estimate fingerprint"]
    for row in rows:
        lines.append(" ".join([
            _FMT % row.r, _FMT % row.y, _FMT % row.alpha, row.quantity,
            _FMT % row.re, _FMT % row.im, _FMT % row.error_estimate,
            row.fingerprint,
        ]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_oracle_corpus(path=None) -> list[CorpusRow]:
    path = oracle_corpus_path() if path is None else Path(path)
    rows = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        f = line.split()
        rows.append(CorpusRow(r=float(f[0]), y=float(f[1]), alpha=float(f[2]),
                              quantity=f[3], re=float(f[4]), im=float(f[5]),
                              error_estimate=float(f[6]), fingerprint=f[7]))
    return rows


# ---------------------------------------------------------------------------
# Faddeeva corpus

def _sample_cerf_points(n_points: int, seed: int) -> list[complex]:
    """Mixed-quadrant sample with |z| <= 50, avoiding double-overflow territory
    in the lower half plane and the zeros of w (where no relative target is
    meaningful)."""
    from scipy.special import wofz
    rng = np.random.default_rng(seed)
    pts: list[complex] = []
    while len(pts) < n_points:
        rad = 10.0 ** rng.uniform(-2, np.log10(50.0))
        ang = rng.uniform(0.0, 2.0 * np.pi)
        z = rad * complex(np.cos(ang), np.sin(ang))
        if z.imag < 0 and z.imag ** 2 - z.real ** 2 > 600.0:
            continue
        wv = complex(wofz(z))
        if not (math.isfinite(wv.real) and math.isfinite(wv.imag)):
            continue
        if abs(wv) < 1e-6:  # too near a zero of w
            continue
        pts.append(z)
    return pts


def build_cerf_corpus(n_points: int = 520, seed: int = 20240812,
                      dps: int = 25) -> list[tuple[complex, complex, int]]:
    """Multiprecision reference triples (z, w(z), digits); slow, run explicitly."""
    from .cerf_reference import w_reference
    out = []
    for z in _sample_cerf_points(n_points, seed):
        w = w_reference(z, dps=dps)
        out.append((z, complex(w.real, w.imag), dps))
    return out


def write_cerf_corpus(path, triples) -> None:
    lines = ["# z_re z_im w_re w_im precision_digits"]
    for z, w, dps in triples:
        lines.append(" ".join([_FMT % z.real, _FMT % z.imag,
                               _FMT % w.real, _FMT % w.imag, str(dps)]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_cerf_corpus(path=None) -> list[tuple[complex, complex, int]]:
    path = cerf_corpus_path() if path is None else Path(path)
    out = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        f = line.split()
        out.append((complex(float(f[0]), float(f[1])),
                    complex(float(f[2]), float(f[3])), int(f[4])))
    return out


# ---------------------------------------------------------------------------
# I+- deviation table

def build_ipm_deviation(a_over_omega=(0.5, 1.0, 2.0, 5.0, 10.0),
                        reg: Regulator = Regulator()) -> list[str]:
    """Quadrature vs closed Re I-+ across accelerations, at r=1, y=1 geometry."""
    from .dynamics import relaxation_profile
    lines = ["# a_over_omega sign re_quad re_closed rel_deviation fingerprint"]
    fp = reg.fingerprint()
    for ao in a_over_omega:
        # xi = 1 units: Omega = y, a = alpha; keep r = 1 and scale alpha
        y = 1.0
        alpha = ao * y
        pt = OrbitPoint(r=1.0, y=y, alpha=alpha)
        prof = relaxation_profile(omega_gap=y, accel=alpha, eta0=1.0, gamma=pt.gamma)
        om_lab = y / pt.gamma
        for sign, closed in ((+1, prof.re_i_plus), (-1, prof.re_i_minus)):
            rep = quad_i_pm(sign, om_lab, pt, reg)
            vq = complex(rep.eps_extrapolated).real
            rel = abs(vq - closed) / max(abs(vq), 1e-300)
            lines.append(" ".join([_FMT % ao, "%+d" % sign, _FMT % vq,
                                   _FMT % closed, _FMT % rel, fp]))
    return lines


def read_ipm_deviation(path=None) -> list[dict]:
    path = ipm_deviation_path() if path is None else Path(path)
    rows = []
    for line in path.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        f = line.split()
        rows.append({"a_over_omega": float(f[0]), "sign": int(f[1]),
                     "re_quad": float(f[2]), "re_closed": float(f[3]),
                     "rel_deviation": float(f[4]), "fingerprint": f[5]})
    return rows
