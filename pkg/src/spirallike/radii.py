"""Radius computations: bisection on the boundary maximum, and the closed-form starlikeness radius.

The subordination radius R1 is the supremum of circle radii at which the
boundary maximum :func:`spirallike.subordination.psi` stays below 1; since
that maximum is increasing in r (and equals 1/2 at r = 0), plain bisection
with a near-boundary cutoff suffices.  The starlikeness radius R2 is the
explicit value 2 / sqrt(4 + 2*sqrt(3)*|sin(2*lam)|), minimal over all tilts
at lam = +-pi/4 where it equals sqrt(3) - 1.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import Angle, p_lambda_inverse
from .subordination import psi

__all__ = [
    "RadiusReport",
    "min_radius_r2",
    "omega_avoidance_margin",
    "radius_r1",
    "radius_r2",
    "radius_table",
    "worker_count",
]

SQRT3 = float(np.sqrt(3.0))


def worker_count(n_tasks: int) -> int:
    """Worker cap from SPIRALLIKE_THREADS: unset -> 1, 0 -> auto, n -> at most n."""
    raw = os.environ.get("SPIRALLIKE_THREADS", "").strip()
    if not raw:
        return 1
    cap = int(raw)
    if cap < 0:
        raise ValueError(f"SPIRALLIKE_THREADS must be >= 0, got {raw!r}")
    if cap == 0:
        cap = os.cpu_count() or 1
    return max(1, min(cap, n_tasks))


@dataclass(frozen=True)
class RadiusReport:
    """A computed radius plus the bracketing certificate that produced it."""

    lam: float
    value: float
    bracket_lo: float
    bracket_hi: float
    iterations: int
    tol: float
    kind: Literal["R1", "R2"]

    def __post_init__(self) -> None:
        if not self.bracket_lo <= self.value <= self.bracket_hi:
            raise ValueError("radius must lie inside its bracket")
        if not 0.0 < self.value <= 1.0:
            raise ValueError(f"radius must lie in (0, 1], got {self.value!r}")

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": self.lam,
            "value": self.value,
            "bracket_lo": self.bracket_lo,
            "bracket_hi": self.bracket_hi,
            "iterations": self.iterations,
            "tol": self.tol,
        }


def radius_r1(a: Angle, tol: float = 1e-10, grid_n: int = 2048) -> RadiusReport:
    """Largest certified radius of subordination to the half-plane map.

    Bisects the increasing boundary maximum psi against the level 1.  The
    inner maximization runs at refine_tol = tol/100 so the outer bisection is
    not noise-limited.  If psi is still below 1 at r = 1 - tol the radius is
    reported as 1 with bracket [1 - tol, 1]: psi can be evaluated stably only
    strictly inside the disc, so no extrapolation to the boundary is attempted.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    refine_tol = tol / 100.0
    hi = 1.0 - tol
    if psi(a, hi, grid_n, refine_tol).value < 1.0:
        return RadiusReport(
            lam=a.lam, value=1.0, bracket_lo=hi, bracket_hi=1.0, iterations=0, tol=tol, kind="R1"
        )
    lo = 0.0  # psi(a, 0) = 1/2 < 1 always
    iterations = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        iterations += 1
        if psi(a, mid, grid_n, refine_tol).value < 1.0:
            lo = mid
        else:
            hi = mid
    return RadiusReport(
        lam=a.lam,
        value=0.5 * (lo + hi),
        bracket_lo=lo,
        bracket_hi=hi,
        iterations=iterations,
        tol=tol,
        kind="R1",
    )


def radius_r2(a: Angle) -> RadiusReport:
    """Starlikeness radius 2 / sqrt(4 + 2*sqrt(3)*|sin(2*lam)|), exact closed form."""
    value = 2.0 / float(np.sqrt(4.0 + 2.0 * SQRT3 * abs(np.sin(2.0 * a.lam))))
    return RadiusReport(
        lam=a.lam, value=value, bracket_lo=value, bracket_hi=value, iterations=0, tol=0.0, kind="R2"
    )


def min_radius_r2() -> tuple[float, float]:
    """The tilt minimizing the starlikeness radius and the minimal value, (pi/4, sqrt(3)-1)."""
    return (np.pi / 4.0, SQRT3 - 1.0)


def omega_avoidance_margin(a: Angle, t_grid: Sequence[float] | np.ndarray) -> float:
    """Slack of the far-imaginary-axis avoidance bound underlying the starlikeness radius.

    For each t with |t| >= sqrt(3), the preimage of i*t under the half-plane
    map has modulus at least R2(lam); this returns the minimum over the grid
    of (that modulus - R2).  The analytic minimum is 0, attained at
    t = sign(sin(2*lam)) * sqrt(3) (for lam = 0 the modulus is identically 1
    and the slack is 0 at every grid point).
    """
    t = np.asarray(t_grid, dtype=float)
    if t.size == 0:
        raise ValueError("t_grid must be nonempty")
    if np.min(np.abs(t)) < SQRT3 * (1.0 - 1e-12):
        raise ValueError("every grid value must satisfy |t| >= sqrt(3)")
    moduli = np.abs(p_lambda_inverse(a, 1j * t))
    return float(moduli.min() - radius_r2(a).value)


def radius_table(
    lambda_grid: Sequence[Angle], tol: float = 1e-10
) -> list[tuple[float, float, float]]:
    """Rows (lam, R1, R2) in grid order; rows are independent and may run on a thread pool."""
    angles = list(lambda_grid)
    if not angles:
        raise ValueError("lambda grid must be nonempty")

    def row(a: Angle) -> tuple[float, float, float]:
        return (a.lam, radius_r1(a, tol).value, radius_r2(a).value)

    workers = worker_count(len(angles))
    if workers == 1:
        return [row(a) for a in angles]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(row, angles))
