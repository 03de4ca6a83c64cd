"""Numerical subordination checks: boundary maxima, half-plane margins, winding tests.

The quantity at the heart of the restricted-disc subordination radius is

    psi(lam, r) = max_{|z| = r} |p_lambda_inverse(lam, q_lambda(lam, z))| / r,

the maximal modulus of the Schwarz-type pullback on a circle.  It is smooth
in the boundary angle, increasing in r, and crosses 1 exactly at the radius
where subordination to the half-plane map stops being certified.  The
maximum is located by a dense grid scan followed by golden-section
refinement of every bracketed local maximum; pure local search is unsafe
because the maxima can be nearly flat.

Region membership for image-domain subordination is decided by the winding
number of a sampled closed curve, with nonzero winding counted as inside
(the image domain is not assumed simply covered).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .core import Angle, PoleError, f_lambda_zero_radius, p_lambda_inverse, q_lambda
from .samples import RobertsonSample, q_values

__all__ = [
    "BoundaryCurve",
    "CURVE_OFFSET",
    "IndeterminateRegionError",
    "PsiValue",
    "SubordinationVerdict",
    "check_q_subordination",
    "containment_curve_radius",
    "curve_containment",
    "is_subordinate_to_halfplane",
    "psi",
    "q_image_curve",
    "region_membership",
    "subordination_test_curve",
]

# Offset 1 - radius of the near-boundary image curve approximating the full
# image domain; balances domain truncation against blow-up near the boundary
# preimage of infinity at z = 1.
CURVE_OFFSET = 1e-3

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class IndeterminateRegionError(ValueError):
    """A queried point lies on or too close to the region's boundary curve."""


class PsiValue(NamedTuple):
    value: float
    witness_theta: float


@dataclass(frozen=True)
class SubordinationVerdict:
    """Outcome of a numerical subordination test.

    margin is a signed distance to failure (positive means the relation
    holds); witness_theta is the boundary angle of the extremal point.
    """

    holds: bool
    witness_theta: float
    margin: float


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """A closed curve sampled at strictly increasing angles covering [0, 2*pi)."""

    thetas: np.ndarray
    values: np.ndarray
    closed: bool = True

    def __post_init__(self) -> None:
        th = np.array(self.thetas, dtype=float, ndmin=1)
        vals = np.array(self.values, dtype=complex, ndmin=1)
        if th.shape != vals.shape or th.size < 3:
            raise ValueError("curve needs matching theta/value arrays with >= 3 samples")
        if th[0] < 0.0 or th[-1] >= 2.0 * np.pi or np.any(np.diff(th) <= 0.0):
            raise ValueError("curve angles must be strictly increasing within [0, 2*pi)")
        th.flags.writeable = False
        vals.flags.writeable = False
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "values", vals)


def q_image_curve(a: Angle, radius: float, n: int) -> BoundaryCurve:
    """Image of the circle |z| = radius under q_lambda, as a closed curve."""
    thetas = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    return BoundaryCurve(thetas=thetas, values=q_lambda(a, radius * np.exp(1j * thetas)))


def _golden_max(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi] to bracket width <= tol."""
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = f(d)
        else:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = f(c)
    return (c, fc) if fc >= fd else (d, fd)


def psi(a: Angle, r: float, grid_n: int = 2048, refine_tol: float = 1e-12) -> PsiValue:
    """Boundary maximum of the normalized pullback modulus at circle radius r.

    Scans grid_n equispaced angles, then golden-section refines every local
    maximum bracket down to width refine_tol.  r = 0 returns the analytic
    limit 1/2 (the pullback behaves like (e^{2i*lam}/2) z / e^{2i*lam} near 0,
    for every tilt).  If the pullback hits the pole of the inverse map at
    some grid angle the value is +inf: subordination is impossible at this r.
    Among value-ties within refine_tol the smallest witness angle is reported.
    """
    if grid_n < 64:
        raise ValueError(f"grid_n must be >= 64, got {grid_n}")
    if refine_tol <= 0:
        raise ValueError(f"refine_tol must be positive, got {refine_tol!r}")
    if not 0.0 <= r < 1.0:
        raise ValueError(f"r must satisfy 0 <= r < 1, got {r!r}")
    if r == 0.0:
        return PsiValue(0.5, 0.0)

    def pullback(theta: float) -> float:
        w = q_lambda(a, r * np.exp(1j * theta))
        try:
            return float(np.abs(p_lambda_inverse(a, w))) / r
        except PoleError:
            return np.inf

    thetas = np.linspace(0.0, 2.0 * np.pi, grid_n, endpoint=False)
    w_grid = np.asarray(q_lambda(a, r * np.exp(1j * thetas)))
    denom = w_grid + a.rotation
    vals = np.full(thetas.shape, np.inf)
    nz = denom != 0
    vals[nz] = np.abs((w_grid[nz] - 1.0) / denom[nz]) / r
    if not np.all(np.isfinite(vals)):
        return PsiValue(float("inf"), float(thetas[np.nonzero(~np.isfinite(vals))[0][0]]))

    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    peaks = np.nonzero((vals >= left) & (vals >= right))[0]
    step = 2.0 * np.pi / grid_n
    candidates = [(float(vals[i]), float(thetas[i])) for i in peaks]
    for i in peaks:
        theta, value = _golden_max(pullback, thetas[i] - step, thetas[i] + step, refine_tol)
        candidates.append((value, theta % (2.0 * np.pi)))
    best = max(v for v, _ in candidates)
    witness = min(t for v, t in candidates if v >= best - refine_tol)
    return PsiValue(best, witness)


def is_subordinate_to_halfplane(
    values: Sequence[complex] | np.ndarray, a: Angle, thetas: np.ndarray | None = None
) -> SubordinationVerdict:
    """Verdict for subordination to the tilted half-plane map.

    For functions with value 1 at 0, mapping into Re(e^{-i*lam} w) > 0 is
    equivalent to subordination to the half-plane map, so the margin is
    simply the minimum of Re(e^{-i*lam} value) over the sampled circle.
    When sample angles are not given they are assumed equispaced from 0.
    """
    vals = np.asarray(values, dtype=complex)
    if vals.size == 0:
        raise ValueError("need at least one sampled value")
    if thetas is None:
        thetas = np.linspace(0.0, 2.0 * np.pi, vals.size, endpoint=False)
    tilted = (np.exp(-1j * a.lam) * vals).real
    k = int(np.argmin(tilted))
    return SubordinationVerdict(
        holds=bool(tilted[k] > 0.0), witness_theta=float(thetas[k]), margin=float(tilted[k])
    )


def _segment_distances(point: complex, curve: np.ndarray) -> np.ndarray:
    """Distance from a point to every closing segment of a sampled curve."""
    a = curve
    b = np.roll(curve, -1)
    d = b - a
    length2 = np.abs(d) ** 2
    t = np.zeros_like(length2)
    nz = length2 > 0
    t[nz] = np.clip(((point - a[nz]) * np.conj(d[nz])).real / length2[nz], 0.0, 1.0)
    return np.abs(point - (a + t * d))


def winding_number(point: complex, curve: np.ndarray) -> int:
    """Signed turn count of a closed sampled curve around a point."""
    rel = curve - point
    turns = np.angle(np.roll(rel, -1) / rel).sum() / (2.0 * np.pi)
    return int(np.rint(turns))


def region_membership(point: complex, boundary: BoundaryCurve, tol: float = 1e-9) -> bool:
    """True iff the closed curve winds around the point a nonzero number of times.

    Points within ``tol`` of the curve are rejected as indeterminate: the
    winding sum is unstable there and the membership question itself is
    ill-posed at sampling resolution.
    """
    if not boundary.closed:
        raise ValueError("region membership needs a closed curve")
    if float(_segment_distances(complex(point), boundary.values).min()) < tol:
        raise IndeterminateRegionError(f"point {point!r} lies within {tol!r} of the boundary curve")
    return winding_number(complex(point), boundary.values) != 0


def containment_curve_radius(a: Angle, rho: float) -> float:
    """Starting image-curve radius for containment tests against points from the rho-circle.

    1 - CURVE_OFFSET by default, adjusted for two geometric obstructions:

    * when rho reaches that default, the curve is pushed halfway from rho
      toward the boundary so the test points stay strictly inside it (any
      curve radius strictly between rho and 1 over-approximates the image of
      the closed rho-disc, by the argument principle);
    * for tilts near +-pi/4 the extremal map has a pole inside the disc (at
      the innermost zero of f_lambda), and the winding count of the image
      curve around a value counts preimages minus poles, so the curve is kept
      halfway between rho and the first pole radius.
    """
    radius = 1.0 - CURVE_OFFSET
    if radius <= rho:
        radius = 0.5 * (rho + 1.0)
    pole = f_lambda_zero_radius(a)
    if pole <= rho:
        raise ValueError(f"test radius {rho!r} is not below the first pole radius {pole!r}")
    if np.isfinite(pole):
        radius = min(radius, 0.5 * (rho + pole))
    return radius


def subordination_test_curve(a: Angle, rho: float, curve_n: int = 2048) -> tuple[BoundaryCurve, float]:
    """Pulled-back image curve for the containment test, plus the radius it ended up at.

    The raw image curve of the extremal map is numerically intractable: it
    blows up near the boundary preimage of infinity, so uniform samples leave
    giant chords that break the winding count.  Instead the curve (and later
    the test points) are pushed through the inverse half-plane map, where
    everything lands inside the unit disc and uniform sampling resolves the
    geometry.  The pullback is analytic on the closed curve disc as long as
    the image circle stays inside the tilted half-plane, which is certified
    here by a boundary minimum (harmonic minimum principle); the radius backs
    off toward rho until that holds, which must happen above rho whenever rho
    is below the subordination radius.
    """
    radius = containment_curve_radius(a, rho)
    thetas = np.linspace(0.0, 2.0 * np.pi, curve_n, endpoint=False)
    rot = np.exp(-1j * a.lam)
    for _ in range(80):
        q = q_lambda(a, radius * np.exp(1j * thetas))
        if float(np.min((rot * q).real)) > 0.0:
            return BoundaryCurve(thetas=thetas, values=p_lambda_inverse(a, q)), radius
        radius = 0.5 * (radius + rho)
    raise ValueError(
        f"found no curve radius above rho={rho!r} keeping the extremal image in its "
        "half-plane; rho does not lie below the subordination radius"
    )


def curve_containment(
    points: np.ndarray,
    thetas: np.ndarray,
    curve: BoundaryCurve,
    near_tol: float = 1e-9,
) -> SubordinationVerdict:
    """Winding-number containment of every point inside a closed curve.

    margin is the signed distance from the worst point to the curve
    (negative when some point escapes); witness_theta tags the worst point.
    """
    margin = np.inf
    witness = 0.0
    holds = True
    for theta, pt in zip(thetas, points):
        inside = region_membership(complex(pt), curve, near_tol)
        dist = float(_segment_distances(complex(pt), curve.values).min())
        signed = dist if inside else -dist
        if signed < margin:
            margin, witness = signed, float(theta)
        holds = holds and inside
    return SubordinationVerdict(holds=holds, witness_theta=witness, margin=float(margin))


def check_q_subordination(
    f: RobertsonSample,
    a: Angle,
    rho: float,
    curve_n: int = 2048,
    n_test: int = 256,
    quad_tol: float = 1e-12,
    near_tol: float = 1e-9,
) -> SubordinationVerdict:
    """Approximate test of q_of_f(rho * disc) being contained in the image of q_lambda.

    The image domain is approximated from inside by the image of a circle
    slightly larger than rho (see :func:`subordination_test_curve`), and the
    sampled values of q_of_f on the rho-circle are tested for winding-number
    membership, all in the inverse-half-plane-map plane.  The test is exact
    only in the limit of vanishing radius gap and is documented as an
    approximation; margins are signed pullback-plane distances to the curve.
    """
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must lie in (0, 1), got {rho!r}")
    curve, _ = subordination_test_curve(a, rho, curve_n)
    thetas = np.linspace(0.0, 2.0 * np.pi, n_test, endpoint=False)
    points = p_lambda_inverse(a, q_values(f, rho * np.exp(1j * thetas), quad_tol))
    return curve_containment(points, thetas, curve, near_tol)
