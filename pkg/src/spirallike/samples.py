"""Exact random members of the tilted classes, built from finite Herglotz atoms.

A finite convex combination of the kernels (1 + x z)/(1 - x z), |x| = 1,
is a Carathéodory function (value 1 at 0, positive real part).  Tilting it
with :func:`tilt` produces a member p of the tilted class, and solving
1 + z f''/f' = p with f'(0) = 1 gives

    f'(z) = prod_k (1 - x_k z)^(-2 e^{i*lam} cos(lam) * w_k),

a finite product of principal powers.  These samples are exact (no
truncation error in f' or P_f), cheap, and dense enough in the class to act
as adversarial test subjects for the verification harness.

f itself has no closed form for two or more atoms; :func:`f_value`
integrates f' along the straight segment [0, z] with adaptive
Gauss-Legendre panels (16- vs 32-node embedded error estimate).

The weights/points arrays of a measure are frozen after construction, so
samples are immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Angle, DomainError, SERIES_RADIUS, require_disc

__all__ = [
    "AccuracyError",
    "HerglotzMeasure",
    "RobertsonSample",
    "eval_caratheodory",
    "f_prime",
    "f_value",
    "p_of_f",
    "q_of_f",
    "sample_measure",
    "tilt",
]

_WEIGHT_TOL = 1e-14
_GL_LO = np.polynomial.legendre.leggauss(16)
_GL_HI = np.polynomial.legendre.leggauss(32)
_MAX_DEPTH = 42
_MAX_PANELS = 200_000

# Panels stop refining once the embedded estimate falls below this multiple of
# the panel's L1 quadrature mass: node rounding amplified by the integrand's
# logarithmic derivative (up to ~2/(1 - |z|) near a boundary singularity
# direction) makes smaller differences pure noise.  The achievable absolute
# accuracy is therefore tol + _NOISE_FLOOR * int |f'| along the segment.
_NOISE_FLOOR = 1e-12


class AccuracyError(RuntimeError):
    """Quadrature hit its refinement limit; carries the best estimate found.

    Attributes:
        estimate: best value of the integral at the point of failure.
        error: embedded error estimate still outstanding.
    """

    def __init__(self, message: str, estimate, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True, eq=False)
class HerglotzMeasure:
    """Finite atomic probability measure on the unit circle.

    weights: nonnegative, summing to 1 (checked to 1e-14).
    points: unit-modulus atom positions (checked to 1e-14).
    """

    weights: np.ndarray
    points: np.ndarray

    def __post_init__(self) -> None:
        w = np.array(self.weights, dtype=float, ndmin=1)
        x = np.array(self.points, dtype=complex, ndmin=1)
        if w.size == 0:
            raise DomainError("a Herglotz measure needs at least one atom")
        if w.shape != x.shape:
            raise DomainError("weights and points must have matching shapes")
        if np.any(w < 0):
            raise DomainError("atom weights must be nonnegative")
        if abs(w.sum() - 1.0) > _WEIGHT_TOL:
            raise DomainError(f"atom weights must sum to 1, got {w.sum()!r}")
        if np.max(np.abs(np.abs(x) - 1.0)) > _WEIGHT_TOL:
            raise DomainError("atom points must lie on the unit circle")
        w.flags.writeable = False
        x.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", x)

    @property
    def n_atoms(self) -> int:
        return self.weights.size

    def to_json_obj(self) -> dict:
        """Portable form {"atoms": [{"w": weight, "theta": arg-of-point}, ...]}."""
        return {
            "atoms": [
                {"w": float(w), "theta": float(np.angle(x))}
                for w, x in zip(self.weights, self.points)
            ]
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "HerglotzMeasure":
        atoms = obj["atoms"]
        w = np.array([a["w"] for a in atoms], dtype=float)
        th = np.array([a["theta"] for a in atoms], dtype=float)
        return cls(weights=w, points=np.exp(1j * th))


@dataclass(frozen=True, eq=False)
class RobertsonSample:
    """A concrete class member: tilt angle plus the Herglotz measure driving P_f."""

    angle: Angle
    measure: HerglotzMeasure


def sample_measure(seed: int, n_atoms: int) -> HerglotzMeasure:
    """Draw a random measure, deterministically in the seed.

    Weights come from the flat Dirichlet distribution on the simplex and the
    atom positions are uniform on the circle, both from a PCG64 generator
    seeded with ``seed``.  Identical seeds give identical measures on every
    platform (numpy guarantees PCG64 stream stability).
    """
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be >= 1, got {n_atoms}")
    rng = np.random.default_rng(seed)
    return measure_from_rng(rng, n_atoms)


def measure_from_rng(rng: np.random.Generator, n_atoms: int) -> HerglotzMeasure:
    """Draw a measure from an existing generator (the harnesses' per-trial streams)."""
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be >= 1, got {n_atoms}")
    weights = rng.dirichlet(np.ones(n_atoms))
    weights = weights / weights.sum()
    thetas = rng.uniform(0.0, 2.0 * np.pi, n_atoms)
    return HerglotzMeasure(weights=weights, points=np.exp(1j * thetas))


def eval_caratheodory(m: HerglotzMeasure, z) -> complex | np.ndarray:
    """sum_k w_k (1 + x_k z)/(1 - x_k z); value 1 at z = 0, positive real part on the disc."""
    zarr = require_disc(z)
    xz = m.points.reshape(m.n_atoms, *([1] * zarr.ndim)) * zarr[np.newaxis, ...]
    out = np.tensordot(m.weights, (1.0 + xz) / (1.0 - xz), axes=(0, 0))
    return complex(out) if np.ndim(z) == 0 else out


def tilt(a: Angle, h_value) -> complex | np.ndarray:
    """Rotate a Carathéodory value into the tilted class: e^{i*lam}(cos(lam) h - i sin(lam)).

    Sends h(0)=1 to 1 and Re h > 0 to Re(e^{-i*lam} p) > 0; at lam=0 it is the
    identity.  The map is a bijection between the untilted and tilted classes.
    """
    out = np.exp(1j * a.lam) * (np.cos(a.lam) * np.asarray(h_value, dtype=complex) - 1j * np.sin(a.lam))
    return complex(out) if np.ndim(h_value) == 0 else out


def _log_derivative_exponents(s: RobertsonSample) -> tuple[complex, np.ndarray]:
    # f'(z) = exp(-c * sum_k w_k Log(1 - x_k z)) with c = 2 e^{i*lam} cos(lam) = 1 + e^{2i*lam}
    c = 1.0 + s.angle.rotation
    return c, s.measure.weights.astype(complex)


def f_prime(s: RobertsonSample, z) -> complex | np.ndarray:
    """Closed-form derivative prod_k (1 - x_k z)^(-2 e^{i*lam} cos(lam) w_k); f'(0) = 1.

    Computed as a single exp of a weighted sum of principal logarithms, which
    equals the product of principal powers because Re(1 - x_k z) > 0 on the disc.
    """
    zarr = require_disc(z)
    c, w = _log_derivative_exponents(s)
    x = s.measure.points.reshape(s.measure.n_atoms, *([1] * zarr.ndim))
    logs = np.tensordot(w, np.log(1.0 - x * zarr[np.newaxis, ...]), axes=(0, 0))
    out = np.exp(-c * logs)
    return complex(out) if np.ndim(z) == 0 else out


def _panel_integrals(s: RobertsonSample, zs: np.ndarray, lo: float, hi: float):
    """16/32-node Gauss-Legendre estimates of int_lo^hi f'(z*u) du, plus the L1 mass."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    i_lo = half * (f_prime(s, zs[:, np.newaxis] * (mid + half * _GL_LO[0])) @ _GL_LO[1])
    f_hi = f_prime(s, zs[:, np.newaxis] * (mid + half * _GL_HI[0]))
    i_hi = half * (f_hi @ _GL_HI[1])
    mass = half * (np.abs(f_hi) @ _GL_HI[1])
    return i_lo, i_hi, mass


def f_values(s: RobertsonSample, zs, tol: float = 1e-12) -> np.ndarray:
    """Vectorized antiderivative of f' along [0, z] for every z in ``zs``.

    Panels on the unit parameter interval are refined per point: a point
    leaves the refinement as soon as its embedded error estimate drops below
    its share tol*(panel length) of the budget (with a relative floor near
    machine precision so refinement terminates even when f' is large close
    to a boundary singularity direction).
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    zarr = require_disc(zs)
    flat = np.atleast_1d(zarr).ravel()
    total = np.zeros(flat.shape, dtype=complex)
    deficit = np.zeros(flat.shape, dtype=float)
    panels = 0
    stack: list[tuple[np.ndarray, float, float, int]] = [(np.arange(flat.size), 0.0, 1.0, 0)]
    while stack:
        idx, lo, hi, depth = stack.pop()
        i_lo, i_hi, mass = _panel_integrals(s, flat[idx], lo, hi)
        panels += 1
        err = np.abs(i_hi - i_lo)
        ok = err <= np.maximum(tol * (hi - lo), _NOISE_FLOOR * mass)
        if depth >= _MAX_DEPTH or panels > _MAX_PANELS:
            total[idx] += i_hi
            deficit[idx] += np.where(ok, 0.0, err)
            continue
        done = idx[ok]
        total[done] += i_hi[ok]
        rest = idx[~ok]
        if rest.size:
            mid = 0.5 * (lo + hi)
            stack.append((rest, lo, mid, depth + 1))
            stack.append((rest, mid, hi, depth + 1))
    result = (flat * total).reshape(np.atleast_1d(zarr).shape)
    worst = float(deficit.max()) if deficit.size else 0.0
    if worst > tol:
        raise AccuracyError(
            f"quadrature refinement limit reached (outstanding error {worst:.3e} > tol {tol:.3e})",
            estimate=result,
            error=worst,
        )
    return result


def f_value(s: RobertsonSample, z, tol: float = 1e-12) -> complex:
    """The sampled function itself, f(z) = int_0^z f'(t) dt; f(0) = 0."""
    if np.ndim(z) != 0:
        raise ValueError("f_value takes a single point; use f_values for arrays")
    return complex(f_values(s, np.array([z]), tol)[0])


def _q_series(s: RobertsonSample, zarr: np.ndarray) -> np.ndarray:
    # Power sums of the measure drive the expansion of z f'/f about 0:
    # q = 1 + (c S1 / 2) z + (c S2 / 3 + c^2 S1^2 / 12) z^2 + O(z^3).
    c, w = _log_derivative_exponents(s)
    s1 = np.sum(w * s.measure.points)
    s2 = np.sum(w * s.measure.points**2)
    return 1.0 + (c * s1 / 2.0) * zarr + (c * s2 / 3.0 + c * c * s1 * s1 / 12.0) * zarr**2


def q_values(s: RobertsonSample, zs, tol: float = 1e-12) -> np.ndarray:
    """Vectorized z f'(z)/f(z) with the small-|z| series fallback."""
    zarr = np.atleast_1d(require_disc(zs)).astype(complex)
    out = _q_series(s, zarr)
    big = np.abs(zarr) >= SERIES_RADIUS
    if np.any(big):
        zb = zarr[big]
        out[big] = zb * f_prime(s, zb) / f_values(s, zb, tol)
    return out


def q_of_f(s: RobertsonSample, z, tol: float = 1e-12) -> complex:
    """z f'(z) / f(z) for the sampled member; the singularity at 0 is removable, q(0) = 1."""
    if np.ndim(z) != 0:
        raise ValueError("q_of_f takes a single point; use q_values for arrays")
    return complex(q_values(s, np.array([z]), tol)[0])


def p_of_f(s: RobertsonSample, z) -> complex | np.ndarray:
    """1 + z f''(z)/f'(z) in closed form: 1 + z sum_k 2 e^{i*lam} cos(lam) w_k x_k / (1 - x_k z).

    This equals the tilted Carathéodory function the sample was built from,
    so Re(e^{-i*lam} p_of_f) > 0 everywhere on the disc by construction.
    """
    zarr = require_disc(z)
    c, w = _log_derivative_exponents(s)
    x = s.measure.points.reshape(s.measure.n_atoms, *([1] * zarr.ndim))
    acc = np.tensordot(w, x / (1.0 - x * zarr[np.newaxis, ...]), axes=(0, 0))
    out = 1.0 + c * zarr * acc
    return complex(out) if np.ndim(z) == 0 else out
