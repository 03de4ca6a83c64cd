"""Branch-correct complex arithmetic and the extremal maps of the tilted half-plane classes.

Everything here is built from three ingredients:

* ``principal_power`` -- complex powers taken on the principal branch.  All
  powers in this package have base ``1 - z`` with ``z`` inside the open unit
  disc, so ``Re(base) > 0`` and the branch cut along the negative real axis
  is never approached.
* the Moebius map ``p_lambda(z) = (1 + e^{2i*lam} z) / (1 - z)`` sending the
  unit disc onto the tilted right half-plane ``Re(e^{-i*lam} w) > 0``, and
  its inverse.
* the extremal spirallike generator ``f_lambda`` together with its
  logarithmic derivative ratio ``q_lambda(z) = z f'(z) / f(z)``.

All functions are pure, accept numpy arrays of points transparently, and
return scalars for scalar input.  Angles are plain radians wrapped in
:class:`Angle`, which enforces ``-pi/2 < lam < pi/2`` at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Angle",
    "CaratheodoryDisc",
    "DomainError",
    "PoleError",
    "SERIES_RADIUS",
    "caratheodory_disc",
    "f_lambda",
    "f_lambda_zero_radius",
    "p_lambda",
    "p_lambda_inverse",
    "principal_power",
    "q_lambda",
]

# Below this modulus q_lambda switches from the closed form to its Taylor
# expansion: the closed form loses ~|z|^-1 * eps of relative accuracy to
# cancellation near the removable singularity at 0, while a 4-term series is
# accurate to O(|z|^4) ~ 1e-16 there.
SERIES_RADIUS = 1e-4


class DomainError(ValueError):
    """An argument left the mathematical domain of an operation."""


class PoleError(DomainError):
    """A Moebius map was evaluated exactly at its pole."""


@dataclass(frozen=True)
class Angle:
    """Tilt angle in radians, restricted to the open interval (-pi/2, pi/2).

    The endpoints are rejected: at ``lam = +-pi/2`` the half-plane condition
    ``Re(e^{-i*lam} p) > 0`` degenerates and every formula below loses its
    meaning.
    """

    lam: float

    def __post_init__(self) -> None:
        lam = float(self.lam)
        if not np.isfinite(lam) or not -np.pi / 2 < lam < np.pi / 2:
            raise DomainError(f"tilt angle must lie strictly inside (-pi/2, pi/2), got {self.lam!r}")
        object.__setattr__(self, "lam", lam)

    @property
    def rotation(self) -> complex:
        """e^{2i*lam}, the boundary-direction factor of the tilted half-plane map."""
        return complex(np.exp(2j * self.lam))

    def conjugate(self) -> "Angle":
        return Angle(-self.lam)


@dataclass(frozen=True)
class CaratheodoryDisc:
    """Closed disc |w - center| <= radius containing p(|z| <= r) for tilted-class p."""

    center: complex
    radius: float

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise DomainError(f"disc radius must be nonnegative, got {self.radius!r}")


def _scalarize(out: np.ndarray, like) -> complex | np.ndarray:
    """Return a plain complex when the caller passed a scalar, else the array."""
    if np.ndim(like) == 0:
        return complex(out)
    return out


def require_disc(z, *, name: str = "z") -> np.ndarray:
    """Validate that every point has modulus < 1 and return it as a complex array."""
    arr = np.asarray(z, dtype=complex)
    if arr.size and np.max(np.abs(arr)) >= 1.0:
        raise DomainError(f"{name} must lie in the open unit disc")
    return arr


def principal_power(base, exponent) -> complex | np.ndarray:
    """base**exponent on the principal branch, i.e. exp(exponent * Log base).

    Log is the principal logarithm with imaginary part in (-pi, pi]; a
    negative real base with a -0.0 imaginary part is treated as lying on the
    upper side of the cut so that the closed end of that interval is honoured.
    A zero base is rejected (for the maps in this package it would mean a
    point on the unit circle was passed where a disc point is required).
    """
    b = np.asarray(base, dtype=complex)
    if np.any(b == 0):
        raise DomainError("principal_power requires a nonzero base")
    b = np.where(b.imag == 0.0, b.real + 0.0j, b)
    out = np.exp(np.asarray(exponent, dtype=complex) * np.log(b))
    if np.ndim(base) == 0 and np.ndim(exponent) == 0:
        return complex(out)
    return out


def f_lambda(a: Angle, z) -> complex | np.ndarray:
    """The extremal tilted-class generator, normalized so f(0)=0, f'(0)=1.

    Implemented as ((1-z)^(-e^{2i*lam}) - 1) / e^{2i*lam}: the textbook
    exponent 1 - 2 e^{i*lam} cos(lam) equals -e^{2i*lam} and the matching
    denominator equals e^{2i*lam}, which never vanishes, so this form has no
    spurious 0/0.  At lam=0 it collapses to z/(1-z).
    """
    zarr = require_disc(z)
    e2 = a.rotation
    out = (principal_power(1.0 - zarr, -e2) - 1.0) / e2
    return _scalarize(out, z)


def q_lambda(a: Angle, z) -> complex | np.ndarray:
    """z f_lambda'(z) / f_lambda(z), with the removable singularity at 0 filled in.

    Closed form e^{2i*lam} z / (1 - z - (1-z)^(1+e^{2i*lam})).  For
    |z| < SERIES_RADIUS the Taylor expansion

        1 + (m/2) z + (m(m+4)/12) z^2 + (m(m+2)/8) z^3,   m = 1 + e^{2i*lam}

    is used instead to avoid the 0/0 cancellation; q_lambda(a, 0) == 1.
    """
    zarr = require_disc(z)
    e2 = a.rotation
    m = 1.0 + e2
    out = np.asarray(
        1.0 + (m / 2.0) * zarr + (m * (m + 4.0) / 12.0) * zarr**2 + (m * (m + 2.0) / 8.0) * zarr**3,
        dtype=complex,
    )
    big = np.abs(zarr) >= SERIES_RADIUS
    if np.any(big):
        zb = zarr[big] if out.ndim else zarr
        direct = e2 * zb / ((1.0 - zb) - principal_power(1.0 - zb, m))
        if out.ndim:
            out[big] = direct
        else:
            out = np.asarray(direct)
    return _scalarize(out, z)


def p_lambda(a: Angle, z) -> complex | np.ndarray:
    """The tilted half-plane map (1 + e^{2i*lam} z) / (1 - z); p_lambda(a, 0) == 1."""
    zarr = require_disc(z)
    out = (1.0 + a.rotation * zarr) / (1.0 - zarr)
    return _scalarize(out, z)


def p_lambda_inverse(a: Angle, w) -> complex | np.ndarray:
    """Inverse Moebius map (w - 1) / (w + e^{2i*lam}).

    Satisfies p_lambda(a, p_lambda_inverse(a, w)) == w away from the pole at
    w = -e^{2i*lam}; the result has modulus < 1 exactly when
    Re(e^{-i*lam} w) > 0.
    """
    warr = np.asarray(w, dtype=complex)
    denom = warr + a.rotation
    if np.any(denom == 0):
        raise PoleError("p_lambda_inverse evaluated at its pole w = -e^{2i*lam}")
    out = (warr - 1.0) / denom
    return _scalarize(out, w)


def f_lambda_zero_radius(a: Angle) -> float:
    """Modulus of the innermost nonzero zero of f_lambda in the disc (inf when none).

    Zeros away from the origin solve Log(1-z) = -2*pi*k*(sin(2*lam) + i*cos(2*lam))
    for integer k, which is compatible with z in the disc only when
    |cos(2*lam)| < 1/4, i.e. for tilts near +-pi/4; the innermost one has
    k = sign(sin(2*lam)).  q_lambda has a pole there, so image-domain tests
    must keep their boundary curve strictly inside this radius.
    """
    s = float(np.sin(2.0 * a.lam))
    c = float(np.cos(2.0 * a.lam))
    if s == 0.0 or abs(c) >= 0.25:
        return float("inf")
    k = 1.0 if s > 0.0 else -1.0
    z = 1.0 - np.exp(-2.0 * np.pi * k * (s + 1j * c))
    return float(abs(z)) if abs(z) < 1.0 else float("inf")


def caratheodory_disc(a: Angle, r: float) -> CaratheodoryDisc:
    """Sharp enclosing disc for tilted-class functions on |z| <= r.

    center = (1 + r^2 e^{2i*lam}) / (1 - r^2), radius = 2 r cos(lam) / (1 - r^2).
    The bound is attained exactly by p_lambda(a, x*z) with |x| = 1.
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must satisfy 0 <= r < 1, got {r!r}")
    denom = 1.0 - r * r
    center = (1.0 + r * r * a.rotation) / denom
    radius = 2.0 * r * float(np.cos(a.lam)) / denom
    return CaratheodoryDisc(center=complex(center), radius=radius)
