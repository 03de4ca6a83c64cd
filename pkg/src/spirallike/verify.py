"""Seeded randomized harness checking the quantitative class inequalities on sampled members.

Every harness draws deterministic per-trial Herglotz samples (PCG64 streams
keyed by (seed, trial index)), evaluates the inequality under test on a
fixed grid, and reports the worst margin together with the witness sample
and point.  Identical (claim, lam, trials, seed) inputs produce bit-identical
reports; trials may run on a thread pool, with results merged by minimal
margin and smallest trial index so the merge order cannot change the report.

Margins are raw: the declared numerical slack (HALFPLANE_SLACK for
half-plane checks, 1e-12 for the exact scalar bound) is stored in the
report's ``tolerance`` field, and ``passed`` means ``min_margin > -tolerance``.
The one exception is the differential-identity residual check, whose
min_margin is the allowance 1e-6 minus the worst residual (tolerance 0).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import Angle, caratheodory_disc, p_lambda, p_lambda_inverse, q_lambda
from .radii import SQRT3, radius_r1, radius_r2, worker_count
from .samples import (
    HerglotzMeasure,
    RobertsonSample,
    eval_caratheodory,
    measure_from_rng,
    q_values,
    tilt,
)
from .subordination import curve_containment, subordination_test_curve

__all__ = [
    "CLAIMS",
    "HALFPLANE_SLACK",
    "IDENTITY_ALLOWANCE",
    "VerificationReport",
    "verify_differential_identity",
    "verify_lemma1",
    "verify_nunokawa_bound",
    "verify_theorem1",
    "verify_theorem2",
]

CLAIMS = ("Lemma1", "Theorem1", "Corollary1", "Theorem2", "DifferentialIdentity", "NunokawaBound")

# Analytic truths are strict inequalities; these slacks separate them from
# floating-point evaluation error and are declared in every report.
HALFPLANE_SLACK = 1e-9
IDENTITY_ALLOWANCE = 1e-6
EXACT_SLACK = 1e-12

MAX_ATOMS = 8
_LEMMA1_RADII = np.arange(1, 10) / 10.0
_LEMMA1_ANGLES = 64
_CIRCLE_ANGLES = 256


@dataclass(frozen=True)
class VerificationReport:
    """Machine-readable outcome of one harness run (JSON schema "v1")."""

    claim: str
    lam: float | None
    trials: int
    seed: int
    tolerance: float
    min_margin: float
    worst_witness: dict
    details: dict
    passed: bool

    def __post_init__(self) -> None:
        if self.claim not in CLAIMS:
            raise ValueError(f"unknown claim {self.claim!r}")

    def to_json_obj(self) -> dict:
        return {
            "schema": "v1",
            "claim": self.claim,
            "lambda": self.lam,
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "min_margin": self.min_margin,
            "worst_witness": self.worst_witness,
            "details": self.details,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """The per-trial PCG64 stream; part of the reproducibility contract."""
    return np.random.default_rng([seed, trial])


def _draw_sample(a: Angle, seed: int, trial: int) -> RobertsonSample:
    rng = trial_rng(seed, trial)
    n_atoms = int(rng.integers(1, MAX_ATOMS + 1))
    return RobertsonSample(angle=a, measure=measure_from_rng(rng, n_atoms))


def _witness(trial: int, measure: HerglotzMeasure, z: complex) -> dict:
    return {
        "trial": trial,
        "sample": measure.to_json_obj(),
        "z": [float(z.real), float(z.imag)],
    }


def _map_trials(trials: int, one_trial: Callable[[int], tuple]) -> list[tuple]:
    """Evaluate all trials, in index order, optionally on a thread pool."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    workers = worker_count(trials)
    if workers == 1:
        return [one_trial(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one_trial, range(trials)))


def _run_trials(
    trials: int, one_trial: Callable[[int], tuple[float, dict]]
) -> tuple[float, dict]:
    """Reduce trial results to (min margin, its witness); ties break on trial index."""
    results = _map_trials(trials, one_trial)
    best = min(range(trials), key=lambda i: (results[i][0], i))
    return results[best]


def verify_lemma1(a: Angle, trials: int, seed: int) -> VerificationReport:
    """Sharp enclosing-disc inequality for sampled tilted-class functions.

    For each trial sample p, checks |p(z) - center(r)| <= radius(r) over
    r in {0.1, ..., 0.9} x 64 angles; the margin is radius - |p - center|,
    which is exactly 0 (to rounding) for rotated single-atom samples.
    """
    thetas = np.linspace(0.0, 2.0 * np.pi, _LEMMA1_ANGLES, endpoint=False)
    discs = [caratheodory_disc(a, r) for r in _LEMMA1_RADII]
    centers = np.array([d.center for d in discs])[:, np.newaxis]
    radii = np.array([d.radius for d in discs])[:, np.newaxis]
    z = _LEMMA1_RADII[:, np.newaxis] * np.exp(1j * thetas)[np.newaxis, :]

    def one_trial(i: int) -> tuple[float, dict]:
        rng = trial_rng(seed, i)
        measure = measure_from_rng(rng, int(rng.integers(1, MAX_ATOMS + 1)))
        p = tilt(a, eval_caratheodory(measure, z))
        gap = radii - np.abs(p - centers)
        k = np.unravel_index(int(np.argmin(gap)), gap.shape)
        return float(gap[k]), _witness(i, measure, complex(z[k]))

    margin, witness = _run_trials(trials, one_trial)
    return VerificationReport(
        claim="Lemma1",
        lam=a.lam,
        trials=trials,
        seed=seed,
        tolerance=HALFPLANE_SLACK,
        min_margin=margin,
        worst_witness=witness,
        details={},
        passed=margin > -HALFPLANE_SLACK,
    )


def _halfplane_harness(
    a: Angle,
    trials: int,
    seed: int,
    circle_radius: float,
    tilt_angle: float,
    subordination_curve=None,
    quad_tol: float = 1e-12,
) -> tuple[float, dict, float]:
    """Common body of the two radius theorems: min Re(e^{-i*tilt} Q_f) on a circle.

    Returns (min half-plane margin, its witness, min containment margin);
    the containment margin is +inf when no curve was supplied.
    """
    thetas = np.linspace(0.0, 2.0 * np.pi, _CIRCLE_ANGLES, endpoint=False)
    zs = circle_radius * np.exp(1j * thetas)
    rot = np.exp(-1j * tilt_angle)

    def one_trial(i: int) -> tuple[float, float, dict]:
        sample = _draw_sample(a, seed, i)
        qv = q_values(sample, zs, quad_tol)
        tilted = (rot * qv).real
        k = int(np.argmin(tilted))
        witness = _witness(i, sample.measure, complex(zs[k]))
        sub_margin = np.inf
        if subordination_curve is not None:
            verdict = curve_containment(p_lambda_inverse(a, qv), thetas, subordination_curve)
            sub_margin = verdict.margin
            witness["subordination_margin"] = verdict.margin
        return float(tilted[k]), float(sub_margin), witness

    results = _map_trials(trials, one_trial)
    best = min(range(trials), key=lambda i: (results[i][0], i))
    sub_min = min(r[1] for r in results)
    return results[best][0], results[best][2], sub_min


def verify_theorem1(
    a: Angle,
    trials: int,
    seed: int,
    safety: float = 0.999,
    subordination: bool = False,
    r1_tol: float = 1e-10,
) -> VerificationReport:
    """Spirallikeness of sampled class members inside the subordination radius.

    Checks Re(e^{-i*lam} Q_f) > -HALFPLANE_SLACK on |z| = safety * R1(lam).
    With ``subordination=True`` the full image-domain containment check
    (winding-number membership against the extremal image curve) also runs
    for every trial, and the report's claim becomes "Corollary1".
    """
    if not 0.0 < safety < 1.0:
        raise ValueError(f"safety must lie in (0, 1), got {safety!r}")
    r1 = radius_r1(a, r1_tol)
    rho = safety * r1.value
    curve = None
    if subordination:
        curve, _ = subordination_test_curve(a, rho, 2048)
    margin, witness, sub_min = _halfplane_harness(
        a, trials, seed, rho, a.lam, subordination_curve=curve
    )
    details = {"circle_radius": rho, "r1": r1.value}
    sub_ok = True
    if subordination:
        sub_ok = sub_min > 0.0
        details["subordination_min_margin"] = sub_min
    return VerificationReport(
        claim="Corollary1" if subordination else "Theorem1",
        lam=a.lam,
        trials=trials,
        seed=seed,
        tolerance=HALFPLANE_SLACK,
        min_margin=margin,
        worst_witness=witness,
        details=details,
        passed=(margin > -HALFPLANE_SLACK) and sub_ok,
    )


def verify_theorem2(
    a: Angle,
    trials: int,
    seed: int,
    safety: float = 0.999,
    radius: float | None = None,
) -> VerificationReport:
    """Starlikeness of sampled class members inside the closed-form radius.

    Checks Re(Q_f) > -HALFPLANE_SLACK on |z| = safety * R2(lam).  Passing an
    explicit ``radius`` overrides that circle; pushing it beyond R2 turns the
    run into a falsification search (a failed report then carries a concrete
    witness showing the bound is doing work; absence of a failure proves
    nothing and is simply reported as passed).
    """
    if not 0.0 < safety < 1.0:
        raise ValueError(f"safety must lie in (0, 1), got {safety!r}")
    r2 = radius_r2(a).value
    rho = safety * r2 if radius is None else float(radius)
    if not 0.0 < rho < 1.0:
        raise ValueError(f"test radius must lie in (0, 1), got {rho!r}")
    margin, witness, _ = _halfplane_harness(a, trials, seed, rho, 0.0)
    details = {"circle_radius": rho, "r2": r2}
    return VerificationReport(
        claim="Theorem2",
        lam=a.lam,
        trials=trials,
        seed=seed,
        tolerance=HALFPLANE_SLACK,
        min_margin=margin,
        worst_witness=witness,
        details=details,
        passed=margin > -HALFPLANE_SLACK,
    )


def verify_differential_identity(a: Angle, grid_n: int = 64) -> VerificationReport:
    """Residual of q + z q'/q = p for the extremal pair on a polar grid of |z| <= 0.9.

    q' is taken by central differences with step 1e-5; the residual must stay
    below IDENTITY_ALLOWANCE, and min_margin is the allowance minus the worst
    residual (so the declared tolerance is 0 for this claim).
    """
    if grid_n < 16:
        raise ValueError(f"grid_n must be >= 16, got {grid_n}")
    h = 1e-5
    radii = np.linspace(0.9 / grid_n, 0.9, grid_n)
    thetas = np.linspace(0.0, 2.0 * np.pi, grid_n, endpoint=False)
    z = radii[:, np.newaxis] * np.exp(1j * thetas[np.newaxis, :])
    q = q_lambda(a, z)
    dq = (q_lambda(a, z + h) - q_lambda(a, z - h)) / (2.0 * h)
    residual = np.abs(q + z * dq / q - p_lambda(a, z))
    k = np.unravel_index(int(np.argmax(residual)), residual.shape)
    worst = complex(z[k])
    margin = IDENTITY_ALLOWANCE - float(residual[k])
    return VerificationReport(
        claim="DifferentialIdentity",
        lam=a.lam,
        trials=0,
        seed=0,
        tolerance=0.0,
        min_margin=margin,
        worst_witness={"z": [worst.real, worst.imag], "residual": float(residual[k])},
        details={"grid_n": grid_n, "step": h},
        passed=margin > 0.0,
    )


def verify_nunokawa_bound(a_grid: Sequence[float] | np.ndarray) -> VerificationReport:
    """Scalar bound (3|a| + 1/|a|)/2 >= sqrt(3) used by the starlikeness proof machinery.

    For every nonzero grid value a the quantity a + k, with k the extremal
    imaginary logarithmic-derivative coefficient sign-matched to a, has
    modulus (3|a| + 1/|a|)/2; the minimum over a is sqrt(3), at |a| = 1/sqrt(3).
    """
    grid = np.asarray(a_grid, dtype=float)
    if grid.size == 0:
        raise ValueError("a_grid must be nonempty")
    if np.any(grid == 0.0):
        raise ValueError("a_grid values must be nonzero")
    mags = (3.0 * np.abs(grid) + 1.0 / np.abs(grid)) / 2.0
    k = int(np.argmin(mags))
    margin = float(mags[k] - SQRT3)
    return VerificationReport(
        claim="NunokawaBound",
        lam=None,
        trials=0,
        seed=0,
        tolerance=EXACT_SLACK,
        min_margin=margin,
        worst_witness={"a": float(grid[k]), "value": float(np.sign(grid[k]) * mags[k])},
        details={"argmin_abs_a": float(abs(grid[k])), "minimizer": 1.0 / SQRT3},
        passed=margin > -EXACT_SLACK,
    )
