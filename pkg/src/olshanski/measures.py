"""Probability densities whose characteristic functions are class-B functions.

For a real ``a`` the density

    g_a(t) = exp(t * arctan(a)) / (2 sqrt(1 + a^2) cosh(pi t / 2))

has characteristic function ``(cosh(lam) - i a sinh(lam))^-1`` with the
convention ``E[exp(+i lam T)]``.  A parameter tuple corresponds to the
convolution of its single-factor densities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classb import classb_sup_distance
from .params import Alpha, make_alpha, param_distance

__all__ = [
    "DensityGrid",
    "density_eval",
    "tail_mass_bound",
    "density_grid",
    "convolve",
    "char_function",
    "ConvergenceReport",
    "weak_convergence_check",
]

TAIL_TOL = 1e-8


@dataclass(frozen=True)
class DensityGrid:
    """Density samples ``values[k]`` at ``t_min + k * step``."""

    t_min: float
    step: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        vals = np.asarray(self.values, dtype=float)
        if np.any(vals < 0):
            raise ValueError("density values must be nonnegative")
        object.__setattr__(self, "values", vals)

    @property
    def t(self) -> np.ndarray:
        return self.t_min + self.step * np.arange(self.values.size)

    def mass(self) -> float:
        return float(np.trapezoid(self.values, dx=self.step))


def density_eval(a: float, t):
    """The density ``g_a`` at ``t``.  Vectorized over ``t``."""
    t = np.asarray(t, dtype=float)
    # exp(theta t) / cosh(pi t / 2) written to avoid overflow at large |t|
    theta = math.atan(a)
    h = 0.5 * math.pi * np.abs(t)
    out = np.exp(theta * t - h) / ((1.0 + np.exp(-2.0 * h)) * math.sqrt(1.0 + a * a))
    return float(out) if out.ndim == 0 else out


def tail_mass_bound(a: float, t_max: float) -> float:
    """Upper bound on the mass of ``g_a`` outside ``[-t_max, t_max]``.

    Uses ``1 / (2 cosh x) <= exp(-|x|)`` on each side separately.
    """
    theta = math.atan(a)
    total = 0.0
    for rate in (0.5 * math.pi - theta, 0.5 * math.pi + theta):
        total += math.exp(-rate * t_max) / rate
    return total / math.sqrt(1.0 + a * a)


def density_grid(
    alpha: Alpha, t_max: float = 40.0, step: float = 0.01, tail_tol: float = TAIL_TOL
) -> DensityGrid:
    """Sampled density of the convolution of the factors of ``alpha``.

    Each factor lives on the symmetric grid ``[-t_max, t_max]``; the
    convolution keeps its full support ``[-p t_max, p t_max]``.
    """
    alpha = make_alpha(alpha)
    if alpha.p == 0:
        raise ValueError("point mass at 0 is not a density")
    for a in alpha.values:
        tail = tail_mass_bound(a, t_max)
        if tail > tail_tol:
            raise ValueError(
                f"t_max={t_max} too small for a={a}: tail mass bound {tail:.2e} > {tail_tol:.0e}"
            )
    n = int(round(t_max / step))
    t = step * np.arange(-n, n + 1)
    grid = DensityGrid(-n * step, step, density_eval(alpha.values[0], t))
    for a in alpha.values[1:]:
        grid = convolve(grid, DensityGrid(-n * step, step, density_eval(a, t)))
    return grid


def convolve(d1: DensityGrid, d2: DensityGrid) -> DensityGrid:
    """Discrete convolution (direct summation, no wrap-around) scaled by ``step``."""
    if not math.isclose(d1.step, d2.step, rel_tol=1e-12):
        raise ValueError(f"step mismatch: {d1.step} vs {d2.step}")
    vals = np.convolve(d1.values, d2.values) * d1.step
    return DensityGrid(d1.t_min + d2.t_min, d1.step, np.clip(vals, 0.0, None))


def char_function(d: DensityGrid, lam):
    """Trapezoidal quadrature of ``int exp(+i lam t) g(t) dt``."""
    lam = np.asarray(lam, dtype=float)
    w = np.full(d.values.size, d.step)
    w[[0, -1]] *= 0.5
    wv = w * d.values
    t = d.t
    out = np.exp(1j * np.multiply.outer(lam, t)) @ wv
    return complex(out) if out.ndim == 0 else out


@dataclass
class ConvergenceReport:
    distances: list[float]
    param_distances: list[float]
    tol: float
    eventually_from: int | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "distances": self.distances,
            "param_distances": self.param_distances,
            "tol": self.tol,
            "eventually_from": self.eventually_from,
            "passed": self.passed,
        }


def weak_convergence_check(
    seq: list[Alpha], limit: Alpha, lambda_max: float = 3.0, tol: float = 1e-3
) -> ConvergenceReport:
    """Uniform distance of characteristic functions along ``seq``.

    The characteristic functions are exactly the class-B functions, so this
    is the sup distance on ``[-lambda_max, lambda_max]``.
    ``eventually_from`` is the first index from which every distance is
    within ``tol`` (``None`` if the last one is not).  ``passed`` also asks
    that the second half of the sequence lie in the stratum of ``limit``,
    since convergence forces the number of parameters to stabilize.
    """
    if not seq:
        raise ValueError("empty sequence")
    limit = make_alpha(limit)
    seq = [make_alpha(a) for a in seq]
    dist = [classb_sup_distance(a, limit, lambda_max, 0.01) for a in seq]
    pdist = [param_distance(a, limit) for a in seq]
    start = len(dist)
    while start > 0 and dist[start - 1] <= tol:
        start -= 1
    eventually = start if start < len(dist) else None
    same_stratum = all(math.isfinite(d) for d in pdist[len(pdist) // 2 :])
    passed = eventually is not None and same_stratum
    return ConvergenceReport(dist, pdist, tol, eventually, passed)
