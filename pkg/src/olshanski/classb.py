r"""Class-B functions and their inversion.

A class-B function of parameter ``alpha`` is

.. math:: \Pi(\alpha, \lambda) = \prod_j (\cosh\lambda - i\alpha_j \sinh\lambda)^{-1}.

Its logarithmic derivative expands as a power series in ``u = i tanh(lambda)``
whose coefficients are shifted Newton power sums of ``alpha``; that series is
what makes ``alpha`` recoverable from the function.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import chebyshev as C

from .params import (
    EMPTY,
    ROOT_IMAG_TOL,
    Alpha,
    elementary_from_power_sums,
    make_alpha,
    roots_from_elementary,
    shifted_power_sum,
)

__all__ = [
    "ClassBSamples",
    "OrderAmbiguousError",
    "SeriesDivergentError",
    "pi_eval",
    "pi_abs2",
    "log_derivative",
    "log_derivative_series",
    "sample",
    "recover_order",
    "recover_alpha",
    "recover_alpha_from_samples",
    "classb_sup_distance",
    "compactness_bounds",
]

SLOPE_TOL = 0.1
ORDER_LAMBDAS = (6.0, 8.0)
# |alpha_max * tanh(lambda)| on the fitting window; keeps the log series well
# inside its disc of convergence.
FIT_RADIUS = 0.5
FIT_DEGREE = 32


class OrderAmbiguousError(ValueError):
    """The large-lambda decay rate is not close to an integer."""


class SeriesDivergentError(ValueError):
    """Evaluation point outside the disc of convergence of the series."""


@dataclass(frozen=True)
class ClassBSamples:
    """Sampled values ``Pi(alpha, lambda)`` of an unknown class-B function."""

    lambdas: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float).ravel()
        val = np.asarray(self.values, dtype=complex).ravel()
        if lam.shape != val.shape:
            raise ValueError("lambdas and values must have equal length")
        at0 = lam == 0
        if np.any(np.abs(val[at0] - 1) > 1e-12):
            raise ValueError("a class-B function equals 1 at lambda = 0")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "values", val)

    def __len__(self):
        return self.lambdas.size


def _params(alpha) -> np.ndarray:
    return make_alpha(alpha).as_array()


def pi_eval(alpha: Alpha, lam):
    """Evaluate the class-B function at ``lam`` (scalar or array)."""
    a = _params(alpha)
    lam = np.asarray(lam, dtype=float)
    ch, sh = np.cosh(lam)[..., None], np.sinh(lam)[..., None]
    out = np.prod(1.0 / (ch - 1j * a * sh), axis=-1)
    return complex(out) if out.ndim == 0 else out


def pi_abs2(alpha: Alpha, lam):
    """``|Pi(alpha, lam)|**2`` computed without complex arithmetic."""
    a = _params(alpha)
    lam = np.asarray(lam, dtype=float)
    ch2, sh2 = np.cosh(lam)[..., None] ** 2, np.sinh(lam)[..., None] ** 2
    out = np.prod(1.0 / (ch2 + a**2 * sh2), axis=-1)
    return float(out) if out.ndim == 0 else out


def log_derivative(alpha: Alpha, lam):
    """Closed-form ``d/dlam log Pi(alpha, lam)``."""
    a = _params(alpha)
    lam = np.asarray(lam, dtype=float)
    ch, sh = np.cosh(lam)[..., None], np.sinh(lam)[..., None]
    out = -np.sum((sh - 1j * a * ch) / (ch - 1j * a * sh), axis=-1)
    return complex(out) if out.ndim == 0 else out


def log_derivative_series(alpha: Alpha, lam: float, M: int) -> complex:
    """Partial sum ``i * sum_{m<=M} ptilde_m(alpha) (i tanh lam)^m``.

    Raises
    ------
    SeriesDivergentError
        If ``|tanh lam| * max(1, max|alpha|) >= 1``.
    """
    alpha = make_alpha(alpha)
    if M < 0:
        raise ValueError("M must be >= 0")
    t = math.tanh(lam)
    scale = max([1.0] + [abs(v) for v in alpha.values])
    if abs(t) * scale >= 1:
        raise SeriesDivergentError(
            f"series divergent: |tanh({lam})| * {scale:g} = {abs(t) * scale:.3g} >= 1"
        )
    u = 1j * t
    total = 0j
    for m in range(M + 1):
        total += shifted_power_sum(alpha, m) * u**m
    return 1j * total


def sample(alpha: Alpha, lambdas: Sequence[float]) -> ClassBSamples:
    lam = np.asarray(lambdas, dtype=float)
    return ClassBSamples(lam, np.atleast_1d(pi_eval(alpha, lam)))


def recover_order(samples: ClassBSamples, slope_tol: float = SLOPE_TOL) -> int:
    """Number of parameters ``p``, from the decay ``|Pi| ~ const * exp(-p lam)``.

    The slope of ``-log|Pi|`` is taken between the two samples of largest
    ``lambda``.
    """
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    idx = np.argsort(samples.lambdas)[-2:]
    l0, l1 = samples.lambdas[idx]
    if l1 - l0 <= 0:
        raise ValueError("the two largest lambdas must differ")
    a0, a1 = np.abs(samples.values[idx])
    slope = (math.log(a0) - math.log(a1)) / (l1 - l0)
    p = round(slope)
    if abs(slope - p) > slope_tol or p < 0:
        raise OrderAmbiguousError(f"order ambiguous: decay slope {slope:.4f}")
    return int(p)


def _alpha_scale(samples: ClassBSamples, p: int) -> float:
    # exp(p lam) Pi -> 2^p prod (1 - i a_k)^{-1}, so prod(1 + a_k^2) = 4^p / |limit|^2
    # bounds max|a_k|.
    k = int(np.argmax(samples.lambdas))
    lam = samples.lambdas[k]
    limit = abs(samples.values[k]) * math.exp(p * lam)
    bound2 = 4.0**p / limit**2 - 1.0
    return max(1.0, 1.01 * math.sqrt(max(bound2, 0.0)))


def _refined_scale(ps: np.ndarray) -> float:
    # max|a_k| <= sqrt(p_2)
    return max(1.0, 1.01 * math.sqrt(max(ps[1], 0.0)))


def _power_sums_from_window(lam, vals, p: int, tau: float, degree: int) -> np.ndarray:
    """Power sums ``p_1..p_{2p}`` from samples of Pi on a small window.

    Integrating the log-derivative series term by term gives
    ``log(Pi cosh^p) = sum_k p_k u^k / k`` with ``u = i tanh(lam)``; it is
    fitted as a Chebyshev series in the rescaled variable ``tanh(lam)/tau``.
    """
    order = np.argsort(lam)
    lam, vals = lam[order], vals[order]
    y = np.log(np.abs(vals)) + p * np.log(np.cosh(lam))
    phase = np.unwrap(np.angle(vals))
    phase -= np.interp(0.0, lam, phase)  # branch with log Pi(0) = 0
    y = y + 1j * phase
    s = np.tanh(lam) / tau
    deg = min(degree, lam.size - 1)
    if deg < 2 * p:
        raise ValueError(f"need more than {2 * p} samples inside the fitting window")
    with warnings.catch_warnings():
        # one-sided or sparse windows make the high-order part of the
        # Vandermonde system rank deficient; the minimum-norm least-squares
        # solution still pins the low-order coefficients that are used
        warnings.simplefilter("ignore", np.exceptions.RankWarning)
        coef = C.cheb2poly(C.chebfit(s, y, deg))
    k = np.arange(1, 2 * p + 1)
    return (k * coef[1 : 2 * p + 1] / (1j * tau) ** k).real


def _alpha_from_power_sums(ps: np.ndarray, p: int, root_imag_tol: float) -> Alpha:
    es = elementary_from_power_sums(list(ps[:p]), p)
    return roots_from_elementary(es, root_imag_tol=root_imag_tol)


def recover_alpha(
    oracle: Callable[[np.ndarray], np.ndarray],
    p_hint: int | None = None,
    root_imag_tol: float = ROOT_IMAG_TOL,
    n_nodes: int = 65,
) -> Alpha:
    """Reconstruct ``alpha`` from an evaluator ``lam -> Pi(alpha, lam)``.

    The order comes from the large-lambda decay (or ``p_hint``).  The same
    limit bounds ``max|alpha_k|``, which fixes a window where the
    log-derivative series converges fast; its coefficients give the power
    sums, then Newton's identities and a root solve give ``alpha``.
    """
    big = np.asarray(ORDER_LAMBDAS)
    tail = ClassBSamples(big, np.asarray([oracle(x) for x in big], dtype=complex))
    p = recover_order(tail) if p_hint is None else int(p_hint)
    if p == 0:
        return EMPTY
    nodes = np.cos(np.pi * (np.arange(n_nodes) + 0.5) / n_nodes)
    degree = min(FIT_DEGREE, n_nodes - 1)

    def fit(scale):
        tau = FIT_RADIUS / scale
        lam = np.arctanh(tau * nodes)
        vals = np.asarray([oracle(x) for x in lam], dtype=complex)
        return _power_sums_from_window(lam, vals, p, tau, degree)

    # the limit only bounds prod(1 + a_k^2); p_2 from a first pass is much
    # tighter and shrinks the amplification of the higher power sums
    ps = fit(_alpha_scale(tail, p))
    ps = fit(_refined_scale(ps))
    return _alpha_from_power_sums(ps, p, root_imag_tol)


def recover_alpha_from_samples(
    samples: ClassBSamples, root_imag_tol: float = ROOT_IMAG_TOL
) -> Alpha:
    """Same reconstruction as :func:`recover_alpha`, from a fixed sample set.

    The samples must contain two large lambdas (for the order) and enough
    points near ``lambda = 0`` to resolve the series.
    """
    p = recover_order(samples)
    if p == 0:
        return EMPTY

    def fit(scale):
        t = np.abs(np.tanh(samples.lambdas))
        inside = t <= FIT_RADIUS / scale
        if not np.any(inside & (t > 0)):
            raise ValueError("no samples near lambda = 0")
        tau = float(t[inside].max())
        return _power_sums_from_window(
            samples.lambdas[inside], samples.values[inside], p, tau, FIT_DEGREE
        )

    ps = fit(_alpha_scale(samples, p))
    ps = fit(_refined_scale(ps))
    return _alpha_from_power_sums(ps, p, root_imag_tol)


def classb_sup_distance(
    a: Alpha, b: Alpha, lambda_max: float = 3.0, grid_step: float = 0.01
) -> float:
    """Max of ``|Pi(a, lam) - Pi(b, lam)|`` over a grid on ``[-lambda_max, lambda_max]``."""
    if lambda_max <= 0 or grid_step <= 0:
        raise ValueError("lambda_max and grid_step must be positive")
    n = int(round(lambda_max / grid_step))
    lam = np.linspace(-lambda_max, lambda_max, 2 * n + 1)
    return float(np.max(np.abs(pi_eval(a, lam) - pi_eval(b, lam))))


def compactness_bounds(C: float, lambda0: float) -> tuple[float, float]:
    """Bounds implied by ``|Pi(alpha, lambda0)| >= C``.

    Returns ``(alpha_bound, p_bound)`` with every ``|alpha_j| <= alpha_bound``
    and ``p <= p_bound``.  ``p_bound`` is real; callers floor it.
    """
    if not 0 < C < 1:
        raise ValueError(f"C must lie in (0, 1), got {C}")
    if lambda0 <= 0:
        raise ValueError(f"lambda0 must be positive, got {lambda0}")
    return 1.0 / (C * math.sinh(lambda0)), -math.log(C) / math.log(math.cosh(lambda0))
