"""Biinvariant functions of positive and negative type from discrete measures.

A positive bounded measure ``mu`` on the parameter space defines

* a function of positive type  ``phi(g) = sum_k w_k phi_{alpha_k}(g)``,
* a function of negative type  ``psi(g) = psi(e) + sum_k w_k (1 - phi_{alpha_k}(g))``.

Every continuous biinvariant function of negative type has the second form,
which makes it bounded by ``psi(e) + 2 mu(R*)``.  Mass at the empty
parameter is invisible to ``psi`` because ``phi_empty == 1``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import nnls
from scipy.stats import qmc

from .group import (
    GroupElement,
    cartan_profile,
    cartan_profiles,
    diag_element,
    random_sl,
    spherical_from_profiles,
)
from .params import Alpha, make_alpha

__all__ = [
    "DiscreteParamMeasure",
    "synth_positive",
    "synth_negative",
    "positive_from_profiles",
    "negative_from_profiles",
    "BoundednessReport",
    "boundedness_check",
    "FitResult",
    "fit_measure",
    "design_elements",
    "stress_profiles",
]

REG_TOL = 1e-10
COND_WARN = 1e10


@dataclass(frozen=True)
class DiscreteParamMeasure:
    """Finitely many atoms with nonnegative weights; duplicates are merged."""

    atoms: tuple[Alpha, ...] = ()
    weights: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.atoms) != len(self.weights):
            raise ValueError("atoms and weights must have equal length")
        merged: dict[Alpha, float] = {}
        for a, w in zip(self.atoms, self.weights):
            w = float(w)
            if not (w >= 0 and math.isfinite(w)):
                raise ValueError(f"weights must be finite and nonnegative, got {w}")
            a = make_alpha(a)
            merged[a] = merged.get(a, 0.0) + w
        object.__setattr__(self, "atoms", tuple(merged))
        object.__setattr__(self, "weights", tuple(merged.values()))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Iterable[float], float]]):
        pairs = list(pairs)
        return cls(tuple(make_alpha(a) for a, _ in pairs), tuple(w for _, w in pairs))

    @property
    def total_weight(self) -> float:
        return float(sum(self.weights))

    def restricted(self) -> "DiscreteParamMeasure":
        """Restriction to ``R*`` (drops the empty parameter)."""
        keep = [(a, w) for a, w in zip(self.atoms, self.weights) if a.p > 0]
        return DiscreteParamMeasure(tuple(a for a, _ in keep), tuple(w for _, w in keep))

    def weight_of(self, alpha) -> float:
        alpha = make_alpha(alpha)
        return dict(zip(self.atoms, self.weights)).get(alpha, 0.0)

    def __len__(self):
        return len(self.atoms)


def positive_from_profiles(mu: DiscreteParamMeasure, lambdas: np.ndarray) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float)
    out = np.zeros(lam.shape[:-1], dtype=complex)
    for a, w in zip(mu.atoms, mu.weights):
        out += w * spherical_from_profiles(a, lam)
    return out


def negative_from_profiles(
    mu: DiscreteParamMeasure, psi0: float, lambdas: np.ndarray
) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float)
    out = np.full(lam.shape[:-1], float(psi0), dtype=complex)
    for a, w in zip(mu.atoms, mu.weights):
        if a.p > 0:
            out += w * (1.0 - spherical_from_profiles(a, lam))
    return out


def synth_positive(mu: DiscreteParamMeasure, g: GroupElement) -> complex:
    """``sum_k w_k phi_{alpha_k}(g)``; equals ``mu.total_weight`` at the identity."""
    return complex(positive_from_profiles(mu, cartan_profile(g)))


def _check_psi0(psi0: float) -> None:
    if not psi0 >= 0:
        raise ValueError(f"psi(e) must be >= 0, got {psi0}")


def synth_negative(mu: DiscreteParamMeasure, psi0: float, g: GroupElement) -> complex:
    """``psi0 + sum_k w_k (1 - phi_{alpha_k}(g))``.

    Atoms at the empty parameter contribute nothing and trigger a warning.
    """
    _check_psi0(psi0)
    if any(a.p == 0 and w > 0 for a, w in zip(mu.atoms, mu.weights)):
        warnings.warn("mass at the empty parameter does not affect psi; dropped", stacklevel=2)
    return complex(negative_from_profiles(mu, psi0, cartan_profile(g)))


def stress_profiles(n: int, lambdas: Sequence[float] = tuple(range(1, 11))) -> np.ndarray:
    """Profiles ``(l, -l, 0, ..., 0)`` of ``diag(e^l, e^-l, 1, ...)``."""
    out = np.zeros((len(lambdas), n))
    out[:, 0] = lambdas
    out[:, 1] = -np.asarray(lambdas, dtype=float)
    return out


@dataclass
class BoundednessReport:
    bound: float
    observed_sup: float
    random_sup: float
    stress_lambdas: list[float]
    stress_values: list[float]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "observed_sup": self.observed_sup,
            "random_sup": self.random_sup,
            "stress": [
                {"lambda": l, "abs_dev": v} for l, v in zip(self.stress_lambdas, self.stress_values)
            ],
            "passed": self.passed,
        }


def boundedness_check(
    mu: DiscreteParamMeasure,
    psi0: float,
    n: int = 6,
    num_samples: int = 200,
    seed: int = 0,
    stress: Sequence[float] = tuple(float(l) for l in range(1, 11)),
) -> BoundednessReport:
    """Observed ``sup |psi(g) - psi(e)|`` against the bound ``2 mu(R*)``.

    Samples are random SL(n) elements plus the stress elements
    ``diag(e^l, e^-l, 1, ...)``, along which ``psi - psi(e)`` tends to
    ``mu(R*)`` as ``l`` grows.
    """
    _check_psi0(psi0)
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    if n < 2:
        raise ValueError("n must be >= 2")
    seeds = np.random.SeedSequence(seed).generate_state(num_samples)
    mats = np.stack([random_sl(n, int(s)).entries for s in seeds])
    rand = np.abs(negative_from_profiles(mu, psi0, cartan_profiles(mats)) - psi0)
    st = np.abs(negative_from_profiles(mu, psi0, stress_profiles(n, stress)) - psi0)
    sup = float(max(rand.max(), st.max() if st.size else 0.0))
    bound = 2.0 * mu.restricted().total_weight
    return BoundednessReport(
        bound,
        sup,
        float(rand.max()),
        [float(l) for l in stress],
        [float(v) for v in st],
        sup <= bound + 1e-10,
    )


def design_elements(n: int, num: int, seed: int = 0, half_width: float = 2.0) -> list[GroupElement]:
    """Diagonal elements with zero-sum profiles from a scrambled Halton sequence in
    ``[-half_width, half_width]^n``."""
    seq = qmc.Halton(d=n, scramble=True, seed=seed)
    pts = (2.0 * seq.random(num) - 1.0) * half_width
    pts -= pts.mean(axis=1, keepdims=True)
    return [diag_element(row) for row in pts]


@dataclass
class FitResult:
    measure: DiscreteParamMeasure
    residual: float
    condition: float
    psi_at_e: float | None = None
    non_identifiable: list[Alpha] = field(default_factory=list)

    def to_dict(self) -> dict:
        from .io import measure_to_dict

        d = measure_to_dict(self.measure, self.psi_at_e)
        d.update(
            residual=self.residual,
            condition=self.condition,
            non_identifiable=[list(a.values) for a in self.non_identifiable],
        )
        return d


def _solve_nnls(A: np.ndarray, b: np.ndarray, reg_tol: float) -> tuple[np.ndarray, float, float]:
    Ar = np.vstack([A.real, A.imag])
    br = np.concatenate([b.real, b.imag])
    if Ar.shape[1] == 0:
        return np.zeros(0), float(np.linalg.norm(br)), 1.0
    cond = float(np.linalg.cond(Ar))
    if cond > COND_WARN:
        warnings.warn(f"ill-conditioned design (condition number {cond:.2e})", stacklevel=3)
    w, _ = nnls(Ar, br, maxiter=50 * Ar.shape[1])
    w[w < reg_tol] = 0.0
    return w, float(np.linalg.norm(Ar @ w - br)), cond


def fit_measure(
    values: Sequence[tuple[GroupElement, complex]],
    grid: Sequence[Alpha],
    reg_tol: float = REG_TOL,
    kind: str = "positive",
) -> FitResult:
    """Nonnegative least-squares fit of a discrete representing measure.

    ``kind="positive"`` fits ``phi(g) = sum_k w_k phi_{alpha_k}(g)``.
    ``kind="negative"`` fits ``psi(g) = c + sum_k w_k (1 - phi_{alpha_k}(g))``
    with ``c = psi(e) >= 0`` as an extra unknown; grid atoms at the empty
    parameter are then not identifiable and are reported, not fitted.
    """
    if not grid:
        raise ValueError("grid must be nonempty")
    if kind not in ("positive", "negative"):
        raise ValueError(f"unknown kind {kind!r}")
    grid = [make_alpha(a) for a in grid]
    mats = np.stack([g.entries for g, _ in values])
    b = np.asarray([v for _, v in values], dtype=complex)
    lam = cartan_profiles(mats)
    if kind == "positive":
        cols = [spherical_from_profiles(a, lam) for a in grid]
        A = np.stack(cols, axis=1)
        w, res, cond = _solve_nnls(A, b, reg_tol)
        return FitResult(DiscreteParamMeasure(tuple(grid), tuple(w)), res, cond)
    fitted = [a for a in grid if a.p > 0]
    hidden = [a for a in grid if a.p == 0]
    cols = [np.ones(len(b), dtype=complex)]
    cols += [1.0 - spherical_from_profiles(a, lam) for a in fitted]
    A = np.stack(cols, axis=1)
    w, res, cond = _solve_nnls(A, b, reg_tol)
    mu = DiscreteParamMeasure(tuple(fitted), tuple(w[1:]))
    return FitResult(mu, res, cond, psi_at_e=float(w[0]), non_identifiable=hidden)
