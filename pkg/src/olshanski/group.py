"""Finite-rank elements of SL(n, C), Haar sampling on SU(n), spherical functions.

Every ``g`` factors as ``u diag(exp(l_1), ..., exp(l_n)) v`` with ``u, v``
unitary and ``sum(l) = 0``; the exponents (log singular values) are the
Cartan profile.  The spherical function of parameter ``alpha`` is the product
of ``Pi(alpha, l_j)`` over the profile, so it only sees singular values and is
SU-biinvariant by construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classb import pi_eval
from .params import Alpha, make_alpha

__all__ = [
    "GroupElement",
    "identity",
    "diag_element",
    "g0",
    "random_sl",
    "random_su",
    "cartan_profile",
    "cartan_profiles",
    "embed",
    "spherical_from_profiles",
    "spherical_eval",
    "SphericalLimitRow",
    "spherical_limit_test",
]

DET_TOL = 1e-8
MAX_REJECTIONS = 100


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An ``n x n`` complex matrix with unit determinant."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        det = np.linalg.det(m)
        if abs(det - 1) > DET_TOL:
            raise ValueError(f"not unimodular: det = {det:.6g}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def inverse(self) -> "GroupElement":
        return GroupElement(np.linalg.inv(self.entries))

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.entries @ other.entries)

    def __repr__(self):
        return f"GroupElement(n={self.n})"


def identity(n: int) -> GroupElement:
    return GroupElement(np.eye(n))


def diag_element(lambdas: Sequence[float]) -> GroupElement:
    """``diag(exp(lambdas))``; the exponents must sum to zero."""
    lam = np.asarray(lambdas, dtype=float)
    return GroupElement(np.diag(np.exp(lam)))


def g0(n: int = 2) -> GroupElement:
    """``diag(e, 1/e, 1, ..., 1)``, the reference element of profile (1, -1, 0, ...)."""
    lam = np.zeros(n)
    lam[:2] = (1.0, -1.0)
    return diag_element(lam)


def _unimodular_scale(m: np.ndarray) -> np.ndarray:
    n = m.shape[-1]
    det = np.linalg.det(m)
    # principal branch of det^(-1/n)
    return m * np.exp(-np.log(det) / n)[..., None, None]


def _gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def random_sl(n: int, seed: int) -> GroupElement:
    """Complex Gaussian matrix rescaled into SL(n, C); deterministic per seed."""
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_REJECTIONS):
        m = _gaussian(rng, (n, n))
        if abs(np.linalg.det(m)) >= 1e-12:
            return GroupElement(_unimodular_scale(m))
    raise RuntimeError(f"{MAX_REJECTIONS} numerically singular draws in a row")


def _haar_su(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """``size`` Haar-distributed SU(n) matrices, shape ``(size, n, n)``."""
    z = _gaussian(rng, (size, n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    q = q * (d / np.abs(d))[:, None, :]
    return _unimodular_scale(q)


def random_su(n: int, seed: int) -> GroupElement:
    """Haar-distributed element of SU(n) (QR with phase fix, then det^(-1/n))."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return GroupElement(_haar_su(np.random.default_rng(seed), n, 1)[0])


def cartan_profiles(matrices: np.ndarray) -> np.ndarray:
    """Cartan profiles of a stack of unimodular matrices, shape ``(..., n)``.

    Log singular values in descending order, with the rounding residual of
    ``sum = 0`` removed uniformly.
    """
    m = np.asarray(matrices, dtype=complex)
    sv = np.linalg.svd(m, compute_uv=False)
    if np.any(sv <= 0):
        raise np.linalg.LinAlgError("singular matrix")
    lam = np.log(sv)
    resid = lam.sum(axis=-1, keepdims=True)
    if np.any(np.abs(resid) > DET_TOL):
        raise ValueError(f"not unimodular: sum of log singular values {np.max(np.abs(resid)):.3g}")
    return lam - resid / lam.shape[-1]


def cartan_profile(g: GroupElement) -> np.ndarray:
    return cartan_profiles(g.entries)


def embed(g: GroupElement, N: int) -> GroupElement:
    """Block-diagonal ``g (+) I_{N-n}``."""
    if N < g.n:
        raise ValueError(f"cannot embed a {g.n}x{g.n} element into dimension {N}")
    m = np.eye(N, dtype=complex)
    m[: g.n, : g.n] = g.entries
    return GroupElement(m)


def spherical_from_profiles(alpha: Alpha, lambdas: np.ndarray) -> np.ndarray:
    """Product of ``Pi(alpha, l_j)`` over the last axis of ``lambdas``."""
    alpha = make_alpha(alpha)
    lam = np.asarray(lambdas, dtype=float)
    if alpha.p == 0:
        return np.ones(lam.shape[:-1], dtype=complex)
    return np.prod(np.asarray(pi_eval(alpha, lam)), axis=-1)


def spherical_eval(alpha: Alpha, g: GroupElement) -> complex:
    """Spherical function ``phi_alpha(g)``."""
    return complex(spherical_from_profiles(alpha, cartan_profile(g)))


@dataclass
class SphericalLimitRow:
    n: int
    estimate: complex
    target: complex
    abs_err: float
    mc_stderr: float


def spherical_limit_test(
    alpha: Alpha,
    x: GroupElement,
    y: GroupElement,
    n_list: Sequence[int],
    mc: int = 4000,
    seed: int = 0,
) -> list[SphericalLimitRow]:
    """Monte Carlo check of ``int_{SU(n)} phi(x k y) dk -> phi(x) phi(y)``.

    For each ``n`` the draws come from a generator seeded by ``(seed, n)``,
    so results do not depend on the order in which ``n_list`` is processed.
    """
    alpha = make_alpha(alpha)
    if mc < 2:
        raise ValueError("mc must be >= 2")
    if list(n_list) != sorted(n_list):
        raise ValueError("n_list must be ascending")
    target = spherical_eval(alpha, x) * spherical_eval(alpha, y)
    rows = []
    for n in n_list:
        if n < max(x.n, y.n):
            raise ValueError(f"n={n} smaller than the element dimensions")
        xe, ye = embed(x, n).entries, embed(y, n).entries
        rng = np.random.default_rng([seed, n])
        k = _haar_su(rng, n, mc)
        vals = spherical_from_profiles(alpha, cartan_profiles(xe @ k @ ye))
        est = complex(vals.mean())
        se = float(np.std(vals, ddof=1) / math.sqrt(mc))
        rows.append(SphericalLimitRow(n, est, target, abs(est - target), se))
    return rows
