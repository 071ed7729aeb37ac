"""Positive-type, negative-type and Schoenberg certification on Gram matrices.

The Gram matrix of ``f`` on elements ``g_1..g_N`` is ``K_ij = f(g_j^-1 g_i)``.
``f`` is of positive type iff every such matrix is positive semidefinite;
``psi`` is of negative type iff ``c^H K c <= 0`` whenever ``sum(c) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .group import GroupElement, cartan_profiles, identity

__all__ = [
    "GramReport",
    "SchoenbergReport",
    "gram_matrix",
    "pair_profiles",
    "psd_check",
    "negtype_check",
    "schoenberg_check",
]

DEFAULT_TOL = 1e-8


@dataclass
class GramReport:
    size: int
    hermiticity_defect: float
    extremal_eigenvalue: float
    passed: bool
    witness: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = [[float(z.real), float(z.imag)] for z in self.witness]
        return {
            "size": self.size,
            "hermiticity_defect": float(self.hermiticity_defect),
            "extremal_eigenvalue": float(self.extremal_eigenvalue),
            "passed": bool(self.passed),
            "witness": w,
        }


def _check_elements(elements: Sequence[GroupElement]) -> None:
    if not elements:
        raise ValueError("need at least one element")
    dims = {g.n for g in elements}
    if len(dims) != 1:
        raise ValueError(f"elements have different dimensions: {sorted(dims)}")


def gram_matrix(
    f: Callable[[GroupElement], complex], elements: Sequence[GroupElement]
) -> np.ndarray:
    """``K_ij = f(g_j^-1 g_i)`` for an arbitrary function on the group."""
    _check_elements(elements)
    inv = [g.inverse() for g in elements]
    N = len(elements)
    K = np.empty((N, N), dtype=complex)
    for i, gi in enumerate(elements):
        for j in range(N):
            K[i, j] = f(inv[j] @ gi)
    return K


def pair_profiles(elements: Sequence[GroupElement]) -> np.ndarray:
    """Cartan profiles of all ``g_j^-1 g_i``, shape ``(N, N, n)``.

    Biinvariant functions depend on the element only through its profile,
    so one batched SVD serves every Gram matrix on the same element set.
    """
    _check_elements(elements)
    G = np.stack([g.entries for g in elements])
    Ginv = np.linalg.inv(G)
    prods = np.einsum("jab,ibc->ijac", Ginv, G)
    return cartan_profiles(prods)


def _hermitian_defect(K: np.ndarray) -> float:
    return float(np.max(np.abs(K - K.conj().T))) if K.size else 0.0


def _slack(K: np.ndarray, tol: float) -> float:
    return tol * (1.0 + float(np.max(np.abs(K)))) * K.shape[0]


def psd_check(K: np.ndarray, tol: float = DEFAULT_TOL) -> GramReport:
    """Certify that ``K`` is Hermitian positive semidefinite within ``tol``.

    The eigenvalue slack is ``tol * (1 + max|K_ij|) * size``.  On failure the
    witness is the eigenvector of the smallest eigenvalue.
    """
    K = np.asarray(K, dtype=complex)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError("K must be square")
    defect = _hermitian_defect(K)
    H = 0.5 * (K + K.conj().T)
    w, v = np.linalg.eigh(H)
    ok_eig = w[0] >= -_slack(K, tol)
    passed = bool(defect <= tol and ok_eig)
    witness = None if ok_eig else v[:, 0]
    return GramReport(K.shape[0], defect, float(w[0]), passed, witness)


def negtype_check(K: np.ndarray, tol: float = DEFAULT_TOL) -> GramReport:
    """Certify ``c^H K c <= 0`` on the subspace ``sum(c) = 0``.

    Equivalent to ``-P K P`` being positive semidefinite with
    ``P = I - J/N`` the projector onto that subspace; the witness (on
    failure) is a violating ``c`` with ``sum(c) = 0``.
    """
    K = np.asarray(K, dtype=complex)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError("K must be square")
    N = K.shape[0]
    defect = _hermitian_defect(K)
    P = np.eye(N) - np.full((N, N), 1.0 / N)
    M = -P @ K @ P
    H = 0.5 * (M + M.conj().T)
    w, v = np.linalg.eigh(H)
    ok_eig = w[0] >= -_slack(K, tol)
    witness = None
    if not ok_eig:
        c = P @ v[:, 0]
        witness = c / np.linalg.norm(c)
    passed = bool(defect <= tol and ok_eig)
    return GramReport(N, defect, float(w[0]), passed, witness)


@dataclass
class SchoenbergReport:
    t_list: list[float]
    exp_reports: list[GramReport]
    negtype: GramReport
    psi_at_e: complex
    passed: bool

    def to_dict(self) -> dict:
        return {
            "passed": bool(self.passed),
            "psi_at_e": [float(self.psi_at_e.real), float(self.psi_at_e.imag)],
            "negtype": self.negtype.to_dict(),
            "exp_positive": [
                {"t": float(t), **r.to_dict()} for t, r in zip(self.t_list, self.exp_reports)
            ],
        }


def schoenberg_check(
    psi: Callable[[GroupElement], complex] | np.ndarray,
    elements: Sequence[GroupElement],
    t_list: Sequence[float] = (0.1, 1.0, 10.0),
    tol: float = DEFAULT_TOL,
) -> SchoenbergReport:
    """Test both sides of Schoenberg's criterion on one element set.

    ``psi`` may be a function on the group or its precomputed Gram matrix on
    ``elements``.  Passes iff ``psi(e) >= 0``, the Gram of ``psi`` is of
    negative type and the Gram of ``exp(-t psi)`` is positive semidefinite for
    every ``t`` in ``t_list``.
    """
    if any(t <= 0 for t in t_list):
        raise ValueError("t_list must be positive")
    _check_elements(elements)
    if callable(psi):
        K = gram_matrix(psi, elements)
        psi_e = complex(psi(identity(elements[0].n)))
    else:
        K = np.asarray(psi, dtype=complex)
        # K_ii = psi(e)
        psi_e = complex(np.mean(np.diag(K)))
    exp_reports = [psd_check(np.exp(-t * K), tol) for t in t_list]
    neg = negtype_check(K, tol)
    psi_e_ok = psi_e.real >= -tol and abs(psi_e.imag) <= tol
    passed = psi_e_ok and neg.passed and all(r.passed for r in exp_reports)
    return SchoenbergReport(list(t_list), exp_reports, neg, psi_e, passed)
