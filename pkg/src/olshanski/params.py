"""Parameter space of the spherical dual.

A parameter is a finite non-decreasing tuple of reals ``(a_1 <= ... <= a_p)``.
The strata with different ``p`` are open and closed in the parameter space,
so points of different length are never close to each other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Alpha",
    "EMPTY",
    "make_alpha",
    "power_sum",
    "shifted_power_sum",
    "param_distance",
    "elementary_from_power_sums",
    "roots_from_elementary",
    "NonRealSpectrumError",
]

ROOT_IMAG_TOL = 1e-6


class NonRealSpectrumError(ValueError):
    """The reconstructed polynomial has roots off the real axis."""


@dataclass(frozen=True)
class Alpha:
    """A point of the parameter space; ``values`` is sorted ascending."""

    values: tuple[float, ...] = ()

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite parameter in {vals!r}")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"parameters must be sorted ascending, got {vals!r}")
        object.__setattr__(self, "values", vals)

    @property
    def p(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        if not self.values:
            return "Alpha(∅)"
        return f"Alpha({', '.join(repr(v) for v in self.values)})"


EMPTY = Alpha(())


def make_alpha(values: Iterable[float] | Alpha = ()) -> Alpha:
    """Canonicalize ``values`` into a parameter (sorted, multiplicities kept)."""
    if isinstance(values, Alpha):
        return values
    vals = [float(v) for v in values]
    if not all(math.isfinite(v) for v in vals):
        raise ValueError(f"non-finite parameter in {vals!r}")
    return Alpha(tuple(sorted(vals)))


def power_sum(alpha: Alpha, m: int) -> float:
    """Newton power sum ``sum_k alpha_k**m``, with the convention ``p_{-1} = 0``."""
    if m < -1:
        raise ValueError(f"power sum order must be >= -1, got {m}")
    if m == -1:
        return 0.0
    if m == 0:
        return float(alpha.p)
    return float(np.sum(alpha.as_array() ** m))


def shifted_power_sum(alpha: Alpha, m: int) -> float:
    """``p_{m+1} + p_{m-1}``, the coefficients of the log-derivative series."""
    if m < 0:
        raise ValueError(f"shifted power sum order must be >= 0, got {m}")
    return power_sum(alpha, m + 1) + power_sum(alpha, m - 1)


def param_distance(a: Alpha, b: Alpha) -> float:
    """Sup distance within a stratum; ``inf`` across strata."""
    if a.p != b.p:
        return math.inf
    if a.p == 0:
        return 0.0
    return float(np.max(np.abs(a.as_array() - b.as_array())))


def elementary_from_power_sums(ps: Sequence[float], p: int) -> list[float]:
    """Elementary symmetric values ``e_1..e_p`` from power sums ``p_1..p_p``.

    Uses Newton's identities ``k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i``.
    """
    if len(ps) != p:
        raise ValueError(f"expected {p} power sums, got {len(ps)}")
    e = [1.0]
    for k in range(1, p + 1):
        acc = 0.0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * ps[i - 1]
        e.append(acc / k)
    return e[1:]


def roots_from_elementary(
    es: Sequence[float], root_imag_tol: float = ROOT_IMAG_TOL
) -> Alpha:
    """Sorted real roots of ``x^p - e_1 x^(p-1) + e_2 x^(p-2) - ...``.

    Roots come from the companion-matrix eigenvalues (``numpy.roots``).

    Raises
    ------
    NonRealSpectrumError
        If a root has imaginary part larger than ``root_imag_tol``.
    """
    p = len(es)
    if p == 0:
        return EMPTY
    coeffs = [1.0] + [(-1) ** k * float(e) for k, e in enumerate(es, start=1)]
    roots = np.roots(coeffs)
    if len(roots) < p:
        # numpy.roots strips trailing zero coefficients, i.e. roots at 0
        roots = np.concatenate([roots, np.zeros(p - len(roots))])
    worst = float(np.max(np.abs(roots.imag)))
    if worst > root_imag_tol:
        raise NonRealSpectrumError(
            f"non-real spectrum: root imaginary part {worst:.3g} exceeds {root_imag_tol:.3g}"
        )
    return make_alpha(roots.real)
