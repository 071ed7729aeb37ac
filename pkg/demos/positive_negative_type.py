"""
Functions of positive and negative type
=======================================

``f`` is of positive type when every Gram matrix ``[f(g_j^-1 g_i)]`` is
positive semidefinite.  ``psi`` is of negative type when those Gram matrices
are negative on vectors with zero sum, and Schoenberg's theorem ties the two:
``psi`` is of negative type exactly when every ``exp(-t psi)`` is of positive
type.
"""

import numpy as np

from olshanski import (
    negtype_check,
    pair_profiles,
    psd_check,
    random_sl,
    schoenberg_check,
    spherical_from_profiles,
)

elements = [random_sl(6, seed=s) for s in range(40)]
lam = pair_profiles(elements)  # one SVD batch serves every Gram matrix below

for alpha in [(0.0,), (1.0,), (-1.0, 2.0), (0.5, 0.5, 3.0)]:
    rep = psd_check(spherical_from_profiles(alpha, lam))
    print(f"phi_{alpha}: min eigenvalue {rep.extremal_eigenvalue:.3f}, passed {rep.passed}")

# psi = 1 - phi is of negative type; flipping its sign breaks both sides of
# the criterion, and the report names a violating zero-sum vector.
K = 1 - spherical_from_profiles((0.0,), lam)
good = schoenberg_check(K, elements)
bad = schoenberg_check(-K, elements)
print("psi = 1 - phi:", good.passed, [round(r.extremal_eigenvalue, 3) for r in good.exp_reports])
print("psi = phi - 1:", bad.passed, [r.passed for r in bad.exp_reports])
w = negtype_check(-K).witness
print("witness sum", abs(w.sum()), "form value", float((w.conj() @ (-K) @ w).real))
