"""
Representing functions by measures on the parameters
=====================================================

A positive measure on the parameter space synthesizes a function of positive
type, ``phi = sum w_k phi_k``, and one of negative type,
``psi = psi(e) + sum w_k (1 - phi_k)``.  The second form is bounded by
``psi(e) + 2 mu(R*)``, where ``R*`` excludes the empty parameter (mass there
cancels).  We look at the bound and then recover the measure from values.
"""

import warnings

import numpy as np

from olshanski import (
    EMPTY,
    DiscreteParamMeasure,
    boundedness_check,
    design_elements,
    fit_measure,
    synth_negative,
)

mu = DiscreteParamMeasure.from_pairs([((0.0,), 0.7), ((-1.0, 2.0), 0.5)])
psi0 = 0.2

rep = boundedness_check(mu, psi0, n=6, num_samples=200)
print(f"bound {rep.bound}, largest observed deviation {rep.observed_sup:.4f}")
for l, dev in list(zip(rep.stress_lambdas, rep.stress_values))[::3]:
    print(f"  diag(e^{l:.0f}, e^-{l:.0f}, ...): |psi - psi(e)| = {dev:.6f}")

# Fit psi back from 60 quasi-random diagonal elements.  Mass on the empty
# parameter is added to the data to show that it leaves no trace.
noisy = DiscreteParamMeasure(mu.atoms + (EMPTY,), mu.weights + (5.0,))
design = design_elements(4, 60, seed=0)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    data = [(g, synth_negative(noisy, psi0, g)) for g in design]
grid = [EMPTY, (0.0,), (1.0,), (-1.0,), (-1.0, 2.0), (0.0, 0.0)]
fit = fit_measure(data, grid, kind="negative")
print(f"fitted psi(e) = {fit.psi_at_e:.8f}")
for a, w in zip(fit.measure.atoms, fit.measure.weights):
    print(f"  {a}: {w:.8f}")
print("not identifiable from psi:", fit.non_identifiable)
