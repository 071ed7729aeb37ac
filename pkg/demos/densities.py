"""
Class-B functions as characteristic functions
=============================================

Each single-parameter function ``Pi((a,), .)`` is the characteristic function
of an explicit probability density ``g_a``.  A tuple of parameters then
corresponds to the convolution of the single-factor densities.  We check this
numerically, then watch ``(1/n,)`` converge to ``(0,)``.
"""

import numpy as np

from olshanski import (
    char_function,
    convolve,
    density_grid,
    make_alpha,
    pi_eval,
    weak_convergence_check,
)

lam = np.linspace(-3, 3, 601)

# g_0 is the hyperbolic secant density; its transform is 1/cosh.
for a in (0.0, 0.5, -2.0):
    d = density_grid((a,), t_max=40, step=0.01)
    err = np.max(np.abs(char_function(d, lam) - pi_eval((a,), lam)))
    print(f"a = {a:+.1f}: mass {d.mass():.9f}, transform error {err:.1e}")

# Convolution on the grid against the two-parameter function.
d = convolve(density_grid((0.5,)), density_grid((2.0,)))
err = np.max(np.abs(char_function(d, lam) - pi_eval((0.5, 2.0), lam)))
peak = d.t[np.argmax(d.values)]
print(f"g_0.5 * g_2: mass {d.mass():.9f}, transform error {err:.1e}, mode at t = {peak:.2f}")

# Weak convergence is uniform convergence of characteristic functions on
# compacts, which here is the sup distance between class-B functions.
ns = [1, 2, 5, 10, 100, 1000]
rep = weak_convergence_check([make_alpha([1 / n]) for n in ns], (0.0,), 3.0, 1e-3)
for n, dist in zip(ns, rep.distances):
    print(f"  n = {n:4d}: sup distance {dist:.3e}")
print("converged within 1e-3 from n =", ns[rep.eventually_from])
