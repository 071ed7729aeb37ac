"""
Spherical functions on SL(n, C)
===============================

A unimodular matrix is ``u diag(exp(l)) v`` with unitary ``u, v``; the
exponents ``l`` form its Cartan profile.  The spherical function with
parameter ``alpha`` is the product of ``Pi(alpha, l_j)`` over the profile.

We check biinvariance and then the functional equation
``int phi(x k y) dk = phi(x) phi(y)``, which only holds in the limit
``n -> infinity``.
"""

import numpy as np

from olshanski import (
    cartan_profile,
    embed,
    g0,
    random_sl,
    random_su,
    spherical_eval,
    spherical_limit_test,
)

g = random_sl(5, seed=1)
print("profile of a random SL(5) element:", np.round(cartan_profile(g), 4))
print("profile of its inverse:           ", np.round(cartan_profile(g.inverse()), 4))

alpha = (0.0, 1.5)
u, v = random_su(5, seed=2), random_su(5, seed=3)
print("phi(g)      =", spherical_eval(alpha, g))
print("phi(u g v)  =", spherical_eval(alpha, u @ g @ v))
print("phi(g (+) I) =", spherical_eval(alpha, embed(g, 9)))

# g0 = diag(e, 1/e).  For alpha = (0,) phi(g0) = sech(1)^2, so the target of
# the functional equation is sech(1)^4.
rows = spherical_limit_test((0.0,), g0(), g0(), [2, 4, 8, 16, 32], mc=4000, seed=0)
print(f"target {rows[0].target.real:.7f}")
for r in rows:
    print(f"  n = {r.n:2d}: average {r.estimate.real:.7f}  error {r.abs_err:.2e}  (MC s.e. {r.mc_stderr:.1e})")
