"""
Class-B functions and recovering their parameters
=================================================

A finite tuple of reals ``alpha`` defines

    Pi(alpha, lam) = prod_k 1 / (cosh(lam) - i alpha_k sinh(lam)).

This script evaluates a few of them, compares the logarithmic derivative with
its power series, and then reconstructs ``alpha`` from the function values
alone.
"""

import numpy as np

from olshanski import (
    log_derivative,
    log_derivative_series,
    make_alpha,
    pi_eval,
    recover_alpha,
    recover_order,
    sample,
)

# Pi is normalized at the origin and decays like exp(-p |lam|), so the
# number of parameters can be read off the tail.
alpha = make_alpha([-1.0, 0.5, 2.0])
lam = np.array([0.0, 0.5, 1.0, 2.0, 4.0])
print("alpha =", alpha)
for l, v in zip(lam, pi_eval(alpha, lam)):
    print(f"  Pi({l:3.1f}) = {v.real:+.6f} {v.imag:+.6f}i   |Pi| = {abs(v):.3e}")

# With one parameter equal to 1 and lam = log 2 the value is 10/17 + 6i/17.
print("Pi((1,), log 2) =", pi_eval((1.0,), np.log(2.0)), " exact:", complex(10, 6) / 17)

# The log-derivative is a power series in i tanh(lam) whose coefficients are
# shifted power sums of alpha.  It converges while |tanh lam| max|alpha| < 1.
for M in (4, 8, 16, 32):
    err = abs(log_derivative_series(alpha, 0.3, M) - log_derivative(alpha, 0.3))
    print(f"  series with {M:2d} terms: error {err:.2e}")

# Recovery goes backwards: the decay rate gives p, the Taylor coefficients
# near lam = 0 give power sums, and Newton's identities plus a root finder
# return the parameters.
p = recover_order(sample(alpha, [6.0, 8.0]))
back = recover_alpha(lambda l: pi_eval(alpha, l))
print("recovered order", p, "and parameters", back)
print("max error", np.max(np.abs(back.as_array() - alpha.as_array())))
