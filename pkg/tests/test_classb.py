import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from olshanski.classb import (
    ClassBSamples,
    OrderAmbiguousError,
    SeriesDivergentError,
    classb_sup_distance,
    compactness_bounds,
    log_derivative,
    log_derivative_series,
    pi_abs2,
    pi_eval,
    recover_alpha,
    recover_alpha_from_samples,
    recover_order,
    sample,
)
from olshanski.params import EMPTY, make_alpha, param_distance, power_sum

from conftest import random_alpha

alphas = st.lists(st.floats(-10, 10), max_size=5).map(make_alpha)
lams = st.floats(-6, 6)


def naive_pi(alpha, lam):
    # direct product with cmath, one factor at a time
    out = 1 + 0j
    for a in alpha:
        out /= complex(math.cosh(lam), -a * math.sinh(lam))
    return out


def test_pi_eval_examples():
    assert pi_eval(EMPTY, 3.7) == 1
    assert pi_eval((0,), 1.0) == pytest.approx(0.6480543, abs=1e-7)
    assert pi_eval((0,), 1.0) == pytest.approx(1 / math.cosh(1))
    z = pi_eval((1,), math.log(2))
    assert z.real == pytest.approx(0.5882353, abs=1e-7)
    assert z.imag == pytest.approx(0.3529412, abs=1e-7)
    assert z == pytest.approx(1 / (1.25 - 0.75j))


@given(alphas, lams)
def test_pi_eval_matches_naive_product(alpha, lam):
    assert abs(pi_eval(alpha, lam) - naive_pi(alpha, lam)) <= 1e-13


def test_pi_eval_vectorized():
    lam = np.linspace(-2, 2, 7)
    a = make_alpha([0.3, -1.2])
    np.testing.assert_allclose(pi_eval(a, lam), [naive_pi(a, x) for x in lam], atol=1e-14)


def test_pi_abs2_examples():
    assert pi_abs2(EMPTY, 2.0) == 1
    assert pi_abs2((1,), math.log(2)) == pytest.approx(0.4705882, abs=1e-7)
    assert pi_abs2((0,), 1.0) == pytest.approx(0.4199743, abs=1e-7)


@given(alphas, lams)
def test_pi_abs2_is_modulus_squared(alpha, lam):
    assert abs(pi_abs2(alpha, lam) - abs(pi_eval(alpha, lam)) ** 2) <= 1e-12


@given(alphas, lams)
def test_pi_bounded_and_normalized(alpha, lam):
    assert pi_eval(alpha, 0.0) == 1
    mod = abs(pi_eval(alpha, lam))
    assert mod <= 1 + 1e-15
    if alpha.p >= 1 and abs(lam) > 1e-3:
        assert mod < 1


@given(alphas, lams)
def test_conjugate_symmetry(alpha, lam):
    assert abs(pi_eval(alpha, -lam) - pi_eval(alpha, lam).conjugate()) <= 1e-12


def test_log_derivative_examples():
    assert log_derivative((1, 2), 0.0) == pytest.approx(3j)
    assert log_derivative(EMPTY, 1.3) == 0
    for lam in (-1.0, 0.3, 2.0):
        assert log_derivative((0,), lam) == pytest.approx(-math.tanh(lam))


@given(alphas, st.floats(-3, 3))
def test_log_derivative_vs_central_differences(alpha, lam):
    h = 1e-5
    fd = (pi_eval(alpha, lam + h) - pi_eval(alpha, lam - h)) / (2 * h) / pi_eval(alpha, lam)
    assert abs(log_derivative(alpha, lam) - fd) <= 1e-6 * max(1.0, abs(fd))


def test_log_derivative_series_examples():
    a = make_alpha([1, 2])
    assert log_derivative_series(a, 0.0, 7) == pytest.approx(1j * power_sum(a, 1))
    assert log_derivative_series((1,), 0.2, 40) == pytest.approx(
        log_derivative((1,), 0.2), abs=1e-10
    )
    assert log_derivative_series(EMPTY, 0.5, 10) == 0


def test_log_derivative_series_domain():
    with pytest.raises(SeriesDivergentError):
        log_derivative_series((3,), 0.5, 10)
    with pytest.raises(SeriesDivergentError):
        log_derivative_series((-2,), 1.0, 10)


@pytest.mark.parametrize("alpha", [(0.4,), (-1.5, 0.7), (0.2, 1.9, -1.0)])
def test_log_derivative_series_geometric_decay(alpha):
    a = make_alpha(alpha)
    scale = max(1.0, max(abs(x) for x in a.values))
    lam = math.atanh(0.5 / scale)
    exact = log_derivative(a, lam)
    errs = [abs(log_derivative_series(a, lam, M) - exact) for M in range(0, 41, 2)]
    for prev, nxt in zip(errs, errs[1:]):
        if prev < 1e-13:
            break
        assert nxt <= 0.5 * prev


def test_recover_order_examples():
    assert recover_order(sample(EMPTY, [5, 6])) == 0
    assert recover_order(sample((0,), [5, 6])) == 1
    assert recover_order(sample((1, 2, 3), [6, 8])) == 3


def test_recover_order_ambiguous():
    s = ClassBSamples(np.array([5.0, 6.0]), np.array([1e-3, 1e-3 * math.exp(-1.5)]))
    with pytest.raises(OrderAmbiguousError):
        recover_order(s)


def test_samples_validation():
    with pytest.raises(ValueError):
        ClassBSamples(np.array([0.0, 1.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        ClassBSamples(np.array([0.0]), np.array([0.5]))


@pytest.mark.parametrize("alpha", [(), (0,), (-1, 0.5, 2), (0.5, 0.5), (-3, 3), (2.9, 3, -3, 0)])
def test_recover_alpha_examples(alpha):
    a = make_alpha(alpha)
    got = recover_alpha(lambda lam: pi_eval(a, lam))
    assert got.p == a.p
    assert param_distance(got, a) <= 1e-4


def test_recover_alpha_p_hint():
    a = make_alpha([-0.7, 1.1])
    assert param_distance(recover_alpha(lambda l: pi_eval(a, l), p_hint=2), a) <= 1e-4


def test_recover_alpha_random():
    rng = np.random.default_rng(7)
    for _ in range(100):
        a = random_alpha(rng)
        assert param_distance(recover_alpha(lambda l: pi_eval(a, l)), a) <= 1e-4


@pytest.mark.parametrize("alpha", [(), (0,), (-1, 0.5, 2)])
def test_recover_from_samples(alpha):
    a = make_alpha(alpha)
    lam = np.concatenate([np.arange(-0.2, 0.2001, 0.002), [6.0, 8.0]])
    got = recover_alpha_from_samples(sample(a, lam))
    assert param_distance(got, a) <= 1e-4


def test_sup_distance_examples():
    a = make_alpha([0.3, -2])
    assert classb_sup_distance(a, a, 3, 0.01) == 0
    # |1 - sech(lam)| is largest at the ends of [-3, 3]
    assert classb_sup_distance((0,), EMPTY, 3, 0.01) == pytest.approx(1 - 1 / math.cosh(3))
    d = classb_sup_distance((0,), (0.1,), 3, 0.01)
    lam = np.arange(-300, 301) * 0.01
    brute = max(abs(naive_pi((0,), x) - naive_pi((0.1,), x)) for x in lam)
    assert 0 < d < 0.1
    assert d == pytest.approx(brute, abs=1e-14)
    # 30-digit evaluation of the same grid maximum
    assert d == pytest.approx(0.0498756137384248, abs=1e-12)


def test_sup_distance_validation():
    with pytest.raises(ValueError):
        classb_sup_distance((0,), (0,), 0, 0.01)


def test_convergent_sequences_converge_uniformly():
    target = make_alpha([-1.0, 0.5])
    prev = math.inf
    for n in (1, 4, 16, 64, 256, 1024):
        a = make_alpha([-1.0 + 1 / n, 0.5 - 2 / n])
        d = classb_sup_distance(a, target, 3, 0.01)
        assert d < prev
        prev = d
    assert prev < 1e-2


def test_compactness_bounds_examples():
    # 30-digit evaluation of 1/(C sinh l0) and -log C / log cosh l0
    ab, pb = compactness_bounds(0.5, 1.0)
    assert ab == pytest.approx(1.70183625647864, abs=1e-12)
    assert pb == pytest.approx(1.59792026721906, abs=1e-12)
    ab, pb = compactness_bounds(1 - 1e-12, 1.0)
    assert ab == pytest.approx(1 / math.sinh(1))
    assert math.floor(pb) == 0


@pytest.mark.parametrize("C, lam0", [(0, 1), (1, 1), (0.5, 0), (0.5, -1)])
def test_compactness_bounds_validation(C, lam0):
    with pytest.raises(ValueError):
        compactness_bounds(C, lam0)


def test_compactness_single_atom():
    # |Pi((3,), 1)| = (cosh^2 1 + 9 sinh^2 1)^(-1/2) ~ 0.2598
    mod = math.sqrt(pi_abs2((3,), 1.0))
    assert mod == pytest.approx((math.cosh(1) ** 2 + 9 * math.sinh(1) ** 2) ** -0.5)
    C = 0.25
    assert mod >= C
    ab, pb = compactness_bounds(C, 1.0)
    assert ab >= 3 and math.floor(pb) >= 1


def test_compactness_implication_bruteforce():
    rng = np.random.default_rng(3)
    for C, lam0 in [(0.5, 1.0), (0.2, 0.5), (0.8, 2.0)]:
        ab, pb = compactness_bounds(C, lam0)
        for _ in range(2000):
            a = random_alpha(rng, p_max=6, bound=4.0)
            if math.sqrt(pi_abs2(a, lam0)) >= C:
                assert a.p <= math.floor(pb)
                assert all(abs(x) <= ab for x in a.values)
