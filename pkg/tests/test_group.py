import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from olshanski.group import (
    GroupElement,
    _haar_su,
    cartan_profile,
    diag_element,
    embed,
    g0,
    identity,
    random_sl,
    random_su,
    spherical_eval,
    spherical_limit_test,
)
from olshanski.params import EMPTY

from conftest import random_alpha

SECH1 = 1 / math.cosh(1)


def profile_oracle(m):
    """Half the logs of the eigenvalues of m^H m, sorted descending."""
    ev = np.linalg.eigvalsh(m.conj().T @ m)
    return np.sort(0.5 * np.log(ev))[::-1]


class TestElements:
    def test_rejects_non_unimodular(self):
        with pytest.raises(ValueError, match="unimodular"):
            GroupElement(2 * np.eye(2))
        with pytest.raises(ValueError, match="square"):
            GroupElement(np.ones((2, 3)))

    def test_entries_read_only(self):
        g = identity(3)
        with pytest.raises(ValueError):
            g.entries[0, 0] = 2

    def test_random_sl_deterministic(self):
        np.testing.assert_array_equal(random_sl(4, 42).entries, random_sl(4, 42).entries)
        assert not np.array_equal(random_sl(4, 42).entries, random_sl(4, 43).entries)

    @pytest.mark.parametrize("seed", range(100))
    def test_random_sl_det(self, seed):
        assert abs(np.linalg.det(random_sl(6, seed).entries) - 1) <= 1e-10

    @pytest.mark.parametrize("sampler", [random_sl, random_su])
    def test_n_one_rejected(self, sampler):
        with pytest.raises(ValueError):
            sampler(1, 0)

    @pytest.mark.parametrize("seed", range(20))
    def test_random_su_unitary(self, seed):
        u = random_su(5, seed).entries
        assert np.max(np.abs(u.conj().T @ u - np.eye(5))) <= 1e-10
        assert abs(np.linalg.det(u) - 1) <= 1e-10

    def test_haar_trace_moment(self):
        # Schur orthogonality: E|tr U|^2 = 1 for the defining representation
        u = _haar_su(np.random.default_rng(7), 4, 10_000)
        m = np.mean(np.abs(np.trace(u, axis1=1, axis2=2)) ** 2)
        assert m == pytest.approx(1, abs=0.1)

    def test_haar_diagonal_phase_unbiased(self):
        # without the phase fix E[U_11] is biased away from 0
        u = _haar_su(np.random.default_rng(8), 3, 20_000)
        assert abs(np.mean(u[:, 0, 0])) < 0.02


class TestProfile:
    def test_identity(self):
        np.testing.assert_array_equal(cartan_profile(identity(4)), np.zeros(4))

    def test_g0(self):
        np.testing.assert_allclose(cartan_profile(g0()), [1, -1], atol=1e-15)
        np.testing.assert_allclose(cartan_profile(g0(4)), [1, 0, 0, -1], atol=1e-15)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_eigen_oracle(self, seed):
        g = random_sl(5, seed)
        lam = cartan_profile(g)
        np.testing.assert_allclose(lam, profile_oracle(g.entries), atol=1e-9)
        assert abs(lam.sum()) <= 1e-14

    @pytest.mark.parametrize("seed", range(10))
    def test_inverse_reverses(self, seed):
        g = random_sl(4, seed)
        np.testing.assert_allclose(
            cartan_profile(g.inverse()), -cartan_profile(g)[::-1], atol=1e-10
        )

    def test_embed(self):
        np.testing.assert_array_equal(embed(identity(2), 5).entries, np.eye(5))
        g = random_sl(3, 1)
        assert cartan_profile(embed(g, 7)).shape == (7,)
        with pytest.raises(ValueError):
            embed(g, 2)


class TestSpherical:
    @pytest.mark.parametrize("alpha", [EMPTY, (0,), (1, -2), (0.5, 0.5, 3)])
    def test_identity_gives_one(self, alpha):
        assert spherical_eval(alpha, identity(3)) == pytest.approx(1, abs=1e-15)

    def test_examples(self):
        assert spherical_eval((0,), g0()) == pytest.approx(SECH1**2, abs=1e-15)
        assert spherical_eval((0,), g0()) == pytest.approx(0.4199743, abs=1e-7)
        assert spherical_eval((1,), g0()) == pytest.approx(1 / math.cosh(2), abs=1e-15)
        assert spherical_eval((1,), g0()) == pytest.approx(0.2658022, abs=1e-7)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**31 - 1), N=st.integers(4, 9))
    def test_embed_invariance(self, seed, N):
        rng = np.random.default_rng(seed)
        alpha = random_alpha(rng)
        g = random_sl(4, seed)
        assert spherical_eval(alpha, embed(g, N)) == pytest.approx(
            spherical_eval(alpha, g), abs=1e-10
        )

    @pytest.mark.parametrize("seed", range(10))
    def test_biinvariance(self, seed):
        rng = np.random.default_rng(seed)
        alpha = random_alpha(rng)
        g, u, v = random_sl(5, seed), random_su(5, seed + 100), random_su(5, seed + 200)
        assert spherical_eval(alpha, u @ g @ v) == pytest.approx(spherical_eval(alpha, g), abs=1e-10)

    @pytest.mark.parametrize("seed", range(5))
    def test_diag_profile_direct(self, seed):
        # product of 1 / (cosh l - i a sinh l) over a diagonal profile
        rng = np.random.default_rng(seed)
        lam = rng.normal(size=4)
        lam -= lam.mean()
        a = 0.7
        direct = np.prod([1 / (math.cosh(l) - 1j * a * math.sinh(l)) for l in lam])
        assert spherical_eval((a,), diag_element(lam)) == pytest.approx(direct, abs=1e-14)


class TestSphericalLimit:
    def test_identity_exact(self):
        rows = spherical_limit_test((0, 1), identity(2), identity(2), [2, 5], mc=50)
        for r in rows:
            assert r.estimate == pytest.approx(1, abs=1e-12)

    def test_empty_parameter(self):
        rows = spherical_limit_test(EMPTY, g0(), g0(), [4, 8], mc=50)
        assert all(r.abs_err == 0 for r in rows)

    def test_decreasing_toward_product(self):
        rows = spherical_limit_test((0,), g0(), g0(), [4, 32], mc=4000)
        assert rows[0].target == pytest.approx(SECH1**4, abs=1e-15)
        assert rows[0].target == pytest.approx(0.1763784, abs=1e-7)
        assert rows[1].abs_err < rows[0].abs_err
        assert rows[1].abs_err <= 3 * rows[1].mc_stderr

    def test_order_independent(self):
        a = spherical_limit_test((0,), g0(), g0(), [4, 8], mc=100, seed=3)
        b = spherical_limit_test((0,), g0(), g0(), [8], mc=100, seed=3)
        assert a[1].estimate == b[0].estimate

    def test_errors(self):
        with pytest.raises(ValueError):
            spherical_limit_test((0,), g0(3), g0(), [2], mc=10)
        with pytest.raises(ValueError):
            spherical_limit_test((0,), g0(), g0(), [8, 4], mc=10)
