import io
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from olshanski import io as oio
from olshanski.bochner import DiscreteParamMeasure
from olshanski.classb import sample
from olshanski.group import random_sl
from olshanski.measures import density_grid
from olshanski.params import EMPTY, make_alpha

finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(st.lists(finite, max_size=6))
def test_alpha_roundtrip(vals):
    a = make_alpha(vals)
    assert oio.alpha_from_json(oio.alpha_to_json(a)) == a


@pytest.mark.parametrize(
    "text, expected",
    [("", ()), ("1,-2", (-2.0, 1.0)), ("[0.5]", (0.5,)), (" 3 ", (3.0,))],
)
def test_parse_alpha(text, expected):
    assert oio.parse_alpha(text).values == expected


def test_alpha_json_rejects_object():
    with pytest.raises(ValueError):
        oio.alpha_from_json('{"a": 1}')


def test_samples_roundtrip():
    s = sample((0.3, -1.7), np.linspace(0, 2, 9))
    buf = io.StringIO()
    oio.write_samples_csv(s, buf)
    assert buf.getvalue().startswith("lambda,re,im\n")
    back = oio.read_samples_csv(io.StringIO(buf.getvalue()))
    np.testing.assert_array_equal(back.lambdas, s.lambdas)
    np.testing.assert_array_equal(back.values, s.values)


def test_samples_missing_column():
    with pytest.raises(ValueError, match="missing"):
        oio.read_samples_csv(io.StringIO("lambda,re\n0,1\n"))


def test_density_roundtrip_with_comment():
    d = density_grid((0.5,), t_max=40, step=0.5)
    buf = io.StringIO()
    oio.write_density_csv(d, buf)
    text = buf.getvalue() + "# trailing note\n"
    back = oio.read_density_csv(io.StringIO(text))
    np.testing.assert_array_equal(back.values, d.values)
    assert back.step == pytest.approx(d.step, rel=1e-12)
    assert back.t_min == d.t_min


def test_density_rejects_nonuniform():
    with pytest.raises(ValueError, match="uniform"):
        oio.read_density_csv(io.StringIO("t,value\n0,1\n1,1\n3,1\n"))


def test_element_roundtrip():
    g = random_sl(4, 9)
    back = oio.element_from_json(oio.element_to_json(g))
    np.testing.assert_array_equal(back.entries, g.entries)
    d = json.loads(oio.element_to_json(g))
    assert d["n"] == 4 and len(d["entries"]) == 16


def test_element_shape_mismatch():
    with pytest.raises(ValueError):
        oio.element_from_dict({"n": 2, "entries": [[1, 0]]})


def test_profile_roundtrip():
    lam = np.array([1.5, 0.25, -1.75])
    np.testing.assert_array_equal(oio.profile_from_json(oio.profile_to_json(lam)), lam)
    with pytest.raises(ValueError):
        oio.profile_from_json("[1, 0]")


def test_measure_roundtrip():
    mu = DiscreteParamMeasure.from_pairs([((0,), 0.4), ((1, -2), 0.6), ((), 0.1)])
    back, psi0 = oio.measure_from_json(oio.measure_to_json(mu, 0.25))
    assert psi0 == 0.25
    assert back == mu
    assert back.weight_of(EMPTY) == 0.1
