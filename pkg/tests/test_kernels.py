"""Compiled and pure-Python kernels must agree bit for bit."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gewi.qsim import _kernels_py, available_backends, resolve_backend

pytestmark = pytest.mark.skipif(
    "cython" not in available_backends(), reason="compiled kernels not built"
)

finite = st.floats(-1, 1, allow_nan=False)


@st.composite
def vectors(draw):
    n = draw(st.integers(1, 4))
    re = draw(st.lists(finite, min_size=2**n, max_size=2**n))
    im = draw(st.lists(finite, min_size=2**n, max_size=2**n))
    return n, [complex(a, b) for a, b in zip(re, im)]


@settings(max_examples=200, deadline=None)
@given(vectors(), st.data())
def test_single_qubit_kernels_match(vec, data):
    n, amps = vec
    k = data.draw(st.integers(0, n - 1))
    fast = resolve_backend("cython")
    for name in ("apply_x", "apply_z", "apply_h"):
        assert getattr(fast, name)(amps, n, k) == getattr(_kernels_py, name)(amps, n, k)
    assert fast.prob_one(amps, n, k) == pytest.approx(_kernels_py.prob_one(amps, n, k), abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(vectors(), st.data())
def test_cnot_and_collapse_match(vec, data):
    n, amps = vec
    fast = resolve_backend("cython")
    if n >= 2:
        c, t = data.draw(st.permutations(range(n)))[:2]
        assert fast.apply_cnot(amps, n, c, t) == _kernels_py.apply_cnot(amps, n, c, t)
    k = data.draw(st.integers(0, n - 1))
    outcome = data.draw(st.integers(0, 1))
    assert fast.collapse(amps, n, k, outcome, 0.25) == _kernels_py.collapse(amps, n, k, outcome, 0.25)


def test_kron_matches_numpy():
    rng = np.random.default_rng(3)
    a = list(rng.normal(size=4) + 1j * rng.normal(size=4))
    b = list(rng.normal(size=2) + 1j * rng.normal(size=2))
    a = [complex(x) for x in a]
    b = [complex(x) for x in b]
    expect = np.kron(a, b)
    for mod in (_kernels_py, resolve_backend("cython")):
        np.testing.assert_allclose(mod.kron(a, b), expect, atol=1e-15)

