import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deficiency import kernels
from deficiency._jit import USE_NUMBA, python_version

int_matrices = st.integers(1, 7).flatmap(lambda m: st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_snf_backends_agree(A):
    fast = kernels.snf_inplace(np.array(A), jit=True)
    slow = kernels.snf_inplace(np.array(A), jit=False)
    assert np.array_equal(np.diag(fast[0]), np.diag(slow[0]))


@settings(max_examples=60, deadline=None)
@given(int_matrices, st.sampled_from([2, 3, 5, 101, 2147483629]))
def test_rank_backends_agree(A, p):
    assert kernels.rank_mod_p(A, p, jit=True) == kernels.rank_mod_p(A, p, jit=False)


def test_rank_mod_p_values():
    assert kernels.rank_mod_p([[3, 0], [0, 3]], 3) == 0
    assert kernels.rank_mod_p([[1, 2], [2, 4]], 7) == 1
    assert kernels.rank_mod_p(np.zeros((0, 3), dtype=int), 5) == 0


def test_enumeration_backends_agree():
    # < x, y | x^2, y^3, (xy)^4 > is S_4
    words = [0, 0, 2, 2, 2, 0, 2, 0, 2, 0, 2, 0, 2]
    offsets = [0, 2, 5, 13]
    fast = kernels.enumerate_cosets(words, offsets, 0, 4, 1000, jit=True)
    slow = kernels.enumerate_cosets(words, offsets, 0, 4, 1000, jit=False)
    assert fast[3] == slow[3] == kernels.ENUM_OK
    assert fast[2] == slow[2]


def test_capacity_status():
    out = kernels.enumerate_cosets([0, 0], [0, 2], 0, 4, 5, jit=False)
    assert out[3] == kernels.ENUM_CAPACITY


def test_python_version_exposes_body():
    body = python_version(kernels.hlt_kernel)
    assert callable(body)
    if USE_NUMBA:
        assert body is not kernels.hlt_kernel


@pytest.mark.parametrize("flag,expected", [("1", "False"), ("0", "True")])
def test_env_flag(flag, expected):
    env = dict(os.environ, DEFICIENCY_NO_JIT=flag)
    code = ("from deficiency._jit import USE_NUMBA; "
            "from deficiency.cosets import todd_coxeter; "
            "from deficiency.presets import PRESETS; "
            "assert todd_coxeter(PRESETS['binary-icosahedral'].presentation).index == 120; "
            "print(USE_NUMBA)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == expected
