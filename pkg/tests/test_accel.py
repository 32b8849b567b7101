"""The numba kernels and the numpy fallbacks must agree exactly."""

import os
import subprocess
import sys

import numpy as np
import pytest

from diagbase import _accel
from diagbase.diag import build_group


def _random_inputs(A5, seed, n_tuples=40):
    g = build_group(A5, 3, "full", "sym-table")
    rng = np.random.default_rng(seed)
    aut = A5.aut
    perms = g.top.table.arrays().astype(np.int32)
    n = 200
    cand_a = rng.integers(0, aut.n_aut, n).astype(np.int32)
    cand_p = rng.integers(0, len(perms), n).astype(np.int32)
    tuples = np.zeros((n_tuples, 3), dtype=np.int32)
    tuples[:, 1:] = rng.integers(0, A5.order, (n_tuples, 2))
    return aut.rows, perms, cand_a, cand_p, tuples, A5.mul, A5.inv


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_filter_candidates_paths_agree(A5, seed):
    args = _random_inputs(A5, seed)
    np.testing.assert_array_equal(
        _accel.filter_candidates_np(*args),
        _accel.filter_candidates_nb(*args))


@pytest.mark.parametrize("seed", [3, 4])
def test_detect_per_tuple_paths_agree(A5, seed):
    args = _random_inputs(A5, seed)
    np.testing.assert_array_equal(
        _accel.detect_per_tuple_np(*args),
        _accel.detect_per_tuple_nb(*args))


@pytest.mark.parametrize("seed", [5, 6])
def test_count_per_tuple_paths_agree(A5, seed):
    args = _random_inputs(A5, seed)
    np.testing.assert_array_equal(
        _accel.count_per_tuple_np(*args),
        _accel.count_per_tuple_nb(*args))


def test_counts_bound_detections(A5):
    args = _random_inputs(A5, 7)
    counts = _accel.count_per_tuple(*args)
    detected = _accel.detect_per_tuple(*args)
    np.testing.assert_array_equal(detected.astype(bool), counts > 0)


def test_env_flag_selects_numpy_path():
    env = dict(os.environ, DIAGBASE_NO_NUMBA="1")
    code = ("import diagbase._accel as a; "
            "assert not a.NUMBA_ENABLED; "
            "assert a.filter_candidates is a.filter_candidates_np")
    subprocess.run([sys.executable, "-c", code], check=True, env=env)


@pytest.mark.skipif(bool(os.environ.get("DIAGBASE_NO_NUMBA")),
                    reason="numpy path forced via DIAGBASE_NO_NUMBA")
def test_default_uses_numba_when_available():
    assert _accel.NUMBA_ENABLED
    assert _accel.filter_candidates is _accel.filter_candidates_nb
