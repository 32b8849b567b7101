"""Hot kernels for diagonal-stabilizer scans: numba with a numpy fallback.

Every kernel exists twice: a ``*_np`` vectorized-numpy version and a ``*_nb``
numba ``@njit`` version with identical semantics.  The public names dispatch
to the numba build unless the environment variable ``DIAGBASE_NO_NUMBA`` is
set to a non-empty value (or numba is unavailable), in which case the numpy
path is used.  ``benchmarks/bench_kernels.py`` compares the two.

All kernels test the same coordinate condition: a diagonal pair
``(alpha, pi)`` fixes the point with canonical tuple ``t`` (``t[0]`` the
identity) iff for every coordinate ``i``::

    alpha[t[i]] == mul[inv[t[pi[0]]], t[pi[i]]]

where ``mul``/``inv`` are the multiplication and inverse tables of T.
Candidates are given as parallel index arrays ``cand_a`` (rows into ``auts``)
and ``cand_p`` (rows into ``perms``).
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = bool(os.environ.get("DIAGBASE_NO_NUMBA", ""))

try:
    if _DISABLED:
        raise ImportError("numba disabled via DIAGBASE_NO_NUMBA")
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - exercised via env flag
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):  # type: ignore
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# numpy reference implementations


def filter_candidates_np(auts, perms, cand_a, cand_p, tuples, mul, inv):
    """Mask of candidates fixing every tuple."""
    ap = auts[cand_a]
    pi = perms[cand_p]
    ok = np.ones(len(cand_a), dtype=bool)
    for t in tuples:
        t = np.asarray(t)
        tp = t[pi]
        rhs = mul[inv[tp[:, 0]][:, None], tp]
        ok &= (ap[:, t] == rhs).all(axis=1)
    return ok.astype(np.uint8)


def detect_per_tuple_np(auts, perms, cand_a, cand_p, tuples, mul, inv):
    """Per tuple: 1 if any candidate fixes it."""
    ap = auts[cand_a]
    pi = perms[cand_p]
    out = np.zeros(len(tuples), dtype=np.uint8)
    for j in range(len(tuples)):
        t = tuples[j]
        tp = t[pi]
        rhs = mul[inv[tp[:, 0]][:, None], tp]
        out[j] = 1 if (ap[:, t] == rhs).all(axis=1).any() else 0
    return out


def count_per_tuple_np(auts, perms, cand_a, cand_p, tuples, mul, inv):
    """Per tuple: number of candidates fixing it."""
    ap = auts[cand_a]
    pi = perms[cand_p]
    out = np.zeros(len(tuples), dtype=np.int64)
    for j in range(len(tuples)):
        t = tuples[j]
        tp = t[pi]
        rhs = mul[inv[tp[:, 0]][:, None], tp]
        out[j] = int((ap[:, t] == rhs).all(axis=1).sum())
    return out


# ---------------------------------------------------------------------------
# numba kernels


@njit(cache=True, nogil=True)
def _fixes_tuple(auts, perms, a, p, t, mul, inv):
    k = t.shape[0]
    p0 = perms[p, 0]
    base = inv[t[p0]]
    for i in range(k):
        if auts[a, t[i]] != mul[base, t[perms[p, i]]]:
            return False
    return True


@njit(cache=True, nogil=True)
def filter_candidates_nb(auts, perms, cand_a, cand_p, tuples, mul, inv):
    n = cand_a.shape[0]
    out = np.ones(n, dtype=np.uint8)
    for c in range(n):
        for j in range(tuples.shape[0]):
            if not _fixes_tuple(auts, perms, cand_a[c], cand_p[c],
                                tuples[j], mul, inv):
                out[c] = 0
                break
    return out


@njit(cache=True, nogil=True)
def detect_per_tuple_nb(auts, perms, cand_a, cand_p, tuples, mul, inv):
    n = cand_a.shape[0]
    m = tuples.shape[0]
    out = np.zeros(m, dtype=np.uint8)
    for j in range(m):
        for c in range(n):
            if _fixes_tuple(auts, perms, cand_a[c], cand_p[c],
                            tuples[j], mul, inv):
                out[j] = 1
                break
    return out


@njit(cache=True, nogil=True)
def count_per_tuple_nb(auts, perms, cand_a, cand_p, tuples, mul, inv):
    n = cand_a.shape[0]
    m = tuples.shape[0]
    out = np.zeros(m, dtype=np.int64)
    for j in range(m):
        total = 0
        for c in range(n):
            if _fixes_tuple(auts, perms, cand_a[c], cand_p[c],
                            tuples[j], mul, inv):
                total += 1
        out[j] = total
    return out


# ---------------------------------------------------------------------------
# dispatch

if NUMBA_ENABLED:
    filter_candidates = filter_candidates_nb
    detect_per_tuple = detect_per_tuple_nb
    count_per_tuple = count_per_tuple_nb
else:
    filter_candidates = filter_candidates_np
    detect_per_tuple = detect_per_tuple_np
    count_per_tuple = count_per_tuple_np


def as_tuple_matrix(tuples, k):
    """Stack point tuples into a contiguous (n, k) int32 matrix."""
    arr = np.asarray(list(tuples), dtype=np.int32)
    if arr.size == 0:
        arr = arr.reshape(0, k)
    return np.ascontiguousarray(arr)
