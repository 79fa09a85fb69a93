"""Numba-accelerated moment accumulation with a pure-numpy fallback.

The compiled path is used when numba imports and ``GEOINV_DISABLE_NUMBA`` is
unset (or ``0``). Both paths expose the same ``moment_sums`` signature.
"""

import math
import os

import numpy as np

_disabled = os.environ.get("GEOINV_DISABLE_NUMBA", "0").strip().lower() not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError("disabled by GEOINV_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

CHUNK = 4096


def moment_sums_numpy(centered, weights, exps, compensated=False):
    """``out[m] = sum_i w_i * prod_j centered[i, j] ** exps[m, j]``."""
    npts, n = centered.shape
    nmom = exps.shape[0]
    top = int(exps.max()) if exps.size else 0
    cols = np.arange(n)
    partial = []
    for start in range(0, npts, CHUNK):
        x = centered[start:start + CHUNK]
        w = weights[start:start + CHUNK]
        pw = x[:, :, None] ** np.arange(top + 1)
        # (chunk, nmom): product over coordinates of the selected powers
        terms = np.prod(pw[:, cols[None, :], exps], axis=2) * w[:, None]
        if compensated:
            partial.append([math.fsum(terms[:, m]) for m in range(nmom)])
        else:
            partial.append(terms.sum(axis=0))
    if not partial:
        return np.zeros(nmom)
    partial = np.asarray(partial, dtype=np.float64)
    if compensated:
        return np.array([math.fsum(partial[:, m]) for m in range(nmom)])
    return partial.sum(axis=0)


if HAVE_NUMBA:

    @njit(cache=True)
    def _moment_sums_jit(centered, weights, exps, compensated):
        npts, n = centered.shape
        nmom = exps.shape[0]
        top = 0
        for m in range(nmom):
            for j in range(n):
                if exps[m, j] > top:
                    top = exps[m, j]
        sums = np.zeros(nmom)
        comp = np.zeros(nmom)
        pw = np.empty((n, top + 1))
        for i in range(npts):
            for j in range(n):
                pw[j, 0] = 1.0
                for e in range(1, top + 1):
                    pw[j, e] = pw[j, e - 1] * centered[i, j]
            w = weights[i]
            for m in range(nmom):
                t = w
                for j in range(n):
                    t *= pw[j, exps[m, j]]
                if compensated:
                    # Neumaier summation
                    s = sums[m] + t
                    if abs(sums[m]) >= abs(t):
                        comp[m] += (sums[m] - s) + t
                    else:
                        comp[m] += (t - s) + sums[m]
                    sums[m] = s
                else:
                    sums[m] += t
        return sums + comp

    def moment_sums_numba(centered, weights, exps, compensated=False):
        return _moment_sums_jit(
            np.ascontiguousarray(centered, dtype=np.float64),
            np.ascontiguousarray(weights, dtype=np.float64),
            np.ascontiguousarray(exps, dtype=np.int64),
            bool(compensated),
        )

    moment_sums = moment_sums_numba
else:
    moment_sums_numba = None
    moment_sums = moment_sums_numpy


def backend() -> str:
    return "numba" if moment_sums is not moment_sums_numpy else "numpy"
