import os
import subprocess
import sys

import numpy as np
import pytest

from piezoinv import _accel, kernels
from piezoinv.decomposition import decompose_batch
from piezoinv.intermediates import group_batch
from piezoinv.invariants import PROGRAM, _stack_group

from helpers import random_piezo

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")


def _batch(rng, n=8):
    return np.stack([random_piezo(rng) for _ in range(n)])


@needs_numba
def test_rotate3_parity(rng):
    T = _batch(rng)
    g = np.stack([np.linalg.qr(rng.standard_normal((3, 3)))[0] for _ in range(len(T))])
    assert np.allclose(kernels.rotate3_numba(g, T), kernels.rotate3_numpy(g, T), atol=1e-14)


@needs_numba
def test_group_and_invariant_parity(rng):
    A, u, D, v = decompose_batch(_batch(rng))
    a = kernels.group_batch_numpy(A, u, v, D)
    b = kernels.group_batch_numba(A, u, v, D)
    for x, y in zip(a, b):
        assert np.allclose(x, y, atol=1e-14)
    mats, vecs = _stack_group(group_batch(A, u, v, D))
    x = kernels.invariants_batch_numpy(A, mats, vecs, *PROGRAM)
    y = kernels.invariants_batch_numba(A, mats, vecs, *PROGRAM)
    assert np.allclose(x, y, rtol=1e-12, atol=1e-15)


def test_backend_flag():
    env = dict(os.environ, PIEZOINV_DISABLE_NUMBA="1")
    code = "import piezoinv._accel as a, piezoinv.kernels as k; print(a.backend(), k.rotate3 is k.rotate3_numpy)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "True"]


def test_numpy_path_end_to_end():
    env = dict(os.environ, PIEZOINV_DISABLE_NUMBA="1")
    code = ("import numpy as np; from piezoinv import evaluate_basis, canonicalize;"
            "P = np.random.default_rng(1).standard_normal((3, 3, 3)); P = P + P.transpose(0, 2, 1);"
            "print(len(evaluate_basis(P).values), canonicalize(P).tag)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["260", "I"]
