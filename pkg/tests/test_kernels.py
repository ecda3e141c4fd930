"""The numba kernels and their numpy fallbacks must agree."""
import os
import subprocess
import sys

import numpy as np
import pytest

from polyshadow import kernels
from polyshadow._backend import HAS_NUMBA
from polyshadow.oracle import standard_body

needs_numba = pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")


@needs_numba
def test_hull_residuals_agree(rng):
    pts = rng.standard_normal((40, 4))
    q = rng.uniform(-2, 2, (300, 4))
    r_nb, s_nb = kernels._nb_hull_residuals(pts, q, 500)
    r_np, s_np = kernels._np_hull_residuals(pts, q, 500)
    assert np.array_equal(s_nb, s_np) and np.all(s_nb == kernels.LP_OK)
    assert np.array_equal(r_nb <= 1e-9, r_np <= 1e-9)
    assert np.allclose(r_nb, r_np, atol=1e-9)


def test_hull_residuals_inside_outside():
    pts = standard_body("cube", 3).vertices
    res, status = kernels._np_hull_residuals(pts, np.array([[0.0, 0, 0], [1.0, 0, 0]]), 500)
    assert np.all(status == kernels.LP_OK)
    assert res[0] <= 1e-12 and res[1] > 0.1


@needs_numba
def test_sign_moment_agree(rng):
    for n in (1, 2, 5, 13, 16):
        a = rng.standard_normal(n)
        for p in (1.0, 2.5):
            assert kernels._nb_sign_moment_exact(a, p) == pytest.approx(kernels._np_sign_moment_exact(a, p), rel=1e-12)


@needs_numba
@pytest.mark.parametrize("obj,con,m", [
    (kernels.OBJ_L1, kernels.CON_ZERO_SUM, 5),
    (kernels.OBJ_FP, kernels.CON_SPHERE, 4),
    (kernels.OBJ_WIDTH, kernels.CON_ZERO_SUM, 6),
    (kernels.OBJ_MINOR_SUM, kernels.CON_PAIR, 4),
])
def test_search_agree(rng, obj, con, m):
    width = 2 * m if con == kernels.CON_PAIR else m
    starts = rng.standard_normal((6, width))
    args = (starts, obj, con, m, 1.0, 1.5, 0.5, 1.5, 1e-10, 2000)
    v_nb, x_nb, _ = kernels._nb_search(*args)
    v_np, x_np, _ = kernels._np_search(*args)
    assert np.allclose(v_nb, v_np, atol=1e-8)


def test_fallback_flag():
    env = dict(os.environ, POLYSHADOW_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from polyshadow._backend import backend_name; print(backend_name())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
