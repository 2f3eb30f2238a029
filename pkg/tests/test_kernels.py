import os
import subprocess
import sys

import numpy as np
import pytest

from triplespin import kernels
from triplespin.relations import QUBIT_SOAK_RELATIONS, evaluate
from triplespin.states import density_from_bloch, random_mixed_bloch, random_pure_bloch
from triplespin.triangle import TrianglePoint, check_analogs


def _bloch_batch(n=400):
    return np.vstack([random_pure_bloch(n, 3), random_mixed_bloch(n, 4)])


def test_column_layouts():
    assert len(kernels.QUBIT_GAP_COLUMNS) == 16
    assert len(kernels.TRIANGLE_GAP_COLUMNS) == 8
    assert kernels.BACKEND in ("numba", "numpy")


def test_qubit_gaps_shape_and_validation():
    g = kernels.qubit_relation_gaps(_bloch_batch(50))
    assert g.shape == (100, 16)
    with pytest.raises(ValueError):
        kernels.qubit_relation_gaps(np.zeros((4, 2)))


def test_triangle_gaps_validation():
    with pytest.raises(ValueError):
        kernels.triangle_analog_gaps(np.zeros((4, 3)), side=0.0)
    with pytest.raises(ValueError):
        kernels.triangle_analog_gaps(np.zeros((4, 4)), side=1.0)


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable")
def test_backends_agree_on_qubit_gaps():
    bloch = _bloch_batch()
    a = kernels._qubit_gaps_numba(bloch)
    b = kernels._qubit_gaps_numpy(bloch)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-14)


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable")
def test_backends_agree_on_triangle_gaps():
    rng = np.random.default_rng(7)
    bary = rng.random((500, 3))
    bary /= bary.sum(axis=1, keepdims=True)
    for side in (0.5, 1.0, 2.0):
        a = kernels._triangle_gaps_numba(bary, side)
        b = kernels._triangle_gaps_numpy(bary, side)
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)


def test_kernel_matches_matrix_route():
    """Closed-form kernel gaps vs the spectral evaluate() route."""
    bloch = _bloch_batch(60)
    gaps = kernels.qubit_relation_gaps(bloch)
    for i in range(0, len(bloch), 11):
        st = density_from_bloch(bloch[i])
        for k, rel in enumerate(QUBIT_SOAK_RELATIONS):
            assert abs(gaps[i, k] - evaluate(rel, st, 1).gap) <= 1e-12


def test_triangle_kernel_matches_report_route():
    rng = np.random.default_rng(11)
    bary = rng.random((40, 3))
    bary /= bary.sum(axis=1, keepdims=True)
    gaps = kernels.triangle_analog_gaps(bary, 1.5)
    for i in range(40):
        reports = check_analogs(TrianglePoint(1.5, tuple(bary[i])))
        for k, rep in enumerate(reports):
            assert abs(gaps[i, k] - rep.gap) <= 1e-12


def test_env_flag_selects_numpy_fallback():
    code = "import triplespin.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, TRIPLESPIN_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "numpy"
