import math

import mpmath
import numpy as np
import pytest

from mandelmat import errors, matrices, polyeval


@pytest.mark.parametrize("n", range(1, 7))
def test_C_is_characteristic_polynomial(n):
    a = matrices.mandelbrot_matrix(n).to_dense(float)
    d = a.shape[0]
    for z in (-1.3, 0.4, 1.7, 2.1):
        direct = np.linalg.det(z * np.eye(d) - a)
        assert polyeval.eval_C(n, z).value == pytest.approx(direct, rel=1e-9, abs=1e-9)


def test_C_complex_and_array_inputs():
    z = np.array([0.3 + 0.2j, -1.0 + 0.5j])
    v = polyeval.eval_C(4, z).value
    for zi, vi in zip(z, v):
        assert polyeval.eval_C(4, complex(zi)).value == pytest.approx(vi)


@pytest.mark.parametrize("n", range(1, 10))
def test_reflection_identity(n):
    z = np.linspace(-2.0, 0.3, 11)
    assert np.allclose(polyeval.eval_C(n, z).value, -polyeval.eval_p(n + 1, -z).value, rtol=1e-12, atol=1e-12)


def test_p_small_orders():
    assert polyeval.eval_p(0, 0.7).value == 0.0
    assert polyeval.eval_p(1, 0.7).value == 1.0
    assert polyeval.eval_p(2, 0.7).value == pytest.approx(1.7)
    assert polyeval.eval_p(3, 0.5).value == pytest.approx(0.5 * 1.5**2 + 1)


@pytest.mark.parametrize("n", range(1, 13))
def test_derivative_against_central_differences(n):
    z = np.linspace(1.5, 2.0, 20)
    h = 1e-4 * 3.0**-n
    ev = polyeval.eval_C(n, z)
    fd = (polyeval.eval_C(n, z + h).value - polyeval.eval_C(n, z - h).value) / (2 * h)
    rel = np.abs(fd - ev.derivative) / np.maximum(np.abs(ev.derivative), 1.0)
    assert rel.max() <= 1e-6


def test_perron_root_n7_history():
    r = polyeval.perron_root(7)
    assert r.history[0] == r.seed
    assert r.iterations == 3
    assert abs(r.rho - 1.99977404869373) < 5e-15


def mp_perron(n):
    """Newton in 60-digit arithmetic from the asymptotic seed."""
    with mpmath.workdps(60):
        z = mpmath.mpf(2) - mpmath.mpf(3) / 8 * mpmath.pi**2 / mpmath.mpf(4) ** n
        for _ in range(200):
            c, dc = mpmath.mpf(1), mpmath.mpf(0)
            for _ in range(n):
                c, dc = z * c * c - 1, c * c + 2 * z * c * dc
            step = c / dc
            z -= step
            if abs(step) < mpmath.mpf(10) ** -50:
                return z
    raise AssertionError("reference Newton did not converge")


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12, 16, 20])
def test_perron_root_against_high_precision(n):
    ref = mp_perron(n)
    assert abs(polyeval.perron_root(n).rho - float(ref)) <= 4e-16 * 2


@pytest.mark.parametrize("n", range(4, 16))
def test_perron_root_window(n):
    r = polyeval.perron_root(n)
    assert polyeval.perron_seed(n) - 1e-3 < r.rho < 2.0


@pytest.mark.xfail(strict=True, reason="the seed overshoots rho_3 by 1.4e-3, outside the 1e-3 window")
def test_perron_root_window_n3():
    assert polyeval.perron_seed(3) - 1e-3 < polyeval.perron_root(3).rho


def test_seed_gap_shrinks_sixteenfold():
    gaps = [polyeval.perron_seed(n) - polyeval.perron_root(n).rho for n in range(4, 12)]
    ratios = [a / b for a, b in zip(gaps, gaps[1:])]
    assert all(10 < r < 17 for r in ratios)


def test_perron_root_increases_to_two():
    roots = [polyeval.perron_root(n).rho for n in range(1, 26)]
    assert all(a < b for a, b in zip(roots, roots[1:]))
    assert all(r < 2.0 for r in roots)


def test_newton_nonconvergence_reports_history():
    with pytest.raises(errors.NonConvergenceError) as info:
        polyeval.perron_root(9, max_iter=1, seed=1.5)
    assert len(info.value.history) == 2


def test_newton_wrong_root_rejected():
    # from 0 the iteration settles on a small root, not the dominant one
    with pytest.raises(errors.NonConvergenceError):
        polyeval.perron_root(3, seed=0.1)


def test_newton_from_two_converges():
    assert polyeval.perron_root(7, seed=2.0).rho == pytest.approx(1.99977404869373, abs=1e-14)


@pytest.mark.parametrize("n", range(1, 9))
def test_spectrum_small(n):
    w = polyeval.spectrum_small(n)
    assert w.size == 2**n - 1
    assert np.allclose(np.sort_complex(w), np.sort_complex(np.conj(w)), atol=1e-8)
    k = int(np.argmax(np.abs(w)))
    assert abs(w[k] - polyeval.perron_root(n).rho) <= 1e-8
    others = np.delete(np.abs(w), k)
    assert others.size == 0 or others.max() < abs(w[k])
    assert np.max(np.abs(polyeval.eval_C(n, w).value)) < 1e-6 * 4.0**n


def test_spectrum_size_ceiling():
    with pytest.raises(errors.SizeError):
        polyeval.spectrum_small(9)


@pytest.mark.parametrize("n", range(1, 7))
def test_periodic_orbits(n):
    assert all(polyeval.periodic_orbit_check(n, lam) for lam in polyeval.spectrum_small(n))
    assert not polyeval.periodic_orbit_check(n, 0.5)


def test_perron_seed_formula():
    assert polyeval.perron_seed(7) == 2 - 3 / 8 * math.pi**2 / 4**7
