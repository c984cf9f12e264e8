import math

import numpy as np
import pytest

import tzband


def test_szego_diagonal_and_phase():
    basis = tzband.SectionBasis(tzband.Model.cp1(), 12)
    x = tzband.CirclePoint(0.3 - 0.2j, 0.4)
    assert tzband.szego_kernel(basis, x, x).real == pytest.approx(13 / math.pi)
    y = tzband.circle_act(x, 0.7)
    assert tzband.szego_kernel(basis, y, x) == pytest.approx(13 / math.pi * np.exp(12j * 0.7))
    a = tzband.szego_kernel(basis, x, tzband.CirclePoint(1.1j))
    b = tzband.szego_kernel(basis, x, tzband.CirclePoint(1.1j), basis_sum=True)
    assert abs(a - b) <= 1e-12 * abs(a)


def test_psi2():
    assert tzband.psi2(np.array([1.0]), np.array([1j])) == pytest.approx(-1 - 1j)
    with pytest.raises(ValueError):
        tzband.psi2(np.array([1.0]), np.array([0.0, 0.0]))


def test_height_spectrum():
    k = 16
    basis = tzband.SectionBasis(tzband.Model.cp1(), k)
    spec = tzband.toeplitz_spectrum(tzband.Symbol.by_name("height"), basis)
    np.testing.assert_allclose(spec.eigenvalues, (np.arange(k + 1) + 1) / (k + 2), atol=1e-12)
    lifted = tzband.first_order_spectrum(tzband.Symbol.by_name("tilted_height"), basis)
    assert lifted.first_order
    np.testing.assert_allclose(lifted.eigenvalues, k * (np.arange(k + 1) + 1) / (k + 2), atol=1e-9)
    x = tzband.CirclePoint(0.5 + 0.1j)
    full = tzband.spectral_function(lifted, basis, k + 1.0, x, x)
    assert full.real == pytest.approx(tzband.szego_kernel(basis, x, x).real)


def test_fock_model_has_no_basis():
    fock = tzband.Model.fock_plane(1)
    with pytest.raises(ValueError):
        tzband.SectionBasis(fock, 8).dim()


def test_test_function():
    chi = tzband.TestFunctionChi(0.5)
    assert chi.chi(0.0) == pytest.approx(1.0, abs=1e-8)
    assert chi.G(1e4) == pytest.approx(2 * math.pi, rel=1e-8)
    assert chi.delta > 0


def test_fit_decay():
    ks = [64, 128, 256, 512]
    fit = tzband.fit_decay(ks, [k**-4.0 for k in ks])
    assert fit.slope == pytest.approx(-4.0)
    assert fit.passed
    assert not tzband.fit_decay(ks, [k**-1.0 for k in ks]).passed


def test_run_basis_check(tmp_path):
    res = tzband.run("basis-check", out_dir=str(tmp_path), k_list=[2, 8])
    assert res["passed"]
    assert {c["id"] for c in res["criteria"]} >= {"8.gram", "8.closed-form"}
    assert (tmp_path / "summary.txt").read_text().startswith("experiment basis-check")
    with pytest.raises(ValueError):
        tzband.run("basis-check", k_list=[0])
    with pytest.raises(ValueError):
        tzband.run("no-such-experiment")
