"""Smoke tests for the zvar extension module."""

import math

import pytest

import zvar


def test_version():
    assert zvar.__version__


def test_constants():
    nu11 = zvar.nu_constant(1, 1)
    assert nu11 == pytest.approx(0.05864362134764, rel=1e-10)
    for m in range(1, 7):
        assert zvar.nu_constant(m, 1) == pytest.approx(zvar.nu_m1_closed(m), rel=1e-10)
    assert zvar.n_coeff(3, 2) == 3
    assert zvar.bose_integral(2, 2) < zvar.bose_integral(2, 1)


def test_geometry():
    disk = zvar.Domain.disk(0j, 1.0)
    assert disk.dim == 1
    assert zvar.domain_volume(disk) == pytest.approx(math.pi / 2, rel=1e-12)
    assert zvar.boundary_volume(disk) == pytest.approx(math.pi, rel=1e-12)
    assert zvar.fs_volume_density([1.0 + 0j]) == pytest.approx(0.25)
    assert zvar.contains(disk, [0j])
    assert not zvar.contains(disk, [1.0 + 0j])
    ball = zvar.Domain.ball(2, 1.0)
    assert zvar.domain_volume(ball) == pytest.approx(math.pi**2 / 8, rel=1e-12)


def test_kernel():
    assert zvar.lambda_n([0.3 + 0.1j], [0.3 + 0.1j], 50) == 0.0
    assert zvar.lambda_n([0j], [1.0 + 0j], 2) == pytest.approx(math.log(2.0), rel=1e-13)
    assert 0.0 <= zvar.p_n([0.1j], [0.8 + 0.2j], 9) <= 1.0
    lam, gz, gw = zvar.grad_lambda([0j], [1.0 + 0j], 2)
    assert gz[0] == pytest.approx(-1.0)


def test_bipotential():
    assert zvar.gtilde(0.0) == 0.0
    assert zvar.gtilde(1.0) == pytest.approx(1.0 / 24.0, rel=1e-13)
    assert zvar.f_deriv(0.5 * math.log(2.0), 2) == pytest.approx(1.0 / math.pi**2, rel=1e-12)
    with pytest.raises(Exception):
        zvar.k21_density(0.1 + 0j, 0.1 + 0j, 10)


def test_sampling_and_roots():
    p = zvar.sample(1, 20, seed=42, stream=7)
    q = zvar.sample(1, 20, seed=42, stream=7)
    assert p.coeffs == q.coeffs
    roots = zvar.all_roots(p)
    assert len(roots) == 20
    disk = zvar.Domain.disk(0j, 1.0)
    inside = sum(1 for r in roots if abs(r) < 1.0)
    assert zvar.count_zeros_contour(p, disk) == inside


def test_bernoulli_variance():
    for r in (0.5, 1.0):
        pr = r * r / (1 + r * r)
        v = zvar.variance_boundary_exact(zvar.Domain.disk(0j, r), 1)
        assert v == pytest.approx(pr * (1 - pr), rel=1e-5)


def test_routes_agree():
    disk = zvar.Domain.disk(0j, 1.0)
    vb = zvar.variance_boundary_exact(disk, 10)
    vk = zvar.variance_bulk_exact(disk, 10)
    assert vb == pytest.approx(vk, rel=1e-3)


def test_experiment():
    rec = zvar.run_counting_experiment(
        m=1, degree=4, domain=zvar.Domain.disk(0j, 1.0), trials=2000, seed=11
    )
    assert rec["trials"] == 2000
    assert abs(rec["mean_count"] - rec["expected_count_exact"]) <= 4 * rec["se_mean"]
    rec2 = zvar.run_counting_experiment(
        m=1, degree=4, domain=zvar.Domain.disk(0j, 1.0), trials=2000, seed=11, workers=2
    )
    assert rec == rec2


def test_solve_system_2d():
    sys1 = zvar.sample(2, 3, seed=5, stream=0)
    sys2 = zvar.sample(2, 3, seed=5, stream=1)
    pts = zvar.solve_system_2d(sys1, sys2)
    assert len(pts) == 9
