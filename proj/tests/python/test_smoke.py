import numpy as np
import pytest

hp = pytest.importorskip("heteropca")


def test_projection_partition():
    m = np.arange(9.0).reshape(3, 3)
    np.testing.assert_array_equal(hp.diag_project(m) + hp.offdiag_project(m), m)


def test_noiseless_deflated_recovery():
    xstar, ustar, _ = hp.gen_low_rank(60, 400, np.array([500.0, 5.0]), seed=11)
    out = hp.deflated_heteropca(xstar, 2)
    assert hp.dist_spectral(out["basis"], ustar) <= 1e-6
    assert out["schedule"]["breakpoints"] == [1, 2]


def test_estimators_agree_without_noise():
    xstar, ustar, _ = hp.gen_low_rank(30, 200, np.array([8.0, 4.0, 2.0]), seed=5)
    svd = hp.vanilla_svd_estimate(xstar, 3)
    assert hp.dist_spectral(svd, ustar) <= 1e-8


def test_select_rank_example():
    q, _ = np.linalg.qr(np.random.default_rng(0).normal(size=(5, 5)))
    g = q @ np.diag([100.0, 90.0, 10.0, 1.0, 0.5]) @ q.T
    g = (g + g.T) / 2
    assert hp.select_rank(g, 0, 4) == 2


def test_hooi_noiseless():
    y, xstar, u1, u2, u3 = hp.gen_tensor_model(12, 2, kappa=100.0, omega=0.0, seed=3)
    got_u1, got_u2, got_u3, xhat = hp.hooi(y, (2, 2, 2), init="deflated", t_max=5)
    for got, want in [(got_u1, u1), (got_u2, u2), (got_u3, u3)]:
        assert hp.dist_spectral(got, want) <= 1e-6
    assert hp.tensor_frob(xhat - xstar) <= 1e-6 * hp.tensor_frob(xstar) + 1e-8


def test_matricize_matches_numpy_reshape():
    rng = np.random.default_rng(7)
    x = rng.normal(size=(3, 4, 5))
    m1 = hp.matricize(x, 1)
    # mode-1 columns are indexed by i2 + n2*i3
    for i3 in range(5):
        for i2 in range(4):
            np.testing.assert_allclose(m1[:, i2 + 4 * i3], x[:, i2, i3])


def test_determinism():
    a = hp.gen_hetero_noise(10, 20, 1.5, seed=9)[0]
    b = hp.gen_hetero_noise(10, 20, 1.5, seed=9)[0]
    np.testing.assert_array_equal(a, b)
