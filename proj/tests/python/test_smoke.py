"""Smoke tests for the robnp python module (run with PYTHONPATH at the
build tree's python/ directory)."""

import math

import robnp


def test_grid_and_median():
    g = robnp.make_grid(100, 1)
    assert g.n == 100
    assert abs(g.point(0)[0] - 0.01) < 1e-15
    assert abs(g.point(99)[0] - 1.0) < 1e-15

    assert robnp.median([3.0]) == 3.0
    assert robnp.median([4.0, 1.0, 3.0, 2.0]) == 2.0  # lower median


def test_sampling_is_deterministic():
    f = robnp.TestFunction.constant(5.0, 1)
    grid = robnp.make_grid(1000, 1)
    model = robnp.ContaminationModel(0.1, robnp.Adversary.symmetric_bernoulli(100.0))
    a = robnp.sample_observations(f, grid, model, 42)
    b = robnp.sample_observations(f, grid, model, 42)
    assert a.y == b.y
    assert a.checksum() == b.checksum()
    frac = sum(a.adversary_mask) / grid.n
    assert 0.05 < frac < 0.15


def test_lbm_fit_and_predict():
    f = robnp.TestFunction.constant(2.0, 1)
    grid = robnp.make_grid(512, 1)
    model = robnp.ContaminationModel(0.1, robnp.Adversary.point_mass(1e9))
    obs = robnp.sample_observations(f, grid, model, 7)
    fit = robnp.lbm_fit(obs, 16)
    assert len(fit.z) == 16
    for x in (0.1, 0.5, 0.9):
        assert abs(robnp.lbm_predict(fit, [x]) - 2.0) < 0.5  # medians ignore the outliers
    assert robnp.choose_m_holder(10**6, 1.0, 1.0, 1) == 100


def test_postprocessing():
    f = robnp.TestFunction.polynomial([1.0, 2.0])  # 1 + 2x
    grid = robnp.make_grid(4096, 1)
    model = robnp.ContaminationModel(0.1, robnp.Adversary.symmetric_bernoulli(100.0), 1.0)
    obs = robnp.sample_observations(f, grid, model, 11)
    m, h = robnp.choose_postprocess_params(grid.n, 2.0, 2.0, 1)
    fit = robnp.lbm_fit(obs, m)
    for x in (0.3, 0.5, 0.7):
        ks = robnp.ks_predict(fit, 0.1, x, "triangular")
        lpr = robnp.lpr_predict(fit, 0.1, 1, [x])
        truth = 1.0 + 2.0 * x
        assert abs(ks - truth) < 0.4
        assert abs(lpr - truth) < 0.4

    norm = robnp.lpr_weight_l1_norm(fit, 0.1, 0, [0.5])
    assert abs(norm - 1.0) < 1e-9  # degree 0 averages


def test_worst_case_median_bounds():
    lower, upper = robnp.worst_case_median_bounds([1, 2, 3, 4, 5, 6, 7], 1)
    assert (lower, upper) == (3.0, 4.0)


def test_baselines_feel_the_contamination():
    f = robnp.TestFunction.constant(0.0, 1)
    grid = robnp.make_grid(10000, 1)
    model = robnp.ContaminationModel(0.1, robnp.Adversary.point_mass(1e12))
    obs = robnp.sample_observations(f, grid, model, 3)
    trunc = robnp.TruncationSpec(10.0, 3.0)
    t_pred = robnp.truncated_kernel_predict(obs, 0.05, trunc, 0.5)
    fit = robnp.lbm_fit(obs, 100)
    lbm_pred = robnp.lbm_predict(fit, [0.5])
    assert abs(t_pred) > 0.5  # surviving clamped outliers bias the kernel
    assert abs(lbm_pred) < 0.5


def test_selftests_pass():
    for row in robnp.run_selftests():
        assert row["pass"], row


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
