import json
import math

import pytest

import unlearn_lab as ul


def test_lambert_branches():
    assert ul.lambert_w0(1.0) == pytest.approx(0.567143290409783873, abs=1e-15)
    assert ul.lambert_wm1(-0.25) == pytest.approx(-2.1532923641103496492, abs=1e-14)
    w = ul.lambert_w0(10.0)
    assert w * math.exp(w) == pytest.approx(10.0, rel=1e-12)
    with pytest.raises(ValueError):
        ul.lambert_w0(-1.0)
    with pytest.raises(ValueError):
        ul.lambert_wm1(0.5)


def test_closed_form_cases():
    sizes = ul.Sizes1d(retain_total=100, forget_total=25, dataset_total=125)
    block = ul.BlockSpec1d(r_j=10, alpha=0.25)
    cf = ul.closed_form_1d(block, sizes, 0.1)
    assert cf.da.kind == ul.DaCaseKind.UniqueMin
    assert cf.da.w_min == pytest.approx(0.0, abs=1e-15)
    assert cf.w_pretrain == pytest.approx(cf.w_retrain, abs=1e-15)
    assert ul.divergence_holds(cf.w_pretrain, cf.w_retrain, cf.da.w_min)

    block.alpha = 0.3
    cf = ul.closed_form_1d(block, sizes, 0.1)
    assert cf.da.kind == ul.DaCaseKind.MinAndMax
    assert cf.da.w_max < -1.0 < cf.da.w_min


def test_solver_matches_closed_form():
    data = ul.make_block_dataset([(10, 0)])
    cfg = ul.SolverConfig()
    cfg.eta = 0.2
    cfg.grad_tol = 1e-12
    report = ul.solve_blocks(data, ul.ObjectiveKind.Retrain, 1.0, cfg)
    assert report.status == ul.SolveStatus.Converged
    assert report.w_star[0] == pytest.approx(ul.lambert_w0(1.0), abs=1e-10)


def test_two_dim_bounds_contain_solution():
    sys = ul.make_two_dim_system(0.3, 0.5, 1, 1000, 500, 0.01)
    res = ul.gauss_seidel_2d(sys)
    assert res.converged
    box = ul.pretrain_2d_bounds(sys)
    assert box.x_lo - 1e-9 <= res.x <= box.x_hi + 1e-9
    assert box.y_lo - 1e-9 <= res.y <= box.y_hi + 1e-9
    assert res.y <= res.x


def test_hoeffding_and_margins():
    assert ul.hoeffding_bound(1, 1.0) == pytest.approx(2 * math.exp(-2.0), abs=1e-15)
    data = ul.make_toy_dataset()
    assert data.dimension() == 2
    margins = ul.compute_margins([[1.0, 0.0], [0.0, 1.0]], data)
    assert margins.n_models == 2
    assert margins.n_points == 4
    score = ul.klom_aggregate(ul.klom_per_point(margins, margins))
    assert score == 0.0


def test_scenario_report_roundtrip():
    raw = ul.run_scenario("random_sets", params_json=json.dumps(
        {"forget_sizes": [10], "eps_grid": [0.2], "trials": 1000}))
    report = json.loads(raw)
    assert report["scenario"] == "random_sets"
    assert report["assertions"]
    assert all(a["pass"] for a in report["assertions"])
