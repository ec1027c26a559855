#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unlearn/analytic.hpp"
#include "unlearn/datasets.hpp"
#include "unlearn/klom.hpp"
#include "unlearn/lambertw.hpp"
#include "unlearn/losses.hpp"
#include "unlearn/optimizers.hpp"
#include "unlearn/random_sets.hpp"
#include "unlearn/scenarios.hpp"

namespace py = pybind11;
using namespace unlearn;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Closed forms, solvers and experiment scenarios for exponential-loss unlearning";

    m.def("lambert_w0", &lambert_w0, py::arg("z"),
          "Principal Lambert W branch, z >= -1/e.");
    m.def("lambert_wm1", &lambert_wm1, py::arg("z"),
          "Lower Lambert W branch, -1/e <= z < 0.");

    py::class_<Sizes1d>(m, "Sizes1d")
        .def(py::init([](long retain_total, long forget_total, long dataset_total) {
                 return Sizes1d{retain_total, forget_total, dataset_total};
             }),
             py::arg("retain_total"), py::arg("forget_total"), py::arg("dataset_total"))
        .def_readwrite("retain_total", &Sizes1d::retain_total)
        .def_readwrite("forget_total", &Sizes1d::forget_total)
        .def_readwrite("dataset_total", &Sizes1d::dataset_total);

    py::class_<BlockSpec1d>(m, "BlockSpec1d")
        .def(py::init([](long r_j, double alpha) { return BlockSpec1d{r_j, alpha}; }),
             py::arg("r_j"), py::arg("alpha"))
        .def_readwrite("r_j", &BlockSpec1d::r_j)
        .def_readwrite("alpha", &BlockSpec1d::alpha);

    py::enum_<DaCaseKind>(m, "DaCaseKind")
        .value("UniqueMin", DaCaseKind::UniqueMin)
        .value("MinAndMax", DaCaseKind::MinAndMax)
        .value("NoMinimum", DaCaseKind::NoMinimum);

    py::class_<DaCase>(m, "DaCase")
        .def_readonly("kind", &DaCase::kind)
        .def_readonly("w_min", &DaCase::w_min)
        .def_readonly("w_max", &DaCase::w_max)
        .def_readonly("lambert_arg", &DaCase::lambert_arg);

    py::class_<ClosedForm1d>(m, "ClosedForm1d")
        .def_readonly("w_pretrain", &ClosedForm1d::w_pretrain)
        .def_readonly("w_retrain", &ClosedForm1d::w_retrain)
        .def_readonly("da", &ClosedForm1d::da);

    m.def("closed_form_1d", &closed_form_1d, py::arg("block"), py::arg("sizes"),
          py::arg("lambda_"));
    m.def("da_case2_alpha_low", &da_case2_alpha_low, py::arg("sizes"));
    m.def("da_case2_alpha_high", &da_case2_alpha_high, py::arg("block"), py::arg("sizes"),
          py::arg("lambda_"));
    m.def("ordering_band_alpha_low", &ordering_band_alpha_low, py::arg("sizes"));
    m.def("divergence_holds", &divergence_holds, py::arg("w_pretrain"), py::arg("w_retrain"),
          py::arg("w_da"));
    m.def("distance_growth_bound", &distance_growth_bound, py::arg("alpha"), py::arg("sizes"));
    m.def("distance_unlearn_lower", &distance_unlearn_lower, py::arg("block"), py::arg("sizes"),
          py::arg("lambda_"));

    py::class_<TwoDimSystem>(m, "TwoDimSystem")
        .def_readonly("epsilon", &TwoDimSystem::epsilon)
        .def_readonly("alpha", &TwoDimSystem::alpha)
        .def_readonly("r_ij", &TwoDimSystem::r_ij)
        .def_readonly("total_retain", &TwoDimSystem::total_retain)
        .def_readonly("total_forget", &TwoDimSystem::total_forget)
        .def_readonly("lambda_", &TwoDimSystem::lambda)
        .def("b", &TwoDimSystem::b);
    m.def("make_two_dim_system", &make_two_dim_system, py::arg("epsilon"), py::arg("alpha"),
          py::arg("r_ij"), py::arg("total_retain"), py::arg("total_forget"), py::arg("lambda_"));

    py::class_<Retrain2d>(m, "Retrain2d")
        .def_readonly("x", &Retrain2d::x)
        .def_readonly("y", &Retrain2d::y);
    m.def("retrain_2d", &retrain_2d, py::arg("system"));

    py::class_<Bounds2d>(m, "Bounds2d")
        .def_readonly("x_lo", &Bounds2d::x_lo)
        .def_readonly("x_hi", &Bounds2d::x_hi)
        .def_readonly("y_lo", &Bounds2d::y_lo)
        .def_readonly("y_hi", &Bounds2d::y_hi);
    m.def("pretrain_2d_bounds", &pretrain_2d_bounds, py::arg("system"));

    py::class_<DaUpper2d>(m, "DaUpper2d")
        .def_readonly("x_valid", &DaUpper2d::x_valid)
        .def_readonly("y_valid", &DaUpper2d::y_valid)
        .def_readonly("x_hi", &DaUpper2d::x_hi)
        .def_readonly("y_hi", &DaUpper2d::y_hi)
        .def_readonly("x_arg", &DaUpper2d::x_arg)
        .def_readonly("y_arg", &DaUpper2d::y_arg);
    m.def("da_2d_upper", &da_2d_upper, py::arg("system"));

    py::class_<AlphaRegionRow>(m, "AlphaRegionRow")
        .def_readonly("epsilon", &AlphaRegionRow::epsilon)
        .def_readonly("alpha_d_gt_da", &AlphaRegionRow::alpha_d_gt_da)
        .def_readonly("alpha_rx", &AlphaRegionRow::alpha_rx)
        .def_readonly("alpha_ry", &AlphaRegionRow::alpha_ry)
        .def_readonly("alpha_r_gt_d", &AlphaRegionRow::alpha_r_gt_d)
        .def_readonly("region_nonempty", &AlphaRegionRow::region_nonempty);
    m.def("alpha_thresholds_2d", &alpha_thresholds_2d, py::arg("epsilon"),
          py::arg("retain_total"), py::arg("forget_total"), py::arg("lambda_"));

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("eta", &SolverConfig::eta)
        .def_readwrite("max_iters", &SolverConfig::max_iters)
        .def_readwrite("grad_tol", &SolverConfig::grad_tol)
        .def_readwrite("divergence_guard", &SolverConfig::divergence_guard)
        .def_readwrite("record_trajectory", &SolverConfig::record_trajectory);

    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("Converged", SolveStatus::Converged)
        .value("MaxIters", SolveStatus::MaxIters)
        .value("Diverged", SolveStatus::Diverged);

    py::class_<StationaryReport>(m, "StationaryReport")
        .def_readonly("w_star", &StationaryReport::w_star)
        .def_readonly("residual", &StationaryReport::residual)
        .def_readonly("iters", &StationaryReport::iters)
        .def_readonly("status", &StationaryReport::status);

    py::class_<BlockDataset>(m, "BlockDataset")
        .def("block_count", [](const BlockDataset& d) { return d.blocks.size(); })
        .def_readonly("total_retain", &BlockDataset::total_retain)
        .def_readonly("total_forget", &BlockDataset::total_forget);
    m.def("make_block_dataset", &make_block_dataset, py::arg("blocks"),
          "Build block data from (retain_count, forget_count) pairs.");

    py::enum_<ObjectiveKind>(m, "ObjectiveKind")
        .value("Pretrain", ObjectiveKind::Pretrain_D)
        .value("Retrain", ObjectiveKind::Retrain_R)
        .value("DescentAscent", ObjectiveKind::SimultaneousDA);

    m.def(
        "solve_blocks",
        [](const BlockDataset& data, ObjectiveKind kind, double lambda,
           const SolverConfig& cfg) {
            return gradient_descent(make_exp_objective(data, kind, lambda),
                                    std::vector<double>(data.blocks.size(), 0.0), cfg);
        },
        py::arg("data"), py::arg("kind"), py::arg("lambda_"),
        py::arg("config") = SolverConfig{});
    m.def(
        "iterative_da",
        [](const BlockDataset& data, double lambda, const SolverConfig& cfg,
           std::vector<double> init) { return iterative_da(data, lambda, cfg, std::move(init)); },
        py::arg("data"), py::arg("lambda_"), py::arg("config") = SolverConfig{},
        py::arg("init") = std::vector<double>{});

    py::class_<GaussSeidelResult>(m, "GaussSeidelResult")
        .def_readonly("x", &GaussSeidelResult::x)
        .def_readonly("y", &GaussSeidelResult::y)
        .def_readonly("iters", &GaussSeidelResult::iters)
        .def_readonly("residual", &GaussSeidelResult::residual)
        .def_readonly("converged", &GaussSeidelResult::converged)
        .def_readonly("trajectory", &GaussSeidelResult::trajectory);
    m.def("gauss_seidel_2d", &gauss_seidel_2d, py::arg("system"),
          py::arg("config") = SolverConfig{});

    m.def("hoeffding_bound", &hoeffding_bound, py::arg("forget_size"), py::arg("eps"));

    py::class_<GapCell>(m, "GapCell")
        .def_readonly("forget_size", &GapCell::forget_size)
        .def_readonly("eps", &GapCell::eps)
        .def_readonly("bound", &GapCell::bound)
        .def_readonly("empirical_frequency", &GapCell::empirical_frequency)
        .def_readonly("trials", &GapCell::trials);
    py::class_<GapStudy>(m, "GapStudy")
        .def_readonly("cells", &GapStudy::cells)
        .def_readonly("mean_accuracy_by_size", &GapStudy::mean_accuracy_by_size)
        .def("to_csv", &GapStudy::to_csv);
    m.def("monte_carlo_gap", &monte_carlo_gap, py::arg("population_accuracy"),
          py::arg("forget_sizes"), py::arg("eps_grid"), py::arg("trials"), py::arg("seed"));

    py::class_<Sample>(m, "Sample")
        .def_readonly("features", &Sample::features)
        .def_readonly("label", &Sample::label)
        .def_readonly("multiplicity", &Sample::multiplicity)
        .def_readonly("forget_multiplicity", &Sample::forget_multiplicity);
    py::class_<DenseDataset>(m, "DenseDataset")
        .def_readonly("samples", &DenseDataset::samples)
        .def("dimension", &DenseDataset::dimension)
        .def("forget_indices", &DenseDataset::forget_indices)
        .def("total_multiplicity", &DenseDataset::total_multiplicity);
    m.def("make_toy_dataset", &make_toy_dataset);

    py::class_<MarginMatrix>(m, "MarginMatrix")
        .def_readonly("n_models", &MarginMatrix::n_models)
        .def_readonly("n_points", &MarginMatrix::n_points)
        .def_readonly("values", &MarginMatrix::values)
        .def("at", &MarginMatrix::at, py::arg("model"), py::arg("point"))
        .def("to_csv", &MarginMatrix::to_csv, py::arg("point_ids"));
    m.def("compute_margins", &compute_margins, py::arg("models"), py::arg("points"),
          py::arg("model_tag") = "");
    m.def("klom_per_point", &klom_per_point, py::arg("unlearned"), py::arg("oracle"),
          py::arg("bins") = 20, py::arg("smoothing") = 1e-4);
    m.def("klom_aggregate", &klom_aggregate, py::arg("per_point"), py::arg("percentile") = 95.0);

    m.def("list_scenarios", &list_scenarios);
    m.def("default_seed", &default_seed, py::arg("name"));
    m.def(
        "run_scenario",
        [](const std::string& name, std::uint64_t seed, const std::string& params_json,
           const std::string& output_dir) {
            ScenarioConfig cfg;
            cfg.name = name;
            cfg.seed = seed;
            if (!params_json.empty()) {
                cfg.params = nlohmann::ordered_json::parse(params_json);
            }
            cfg.output_dir = output_dir;
            return run_scenario(cfg).to_json_string();
        },
        py::arg("name"), py::arg("seed") = 0, py::arg("params_json") = "",
        py::arg("output_dir") = "",
        "Run a scenario and return its report as a JSON string.");
}
