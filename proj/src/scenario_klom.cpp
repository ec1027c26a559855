#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "scenario_common.hpp"
#include "unlearn/format.hpp"
#include "unlearn/klom.hpp"
#include "unlearn/rng.hpp"

namespace unlearn {
namespace {

struct FlatData {
    std::size_t rows = 0, cols = 0;
    std::vector<double> x; // row-major features; labels are all +1 here
    const double* row(std::size_t i) const { return x.data() + i * cols; }
};

// Block-diagonal features plus one correlated pair: block k contributes
// block_retain copies of the unit vector e_k; the pair coordinates hold
// pair_retain retain samples along (1, eps) and pair_forget forget samples
// along (eps, 1). Retain rows come first.
struct KlomWorld {
    FlatData all; // retain rows then forget rows
    std::size_t n_retain = 0;
    std::size_t n_forget = 0;
    DenseDataset eval_forget, eval_retain, eval_validation;
};

DenseDataset points_from_rows(const std::vector<std::vector<double>>& rows) {
    DenseDataset d;
    for (const auto& r : rows) d.samples.push_back({r, 1, 1.0, 0.0});
    return d;
}

KlomWorld build_world(double eps, int block_count, int block_retain, int pair_retain,
                      int pair_forget) {
    const std::size_t dim = static_cast<std::size_t>(block_count) + 2;
    auto unit = [&](int k) {
        std::vector<double> v(dim, 0.0);
        v[static_cast<std::size_t>(k)] = 1.0;
        return v;
    };
    std::vector<double> pair_r(dim, 0.0), pair_f(dim, 0.0);
    pair_r[dim - 2] = 1.0;
    pair_r[dim - 1] = eps;
    pair_f[dim - 2] = eps;
    pair_f[dim - 1] = 1.0;

    KlomWorld world;
    std::vector<std::vector<double>> retain_rows, forget_rows;
    for (int k = 0; k < block_count; ++k) {
        for (int i = 0; i < block_retain; ++i) retain_rows.push_back(unit(k));
    }
    for (int i = 0; i < pair_retain; ++i) retain_rows.push_back(pair_r);
    for (int i = 0; i < pair_forget; ++i) forget_rows.push_back(pair_f);

    world.n_retain = retain_rows.size();
    world.n_forget = forget_rows.size();
    world.all.rows = world.n_retain + world.n_forget;
    world.all.cols = dim;
    world.all.x.reserve(world.all.rows * dim);
    for (const auto& r : retain_rows) world.all.x.insert(world.all.x.end(), r.begin(), r.end());
    for (const auto& r : forget_rows) world.all.x.insert(world.all.x.end(), r.begin(), r.end());

    world.eval_forget = points_from_rows(forget_rows);
    world.eval_retain = points_from_rows(retain_rows);
    std::vector<std::vector<double>> val_rows;
    for (int k = 0; k < block_count; ++k) val_rows.push_back(unit(k));
    val_rows.push_back(pair_r);
    world.eval_validation = points_from_rows(val_rows);
    return world;
}

struct TrainCfg {
    double lambda = 0.0;
    double eta = 0.0;
    long max_iters = 0;
    double grad_tol = 0.0;
};

// Full-batch descent on the ridge exponential loss over the given rows,
// starting from zero.
std::vector<double> train_from_rows(const FlatData& data, const std::vector<std::size_t>& idx,
                                    const TrainCfg& cfg) {
    const std::size_t d = data.cols;
    const double n = static_cast<double>(idx.size());
    std::vector<double> w(d, 0.0), g(d);
    for (long it = 0; it < cfg.max_iters; ++it) {
        for (std::size_t j = 0; j < d; ++j) g[j] = cfg.lambda * w[j];
        for (std::size_t i : idx) {
            const double* row = data.row(i);
            double m = 0.0;
            for (std::size_t j = 0; j < d; ++j) m += row[j] * w[j];
            const double e = std::exp(-m) / n;
            for (std::size_t j = 0; j < d; ++j) g[j] -= row[j] * e;
        }
        double gn = 0.0;
        for (std::size_t j = 0; j < d; ++j) gn = std::max(gn, std::fabs(g[j]));
        if (gn <= cfg.grad_tol) break;
        for (std::size_t j = 0; j < d; ++j) w[j] -= cfg.eta * g[j];
    }
    return w;
}

std::vector<std::size_t> bootstrap_indices(std::mt19937_64& rng, std::size_t source_rows,
                                           std::size_t count) {
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) {
        idx[i] = static_cast<std::size_t>(uniform_below(rng, source_rows));
    }
    return idx;
}

// One descent step on the bootstrap's retain part followed by one ascent
// step on its forget part, both with ridge. descent_part=false gives the
// ascent-only update.
void unlearn_step(std::vector<double>& w, const FlatData& data,
                  const std::vector<std::size_t>& idx, std::size_t n_retain_rows, double lambda,
                  double eta, bool descent_part) {
    const std::size_t d = data.cols;
    std::vector<double> g(d);
    double n_ret = 0.0, n_fgt = 0.0;
    for (std::size_t i : idx) (i < n_retain_rows ? n_ret : n_fgt) += 1.0;

    if (descent_part) {
        for (std::size_t j = 0; j < d; ++j) g[j] = lambda * w[j];
        for (std::size_t i : idx) {
            if (i >= n_retain_rows) continue;
            const double* row = data.row(i);
            double m = 0.0;
            for (std::size_t j = 0; j < d; ++j) m += row[j] * w[j];
            const double e = std::exp(-m) / n_ret;
            for (std::size_t j = 0; j < d; ++j) g[j] -= row[j] * e;
        }
        for (std::size_t j = 0; j < d; ++j) w[j] -= eta * g[j];
    }

    for (std::size_t j = 0; j < d; ++j) g[j] = lambda * w[j];
    if (n_fgt > 0.0) {
        for (std::size_t i : idx) {
            if (i < n_retain_rows) continue;
            const double* row = data.row(i);
            double m = 0.0;
            for (std::size_t j = 0; j < d; ++j) m += row[j] * w[j];
            const double e = std::exp(-m) / n_fgt;
            for (std::size_t j = 0; j < d; ++j) g[j] += row[j] * e;
        }
    }
    for (std::size_t j = 0; j < d; ++j) w[j] -= eta * g[j];
}

struct SetScores {
    double forget = 0.0, retain = 0.0, validation = 0.0;
    double max() const { return std::max(forget, std::max(retain, validation)); }
};

SetScores score_sets(const std::vector<std::vector<double>>& treatment,
                     const std::vector<std::vector<double>>& oracle, const KlomWorld& world,
                     int bins, double smoothing) {
    SetScores s;
    auto one = [&](const DenseDataset& pts) {
        const MarginMatrix mt = compute_margins(treatment, pts);
        const MarginMatrix mo = compute_margins(oracle, pts);
        return klom_aggregate(klom_per_point(mt, mo, bins, smoothing), 95.0);
    };
    s.forget = one(world.eval_forget);
    s.retain = one(world.eval_retain);
    s.validation = one(world.eval_validation);
    return s;
}

} // namespace

ExperimentReport run_klom_ensemble(const ScenarioConfig& raw) {
    const ScenarioConfig cfg = resolve_config(raw);
    const auto& p = cfg.params;
    const double eps = p.at("epsilon").get<double>();
    const int block_count = p.at("block_count").get<int>();
    const int block_retain = p.at("block_retain").get<int>();
    const int pair_retain = p.at("pair_retain").get<int>();
    const int pair_forget = p.at("pair_forget").get<int>();
    const double lambda = p.at("lambda").get<double>();
    TrainCfg tc;
    tc.lambda = lambda;
    tc.eta = p.at("train").at("eta").get<double>();
    tc.max_iters = p.at("train").at("max_iters").get<long>();
    tc.grad_tol = p.at("train").at("grad_tol").get<double>();
    const int n_models = p.at("n_models").get<int>();
    const int bins = p.at("bins").get<int>();
    const double smoothing = p.at("smoothing").get<double>();
    const double tau0_factor = p.at("tau0_factor").get<double>();
    const double u_eta = p.at("unlearn").at("eta").get<double>();
    const int u_steps = p.at("unlearn").at("steps").get<int>();
    const int u_every = p.at("unlearn").at("checkpoint_every").get<int>();

    ExperimentReport report = detail::base_report(cfg);
    const KlomWorld world = build_world(eps, block_count, block_retain, pair_retain, pair_forget);

    // ensemble ids: 0 oracleA, 1 oracleB, 2 retrain, 3 pretrain
    auto train_ensemble = [&](std::uint64_t ens_id, bool with_forget,
                              std::vector<std::vector<std::size_t>>* keep_idx) {
        std::vector<std::vector<double>> models;
        const std::uint64_t ens_seed = derive_seed(cfg.seed, ens_id);
        const std::size_t source = with_forget ? world.all.rows : world.n_retain;
        for (int m = 0; m < n_models; ++m) {
            std::mt19937_64 rng(derive_seed(ens_seed, static_cast<std::uint64_t>(m)));
            auto idx = bootstrap_indices(rng, source, source);
            models.push_back(train_from_rows(world.all, idx, tc));
            if (keep_idx) keep_idx->push_back(std::move(idx));
        }
        return models;
    };

    const auto oracle_a = train_ensemble(0, false, nullptr);
    const auto oracle_b = train_ensemble(1, false, nullptr);
    const auto retrain_t = train_ensemble(2, false, nullptr);
    std::vector<std::vector<std::size_t>> pretrain_idx;
    const auto pretrain_t = train_ensemble(3, true, &pretrain_idx);

    const SetScores baseline = score_sets(oracle_b, oracle_a, world, bins, smoothing);
    const double tau0 = tau0_factor * baseline.max();
    const SetScores none = score_sets(pretrain_t, oracle_a, world, bins, smoothing);
    const SetScores retrain = score_sets(retrain_t, oracle_a, world, bins, smoothing);

    // iterative unlearning time series from the pretrained ensemble
    std::string ts_csv = "method,step,forget,retain,validation\n";
    SetScores gda_final, ga_final;
    for (const bool descent_part : {true, false}) {
        const std::string method = descent_part ? "gda" : "ga";
        std::vector<std::vector<double>> models = pretrain_t;
        SetScores last = none;
        ts_csv += method + ",0," + fmt_double(none.forget) + "," + fmt_double(none.retain) + "," +
                  fmt_double(none.validation) + "\n";
        for (int step = 1; step <= u_steps; ++step) {
            for (int m = 0; m < n_models; ++m) {
                unlearn_step(models[static_cast<std::size_t>(m)], world.all,
                             pretrain_idx[static_cast<std::size_t>(m)], world.n_retain, lambda,
                             u_eta, descent_part);
            }
            if (step % u_every == 0) {
                last = score_sets(models, oracle_a, world, bins, smoothing);
                ts_csv += method + "," + std::to_string(step) + "," + fmt_double(last.forget) +
                          "," + fmt_double(last.retain) + "," + fmt_double(last.validation) + "\n";
            }
        }
        (descent_part ? gda_final : ga_final) = last;
    }
    report.add_table("klom_timeseries", ts_csv);

    std::string summary = "method,set,percentile_95\n";
    auto add_rows = [&summary](const std::string& method, const SetScores& s) {
        summary += method + ",forget," + fmt_double(s.forget) + "\n";
        summary += method + ",retain," + fmt_double(s.retain) + "\n";
        summary += method + ",validation," + fmt_double(s.validation) + "\n";
    };
    add_rows("baseline", baseline);
    add_rows("none", none);
    add_rows("retrain", retrain);
    add_rows("gda_final", gda_final);
    add_rows("ga_final", ga_final);
    report.add_table("klom_summary", summary);

    std::vector<std::string> forget_ids;
    for (std::size_t i = 0; i < world.eval_forget.samples.size(); ++i) {
        forget_ids.push_back("f" + std::to_string(i));
    }
    report.add_table("margins_oracle_forget",
                     compute_margins(oracle_a, world.eval_forget, "oracle_a").to_csv(forget_ids));
    report.add_table("margins_pretrain_forget",
                     compute_margins(pretrain_t, world.eval_forget, "pretrain").to_csv(forget_ids));

    report.assert_that("klom.baseline_below_tau0", baseline.max() < tau0, baseline.max(), tau0);
    report.assert_that("klom.retrain_below_tau0", retrain.max() < tau0, retrain.max(), tau0);
    report.assert_that("klom.pretrain_forget_exceeds_validation", none.forget > none.validation,
                       none.forget - none.validation, 0.0);
    report.assert_that("klom.gda_forget_improves", gda_final.forget < none.forget,
                       gda_final.forget, none.forget);
    report.assert_that("klom.ga_retain_degrades", ga_final.retain > none.retain, ga_final.retain,
                       none.retain);

    if (!cfg.output_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.output_dir);
        const MarginMatrix mo_f = compute_margins(oracle_a, world.eval_forget);
        const MarginMatrix mo_r = compute_margins(oracle_a, world.eval_retain);
        const MarginMatrix mo_v = compute_margins(oracle_a, world.eval_validation);
        const MarginMatrix mp_f = compute_margins(pretrain_t, world.eval_forget);
        const MarginMatrix mp_r = compute_margins(pretrain_t, world.eval_retain);
        const MarginMatrix mp_v = compute_margins(pretrain_t, world.eval_validation);
        const KlomReport reports[3] = {
            make_klom_report(SetLabel::Forget, mp_f, mo_f, bins, smoothing),
            make_klom_report(SetLabel::Retain, mp_r, mo_r, bins, smoothing),
            make_klom_report(SetLabel::Validation, mp_v, mo_v, bins, smoothing),
        };
        for (const auto& kr : reports) {
            std::ofstream out(
                fs::path(cfg.output_dir) / ("klom_report_" + set_label_name(kr.set_label) + ".json"),
                std::ios::binary);
            out << kr.to_json().dump(2) << "\n";
        }
    }

    detail::maybe_write(report, cfg);
    return report;
}

} // namespace unlearn
