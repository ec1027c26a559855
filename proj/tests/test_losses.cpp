#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "unlearn/datasets.hpp"
#include "unlearn/lambertw.hpp"
#include "unlearn/losses.hpp"
#include "unlearn/optimizers.hpp"
#include "unlearn/rng.hpp"

using namespace unlearn;

namespace {

// central finite differences, coordinate-wise
std::vector<double> fd_grad_exp(const std::vector<double>& w, const BlockDataset& data,
                                ObjectiveKind kind, double lambda) {
    const double h = 1e-5;
    std::vector<double> g(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        auto wp = w, wm = w;
        wp[j] += h;
        wm[j] -= h;
        g[j] = (loss_exp(wp, data, kind, lambda) - loss_exp(wm, data, kind, lambda)) / (2.0 * h);
    }
    return g;
}

void check_close_rel(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({1.0, std::fabs(a[i]), std::fabs(b[i])});
        CHECK(std::fabs(a[i] - b[i]) / scale <= tol);
    }
}

} // namespace

TEST_CASE("exponential loss values at simple points") {
    const auto sym = make_block_dataset({{4, 4}});
    CHECK(loss_exp({0.0}, sym, ObjectiveKind::Pretrain_D, 0.1) == doctest::Approx(1.0));
    CHECK(loss_exp({0.0}, sym, ObjectiveKind::SimultaneousDA, 0.1) == doctest::Approx(0.0));

    const auto single = make_block_dataset({{1, 0}});
    const double l2 = std::log(2.0);
    CHECK(loss_exp({l2}, single, ObjectiveKind::Retrain_R, 1.0) ==
          doctest::Approx(0.5 + 0.5 * l2 * l2));
}

TEST_CASE("exponential gradient values") {
    const auto sym = make_block_dataset({{4, 4}});
    const auto g = grad_exp({0.0}, sym, ObjectiveKind::Pretrain_D, 0.1);
    CHECK(g[0] == doctest::Approx(-1.0));

    // at the retrain stationary point the gradient vanishes
    const auto single = make_block_dataset({{10, 0}});
    const double w_star = lambert_w0(1.0);
    const auto gs = grad_exp({w_star}, single, ObjectiveKind::Retrain_R, 1.0);
    CHECK(std::fabs(gs[0]) <= 1e-10);
}

TEST_CASE("exponential gradient matches finite differences") {
    std::mt19937_64 rng(11);
    const auto data = make_block_dataset({{10, 2}, {90, 23}, {0, 5}});
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> w(3);
        for (auto& v : w) v = -1.5 + 3.0 * uniform_unit(rng);
        const double lambda = 0.01 + uniform_unit(rng);
        for (auto kind : {ObjectiveKind::Pretrain_D, ObjectiveKind::Retrain_R,
                          ObjectiveKind::SimultaneousDA}) {
            check_close_rel(grad_exp(w, data, kind, lambda), fd_grad_exp(w, data, kind, lambda),
                            1e-6);
        }
    }
}

TEST_CASE("descent-ascent loss decomposes as retrain minus forget average") {
    std::mt19937_64 rng(12);
    const auto data = make_block_dataset({{10, 2}, {90, 23}});
    const double nf = static_cast<double>(data.total_forget);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> w(2);
        for (auto& v : w) v = -2.0 + 4.0 * uniform_unit(rng);
        double forget_avg = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            forget_avg += (static_cast<double>(data.blocks[j].forget_count) / nf) * std::exp(-w[j]);
        }
        const double da = loss_exp(w, data, ObjectiveKind::SimultaneousDA, 0.3);
        const double retr = loss_exp(w, data, ObjectiveKind::Retrain_R, 0.3);
        CHECK(da == doctest::Approx(retr - forget_avg).epsilon(1e-12));
    }
}

TEST_CASE("dimension mismatch is rejected") {
    const auto data = make_block_dataset({{4, 4}, {2, 0}});
    CHECK_THROWS_AS(loss_exp({0.0}, data, ObjectiveKind::Pretrain_D, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(grad_exp({0.0, 0.0, 0.0}, data, ObjectiveKind::Retrain_R, 0.1),
                    std::invalid_argument);
}

TEST_CASE("lambda zero evaluates to the pure data term") {
    const auto data = make_block_dataset({{4, 4}});
    CHECK(loss_exp({0.7}, data, ObjectiveKind::Pretrain_D, 0.0) ==
          doctest::Approx(std::exp(-0.7)));
}

TEST_CASE("shifted sigmoid and weighted mse loss") {
    CHECK(sigmoid_shifted(0.0) == doctest::Approx(1.0 / (1.0 + std::exp(-0.5))));
    CHECK(sigmoid_shifted(0.0) == doctest::Approx(0.62246).epsilon(1e-4));

    const auto toy = make_toy_dataset();
    const double at_zero = loss_mse_sigmoid({0.0, 0.0}, toy, 0.1);
    CHECK(at_zero > 0.0);
    CHECK(std::isfinite(at_zero));

    // hand evaluation: every prediction is sigma(0), targets are t=(y+1)/2
    const double s0 = sigmoid_shifted(0.0);
    const double expect =
        (5.0 * s0 * s0 + 4.0 * (s0 - 1) * (s0 - 1) + 1.0 * s0 * s0 + 4.0 * (s0 - 1) * (s0 - 1)) /
        4.0;
    CHECK(at_zero == doctest::Approx(expect));
}

TEST_CASE("mse gradient matches finite differences and vanishes at minimizers") {
    const auto toy = make_toy_dataset();
    std::mt19937_64 rng(13);
    const double h = 1e-5;
    for (int rep = 0; rep < 50; ++rep) {
        const double a = -4.0 + 8.0 * uniform_unit(rng);
        const double b = -4.0 + 8.0 * uniform_unit(rng);
        const auto g = grad_mse_sigmoid({a, b}, toy, 0.1);
        const double fa =
            (loss_mse_sigmoid({a + h, b}, toy, 0.1) - loss_mse_sigmoid({a - h, b}, toy, 0.1)) /
            (2.0 * h);
        const double fb =
            (loss_mse_sigmoid({a, b + h}, toy, 0.1) - loss_mse_sigmoid({a, b - h}, toy, 0.1)) /
            (2.0 * h);
        CHECK(std::fabs(g.first - fa) / std::max(1.0, std::fabs(fa)) <= 1e-6);
        CHECK(std::fabs(g.second - fb) / std::max(1.0, std::fabs(fb)) <= 1e-6);
    }

    // descend to a stationary point; gradient norm there must be tiny
    Objective obj;
    obj.loss = [&](const std::vector<double>& th) {
        return loss_mse_sigmoid({th[0], th[1]}, toy, 0.1);
    };
    obj.grad = [&](const std::vector<double>& th) {
        const auto g = grad_mse_sigmoid({th[0], th[1]}, toy, 0.1);
        return std::vector<double>{g.first, g.second};
    };
    SolverConfig cfg;
    cfg.eta = 0.5;
    cfg.max_iters = 200000;
    cfg.grad_tol = 1e-10;
    const auto rep = gradient_descent(obj, {1.0, 0.0}, cfg);
    REQUIRE(rep.status == SolveStatus::Converged);
    const auto g = grad_mse_sigmoid({rep.w_star[0], rep.w_star[1]}, toy, 0.1);
    CHECK(std::hypot(g.first, g.second) <= 1e-8);
}

TEST_CASE("mse gradient is zero on a zero-weight dataset at the origin") {
    DenseDataset d;
    d.samples.push_back({{1.0, 1.0}, 1, 0.0, 0.0});
    d.samples.push_back({{2.0, 4.0}, -1, 0.0, 0.0});
    const auto g = grad_mse_sigmoid({0.0, 0.0}, d, 0.0);
    CHECK(g.first == 0.0);
    CHECK(g.second == 0.0);
}

TEST_CASE("objective reweighting expresses all three objectives") {
    const auto toy = make_toy_dataset();
    const auto pre = apply_objective_weights(toy, ObjectiveKind::Pretrain_D);
    const auto ret = apply_objective_weights(toy, ObjectiveKind::Retrain_R);
    const auto gda = apply_objective_weights(toy, ObjectiveKind::SimultaneousDA);
    CHECK(pre.samples[3].multiplicity == 4.0);
    CHECK(ret.samples[3].multiplicity == 2.0);
    CHECK(gda.samples[3].multiplicity == 0.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(ret.samples[i].multiplicity == toy.samples[i].multiplicity);
        CHECK(gda.samples[i].multiplicity == toy.samples[i].multiplicity);
    }
}
