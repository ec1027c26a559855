#include "unlearn/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace unlearn {
namespace {

void check_dims(const std::vector<double>& w, const BlockDataset& data) {
    if (static_cast<int>(w.size()) != data.dimension()) {
        throw std::invalid_argument("losses: weight/dataset dimension mismatch");
    }
}

double ridge(const std::vector<double>& w, double lambda) {
    double s = 0.0;
    for (double v : w) s += v * v;
    return 0.5 * lambda * s;
}

} // namespace

double loss_exp(const std::vector<double>& w, const BlockDataset& data,
                ObjectiveKind kind, double lambda) {
    check_dims(w, data);
    const double nr = static_cast<double>(data.total_retain);
    const double nf = static_cast<double>(data.total_forget);
    const double nd = nr + nf;
    double acc = 0.0;
    for (std::size_t j = 0; j < data.blocks.size(); ++j) {
        const auto& blk = data.blocks[j];
        const double e = std::exp(-w[j]);
        switch (kind) {
            case ObjectiveKind::Pretrain_D:
                acc += (static_cast<double>(blk.retain_count + blk.forget_count) / nd) * e;
                break;
            case ObjectiveKind::Retrain_R:
                acc += (static_cast<double>(blk.retain_count) / nr) * e;
                break;
            case ObjectiveKind::SimultaneousDA:
                acc += (static_cast<double>(blk.retain_count) / nr) * e;
                if (nf > 0.0) acc -= (static_cast<double>(blk.forget_count) / nf) * e;
                break;
        }
    }
    return acc + ridge(w, lambda);
}

std::vector<double> grad_exp(const std::vector<double>& w, const BlockDataset& data,
                             ObjectiveKind kind, double lambda) {
    check_dims(w, data);
    const double nr = static_cast<double>(data.total_retain);
    const double nf = static_cast<double>(data.total_forget);
    const double nd = nr + nf;
    std::vector<double> g(w.size());
    for (std::size_t j = 0; j < data.blocks.size(); ++j) {
        const auto& blk = data.blocks[j];
        const double e = std::exp(-w[j]);
        double coeff = 0.0;
        switch (kind) {
            case ObjectiveKind::Pretrain_D:
                coeff = static_cast<double>(blk.retain_count + blk.forget_count) / nd;
                break;
            case ObjectiveKind::Retrain_R:
                coeff = static_cast<double>(blk.retain_count) / nr;
                break;
            case ObjectiveKind::SimultaneousDA:
                coeff = static_cast<double>(blk.retain_count) / nr;
                if (nf > 0.0) coeff -= static_cast<double>(blk.forget_count) / nf;
                break;
        }
        g[j] = -coeff * e + lambda * w[j];
    }
    return g;
}

double sigmoid_shifted(double z) {
    return 1.0 / (1.0 + std::exp(-(1.0 + z) / 2.0));
}

double loss_mse_sigmoid(std::pair<double, double> theta, const DenseDataset& data, double lambda) {
    const double n = static_cast<double>(data.samples.size());
    double acc = 0.0;
    for (const auto& smp : data.samples) {
        if (smp.features.size() != 2) {
            throw std::invalid_argument("loss_mse_sigmoid: expects 2-feature samples");
        }
        const double z = theta.first * smp.features[0] + theta.second * smp.features[1];
        const double t = (smp.label + 1) / 2.0;
        const double r = sigmoid_shifted(z) - t;
        acc += smp.multiplicity * r * r;
    }
    return acc / n + 0.5 * lambda * (theta.first * theta.first + theta.second * theta.second);
}

std::pair<double, double> grad_mse_sigmoid(std::pair<double, double> theta,
                                           const DenseDataset& data, double lambda) {
    const double n = static_cast<double>(data.samples.size());
    double ga = 0.0, gb = 0.0;
    for (const auto& smp : data.samples) {
        if (smp.features.size() != 2) {
            throw std::invalid_argument("grad_mse_sigmoid: expects 2-feature samples");
        }
        const double z = theta.first * smp.features[0] + theta.second * smp.features[1];
        const double t = (smp.label + 1) / 2.0;
        const double h = sigmoid_shifted(z);
        // d sigma / dz = sigma * (1 - sigma) / 2 for the shifted argument
        const double dl = smp.multiplicity * 2.0 * (h - t) * h * (1.0 - h) * 0.5;
        ga += dl * smp.features[0];
        gb += dl * smp.features[1];
    }
    return {ga / n + lambda * theta.first, gb / n + lambda * theta.second};
}

DenseDataset apply_objective_weights(const DenseDataset& data, ObjectiveKind kind) {
    DenseDataset out = data;
    for (auto& smp : out.samples) {
        switch (kind) {
            case ObjectiveKind::Pretrain_D:
                break;
            case ObjectiveKind::Retrain_R:
                smp.multiplicity -= smp.forget_multiplicity;
                break;
            case ObjectiveKind::SimultaneousDA:
                smp.multiplicity -= 2.0 * smp.forget_multiplicity;
                break;
        }
    }
    return out;
}

} // namespace unlearn
