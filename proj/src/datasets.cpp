#include "unlearn/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "unlearn/rng.hpp"

namespace unlearn {

double Block::alpha() const {
    if (retain_count == 0) {
        throw std::domain_error("Block::alpha: undefined for retain_count = 0");
    }
    return static_cast<double>(forget_count) / static_cast<double>(retain_count);
}

BlockDataset make_block_dataset(const std::vector<std::pair<long, long>>& spec) {
    BlockDataset data;
    data.blocks.reserve(spec.size());
    int coord = 0;
    for (const auto& [retain, forget] : spec) {
        if (retain < 0 || forget < 0) {
            throw std::invalid_argument("make_block_dataset: negative count");
        }
        data.blocks.push_back({coord++, retain, forget});
        data.total_retain += retain;
        data.total_forget += forget;
    }
    if (data.total_retain < 1) {
        throw std::invalid_argument("make_block_dataset: needs at least one retain sample");
    }
    return data;
}

nlohmann::ordered_json block_dataset_to_json(const BlockDataset& data) {
    nlohmann::ordered_json j;
    j["blocks"] = nlohmann::ordered_json::array();
    for (const auto& b : data.blocks) {
        j["blocks"].push_back({{"retain_count", b.retain_count}, {"forget_count", b.forget_count}});
    }
    return j;
}

BlockDataset block_dataset_from_json(const nlohmann::json& j) {
    std::vector<std::pair<long, long>> spec;
    for (const auto& b : j.at("blocks")) {
        spec.emplace_back(b.at("retain_count").get<long>(), b.at("forget_count").get<long>());
    }
    return make_block_dataset(spec);
}

double TwoDimSystem::b() const {
    return static_cast<double>(r_ij) / (lambda * static_cast<double>(total_retain + total_forget));
}

TwoDimSystem make_two_dim_system(double epsilon, double alpha, long r_ij,
                                 long total_retain, long total_forget, double lambda) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("make_two_dim_system: epsilon must lie strictly in (0,1)");
    }
    if (alpha < 0.0) throw std::invalid_argument("make_two_dim_system: alpha must be >= 0");
    if (r_ij < 1) throw std::invalid_argument("make_two_dim_system: r_ij must be >= 1");
    if (total_retain < 1) throw std::invalid_argument("make_two_dim_system: total_retain must be >= 1");
    if (total_forget < 0) throw std::invalid_argument("make_two_dim_system: total_forget must be >= 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("make_two_dim_system: lambda must be > 0");
    return {epsilon, alpha, r_ij, total_retain, total_forget, lambda};
}

int DenseDataset::dimension() const {
    return samples.empty() ? 0 : static_cast<int>(samples.front().features.size());
}

std::vector<std::size_t> DenseDataset::forget_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].forget_multiplicity > 0.0) out.push_back(i);
    }
    return out;
}

double DenseDataset::total_multiplicity() const {
    double s = 0.0;
    for (const auto& smp : samples) s += smp.multiplicity;
    return s;
}

DenseDataset make_toy_dataset() {
    const double xs[4] = {-1.0, 1.0, 3.0, 4.0};
    const int labels[4] = {-1, 1, -1, 1};
    const double mult[4] = {5.0, 4.0, 1.0, 4.0};
    const double forget[4] = {0.0, 0.0, 0.0, 2.0};
    DenseDataset data;
    for (int i = 0; i < 4; ++i) {
        data.samples.push_back({{xs[i], xs[i] * xs[i]}, labels[i], mult[i], forget[i]});
    }
    return data;
}

std::vector<std::size_t> random_forget_partition(std::size_t n_total, std::size_t n_forget,
                                                 std::uint64_t seed) {
    if (n_forget > n_total) {
        throw std::invalid_argument("random_forget_partition: n_forget > n_total");
    }
    std::vector<std::size_t> idx(n_total);
    for (std::size_t i = 0; i < n_total; ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    // partial Fisher-Yates: the first n_forget slots become the sample
    for (std::size_t i = 0; i < n_forget; ++i) {
        std::size_t j = i + uniform_below(rng, n_total - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(n_forget);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace unlearn
