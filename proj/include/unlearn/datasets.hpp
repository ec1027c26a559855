#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace unlearn {

// Semi-orthogonal block data: every block lives on its own coordinate and
// every sample satisfies y*x_j = 1 on its support, so a block is fully
// described by its retain/forget counts. Coordinate j of any weight vector
// only ever interacts with block j.
struct Block {
    int coordinate_index = 0;
    long retain_count = 0;
    long forget_count = 0;

    double alpha() const; // |F_j| / |R_j|
};

struct BlockDataset {
    std::vector<Block> blocks;
    long total_retain = 0;
    long total_forget = 0;

    int dimension() const { return static_cast<int>(blocks.size()); }
    long total() const { return total_retain + total_forget; }
};

// spec: one (retain_count, forget_count) pair per coordinate block.
// Rejects specs with no retain samples anywhere or negative counts.
BlockDataset make_block_dataset(const std::vector<std::pair<long, long>>& spec);

nlohmann::ordered_json block_dataset_to_json(const BlockDataset& data);
BlockDataset block_dataset_from_json(const nlohmann::json& j);

// Two correlated coordinates: retain samples along (1, eps), forget samples
// along (eps, 1), both embedded in a larger dataset with |R| retain and |F|
// forget samples in total. The forget block has |F_ij| = alpha * |R_ij|.
struct TwoDimSystem {
    double epsilon = 0.0;
    double alpha = 0.0;
    long r_ij = 0;
    long total_retain = 0;
    long total_forget = 0;
    double lambda = 0.0;

    double b() const; // |R_ij| / (lambda * |D|)
};

TwoDimSystem make_two_dim_system(double epsilon, double alpha, long r_ij,
                                 long total_retain, long total_forget, double lambda);

// Explicit weighted samples. multiplicity counts how many unit points are
// clustered at the sample; forget_multiplicity of those units belong to the
// forget set (0 for pure retain samples).
struct Sample {
    std::vector<double> features;
    int label = 1; // +1 or -1
    double multiplicity = 1.0;
    double forget_multiplicity = 0.0;
};

struct DenseDataset {
    std::vector<Sample> samples;

    int dimension() const;
    std::vector<std::size_t> forget_indices() const;
    double total_multiplicity() const;
};

// Four clustered points with features (x, x^2), labels {-1,+1,-1,+1} and
// multiplicities {5,4,1,4}; the forget set is two units of multiplicity at
// the fourth point.
DenseDataset make_toy_dataset();

// Uniformly random subset of n_forget indices out of [0, n_total),
// deterministic per seed, returned sorted.
std::vector<std::size_t> random_forget_partition(std::size_t n_total, std::size_t n_forget,
                                                 std::uint64_t seed);

} // namespace unlearn
