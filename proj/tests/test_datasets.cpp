#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "unlearn/datasets.hpp"
#include "unlearn/rng.hpp"

using namespace unlearn;

TEST_CASE("block dataset construction") {
    const auto a = make_block_dataset({{10, 0}});
    CHECK(a.blocks.size() == 1);
    CHECK(a.total_retain == 10);
    CHECK(a.total_forget == 0);
    CHECK(a.blocks[0].alpha() == 0.0);

    const auto b = make_block_dataset({{4, 4}});
    CHECK(b.blocks[0].alpha() == 1.0);
    CHECK(b.total() == 8);

    const auto c = make_block_dataset({{100, 25}, {50, 0}});
    CHECK(c.total_retain == 150);
    CHECK(c.total_forget == 25);
    CHECK(c.blocks[0].alpha() == 0.25);
    CHECK(c.dimension() == 2);
    CHECK(c.blocks[1].coordinate_index == 1);
}

TEST_CASE("block dataset rejects bad specs") {
    CHECK_THROWS_AS(make_block_dataset({{0, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_block_dataset({{0, 0}, {0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(make_block_dataset({{-1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_block_dataset({{5, -2}}), std::invalid_argument);
    CHECK_NOTHROW(make_block_dataset({{0, 2}, {7, 0}})); // pure-forget block is fine
}

TEST_CASE("block dataset serialization round trip") {
    const auto d = make_block_dataset({{100, 25}, {50, 0}, {1, 7}});
    const auto j = block_dataset_to_json(d);
    const auto back = block_dataset_from_json(j);
    REQUIRE(back.blocks.size() == d.blocks.size());
    CHECK(back.total_retain == d.total_retain);
    CHECK(back.total_forget == d.total_forget);
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        CHECK(back.blocks[i].coordinate_index == d.blocks[i].coordinate_index);
        CHECK(back.blocks[i].retain_count == d.blocks[i].retain_count);
        CHECK(back.blocks[i].forget_count == d.blocks[i].forget_count);
    }
    CHECK(block_dataset_to_json(back) == j);
}

TEST_CASE("two dim system validation") {
    const auto sys = make_two_dim_system(0.5, 0.3, 1, 1000, 500, 0.01);
    CHECK(sys.b() == doctest::Approx(1.0 / (0.01 * 1500.0)));
    CHECK_THROWS_AS(make_two_dim_system(0.0, 0.3, 1, 10, 5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_two_dim_system(1.0, 0.3, 1, 10, 5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_two_dim_system(0.5, -0.1, 1, 10, 5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_two_dim_system(0.5, 0.3, 1, 10, 5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_two_dim_system(0.5, 0.3, 0, 10, 5, 0.1), std::invalid_argument);
}

TEST_CASE("toy dataset matches the clustered points") {
    const auto toy = make_toy_dataset();
    REQUIRE(toy.samples.size() == 4);
    CHECK(toy.samples[3].features == std::vector<double>{4.0, 16.0});
    CHECK(toy.samples[3].label == 1);
    CHECK(toy.samples[3].multiplicity == 4.0);
    CHECK(toy.samples[0].features == std::vector<double>{-1.0, 1.0});
    CHECK(toy.samples[0].label == -1);
    CHECK(toy.samples[0].multiplicity == 5.0);
    CHECK(toy.samples[1].label == 1);
    CHECK(toy.samples[2].label == -1);
    CHECK(toy.total_multiplicity() == 14.0);
    // forget set: two units of multiplicity at the fourth point
    CHECK(toy.forget_indices() == std::vector<std::size_t>{3});
    CHECK(toy.samples[3].forget_multiplicity == 2.0);
    CHECK(toy.dimension() == 2);
}

TEST_CASE("random forget partition basics") {
    CHECK(random_forget_partition(10, 0, 42).empty());

    const auto all = random_forget_partition(10, 10, 42);
    REQUIRE(all.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(all[i] == i);

    const auto s1 = random_forget_partition(50000, 500, 99);
    const auto s2 = random_forget_partition(50000, 500, 99);
    CHECK(s1 == s2);
    CHECK(s1.size() == 500);
    CHECK(std::set<std::size_t>(s1.begin(), s1.end()).size() == 500);
    CHECK(random_forget_partition(50000, 500, 100) != s1);

    CHECK_THROWS_AS(random_forget_partition(5, 6, 1), std::invalid_argument);
}

TEST_CASE("random forget partition is uniform per index") {
    const std::size_t n = 20, k = 5;
    const int reps = 20000;
    std::vector<int> hits(n, 0);
    for (int r = 0; r < reps; ++r) {
        for (std::size_t idx : random_forget_partition(n, k, derive_seed(7777, r))) {
            ++hits[idx];
        }
    }
    const double p = static_cast<double>(k) / static_cast<double>(n);
    const double sigma = std::sqrt(p * (1.0 - p) / reps);
    for (std::size_t i = 0; i < n; ++i) {
        const double freq = static_cast<double>(hits[i]) / reps;
        CHECK(std::fabs(freq - p) <= 3.0 * sigma);
    }
}
