#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bspapa/gains.hpp"

using namespace bspapa;

TEST_CASE("partition requires P to divide L") {
    CHECK_NOTHROW(BlockPartition(1024, 32));
    CHECK_NOTHROW(BlockPartition(8, 8));
    CHECK_THROWS_AS(BlockPartition(10, 4), std::invalid_argument);
    CHECK_THROWS_AS(BlockPartition(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(BlockPartition(8, 16), std::invalid_argument);
    CHECK_THROWS_AS(BlockPartition(0, 1), std::invalid_argument);

    const BlockPartition p(1024, 32);
    CHECK(p.block_count() == 32);
    CHECK(p.block_of(0) == 0);
    CHECK(p.block_of(31) == 0);
    CHECK(p.block_of(32) == 1);
    CHECK(p.block_of(1023) == 31);
}

TEST_CASE("block_l2_norms") {
    SUBCASE("3-4-5 block and a zero block") {
        const std::vector<double> w{3, 4, 0, 0};
        CHECK(block_l2_norms(w, BlockPartition(4, 2)) == std::vector<double>{5, 0});
    }
    SUBCASE("all zeros") {
        const std::vector<double> w(12, 0.0);
        for (std::size_t p : {1, 2, 3, 4, 6, 12})
            for (double v : block_l2_norms(w, BlockPartition(12, p))) CHECK(v == 0.0);
    }
    SUBCASE("random vector against brute-force accumulation") {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> dist;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> w(8);
            for (double& v : w) v = dist(rng);
            const auto norms = block_l2_norms(w, BlockPartition(8, 4));
            REQUIRE(norms.size() == 2);
            for (std::size_t b = 0; b < 2; ++b) {
                long double acc = 0.0L;
                for (std::size_t t = 0; t < 4; ++t) acc += static_cast<long double>(w[b * 4 + t]) * w[b * 4 + t];
                const double expected = static_cast<double>(std::sqrt(acc));
                CHECK(std::abs(norms[b] - expected) <= 1e-14 * expected);
            }
        }
    }
    SUBCASE("P=1 yields absolute values") {
        const std::vector<double> w{-1.5, 0.0, 2.25, -0.125};
        CHECK(block_l2_norms(w, BlockPartition(4, 1)) == std::vector<double>{1.5, 0.0, 2.25, 0.125});
    }
    SUBCASE("length mismatch") {
        const std::vector<double> w(6, 1.0);
        CHECK_THROWS_AS(block_l2_norms(w, BlockPartition(8, 4)), std::invalid_argument);
    }
}

TEST_CASE("proportionate_gains examples") {
    const StallGuards guards{0.01, 0.01};

    SUBCASE("one active block") {
        const std::vector<double> norms{5, 0};
        const auto g = proportionate_gains(norms, guards);
        // gamma = [5, 0.05], mean 2.525
        CHECK(g[0] == doctest::Approx(1.9801980198019802).epsilon(1e-14));
        CHECK(g[1] == doctest::Approx(0.019801980198019802).epsilon(1e-14));
        CHECK(g[0] + g[1] == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("equal norms give unit gains") {
        const std::vector<double> norms{1, 1, 1, 1};
        for (double v : proportionate_gains(norms, {0.3, 2.0})) CHECK(v == 1.0);
        for (double v : proportionate_gains(norms, guards)) CHECK(v == 1.0);
    }
    SUBCASE("zero initialization is floored by q") {
        const std::vector<double> norms(16, 0.0);
        for (double v : proportionate_gains(norms, guards)) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(proportionate_gains(std::vector<double>{}, guards), std::invalid_argument);
        CHECK_THROWS_AS(proportionate_gains(std::vector<double>{1.0}, {0.0, 0.01}), std::invalid_argument);
        CHECK_THROWS_AS(proportionate_gains(std::vector<double>{1.0}, {0.01, -1.0}), std::invalid_argument);
    }
}

TEST_CASE("gain properties over random weights") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> dist;
    std::uniform_int_distribution<int> sparse(0, 3);
    const StallGuards guards{0.01, 0.01};

    for (std::size_t group : {1, 2, 8, 16, 64}) {
        const BlockPartition part(64, group);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> w(64);
            for (double& v : w) v = sparse(rng) == 0 ? dist(rng) : 0.0;

            const auto gains = compute_block_gains(w, part, guards);
            const auto bg = gains.block_gains();
            const double mean = std::accumulate(bg.begin(), bg.end(), 0.0) / static_cast<double>(bg.size());
            CHECK(std::abs(mean - 1.0) <= 1e-12);
            for (double g : bg) CHECK(g > 0.0);

            const auto taps = gains.expand();
            REQUIRE(taps.size() == 64);
            CHECK(std::abs(std::accumulate(taps.begin(), taps.end(), 0.0) - 64.0) <= 1e-9);
            for (std::size_t l = 0; l < 64; ++l) CHECK(taps[l] == gains.tap_gain(l));

            // scale covariance while above the q floor
            const auto norms = block_l2_norms(w, part);
            if (*std::max_element(norms.begin(), norms.end()) >= guards.q) {
                std::vector<double> scaled(norms);
                for (double& v : scaled) v *= 4.0;
                const auto a = proportionate_gains(norms, guards);
                const auto b = proportionate_gains(scaled, guards);
                for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("single block degenerates to unit gain") {
    std::vector<double> w{0.3, -2.0, 0.0, 7.5};
    const auto g = compute_block_gains(w, BlockPartition(4, 4), {});
    REQUIRE(g.block_gains().size() == 1);
    CHECK(g.block_gain(0) == 1.0);
}

TEST_CASE("per-tap gains agree with block gains at P=1") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> w(32);
        for (std::size_t l = 0; l < w.size(); ++l) w[l] = (l % 5 == 0) ? dist(rng) : 0.0;
        const auto taps = tap_proportionate_gains(w, {});
        const auto blocks = compute_block_gains(w, BlockPartition(32, 1), {}).expand();
        for (std::size_t l = 0; l < w.size(); ++l) CHECK(taps[l] == doctest::Approx(blocks[l]).epsilon(1e-15));
    }
}

TEST_CASE("GainVector rejects wrong block count") {
    CHECK_THROWS_AS(GainVector(BlockPartition(8, 2), {1.0, 1.0}), std::invalid_argument);
    const auto u = GainVector::uniform(BlockPartition(8, 2));
    CHECK(u.expand() == std::vector<double>(8, 1.0));
}
