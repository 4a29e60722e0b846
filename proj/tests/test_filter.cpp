#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "bspapa/filter.hpp"
#include "bspapa/signal_lab.hpp"

using namespace bspapa;

namespace {

FilterParams params(std::size_t taps, std::optional<std::size_t> order, std::optional<std::size_t> group,
                    double mu = 0.5, double delta = 0.01) {
    FilterParams p;
    p.filter_length = taps;
    p.projection_order = order;
    p.group_size = group;
    p.step_size = mu;
    p.regularization = delta;
    return p;
}

std::vector<double> gaussian(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

}  // namespace

TEST_CASE("variant canonicalization") {
    CHECK(make_filter_config(Variant::APA, params(16, 4, std::nullopt)).partition.group_size() == 16);
    CHECK(make_filter_config(Variant::PAPA, params(16, 4, std::nullopt)).partition.group_size() == 1);
    CHECK(make_filter_config(Variant::MPAPA, params(16, 4, 1)).partition.group_size() == 1);
    const auto pnlms = make_filter_config(Variant::PNLMS, params(16, std::nullopt, std::nullopt));
    CHECK(pnlms.projection_order == 1);
    CHECK(pnlms.partition.group_size() == 1);
    CHECK(make_filter_config(Variant::BS_PNLMS, params(16, std::nullopt, 4)).projection_order == 1);
    CHECK(make_filter_config(Variant::BS_MPAPA, params(16, 2, 4)).is_memory());

    CHECK_THROWS_AS(make_filter_config(Variant::APA, params(16, 4, 4)), std::invalid_argument);
    CHECK_THROWS_AS(make_filter_config(Variant::PAPA, params(16, 4, 2)), std::invalid_argument);
    CHECK_THROWS_AS(make_filter_config(Variant::PNLMS, params(16, 2, std::nullopt)), std::invalid_argument);
    CHECK_THROWS_AS(make_filter_config(Variant::BS_PAPA, params(16, 4, std::nullopt)), std::invalid_argument);
    CHECK_THROWS_AS(make_filter_config(Variant::BS_PAPA, params(16, std::nullopt, 4)), std::invalid_argument);
    CHECK_THROWS_AS(make_filter_config(Variant::BS_PAPA, params(16, 4, 5)), std::invalid_argument);
    CHECK_THROWS_AS(make_filter_config(Variant::BS_PAPA, params(16, 0, 4)), std::invalid_argument);
    CHECK_THROWS_AS(make_filter_config(Variant::BS_PAPA, params(16, 4, 4, -0.1)), std::invalid_argument);
    CHECK_THROWS_AS(make_filter_config(Variant::BS_PAPA, params(16, 4, 4, 0.5, -1.0)), std::invalid_argument);

    for (auto v : {Variant::APA, Variant::PAPA, Variant::BS_PAPA, Variant::MPAPA, Variant::BS_MPAPA,
                   Variant::BS_PNLMS, Variant::PNLMS})
        CHECK(parse_variant(to_string(v)) == v);
    CHECK_THROWS_AS(parse_variant("NLMS"), std::invalid_argument);
}

TEST_CASE("initial state") {
    const auto cfg = make_filter_config(Variant::BS_MPAPA, params(16, 3, 4));
    const auto state = FilterState::initial(cfg);
    CHECK(state.weights == std::vector<double>(16, 0.0));
    REQUIRE(state.memory_regressor);
    CHECK(state.memory_regressor->rows() == 16);
    CHECK(state.memory_regressor->cols() == 3);
    CHECK_FALSE(FilterState::initial(make_filter_config(Variant::BS_PAPA, params(16, 3, 4))).memory_regressor);
}

TEST_CASE("zero step size leaves weights untouched") {
    const auto x = gaussian(1, 200);
    const auto d = gaussian(2, 200);
    for (auto v : {Variant::APA, Variant::PAPA, Variant::BS_PAPA, Variant::MPAPA, Variant::BS_MPAPA}) {
        AdaptiveFilter f(make_filter_config(v, params(16, 4, v == Variant::BS_PAPA || v == Variant::BS_MPAPA
                                                                 ? std::optional<std::size_t>(4)
                                                                 : std::nullopt,
                                                0.0)));
        for (std::size_t n = 0; n < x.size(); ++n) f.adapt(x[n], d[n]);
        for (double w : f.weights()) CHECK(w == 0.0);
    }
}

TEST_CASE("zero error leaves weights untouched") {
    const auto cfg = make_filter_config(Variant::BS_PAPA, params(8, 2, 2));
    const std::vector<double> truth{0, 0, 1.5, -0.5, 0, 0, 0, 0};
    auto state = FilterState::initial(cfg);
    state.weights = truth;
    RegressorHistory hist(8, 2);
    const auto x = gaussian(4, 30);
    std::vector<double> d(2, 0.0);
    for (double v : x) {
        hist.push(v);
        const double y = 1.5 * hist.lag(2) - 0.5 * hist.lag(3);
        d[1] = d[0];
        d[0] = y;
        const auto report = filter_step(cfg, state, hist, d);
        CHECK(report.error[0] == 0.0);
        CHECK(state.weights == truth);
    }
}

TEST_CASE("scalar projection identifies in one step") {
    const auto cfg = make_filter_config(Variant::BS_PAPA, params(1, 1, 1, 1.0, 0.0));
    auto state = FilterState::initial(cfg);
    RegressorHistory hist(1, 1);
    hist.push(2.0);
    const auto report = filter_step(cfg, state, hist, std::vector<double>{2.0});
    CHECK(report.error == std::vector<double>{2.0});
    CHECK(state.weights == std::vector<double>{1.0});
    CHECK(state.step_counter == 1);

    const auto pnlms = make_filter_config(Variant::PNLMS, params(1, std::nullopt, std::nullopt, 1.0, 0.0));
    auto s2 = FilterState::initial(pnlms);
    filter_step(pnlms, s2, hist, std::vector<double>{2.0});
    CHECK(s2.weights == std::vector<double>{1.0});
}

TEST_CASE("solver failure propagates") {
    // delta = 0 with an all-zero regressor cannot be solved
    const auto cfg = make_filter_config(Variant::APA, params(4, 2, std::nullopt, 0.5, 0.0));
    auto state = FilterState::initial(cfg);
    RegressorHistory hist(4, 2);
    hist.push(0.0);
    CHECK_THROWS_AS(filter_step(cfg, state, hist, std::vector<double>{1.0, 0.0}), std::runtime_error);
}

TEST_CASE("filter_step dimension checks") {
    const auto cfg = make_filter_config(Variant::BS_PAPA, params(8, 2, 2));
    auto state = FilterState::initial(cfg);
    CHECK_THROWS_AS(filter_step(cfg, state, RegressorHistory(8, 3), std::vector<double>(2)), std::invalid_argument);
    CHECK_THROWS_AS(filter_step(cfg, state, RegressorHistory(8, 2), std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("memory regressor") {
    const auto cfg = make_filter_config(Variant::BS_MPAPA, params(8, 3, 2));
    const std::vector<double> g{0.5, 0.5, 2.0, 2.0, 1.0, 1.0, 0.5, 0.5};
    const auto x1 = gaussian(8, 8);
    const auto x2 = gaussian(9, 8);

    SUBCASE("first call fills the newest column only") {
        auto state = FilterState::initial(cfg);
        update_memory_regressor(state, g, x1);
        const Matrix& m = *state.memory_regressor;
        for (std::size_t l = 0; l < 8; ++l) {
            CHECK(m(l, 0) == g[l] * x1[l]);
            CHECK(m(l, 1) == 0.0);
            CHECK(m(l, 2) == 0.0);
        }
    }
    SUBCASE("shift property") {
        auto state = FilterState::initial(cfg);
        update_memory_regressor(state, g, x1);
        const std::vector<double> first(state.memory_regressor->column(0).begin(),
                                        state.memory_regressor->column(0).end());
        update_memory_regressor(state, g, x2);
        const auto second = state.memory_regressor->column(1);
        CHECK(std::equal(first.begin(), first.end(), second.begin(), second.end()));
    }
    SUBCASE("frozen gains reproduce the exact weighted regressor") {
        const GainVector gains(BlockPartition(8, 2), {0.5, 2.0, 1.0, 0.5});
        auto state = FilterState::initial(cfg);
        RegressorHistory hist(8, 3);
        for (double v : gaussian(10, 12)) {
            hist.push(v);
            update_memory_regressor(state, gains, hist.input_vector(0));
        }
        CHECK(*state.memory_regressor == build_weighted_regressor_direct(gains, hist).matrix);
    }
    SUBCASE("non-memory variant is a contract violation") {
        auto state = FilterState::initial(make_filter_config(Variant::BS_PAPA, params(8, 3, 2)));
        CHECK_THROWS_AS(update_memory_regressor(state, g, x1), std::logic_error);
    }
}

TEST_CASE("memory newest column equals exact P(n) column at every step") {
    for (auto variant : {Variant::BS_MPAPA, Variant::MPAPA}) {
        const auto cfg = make_filter_config(variant, params(32, 4, variant == Variant::MPAPA
                                                                       ? std::optional<std::size_t>()
                                                                       : std::optional<std::size_t>(8)));
        auto state = FilterState::initial(cfg);
        RegressorHistory hist(32, 4);
        std::vector<double> d(4, 0.0);
        const auto x = gaussian(17, 300);
        const auto noise = gaussian(18, 300);
        for (std::size_t n = 0; n < x.size(); ++n) {
            hist.push(x[n]);
            std::copy_backward(d.begin(), d.end() - 1, d.end());
            d[0] = 0.7 * hist.lag(9) - 0.3 * hist.lag(10) + 0.01 * noise[n];
            const auto gains = compute_block_gains(state.weights, cfg.partition, cfg.guards);
            const auto exact = build_weighted_regressor_direct(gains, hist);
            filter_step(cfg, state, hist, d);
            const auto mem = state.memory_regressor->column(0);
            const auto col = exact.matrix.column(0);
            CHECK(std::equal(mem.begin(), mem.end(), col.begin(), col.end()));
        }
    }
}

TEST_CASE("direct and efficient modes produce identical trajectories") {
    auto direct = params(64, 4, 8);
    direct.regressor_mode = RegressorMode::direct;
    auto efficient = direct;
    efficient.regressor_mode = RegressorMode::efficient;
    AdaptiveFilter a(make_filter_config(Variant::BS_PAPA, direct));
    AdaptiveFilter b(make_filter_config(Variant::BS_PAPA, efficient));
    const auto x = gaussian(30, 500);
    const auto v = gaussian(31, 500);
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double d = (n >= 20 ? x[n - 20] : 0.0) + 0.01 * v[n];
        CHECK(a.adapt(x[n], d).multiplication_count == 256);
        CHECK(b.adapt(x[n], d).multiplication_count == (8 + 4 - 1) * 8);
    }
    CHECK(std::equal(a.weights().begin(), a.weights().end(), b.weights().begin(), b.weights().end()));
}

TEST_CASE("regressor multiplication accounting") {
    CHECK(regressor_multiplications(make_filter_config(Variant::BS_PAPA, params(1024, 8, 32))) == 1248);
    auto direct = params(1024, 8, 32);
    direct.regressor_mode = RegressorMode::direct;
    CHECK(regressor_multiplications(make_filter_config(Variant::BS_PAPA, direct)) == 8192);
    CHECK(regressor_multiplications(make_filter_config(Variant::BS_MPAPA, params(1024, 8, 32))) == 1024);
    CHECK(regressor_multiplications(make_filter_config(Variant::PAPA, params(1024, 8, std::nullopt))) == 8192);
}
