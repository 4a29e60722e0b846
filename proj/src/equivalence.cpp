#include "bspapa/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "bspapa/filter.hpp"
#include "bspapa/signal_lab.hpp"

namespace bspapa {

namespace {

constexpr std::size_t kTaps = 64;
constexpr std::size_t kOrder = 4;

FilterConfig config_for(Variant variant, std::optional<std::size_t> order, std::optional<std::size_t> group) {
    FilterParams p;
    p.filter_length = kTaps;
    p.projection_order = order;
    p.group_size = group;
    p.step_size = 0.5;
    p.regularization = 0.01;
    p.guards = {0.01, 0.01};
    return make_filter_config(variant, p);
}

double max_final_deviation(const FilterConfig& a, const FilterConfig& b, std::span<const double> input,
                           std::span<const double> desired) {
    AdaptiveFilter fa(a);
    AdaptiveFilter fb(b);
    for (std::size_t n = 0; n < input.size(); ++n) {
        fa.adapt(input[n], desired[n]);
        fb.adapt(input[n], desired[n]);
    }
    double dev = 0.0;
    for (std::size_t l = 0; l < kTaps; ++l) dev = std::max(dev, std::abs(fa.weights()[l] - fb.weights()[l]));
    return dev;
}

}  // namespace

std::vector<EquivalenceResult> run_equivalence_suite(std::uint64_t seed, std::size_t steps) {
    EchoScenario sc;
    sc.filter_length = kTaps;
    sc.total_samples = steps;
    sc.seed = seed;
    sc.snr_db = 30.0;
    sc.excitation = Excitation::white();
    const std::vector<Cluster> clusters{{9, 12}, {41, 44}};
    sc.schedule.push_back({0, make_block_sparse_ir(kTaps, clusters, seed)});
    const auto signals = synthesize(sc);

    auto run = [&](const char* name, const FilterConfig& a, const FilterConfig& b) {
        return EquivalenceResult{name, max_final_deviation(a, b, signals.input, signals.desired)};
    };

    std::vector<EquivalenceResult> results;
    results.push_back(run("BS-PAPA(P=1) vs PAPA", config_for(Variant::BS_PAPA, kOrder, 1),
                          config_for(Variant::PAPA, kOrder, std::nullopt)));
    results.push_back(run("BS-PAPA(P=L) vs APA", config_for(Variant::BS_PAPA, kOrder, kTaps),
                          config_for(Variant::APA, kOrder, std::nullopt)));
    results.push_back(run("BS-PAPA(M=1) vs BS-PNLMS", config_for(Variant::BS_PAPA, 1, 4),
                          config_for(Variant::BS_PNLMS, std::nullopt, 4)));
    results.push_back(run("BS-MPAPA(P=1) vs MPAPA", config_for(Variant::BS_MPAPA, kOrder, 1),
                          config_for(Variant::MPAPA, kOrder, std::nullopt)));
    results.push_back(run("BS-PNLMS(P=1) vs PNLMS", config_for(Variant::BS_PNLMS, std::nullopt, 1),
                          config_for(Variant::PNLMS, std::nullopt, std::nullopt)));
    return results;
}

}  // namespace bspapa
