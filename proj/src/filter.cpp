#include "bspapa/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bspapa/solver.hpp"

namespace bspapa {

namespace {

struct VariantName {
    Variant variant;
    std::string_view name;
};

constexpr VariantName kVariantNames[] = {
    {Variant::APA, "APA"},         {Variant::PAPA, "PAPA"},         {Variant::BS_PAPA, "BS-PAPA"},
    {Variant::MPAPA, "MPAPA"},     {Variant::BS_MPAPA, "BS-MPAPA"}, {Variant::BS_PNLMS, "BS-PNLMS"},
    {Variant::PNLMS, "PNLMS"},
};

std::size_t pinned(const std::optional<std::size_t>& given, std::size_t implied, std::string_view what,
                   Variant v) {
    if (given && *given != implied)
        throw std::invalid_argument(std::string(to_string(v)) + " implies " + std::string(what) + " = " +
                                    std::to_string(implied) + ", got " + std::to_string(*given));
    return implied;
}

std::size_t required(const std::optional<std::size_t>& given, std::string_view what, Variant v) {
    if (!given)
        throw std::invalid_argument(std::string(to_string(v)) + " requires " + std::string(what));
    return *given;
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
    for (const auto& entry : kVariantNames)
        if (entry.variant == v) return entry.name;
    return "?";
}

std::string_view to_string(RegressorMode m) noexcept {
    return m == RegressorMode::direct ? "direct" : "efficient";
}

Variant parse_variant(std::string_view name) {
    for (const auto& entry : kVariantNames)
        if (entry.name == name) return entry.variant;
    throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

RegressorMode parse_regressor_mode(std::string_view name) {
    if (name == "direct") return RegressorMode::direct;
    if (name == "efficient") return RegressorMode::efficient;
    throw std::invalid_argument("unknown regressor mode '" + std::string(name) + "'");
}

FilterConfig make_filter_config(Variant variant, const FilterParams& params) {
    const std::size_t taps = params.filter_length;
    if (taps == 0) throw std::invalid_argument("filter length must be positive");

    std::size_t order = 0;
    std::size_t group = 0;
    switch (variant) {
    case Variant::APA:
        order = required(params.projection_order, "projection order M", variant);
        group = pinned(params.group_size, taps, "P", variant);
        break;
    case Variant::PAPA:
    case Variant::MPAPA:
        order = required(params.projection_order, "projection order M", variant);
        group = pinned(params.group_size, 1, "P", variant);
        break;
    case Variant::BS_PAPA:
    case Variant::BS_MPAPA:
        order = required(params.projection_order, "projection order M", variant);
        group = required(params.group_size, "group size P", variant);
        break;
    case Variant::BS_PNLMS:
        order = pinned(params.projection_order, 1, "M", variant);
        group = required(params.group_size, "group size P", variant);
        break;
    case Variant::PNLMS:
        order = pinned(params.projection_order, 1, "M", variant);
        group = pinned(params.group_size, 1, "P", variant);
        break;
    }
    if (order == 0) throw std::invalid_argument("projection order must be at least 1");
    if (!(params.step_size >= 0.0 && params.step_size <= 2.0))
        throw std::invalid_argument("step size must lie in [0, 2]");
    if (!(params.regularization >= 0.0) || !std::isfinite(params.regularization))
        throw std::invalid_argument("regularization must be nonnegative");
    params.guards.validate();

    return FilterConfig{variant,
                        BlockPartition(taps, group),
                        order,
                        params.step_size,
                        params.regularization,
                        params.guards,
                        params.regressor_mode};
}

FilterState FilterState::initial(const FilterConfig& config) {
    FilterState state;
    state.weights.assign(config.filter_length(), 0.0);
    if (config.is_memory()) state.memory_regressor.emplace(config.filter_length(), config.projection_order);
    return state;
}

void update_memory_regressor(FilterState& state, std::span<const double> tap_gains,
                             std::span<const double> newest_input) {
    if (!state.memory_regressor)
        throw std::logic_error("update_memory_regressor: filter has no memory regressor");
    Matrix& mem = *state.memory_regressor;
    if (tap_gains.size() != mem.rows() || newest_input.size() != mem.rows())
        throw std::invalid_argument("update_memory_regressor: length mismatch");

    auto data = mem.data();
    const auto rows = static_cast<std::ptrdiff_t>(mem.rows());
    std::copy_backward(data.begin(), data.end() - rows, data.end());
    auto front = mem.column(0);
    for (std::size_t l = 0; l < front.size(); ++l) front[l] = tap_gains[l] * newest_input[l];
}

void update_memory_regressor(FilterState& state, const GainVector& gains, std::span<const double> newest_input) {
    const auto taps = gains.expand();
    update_memory_regressor(state, taps, newest_input);
}

std::size_t regressor_multiplications(const FilterConfig& config) noexcept {
    const std::size_t taps = config.filter_length();
    const std::size_t order = config.projection_order;
    switch (config.variant) {
    case Variant::APA:
        return 0;
    case Variant::PAPA:
        return taps * order;
    case Variant::BS_PAPA:
        if (config.regressor_mode == RegressorMode::direct) return taps * order;
        return (config.partition.group_size() + order - 1) * config.partition.block_count();
    case Variant::MPAPA:
    case Variant::BS_MPAPA:
    case Variant::BS_PNLMS:
    case Variant::PNLMS:
        return taps;
    }
    return 0;
}

namespace {

// Proportionate NLMS step: h += mu * u * e / (x^T u + delta), u = g .* x(n).
void normalized_step(const FilterConfig& config, FilterState& state, const RegressorHistory& history,
                     std::span<const double> tap_gains, double error) {
    auto x = history.input_vector(0);
    const std::size_t taps = x.size();
    std::vector<double> u(taps);
    double energy = 0.0;
    for (std::size_t l = 0; l < taps; ++l) {
        u[l] = tap_gains[l] * x[l];
        energy += x[l] * u[l];
    }
    const double denom = energy + config.regularization;
    if (!(std::abs(denom) > 0.0)) throw SingularSystemError("normalized step: zero denominator", 0.0);
    const double scale = config.step_size * error / denom;
    for (std::size_t l = 0; l < taps; ++l) state.weights[l] += scale * u[l];
}

void projection_step(const FilterConfig& config, FilterState& state, const RegressorHistory& history,
                     const Matrix& weighted, std::span<const double> error) {
    const Matrix a = projection_matrix(history, weighted);
    const auto z = solve_regularized(a, config.regularization, error);
    for (std::size_t j = 0; j < z.size(); ++j) {
        const double coef = config.step_size * z[j];
        auto col = weighted.column(j);
        for (std::size_t l = 0; l < col.size(); ++l) state.weights[l] += coef * col[l];
    }
}

}  // namespace

StepReport filter_step(const FilterConfig& config, FilterState& state, const RegressorHistory& history,
                       std::span<const double> desired) {
    if (history.filter_length() != config.filter_length() ||
        history.projection_order() != config.projection_order)
        throw std::invalid_argument("filter_step: history dimensions do not match the configuration");
    if (state.weights.size() != config.filter_length())
        throw std::invalid_argument("filter_step: weight vector length mismatch");

    StepReport report;
    report.error = error_vector(history, desired, state.weights);

    switch (config.variant) {
    case Variant::APA: {
        projection_step(config, state, history, history.materialize(), report.error);
        break;
    }
    case Variant::PAPA: {
        const auto g = tap_proportionate_gains(state.weights, config.guards);
        auto p = build_weighted_regressor_taps(g, history);
        report.multiplication_count = p.multiplication_count;
        projection_step(config, state, history, p.matrix, report.error);
        break;
    }
    case Variant::BS_PAPA: {
        const auto g = compute_block_gains(state.weights, config.partition, config.guards);
        auto p = config.regressor_mode == RegressorMode::direct ? build_weighted_regressor_direct(g, history)
                                                                : build_weighted_regressor_efficient(g, history);
        report.multiplication_count = p.multiplication_count;
        projection_step(config, state, history, p.matrix, report.error);
        break;
    }
    case Variant::MPAPA:
    case Variant::BS_MPAPA: {
        const auto g = config.variant == Variant::MPAPA
                           ? tap_proportionate_gains(state.weights, config.guards)
                           : compute_block_gains(state.weights, config.partition, config.guards).expand();
        update_memory_regressor(state, g, history.input_vector(0));
        report.multiplication_count = config.filter_length();
        projection_step(config, state, history, *state.memory_regressor, report.error);
        break;
    }
    case Variant::BS_PNLMS: {
        const auto g = compute_block_gains(state.weights, config.partition, config.guards).expand();
        report.multiplication_count = config.filter_length();
        normalized_step(config, state, history, g, report.error[0]);
        break;
    }
    case Variant::PNLMS: {
        const auto g = tap_proportionate_gains(state.weights, config.guards);
        report.multiplication_count = config.filter_length();
        normalized_step(config, state, history, g, report.error[0]);
        break;
    }
    }
    ++state.step_counter;
    return report;
}

AdaptiveFilter::AdaptiveFilter(FilterConfig config)
    : config_(config),
      state_(FilterState::initial(config_)),
      history_(config_.filter_length(), config_.projection_order),
      desired_(config_.projection_order, 0.0) {}

StepReport AdaptiveFilter::adapt(double input, double desired) {
    history_.push(input);
    std::copy_backward(desired_.begin(), desired_.end() - 1, desired_.end());
    desired_.front() = desired;
    return filter_step(config_, state_, history_, desired_);
}

}  // namespace bspapa
