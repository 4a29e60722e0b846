#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bspapa/gains.hpp"
#include "bspapa/matrix.hpp"
#include "bspapa/regressor.hpp"

namespace bspapa {

enum class Variant { APA, PAPA, BS_PAPA, MPAPA, BS_MPAPA, BS_PNLMS, PNLMS };

enum class RegressorMode { direct, efficient };

std::string_view to_string(Variant v) noexcept;
std::string_view to_string(RegressorMode m) noexcept;
Variant parse_variant(std::string_view name);
RegressorMode parse_regressor_mode(std::string_view name);

/// Loose parameter bundle, validated and canonicalized by make_filter_config.
/// Parameters implied by the variant (P for APA/PAPA/MPAPA/PNLMS, M for the
/// NLMS-type variants) may be left empty; if given they must agree.
struct FilterParams {
    std::size_t filter_length = 0;
    std::optional<std::size_t> projection_order;
    std::optional<std::size_t> group_size;
    double step_size = 0.01;
    double regularization = 0.01;
    StallGuards guards{};
    RegressorMode regressor_mode = RegressorMode::efficient;
};

struct FilterConfig {
    Variant variant;
    BlockPartition partition;
    std::size_t projection_order;
    double step_size;
    double regularization;
    StallGuards guards;
    RegressorMode regressor_mode;

    std::size_t filter_length() const noexcept { return partition.filter_length(); }
    bool is_memory() const noexcept { return variant == Variant::MPAPA || variant == Variant::BS_MPAPA; }
};

/// Validates `params` and pins the parameters implied by `variant`:
///   APA      -> P = L
///   PAPA     -> P = 1
///   MPAPA    -> P = 1
///   BS-PNLMS -> M = 1
///   PNLMS    -> P = 1, M = 1
/// Throws std::invalid_argument on inconsistency.
FilterConfig make_filter_config(Variant variant, const FilterParams& params);

struct FilterState {
    std::vector<double> weights;
    /// L x M, newest column first. Present only for the memory variants.
    std::optional<Matrix> memory_regressor;
    std::uint64_t step_counter = 0;

    static FilterState initial(const FilterConfig& config);
};

/// Diagnostics of a single update.
struct StepReport {
    std::vector<double> error;
    std::size_t multiplication_count = 0;
};

/// Shifts the memory regressor one column right and writes g(n-1) .* x(n)
/// into column 0 (L multiplications). Throws std::logic_error when `state`
/// has no memory regressor.
void update_memory_regressor(FilterState& state, std::span<const double> tap_gains,
                             std::span<const double> newest_input);
void update_memory_regressor(FilterState& state, const GainVector& gains,
                             std::span<const double> newest_input);

/// One adaptation step at time n. `history` must already contain x(n) and
/// `desired` holds d(n), ..., d(n-M+1).
StepReport filter_step(const FilterConfig& config, FilterState& state, const RegressorHistory& history,
                       std::span<const double> desired);

/// Regressor-construction multiplications per step for a configuration.
std::size_t regressor_multiplications(const FilterConfig& config) noexcept;

/// Owns the input and desired-signal histories of one stream and drives
/// filter_step sample by sample.
class AdaptiveFilter {
public:
    explicit AdaptiveFilter(FilterConfig config);

    StepReport adapt(double input, double desired);

    const FilterConfig& config() const noexcept { return config_; }
    const FilterState& state() const noexcept { return state_; }
    std::span<const double> weights() const noexcept { return state_.weights; }
    const RegressorHistory& history() const noexcept { return history_; }

private:
    FilterConfig config_;
    FilterState state_;
    RegressorHistory history_;
    std::vector<double> desired_;
};

}  // namespace bspapa
