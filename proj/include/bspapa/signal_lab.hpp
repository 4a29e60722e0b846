#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bspapa/regressor.hpp"

namespace bspapa {

/// Tap range [first, last], 1-based and inclusive.
struct Cluster {
    std::size_t first;
    std::size_t last;

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct ImpulseResponse {
    std::vector<double> taps;
    std::vector<Cluster> clusters;
};

/// Taps inside the clusters are standard normal draws (clusters in order,
/// taps in order); everything else is exactly zero. Two responses built with
/// the same seed share their leading clusters' values when those clusters
/// coincide.
ImpulseResponse make_block_sparse_ir(std::size_t filter_length, std::span<const Cluster> clusters,
                                     std::uint64_t seed);

struct Excitation {
    enum class Kind { white, ar1 };

    Kind kind = Kind::white;
    double pole = 0.0;

    static Excitation white() { return {Kind::white, 0.0}; }
    static Excitation ar1(double pole) { return {Kind::ar1, pole}; }

    void validate() const;
};

/// y(n) = pole * y(n-1) + w(n), y(-1) = 0.
std::vector<double> ar1_filter(std::span<const double> drive, double pole);

/// Unit-variance white Gaussian samples, optionally coloured through ar1_filter.
std::vector<double> gen_excitation(const Excitation& excitation, std::uint64_t seed, std::size_t n_samples);

/// Clean echo x^T(n) h.
double echo_output(const ImpulseResponse& response, const RegressorHistory& history);

double mean_power(std::span<const double> signal);

/// White Gaussian noise scaled so that mean_power(clean) / mean_power(noise)
/// equals 10^(snr_db / 10) exactly (up to rounding) over this vector.
std::vector<double> scale_noise_for_snr(std::span<const double> clean_echo, double snr_db, std::uint64_t seed);

inline constexpr double kMisalignmentFloorDb = -300.0;

/// 10 log10(|h - h_est|^2 / |h|^2), clamped below at -300 dB.
double misalignment_db(std::span<const double> true_h, std::span<const double> est_h);

struct ScheduleEntry {
    std::size_t switch_sample;
    ImpulseResponse response;
};

/// True-system schedule plus excitation and noise settings. An empty snr_db
/// means a noiseless observation.
struct EchoScenario {
    std::size_t filter_length = 0;
    std::vector<ScheduleEntry> schedule;
    Excitation excitation;
    std::optional<double> snr_db;
    std::uint64_t seed = 0;
    std::size_t total_samples = 0;

    void validate() const;

    std::size_t segment_count() const noexcept { return schedule.size(); }
    std::size_t segment_begin(std::size_t segment) const noexcept { return schedule[segment].switch_sample; }
    std::size_t segment_end(std::size_t segment) const noexcept;
    std::size_t segment_of(std::size_t sample) const noexcept;
};

struct ScenarioSignals {
    std::vector<double> input;
    std::vector<double> clean_echo;
    std::vector<double> desired;
};

/// Generates x(n), the clean echo under the active response, and
/// d(n) = echo + v(n). Noise is calibrated separately on each segment.
ScenarioSignals synthesize(const EchoScenario& scenario);

}  // namespace bspapa
