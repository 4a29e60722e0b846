#include "bspapa/signal_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace bspapa {

namespace {

// Independent streams per purpose so that, e.g., changing the noise does not
// perturb the excitation drawn from the same scenario seed.
enum class Stream : std::uint32_t { impulse_response = 1, excitation = 2, noise = 3 };

std::mt19937_64 make_engine(std::uint64_t seed, Stream stream, std::uint32_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), index};
    return std::mt19937_64(seq);
}

std::vector<double> gaussian(std::mt19937_64& engine, std::size_t n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> out(n);
    for (double& v : out) v = dist(engine);
    return out;
}

void validate_clusters(std::size_t filter_length, std::span<const Cluster> clusters) {
    std::vector<Cluster> sorted(clusters.begin(), clusters.end());
    std::sort(sorted.begin(), sorted.end(), [](const Cluster& a, const Cluster& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& c = sorted[i];
        if (c.first < 1 || c.last > filter_length || c.first > c.last)
            throw std::invalid_argument("cluster [" + std::to_string(c.first) + ", " + std::to_string(c.last) +
                                        "] is not a valid range within [1, " + std::to_string(filter_length) +
                                        "]");
        if (i > 0 && sorted[i - 1].last >= c.first)
            throw std::invalid_argument("clusters [" + std::to_string(sorted[i - 1].first) + ", " +
                                        std::to_string(sorted[i - 1].last) + "] and [" + std::to_string(c.first) +
                                        ", " + std::to_string(c.last) + "] overlap");
    }
}

}  // namespace

ImpulseResponse make_block_sparse_ir(std::size_t filter_length, std::span<const Cluster> clusters,
                                     std::uint64_t seed) {
    if (filter_length == 0) throw std::invalid_argument("make_block_sparse_ir: filter length must be positive");
    validate_clusters(filter_length, clusters);

    ImpulseResponse ir{std::vector<double>(filter_length, 0.0), {clusters.begin(), clusters.end()}};
    auto engine = make_engine(seed, Stream::impulse_response);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (const auto& c : clusters)
        for (std::size_t tap = c.first; tap <= c.last; ++tap) ir.taps[tap - 1] = dist(engine);
    return ir;
}

void Excitation::validate() const {
    if (kind == Kind::ar1 && !(std::abs(pole) < 1.0))
        throw std::invalid_argument("AR(1) pole must satisfy |pole| < 1");
}

std::vector<double> ar1_filter(std::span<const double> drive, double pole) {
    std::vector<double> out(drive.size());
    double prev = 0.0;
    for (std::size_t n = 0; n < drive.size(); ++n) {
        prev = pole * prev + drive[n];
        out[n] = prev;
    }
    return out;
}

std::vector<double> gen_excitation(const Excitation& excitation, std::uint64_t seed, std::size_t n_samples) {
    excitation.validate();
    auto engine = make_engine(seed, Stream::excitation);
    auto white = gaussian(engine, n_samples);
    if (excitation.kind == Excitation::Kind::white) return white;
    return ar1_filter(white, excitation.pole);
}

double echo_output(const ImpulseResponse& response, const RegressorHistory& history) {
    if (response.taps.size() != history.filter_length())
        throw std::invalid_argument("echo_output: response has " + std::to_string(response.taps.size()) +
                                    " taps, history covers " + std::to_string(history.filter_length()));
    auto x = history.input_vector(0);
    double y = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) y += x[l] * response.taps[l];
    return y;
}

double mean_power(std::span<const double> signal) {
    if (signal.empty()) return 0.0;
    double acc = 0.0;
    for (double v : signal) acc += v * v;
    return acc / static_cast<double>(signal.size());
}

std::vector<double> scale_noise_for_snr(std::span<const double> clean_echo, double snr_db, std::uint64_t seed) {
    if (clean_echo.empty()) throw std::invalid_argument("scale_noise_for_snr: empty clean signal");
    const double signal_power = mean_power(clean_echo);
    if (!(signal_power > 0.0)) throw std::invalid_argument("scale_noise_for_snr: clean signal has zero power");

    auto engine = make_engine(seed, Stream::noise);
    auto noise = gaussian(engine, clean_echo.size());
    const double target = signal_power / std::pow(10.0, snr_db / 10.0);
    const double gain = std::sqrt(target / mean_power(noise));
    for (double& v : noise) v *= gain;
    return noise;
}

double misalignment_db(std::span<const double> true_h, std::span<const double> est_h) {
    if (true_h.size() != est_h.size()) throw std::invalid_argument("misalignment_db: length mismatch");
    double ref = 0.0;
    double err = 0.0;
    for (std::size_t l = 0; l < true_h.size(); ++l) {
        const double d = true_h[l] - est_h[l];
        ref += true_h[l] * true_h[l];
        err += d * d;
    }
    if (!(ref > 0.0)) throw std::invalid_argument("misalignment_db: true system is zero");
    if (err == 0.0) return kMisalignmentFloorDb;
    return std::max(kMisalignmentFloorDb, 10.0 * std::log10(err / ref));
}

void EchoScenario::validate() const {
    if (filter_length == 0) throw std::invalid_argument("scenario: filter length must be positive");
    if (total_samples == 0) throw std::invalid_argument("scenario: total_samples must be positive");
    if (schedule.empty()) throw std::invalid_argument("scenario: schedule is empty");
    if (schedule.front().switch_sample != 0)
        throw std::invalid_argument("scenario: first schedule entry must start at sample 0");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto& entry = schedule[i];
        if (i > 0 && entry.switch_sample <= schedule[i - 1].switch_sample)
            throw std::invalid_argument("scenario: schedule must be strictly increasing in switch_sample");
        if (entry.switch_sample >= total_samples)
            throw std::invalid_argument("scenario: switch at " + std::to_string(entry.switch_sample) +
                                        " lies beyond total_samples");
        if (entry.response.taps.size() != filter_length)
            throw std::invalid_argument("scenario: response " + std::to_string(i) + " has wrong length");
        if (mean_power(entry.response.taps) == 0.0)
            throw std::invalid_argument("scenario: response " + std::to_string(i) + " is identically zero");
    }
    excitation.validate();
    if (snr_db && !std::isfinite(*snr_db)) throw std::invalid_argument("scenario: snr_db must be finite");
}

std::size_t EchoScenario::segment_end(std::size_t segment) const noexcept {
    return segment + 1 < schedule.size() ? schedule[segment + 1].switch_sample : total_samples;
}

std::size_t EchoScenario::segment_of(std::size_t sample) const noexcept {
    std::size_t seg = 0;
    while (seg + 1 < schedule.size() && schedule[seg + 1].switch_sample <= sample) ++seg;
    return seg;
}

ScenarioSignals synthesize(const EchoScenario& scenario) {
    scenario.validate();
    ScenarioSignals sig;
    sig.input = gen_excitation(scenario.excitation, scenario.seed, scenario.total_samples);
    sig.clean_echo.resize(scenario.total_samples);

    RegressorHistory history(scenario.filter_length, 1);
    for (std::size_t n = 0; n < scenario.total_samples; ++n) {
        history.push(sig.input[n]);
        sig.clean_echo[n] = echo_output(scenario.schedule[scenario.segment_of(n)].response, history);
    }

    sig.desired = sig.clean_echo;
    if (scenario.snr_db) {
        for (std::size_t s = 0; s < scenario.segment_count(); ++s) {
            const std::size_t begin = scenario.segment_begin(s);
            const std::size_t end = scenario.segment_end(s);
            std::span<const double> clean(sig.clean_echo.data() + begin, end - begin);
            const auto noise = scale_noise_for_snr(
                clean, *scenario.snr_db,
                scenario.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(s + 1)));
            for (std::size_t k = 0; k < noise.size(); ++k) sig.desired[begin + k] += noise[k];
        }
    }
    return sig;
}

}  // namespace bspapa
