#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bspapa/filter.hpp"
#include "bspapa/signal_lab.hpp"

namespace bspapa {

/// Convergence threshold used for time-to-threshold in run summaries.
inline constexpr double kConvergenceThresholdDb = -15.0;

struct PanelEntry {
    std::string label;
    FilterConfig filter;
};

struct ExperimentConfig {
    EchoScenario scenario;
    std::vector<PanelEntry> panel;
    std::size_t trace_decimation = 10;
    std::filesystem::path output_path = "traces.csv";

    void validate() const;
};

struct TracePoint {
    std::size_t sample;
    double misalignment_db;
};

/// Full-rate misalignment history of one panel entry.
struct MisalignmentTrace {
    std::string label;
    std::vector<TracePoint> samples;
};

struct SegmentSummary {
    std::size_t segment = 0;
    /// Samples from the segment start until misalignment first drops to the
    /// threshold; empty if it never does within the segment.
    std::optional<std::size_t> time_to_threshold;
    /// Mean misalignment over the final 10% of the segment.
    double steady_state_db = 0.0;
};

struct RunSummaryEntry {
    std::string label;
    std::vector<SegmentSummary> segments;
    std::size_t mults_per_step = 0;
    std::optional<std::string> failure;
};

struct RunSummary {
    std::vector<RunSummaryEntry> entries;

    bool ok() const noexcept;
    const RunSummaryEntry* find(const std::string& label) const noexcept;
};

struct ExperimentResult {
    std::vector<MisalignmentTrace> traces;
    RunSummary summary;
};

/// Runs every panel entry on the same synthesized scenario. Entries are
/// independent and run concurrently; output order follows the panel. A solver
/// failure ends that entry's trace and is recorded in its summary entry.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Trace CSV at `path` (header `sample,label,misalignment_db`, one row per
/// `decimation`-th sample) and summary CSV at `<path>.summary.csv`.
void write_traces_csv(const std::vector<MisalignmentTrace>& traces, const RunSummary& summary,
                      const std::filesystem::path& path, std::size_t decimation = 1);

std::filesystem::path summary_path_for(const std::filesystem::path& trace_path);

}  // namespace bspapa
