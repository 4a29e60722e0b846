#include "bspapa/experiment.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <future>
#include <set>
#include <stdexcept>
#include <string>

#include "bspapa/solver.hpp"

namespace bspapa {

void ExperimentConfig::validate() const {
    scenario.validate();
    if (panel.empty()) throw std::invalid_argument("panel is empty");
    if (trace_decimation == 0) throw std::invalid_argument("trace_decimation must be positive");
    std::set<std::string> labels;
    for (const auto& entry : panel) {
        if (entry.label.empty()) throw std::invalid_argument("panel label is empty");
        if (entry.label.find_first_of(",\"\r\n") != std::string::npos)
            throw std::invalid_argument("panel label '" + entry.label + "' contains a CSV delimiter");
        if (!labels.insert(entry.label).second)
            throw std::invalid_argument("duplicate panel label '" + entry.label + "'");
        if (entry.filter.filter_length() != scenario.filter_length)
            throw std::invalid_argument("panel entry '" + entry.label + "' has filter length " +
                                        std::to_string(entry.filter.filter_length()) + ", scenario uses " +
                                        std::to_string(scenario.filter_length));
    }
}

bool RunSummary::ok() const noexcept {
    for (const auto& e : entries)
        if (e.failure) return false;
    return true;
}

const RunSummaryEntry* RunSummary::find(const std::string& label) const noexcept {
    for (const auto& e : entries)
        if (e.label == label) return &e;
    return nullptr;
}

namespace {

struct PanelRun {
    MisalignmentTrace trace;
    RunSummaryEntry summary;
};

PanelRun run_panel_entry(const ExperimentConfig& config, const ScenarioSignals& signals, const PanelEntry& entry) {
    const auto& scenario = config.scenario;
    PanelRun run;
    run.trace.label = entry.label;
    run.trace.samples.reserve(scenario.total_samples);
    run.summary.label = entry.label;
    run.summary.mults_per_step = regressor_multiplications(entry.filter);

    AdaptiveFilter filter(entry.filter);
    try {
        for (std::size_t n = 0; n < scenario.total_samples; ++n) {
            filter.adapt(signals.input[n], signals.desired[n]);
            const auto& active = scenario.schedule[scenario.segment_of(n)].response;
            run.trace.samples.push_back({n, misalignment_db(active.taps, filter.weights())});
        }
    } catch (const SingularSystemError& err) {
        run.summary.failure = std::string(err.what()) + " (at sample " +
                              std::to_string(run.trace.samples.size()) + ")";
    }

    for (std::size_t s = 0; s < scenario.segment_count(); ++s) {
        SegmentSummary seg;
        seg.segment = s;
        const std::size_t begin = scenario.segment_begin(s);
        const std::size_t end = std::min(scenario.segment_end(s), run.trace.samples.size());
        for (std::size_t n = begin; n < end; ++n) {
            if (run.trace.samples[n].misalignment_db <= kConvergenceThresholdDb) {
                seg.time_to_threshold = n - begin;
                break;
            }
        }
        const std::size_t full_len = scenario.segment_end(s) - begin;
        const std::size_t tail_begin = begin + full_len - std::max<std::size_t>(1, full_len / 10);
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t n = tail_begin; n < end; ++n, ++count) acc += run.trace.samples[n].misalignment_db;
        seg.steady_state_db = count > 0 ? acc / static_cast<double>(count) : std::nan("");
        run.summary.segments.push_back(seg);
    }
    return run;
}

std::string format_sig6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const ScenarioSignals signals = synthesize(config.scenario);

    std::vector<std::future<PanelRun>> jobs;
    jobs.reserve(config.panel.size());
    for (const auto& entry : config.panel)
        jobs.push_back(std::async(std::launch::async, [&config, &signals, &entry] {
            return run_panel_entry(config, signals, entry);
        }));

    ExperimentResult result;
    for (auto& job : jobs) {
        auto run = job.get();
        result.traces.push_back(std::move(run.trace));
        result.summary.entries.push_back(std::move(run.summary));
    }
    return result;
}

std::filesystem::path summary_path_for(const std::filesystem::path& trace_path) {
    return std::filesystem::path(trace_path.string() + ".summary.csv");
}

void write_traces_csv(const std::vector<MisalignmentTrace>& traces, const RunSummary& summary,
                      const std::filesystem::path& path, std::size_t decimation) {
    if (traces.empty()) throw std::invalid_argument("write_traces_csv: no traces to write");
    if (decimation == 0) throw std::invalid_argument("write_traces_csv: decimation must be positive");

    {
        auto out = open_for_write(path);
        out << "sample,label,misalignment_db\n";
        for (const auto& trace : traces)
            for (const auto& point : trace.samples)
                if (point.sample % decimation == 0)
                    out << point.sample << ',' << trace.label << ',' << format_sig6(point.misalignment_db) << '\n';
        finish(out, path);
    }

    const auto summary_path = summary_path_for(path);
    auto out = open_for_write(summary_path);
    out << "label,segment,time_to_minus15db,steady_state_db,mults_per_step\n";
    for (const auto& entry : summary.entries) {
        for (const auto& seg : entry.segments) {
            out << entry.label << ',' << seg.segment << ',';
            if (seg.time_to_threshold) out << *seg.time_to_threshold;
            out << ',' << format_sig6(seg.steady_state_db) << ',' << entry.mults_per_step << '\n';
        }
    }
    finish(out, summary_path);
}

}  // namespace bspapa
