#include "bspapa/config.hpp"

#include <fstream>
#include <string>

namespace bspapa {

using nlohmann::json;

namespace {

// Reads `key` from `obj`, reporting type errors against `path.key`.
template <class T>
std::optional<T> optional_field(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    try {
        return it->get<T>();
    } catch (const json::exception& err) {
        throw ConfigError(path + "." + key, err.what());
    }
}

template <class T>
T required_field(const json& obj, const std::string& path, const char* key) {
    auto value = optional_field<T>(obj, path, key);
    if (!value) throw ConfigError(path + "." + key, "missing required field");
    return *value;
}

const json& required_object(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_object()) throw ConfigError(path + "." + key, "expected an object");
    return *it;
}

const json& required_array(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) throw ConfigError(path + "." + key, "expected an array");
    return *it;
}

std::vector<Cluster> parse_clusters(const json& arr, const std::string& path) {
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& item = arr[i];
        const std::string at = path + "[" + std::to_string(i) + "]";
        if (!item.is_array() || item.size() != 2)
            throw ConfigError(at, "expected [first, last] (1-based inclusive)");
        try {
            clusters.push_back({item[0].get<std::size_t>(), item[1].get<std::size_t>()});
        } catch (const json::exception& err) {
            throw ConfigError(at, err.what());
        }
    }
    return clusters;
}

Excitation parse_excitation(const json& obj, const std::string& path) {
    const auto type = required_field<std::string>(obj, path, "type");
    if (type == "white") return Excitation::white();
    if (type == "ar1") {
        const double pole = required_field<double>(obj, path, "pole");
        Excitation ex = Excitation::ar1(pole);
        try {
            ex.validate();
        } catch (const std::invalid_argument& err) {
            throw ConfigError(path + ".pole", err.what());
        }
        return ex;
    }
    throw ConfigError(path + ".type", "expected \"white\" or \"ar1\", got \"" + type + "\"");
}

EchoScenario parse_scenario(const json& obj, const std::string& path) {
    EchoScenario sc;
    sc.filter_length = required_field<std::size_t>(obj, path, "L");
    sc.total_samples = required_field<std::size_t>(obj, path, "total_samples");
    sc.seed = optional_field<std::uint64_t>(obj, path, "seed").value_or(1);
    sc.snr_db = optional_field<double>(obj, path, "snr_db");
    sc.excitation = parse_excitation(required_object(obj, path, "excitation"), path + ".excitation");

    const auto& schedule = required_array(obj, path, "schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const std::string at = path + ".schedule[" + std::to_string(i) + "]";
        const auto& item = schedule[i];
        if (!item.is_object()) throw ConfigError(at, "expected an object");
        const auto start = required_field<std::size_t>(item, at, "switch_sample");
        const auto ir_seed = optional_field<std::uint64_t>(item, at, "seed").value_or(sc.seed);
        const auto clusters = parse_clusters(required_array(item, at, "clusters"), at + ".clusters");
        try {
            sc.schedule.push_back({start, make_block_sparse_ir(sc.filter_length, clusters, ir_seed)});
        } catch (const std::invalid_argument& err) {
            throw ConfigError(at + ".clusters", err.what());
        }
    }
    try {
        sc.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(path, err.what());
    }
    return sc;
}

// Applies the keys present in `obj` on top of `params`.
void overlay_params(FilterParams& params, const json& obj, const std::string& path) {
    if (auto v = optional_field<std::size_t>(obj, path, "M")) params.projection_order = v;
    if (auto v = optional_field<std::size_t>(obj, path, "P")) params.group_size = v;
    if (auto v = optional_field<double>(obj, path, "mu")) params.step_size = *v;
    if (auto v = optional_field<double>(obj, path, "delta")) params.regularization = *v;
    if (auto v = optional_field<double>(obj, path, "rho")) params.guards.rho = *v;
    if (auto v = optional_field<double>(obj, path, "q")) params.guards.q = *v;
    if (auto v = optional_field<std::string>(obj, path, "regressor_mode")) {
        try {
            params.regressor_mode = parse_regressor_mode(*v);
        } catch (const std::invalid_argument& err) {
            throw ConfigError(path + ".regressor_mode", err.what());
        }
    }
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("$", "expected a JSON object");
    ExperimentConfig cfg;
    cfg.scenario = parse_scenario(required_object(doc, "$", "scenario"), "$.scenario");
    cfg.trace_decimation = optional_field<std::size_t>(doc, "$", "trace_decimation").value_or(10);
    if (cfg.trace_decimation == 0) throw ConfigError("$.trace_decimation", "must be positive");
    if (auto out = optional_field<std::string>(doc, "$", "output_path")) cfg.output_path = *out;

    FilterParams defaults;
    defaults.filter_length = cfg.scenario.filter_length;
    if (auto it = doc.find("defaults"); it != doc.end()) {
        if (!it->is_object()) throw ConfigError("$.defaults", "expected an object");
        overlay_params(defaults, *it, "$.defaults");
    }

    const auto& panel = required_array(doc, "$", "panel");
    for (std::size_t i = 0; i < panel.size(); ++i) {
        const std::string at = "$.panel[" + std::to_string(i) + "]";
        const auto& item = panel[i];
        if (!item.is_object()) throw ConfigError(at, "expected an object");
        const auto variant_name = required_field<std::string>(item, at, "variant");
        FilterParams params = defaults;
        overlay_params(params, item, at);
        try {
            const Variant variant = parse_variant(variant_name);
            // P and M implied by the variant win over the shared defaults.
            if (!item.contains("P") && (variant == Variant::APA || variant == Variant::PAPA ||
                                        variant == Variant::MPAPA || variant == Variant::PNLMS))
                params.group_size.reset();
            if (!item.contains("M") && (variant == Variant::BS_PNLMS || variant == Variant::PNLMS))
                params.projection_order.reset();
            auto label = optional_field<std::string>(item, at, "label").value_or(variant_name);
            cfg.panel.push_back({std::move(label), make_filter_config(variant, params)});
        } catch (const ConfigError&) {
            throw;
        } catch (const std::invalid_argument& err) {
            throw ConfigError(at, err.what());
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError("$", err.what());
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& err) {
        throw ConfigError(path.string(), err.what());
    }
    return parse_experiment_config(doc);
}

namespace {

constexpr std::size_t kTaps = 1024;
constexpr std::uint64_t kPresetSeed = 20140607;

FilterParams paper_params() {
    FilterParams p;
    p.filter_length = kTaps;
    p.projection_order = 8;
    p.step_size = 0.01;
    p.regularization = 0.01;
    p.guards = {0.01, 0.01};
    p.regressor_mode = RegressorMode::efficient;
    return p;
}

// One-cluster system on [257, 288], switching at 30000 to a two-cluster
// system on [257, 288] and [769, 800]. Same seed, so the first cluster is
// shared.
EchoScenario paper_scenario() {
    EchoScenario sc;
    sc.filter_length = kTaps;
    sc.total_samples = 60000;
    sc.seed = kPresetSeed;
    sc.snr_db = 30.0;
    sc.excitation = Excitation::ar1(0.8);
    const std::vector<Cluster> one{{257, 288}};
    const std::vector<Cluster> two{{257, 288}, {769, 800}};
    sc.schedule.push_back({0, make_block_sparse_ir(kTaps, one, kPresetSeed)});
    sc.schedule.push_back({30000, make_block_sparse_ir(kTaps, two, kPresetSeed)});
    return sc;
}

PanelEntry panel_entry(std::string label, Variant variant, std::optional<std::size_t> group) {
    FilterParams p = paper_params();
    p.group_size = group;
    return {std::move(label), make_filter_config(variant, p)};
}

}  // namespace

ExperimentConfig preset_fig2() {
    ExperimentConfig cfg;
    cfg.scenario = paper_scenario();
    for (std::size_t p : {1, 4, 16, 32, 64, 1024})
        cfg.panel.push_back(panel_entry("BS-PAPA P=" + std::to_string(p), Variant::BS_PAPA, p));
    cfg.output_path = "fig2.csv";
    return cfg;
}

ExperimentConfig preset_fig3() {
    ExperimentConfig cfg;
    cfg.scenario = paper_scenario();
    cfg.panel.push_back(panel_entry("APA", Variant::APA, std::nullopt));
    cfg.panel.push_back(panel_entry("PAPA", Variant::PAPA, std::nullopt));
    cfg.panel.push_back(panel_entry("MPAPA", Variant::MPAPA, std::nullopt));
    cfg.panel.push_back(panel_entry("BS-PAPA P=32", Variant::BS_PAPA, 32));
    cfg.panel.push_back(panel_entry("BS-MPAPA P=32", Variant::BS_MPAPA, 32));
    cfg.output_path = "fig3.csv";
    return cfg;
}

ExperimentConfig preset(std::string_view name) {
    if (name == "fig2") return preset_fig2();
    if (name == "fig3") return preset_fig3();
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected fig2 or fig3)");
}

}  // namespace bspapa
