#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bspapa/experiment.hpp"

namespace bspapa {

/// Validation failure tagged with the JSON path of the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Group-size sweep of BS-PAPA, P in {1, 4, 16, 32, 64, 1024}.
ExperimentConfig preset_fig2();
/// APA, PAPA, MPAPA, BS-PAPA(P=32), BS-MPAPA(P=32).
ExperimentConfig preset_fig3();
ExperimentConfig preset(std::string_view name);

}  // namespace bspapa
