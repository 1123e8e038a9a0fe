#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chnls/model.hpp"
#include "chnls/soliton.hpp"

namespace chnls {

struct GridConfig {
    double half_length = 2500.0;
    std::size_t n_points = std::size_t{1} << 14;
};

/// Rectangle [x_min, x_max] x [t_min, t_max] used for error norms.
struct SpaceTimeWindow {
    double x_min = -300.0;
    double x_max = 300.0;
    double t_min = 0.0;
    double t_max = 100.0;
};

struct SingleSolitonExperiment {
    SolitonSpec soliton;
    SpaceTimeWindow window;
};

struct ErrorScanExperiment {
    /// Template soliton; its epsilon is replaced by each entry of `epsilons`.
    SolitonSpec soliton;
    std::vector<double> epsilons;
    SpaceTimeWindow window;
};

struct CollisionExperiment {
    SolitonSpec right{.x0 = 200.0, .direction = +1, .a_eff = std::nullopt};
    SolitonSpec left{.x0 = -200.0, .direction = -1, .a_eff = std::nullopt};
    std::optional<double> nu;
};

struct MiExperiment {
    double k = 1.0;
    double delta = 1e-8;
};

struct KdvBenchmarkExperiment {
    double beta = 0.1;
    double chi0 = 0.0;
};

using Experiment =
    std::variant<SingleSolitonExperiment, ErrorScanExperiment, CollisionExperiment, MiExperiment, KdvBenchmarkExperiment>;

std::string_view experiment_kind(const Experiment& e) noexcept;

/// Everything needed to reproduce one run.
struct RunConfig {
    GridConfig grid;
    ModelParams model{.a = 0.5, .sigma = -1, .u0 = 1.0};
    double dt = 0.01;
    double t_end = 100.0;
    double cadence = 1.0;
    BackgroundEnvelope envelope;
    bool dealias = true;
    /// x-range written to snapshot files; whole grid when absent.
    std::optional<std::array<double, 2>> snapshot_x_range;
    Experiment experiment = SingleSolitonExperiment{};
    /// Empty means "do not write files".
    std::string output_dir;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

nlohmann::json to_json(const RunConfig& config);

/// Strict parse: every key must be known, every required key present.
RunConfig config_from_json(const nlohmann::json& doc);

/// Reads and parses a JSON config file. Throws IoError if unreadable,
/// ConfigError if invalid.
RunConfig load_config(const std::filesystem::path& path);

/// Sets `key` to `value` inside a config document. A dotted key
/// ("experiment.soliton.epsilon") addresses one entry; a bare key
/// ("epsilon") updates every entry with that name. `value` is parsed as
/// JSON when possible, otherwise taken as a string.
void apply_override(nlohmann::json& doc, std::string_view key, std::string_view value);

}  // namespace chnls
