#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "chnls/config.hpp"

namespace chnls::cli {

/// A named, compiled-in run configuration reproducing one figure panel.
struct Preset {
    std::string name;
    std::string figure;
    std::string summary;
    RunConfig config;
};

const std::vector<Preset>& presets();

/// nullptr when no preset has that name.
const Preset* find_preset(std::string_view name);

}  // namespace chnls::cli
