#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chnls/model.hpp"

namespace chnls::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDivergence = 3, kIo = 4 };

/// Text printed by `chnls info`.
std::string info_report(const ModelParams& params, std::optional<double> epsilon = {},
                        std::optional<double> beta = {});

/// Parses and executes one command line (without the program name).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace chnls::cli
