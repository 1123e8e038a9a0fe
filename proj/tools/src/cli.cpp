#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "chnls/error.hpp"
#include "chnls/harness.hpp"
#include "chnls/soliton.hpp"
#include "presets.hpp"

namespace chnls::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Globals {
    std::optional<std::string> output_dir;
    std::optional<double> dt;
    std::optional<std::size_t> grid_n;
    bool quiet = false;
};

struct RunArgs {
    std::string config_path;
    std::string preset;
    std::vector<std::string> overrides;
    bool dump_config = false;
};

int do_run(const RunArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
    if (args.config_path.empty() == args.preset.empty()) {
        err << "run: give exactly one of a config file or --preset\n";
        return kUsage;
    }
    nlohmann::json doc;
    try {
        if (!args.preset.empty()) {
            const auto* p = find_preset(args.preset);
            if (!p) {
                err << "run: unknown preset '" << args.preset << "' (see list-presets)\n";
                return kUsage;
            }
            doc = to_json(p->config);
        } else {
            doc = to_json(load_config(args.config_path));
        }
        if (g.output_dir) {
            doc["output_dir"] = *g.output_dir;
        }
        if (g.dt) {
            doc["dt"] = *g.dt;
        }
        if (g.grid_n) {
            doc["grid"]["n_points"] = *g.grid_n;
        }
        for (const auto& kv : args.overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) {
                err << "run: --set expects key=value, got '" << kv << "'\n";
                return kUsage;
            }
            apply_override(doc, std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
        }
        const RunConfig config = config_from_json(doc);
        config.validate();
        if (args.dump_config) {
            out << to_json(config).dump(2) << '\n';
            return kOk;
        }
        const RunManifest manifest = run_experiment(config);
        if (config.output_dir.empty()) {
            out << manifest.to_json().dump(2) << '\n';
        } else {
            out << (std::filesystem::path(config.output_dir) / "manifest.json").string() << '\n';
        }
        if (!g.quiet) {
            for (const auto& f : manifest.flags) {
                err << "note: " << f << '\n';
            }
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "invalid config: key '" << e.key() << "': " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const DivergenceError& e) {
        err << "run diverged at t = " << e.time() << "; partial outputs kept\n";
        return kDivergence;
    } catch (const PreconditionError& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    }
}

}  // namespace

std::string info_report(const ModelParams& params, std::optional<double> epsilon, std::optional<double> beta) {
    params.validate();
    std::ostringstream os;
    const double c = params.sound_speed();
    const double p = params.p();
    os << "a=" << num(params.a) << ", sigma=" << params.sigma << ", u0=" << num(params.u0) << '\n';
    os << "C=" << num(c) << '\n';
    if (params.sigma < 0) {
        const auto cls = classify_soliton(params);
        if (cls == SolitonClass::Degenerate) {
            os << "p=" << num(p) << ", class=Degenerate";
            if (std::abs(p - 2.0) <= 1e-12 * 2.0) {
                os << " (p = 2: q = (1-2p)/(2-p) is singular, the expansion breaks down)\n";
            } else {
                os << " (p = 1/2: q = 0, no soliton at this order)\n";
            }
        } else {
            os << "p=" << num(p) << ", q=" << num(params.q()) << ", class=" << to_string(cls) << '\n';
            if (epsilon) {
                const SolitonSpec spec{.epsilon = *epsilon, .beta = beta.value_or(0.1), .x0 = 0.0, .direction = +1,
                                       .a_eff = std::nullopt};
                os << "predicted velocity=" << num(predicted_velocity(spec, params))
                   << " (epsilon=" << num(spec.epsilon) << ", beta=" << num(spec.beta) << ")\n";
                os << "amplitude parameter=" << num(amplitude_parameter(spec, params)) << '\n';
            }
        }
        os << "modulationally stable\n";
    } else {
        os << "p=" << num(p) << ", class=none (solitons of this family need sigma=-1)\n";
        os << "MI band: 0 < k < " << num(2.0 * params.u0) << '\n';
    }
    return os.str();
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Camassa-Holm NLS solver and experiment runner", "chnls"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--output-dir", g.output_dir, "Directory for run outputs");
    app.add_option("--dt", g.dt, "Time step")->check(CLI::PositiveNumber);
    app.add_option("--grid-n", g.grid_n, "Number of grid points");
    app.add_flag("--quiet", g.quiet, "Suppress notes");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a config file or preset");
    run_cmd->add_option("config", run.config_path, "JSON config file");
    run_cmd->add_option("--preset", run.preset, "Built-in preset name");
    run_cmd->add_option("--set", run.overrides, "Override key=value (dotted path or bare key)");
    run_cmd->add_flag("--dump-config", run.dump_config, "Print the resolved config and exit");

    ModelParams params{.a = 0.0, .sigma = -1, .u0 = 1.0};
    std::optional<double> epsilon;
    std::optional<double> beta;
    auto* info_cmd = app.add_subcommand("info", "Print analytic quantities for a parameter set");
    info_cmd->add_option("--a", params.a, "Helmholtz length a")->required();
    info_cmd->add_option("--sigma", params.sigma, "Nonlinearity sign")->required()->check(CLI::IsMember({-1, 1}));
    info_cmd->add_option("--u0", params.u0, "Background amplitude")->required();
    info_cmd->add_option("--epsilon", epsilon, "Soliton amplitude scale");
    info_cmd->add_option("--beta", beta, "Soliton free parameter");

    bool machine = false;
    auto* list_cmd = app.add_subcommand("list-presets", "List built-in presets");
    list_cmd->add_flag("--machine", machine, "Tab-separated output");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    if (*run_cmd) {
        return do_run(run, g, out, err);
    }
    if (*info_cmd) {
        try {
            out << info_report(params, epsilon, beta);
            return kOk;
        } catch (const Error& e) {
            err << "info: " << e.what() << '\n';
            return kUsage;
        }
    }
    for (const auto& p : presets()) {
        if (machine) {
            out << p.name << '\t' << p.figure << '\t' << experiment_kind(p.config.experiment) << '\n';
        } else {
            out << std::left << std::setw(17) << p.name << std::setw(16) << p.figure << p.summary << '\n';
        }
    }
    return kOk;
}

}  // namespace chnls::cli
