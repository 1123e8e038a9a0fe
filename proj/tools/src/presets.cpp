#include "presets.hpp"

#include <cmath>
#include <numbers>

namespace chnls::cli {

namespace {

RunConfig base(double a, std::string name) {
    RunConfig c;
    c.model = ModelParams{.a = a, .sigma = -1, .u0 = 1.0};
    c.snapshot_x_range = std::array<double, 2>{-300.0, 300.0};
    c.output_dir = "runs/" + std::move(name);
    return c;
}

SolitonSpec soliton(double epsilon) {
    return SolitonSpec{.epsilon = epsilon, .beta = 0.1, .x0 = 100.0, .direction = +1, .a_eff = std::nullopt};
}

Preset single(std::string name, std::string figure, std::string summary, double a, double epsilon) {
    RunConfig c = base(a, name);
    c.experiment = SingleSolitonExperiment{.soliton = soliton(epsilon), .window = {}};
    return {std::move(name), std::move(figure), std::move(summary), std::move(c)};
}

Preset collision(std::string name, std::string figure, std::string summary, double a, double epsilon,
                 std::optional<double> a_right = {}, std::optional<double> a_left = {}) {
    RunConfig c = base(a, name);
    c.t_end = 150.0;
    c.snapshot_x_range = std::array<double, 2>{-400.0, 400.0};
    CollisionExperiment x;
    x.right = SolitonSpec{.epsilon = epsilon, .beta = 0.1, .x0 = 200.0, .direction = +1, .a_eff = a_right};
    x.left = SolitonSpec{.epsilon = epsilon, .beta = 0.1, .x0 = -200.0, .direction = -1, .a_eff = a_left};
    c.experiment = x;
    return {std::move(name), std::move(figure), std::move(summary), std::move(c)};
}

std::vector<Preset> build() {
    std::vector<Preset> out;
    out.push_back(single("fig1b", "Fig. 1(b,c)", "antidark soliton, a=0.5, eps=0.04", 0.5, 0.04));
    out.push_back(single("fig2", "Fig. 2", "dark soliton, a=0.8, eps=0.04", 0.8, 0.04));
    out.push_back(single("fig3a", "Fig. 3(a)", "antidark soliton at large amplitude, a=0.5, eps=1", 0.5, 1.0));
    out.push_back(single("fig3b", "Fig. 3(b)", "dark soliton at large amplitude (splits), a=0.8, eps=1", 0.8, 1.0));

    out.push_back(collision("fig4a", "Fig. 4(a)", "dark-dark head-on collision, a=0.75, eps=0.1", 0.75, 0.1));
    out.push_back(collision("fig4b", "Fig. 4(b)", "antidark-antidark collision, a=0.65, eps=0.1", 0.65, 0.1));
    out.push_back(collision("fig4c", "Fig. 4(c)", "antidark-antidark collision, a=0.62, eps=1", 0.62, 1.0));
    out.push_back(collision("fig4d", "Fig. 4(d)", "antidark (a1=0.67) meets dark (a2=0.75), a=0.75, eps=0.1", 0.75,
                            0.1, 0.67, 0.75));
    {
        auto p = collision("fig4e", "Fig. 4(e)", "boosted collision with unequal speeds, a=0.62, eps=0.1, nu=-0.7",
                           0.62, 0.1);
        p.config.t_end = 250.0;
        p.config.snapshot_x_range = std::array<double, 2>{-700.0, 700.0};
        auto& x = std::get<CollisionExperiment>(p.config.experiment);
        // Right-moving soliton starts at x = -250, left-moving one at x = +290.
        x.right.x0 = 250.0;
        x.left.x0 = -290.0;
        x.nu = -0.7;
        out.push_back(std::move(p));
    }
    {
        RunConfig c = base(0.5, "errorscan-fig1a");
        c.snapshot_x_range.reset();
        c.experiment = ErrorScanExperiment{
            .soliton = soliton(0.04),
            .epsilons = {0.001, 0.002, 0.005, 0.01, 0.02, 0.04, 0.08, 0.16, 0.32, 0.64, 1.0},
            .window = {}};
        out.push_back({"errorscan-fig1a", "Fig. 1(a)", "L2 error against the asymptotic soliton over an eps scan",
                       std::move(c)});
    }
    {
        RunConfig c = base(0.5, "mi-demo");
        c.model.sigma = +1;
        c.grid = GridConfig{.half_length = 2.0 * std::numbers::pi, .n_points = 64};
        c.t_end = 20.0;
        c.cadence = 0.1;
        c.snapshot_x_range.reset();
        c.experiment = MiExperiment{.k = 1.0, .delta = 1e-8};
        out.push_back({"mi-demo", "MI growth rate", "focusing plane wave seeded at k=1, a=0.5", std::move(c)});
    }
    {
        RunConfig c = base(0.5, "kdv-benchmark");
        c.grid = GridConfig{.half_length = 200.0, .n_points = 1024};
        c.t_end = 50.0;
        c.snapshot_x_range.reset();
        c.experiment = KdvBenchmarkExperiment{.beta = 0.1, .chi0 = 0.0};
        out.push_back({"kdv-benchmark", "KdV reduction", "exact KdV soliton transported to T=50", std::move(c)});
    }
    return out;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build();
    return all;
}

const Preset* find_preset(std::string_view name) {
    for (const auto& p : presets()) {
        if (p.name == name) {
            return &p;
        }
    }
    return nullptr;
}

}  // namespace chnls::cli
