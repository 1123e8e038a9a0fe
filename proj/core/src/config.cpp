#include "chnls/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "chnls/error.hpp"
#include "chnls/etdrk4.hpp"

namespace chnls {

using nlohmann::json;

namespace {

// Reader over one JSON object that remembers which keys were consumed, so
// leftovers can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) {
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected a JSON object");
        }
    }

    std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string& key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) {
            throw ConfigError(key_path(key), "missing required key");
        }
        return obj_.at(key);
    }

    template <typename T>
    T get(const std::string& key) {
        const auto& v = raw(key);
        try {
            return v.get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(key_path(key), std::string("wrong type: ") + e.what());
        }
    }

    template <typename T>
    T get_or(const std::string& key, T fallback) {
        if (!obj_.contains(key)) {
            return fallback;
        }
        if (obj_.at(key).is_null()) {
            seen_.insert(key);
            return fallback;
        }
        return get<T>(key);
    }

    template <typename T>
    std::optional<T> optional(const std::string& key) {
        if (!obj_.contains(key)) {
            return std::nullopt;
        }
        seen_.insert(key);
        if (obj_.at(key).is_null()) {
            return std::nullopt;
        }
        return get<T>(key);
    }

    void finish() const {
        for (const auto& item : obj_.items()) {
            if (!seen_.count(item.key())) {
                throw ConfigError(key_path(item.key()), "unknown key");
            }
        }
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

json soliton_to_json(const SolitonSpec& s) {
    json j{{"epsilon", s.epsilon}, {"beta", s.beta}, {"x0", s.x0}, {"direction", s.direction}};
    j["a_eff"] = s.a_eff ? json(*s.a_eff) : json(nullptr);
    return j;
}

SolitonSpec soliton_from_json(const json& j, const std::string& path, SolitonSpec defaults) {
    ObjectReader r(j, path);
    SolitonSpec s;
    s.epsilon = r.get<double>("epsilon");
    s.beta = r.get<double>("beta");
    s.x0 = r.get_or<double>("x0", defaults.x0);
    s.direction = r.get_or<int>("direction", defaults.direction);
    s.a_eff = r.optional<double>("a_eff");
    r.finish();
    return s;
}

json window_to_json(const SpaceTimeWindow& w) {
    return {{"x_min", w.x_min}, {"x_max", w.x_max}, {"t_min", w.t_min}, {"t_max", w.t_max}};
}

SpaceTimeWindow window_from_json(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    SpaceTimeWindow w;
    w.x_min = r.get<double>("x_min");
    w.x_max = r.get<double>("x_max");
    w.t_min = r.get<double>("t_min");
    w.t_max = r.get<double>("t_max");
    r.finish();
    return w;
}

json experiment_to_json(const Experiment& e) {
    json j;
    j["kind"] = std::string(experiment_kind(e));
    std::visit(
        [&j](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SingleSolitonExperiment>) {
                j["soliton"] = soliton_to_json(x.soliton);
                j["window"] = window_to_json(x.window);
            } else if constexpr (std::is_same_v<T, ErrorScanExperiment>) {
                j["soliton"] = soliton_to_json(x.soliton);
                j["epsilons"] = x.epsilons;
                j["window"] = window_to_json(x.window);
            } else if constexpr (std::is_same_v<T, CollisionExperiment>) {
                j["right"] = soliton_to_json(x.right);
                j["left"] = soliton_to_json(x.left);
                j["nu"] = x.nu ? json(*x.nu) : json(nullptr);
            } else if constexpr (std::is_same_v<T, MiExperiment>) {
                j["k"] = x.k;
                j["delta"] = x.delta;
            } else {
                j["beta"] = x.beta;
                j["chi0"] = x.chi0;
            }
        },
        e);
    return j;
}

Experiment experiment_from_json(const json& j) {
    ObjectReader r(j, "experiment");
    const auto kind = r.get<std::string>("kind");
    Experiment out;
    if (kind == "SingleSoliton") {
        SingleSolitonExperiment x;
        x.soliton = soliton_from_json(r.raw("soliton"), "experiment.soliton", SolitonSpec{});
        if (r.has("window")) {
            x.window = window_from_json(r.raw("window"), "experiment.window");
        } else {
            (void)r.optional<json>("window");
        }
        out = x;
    } else if (kind == "ErrorScan") {
        ErrorScanExperiment x;
        x.soliton = soliton_from_json(r.raw("soliton"), "experiment.soliton", SolitonSpec{});
        x.epsilons = r.get<std::vector<double>>("epsilons");
        if (r.has("window")) {
            x.window = window_from_json(r.raw("window"), "experiment.window");
        } else {
            (void)r.optional<json>("window");
        }
        out = x;
    } else if (kind == "Collision") {
        CollisionExperiment x;
        x.right = soliton_from_json(r.raw("right"), "experiment.right", CollisionExperiment{}.right);
        x.left = soliton_from_json(r.raw("left"), "experiment.left", CollisionExperiment{}.left);
        x.nu = r.optional<double>("nu");
        out = x;
    } else if (kind == "MiTest") {
        MiExperiment x;
        x.k = r.get<double>("k");
        x.delta = r.get<double>("delta");
        out = x;
    } else if (kind == "KdvBenchmark") {
        KdvBenchmarkExperiment x;
        x.beta = r.get<double>("beta");
        x.chi0 = r.get_or<double>("chi0", 0.0);
        out = x;
    } else {
        throw ConfigError("experiment.kind", "unknown experiment kind '" + kind + "'");
    }
    r.finish();
    return out;
}

json parse_value(std::string_view text) {
    auto parsed = json::parse(text.begin(), text.end(), nullptr, false);
    if (parsed.is_discarded()) {
        return json(std::string(text));
    }
    return parsed;
}

std::size_t replace_leaves(json& node, const std::string& key, const json& value) {
    std::size_t hits = 0;
    if (node.is_object()) {
        for (auto& item : node.items()) {
            if (item.key() == key && !item.value().is_object()) {
                item.value() = value;
                ++hits;
            } else {
                hits += replace_leaves(item.value(), key, value);
            }
        }
    } else if (node.is_array()) {
        for (auto& child : node) {
            hits += replace_leaves(child, key, value);
        }
    }
    return hits;
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) {
        throw ConfigError(key, what);
    }
}

template <typename Fn>
void rethrow_as_config(const std::string& key, Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(key, e.what());
    }
}

}  // namespace

std::string_view experiment_kind(const Experiment& e) noexcept {
    switch (e.index()) {
        case 0: return "SingleSoliton";
        case 1: return "ErrorScan";
        case 2: return "Collision";
        case 3: return "MiTest";
        default: return "KdvBenchmark";
    }
}

void RunConfig::validate() const {
    rethrow_as_config("grid", [&] { (void)GridSpec(grid.half_length, grid.n_points); });
    rethrow_as_config("model", [&] { model.validate(); });
    require(dt > 0.0 && std::isfinite(dt), "dt", "must be positive");
    require(cadence > 0.0, "cadence", "must be positive");
    rethrow_as_config("cadence", [&] { (void)whole_steps(cadence, dt, "cadence"); });
    require(t_end >= cadence, "t_end", "must be at least one cadence");
    rethrow_as_config("t_end", [&] { (void)whole_steps(t_end, dt, "t_end"); });
    if (snapshot_x_range) {
        require((*snapshot_x_range)[0] < (*snapshot_x_range)[1], "snapshot_x_range", "must be increasing");
    }

    const GridSpec g(grid.half_length, grid.n_points);
    const auto check_window = [&](const SpaceTimeWindow& w) {
        require(w.x_min < w.x_max && w.x_min >= -g.half_length() && w.x_max <= g.half_length(), "experiment.window",
                "x-range must be increasing and inside the domain");
        require(w.t_min >= 0.0 && w.t_min < w.t_max && w.t_max <= t_end + 1e-9, "experiment.window",
                "t-range must be increasing and inside [0, t_end]");
    };

    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SingleSolitonExperiment>) {
                rethrow_as_config("envelope", [&] { envelope.validate(g); });
                rethrow_as_config("experiment.soliton", [&] { x.soliton.validate(model); });
                check_window(x.window);
            } else if constexpr (std::is_same_v<T, ErrorScanExperiment>) {
                rethrow_as_config("envelope", [&] { envelope.validate(g); });
                rethrow_as_config("experiment.soliton", [&] { x.soliton.validate(model); });
                require(!x.epsilons.empty(), "experiment.epsilons", "must not be empty");
                for (std::size_t i = 0; i < x.epsilons.size(); ++i) {
                    require(x.epsilons[i] > 0.0, "experiment.epsilons", "entries must be positive");
                    require(i == 0 || x.epsilons[i] > x.epsilons[i - 1], "experiment.epsilons",
                            "entries must be strictly ascending");
                }
                check_window(x.window);
            } else if constexpr (std::is_same_v<T, CollisionExperiment>) {
                rethrow_as_config("envelope", [&] { envelope.validate(g); });
                rethrow_as_config("experiment.right", [&] { x.right.validate(model); });
                rethrow_as_config("experiment.left", [&] { x.left.validate(model); });
                require(x.right.direction == 1, "experiment.right.direction", "must be +1");
                require(x.left.direction == -1, "experiment.left.direction", "must be -1");
            } else if constexpr (std::is_same_v<T, MiExperiment>) {
                require(x.k > 0.0, "experiment.k", "must be positive");
                require(x.delta > 0.0 && x.delta <= 1e-6, "experiment.delta", "must lie in (0, 1e-6]");
                const double j = x.k / g.dk();
                require(std::abs(j - std::round(j)) < 1e-9 * std::max(1.0, j), "experiment.k",
                        "must be an integer multiple of pi/half_length");
                require(std::round(j) < static_cast<double>(g.n_points() / 2), "experiment.k",
                        "must lie below the Nyquist wavenumber");
            } else {
                require(x.beta > 0.0, "experiment.beta", "must be positive");
            }
        },
        experiment);
}

json to_json(const RunConfig& c) {
    json j;
    j["grid"] = {{"half_length", c.grid.half_length}, {"n_points", c.grid.n_points}};
    j["model"] = {{"a", c.model.a}, {"sigma", c.model.sigma}, {"u0", c.model.u0}};
    j["dt"] = c.dt;
    j["t_end"] = c.t_end;
    j["cadence"] = c.cadence;
    j["envelope"] = {{"l_star", c.envelope.l_star}, {"gamma", c.envelope.gamma}};
    j["dealias"] = c.dealias;
    j["snapshot_x_range"] = c.snapshot_x_range ? json(*c.snapshot_x_range) : json(nullptr);
    j["experiment"] = experiment_to_json(c.experiment);
    j["output_dir"] = c.output_dir;
    return j;
}

RunConfig config_from_json(const json& doc) {
    ObjectReader r(doc, "");
    RunConfig c;
    {
        ObjectReader g(r.raw("grid"), "grid");
        c.grid.half_length = g.get<double>("half_length");
        c.grid.n_points = g.get<std::size_t>("n_points");
        g.finish();
    }
    {
        ObjectReader m(r.raw("model"), "model");
        c.model.a = m.get<double>("a");
        c.model.sigma = m.get<int>("sigma");
        c.model.u0 = m.get<double>("u0");
        m.finish();
    }
    c.dt = r.get<double>("dt");
    c.t_end = r.get<double>("t_end");
    c.cadence = r.get<double>("cadence");
    if (r.has("envelope")) {
        ObjectReader e(r.raw("envelope"), "envelope");
        c.envelope.l_star = e.get<double>("l_star");
        c.envelope.gamma = e.get<int>("gamma");
        e.finish();
    } else {
        (void)r.optional<json>("envelope");
    }
    c.dealias = r.get_or<bool>("dealias", true);
    c.snapshot_x_range = r.optional<std::array<double, 2>>("snapshot_x_range");
    c.experiment = experiment_from_json(r.raw("experiment"));
    c.output_dir = r.get_or<std::string>("output_dir", "");
    r.finish();
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", "'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

void apply_override(json& doc, std::string_view key, std::string_view value) {
    const std::string k(key);
    if (k.empty()) {
        throw ConfigError("", "empty override key");
    }
    const json v = parse_value(value);
    if (k.find('.') == std::string::npos) {
        if (replace_leaves(doc, k, v) == 0) {
            throw ConfigError(k, "unknown key");
        }
        return;
    }
    json* node = &doc;
    std::stringstream parts(k);
    std::string part;
    std::vector<std::string> path;
    while (std::getline(parts, part, '.')) {
        path.push_back(part);
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!node->is_object() || !node->contains(path[i])) {
            throw ConfigError(k, "unknown key");
        }
        node = &(*node)[path[i]];
    }
    *node = v;
}

}  // namespace chnls
