#include "mps/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace mps {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError("key '" + key + "': cannot parse '" + v +
                          "' as a number");
    return out;
}

long long parse_int(const std::string& key, const std::string& v) {
    long long out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw ConfigError("key '" + key + "': cannot parse '" + v +
                          "' as an integer");
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("key '" + key + "': empty list entry");
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

}  // namespace

std::uint64_t RunConfig::config_hash() const { return fnv1a64(raw); }

std::uint64_t RunConfig::spec_hash() const { return fnv1a64(spec.describe()); }

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) +
                              ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError("duplicate key '" + key + "'");
    }

    auto take = [&kv](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) return std::pair<bool, std::string>{false, ""};
        std::string v = it->second;
        kv.erase(it);
        return std::pair<bool, std::string>{true, v};
    };
    auto require = [&take](const std::string& key) {
        auto [found, v] = take(key);
        if (!found) throw ConfigError("missing required key '" + key + "'");
        return v;
    };

    RunConfig cfg;
    cfg.raw = text;

    Model model = Model::Classical3D;
    try {
        model = model_by_label(require("model"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    cfg.spec.model = model;
    cfg.spec.params = default_params(model);
    cfg.spec.params.g.reset();  // config must name g explicitly

    cfg.n = int(parse_int("n", require("n")));
    if (cfg.n < 8 || cfg.n % 2 != 0)
        throw ConfigError("key 'n': need an even lattice size >= 8");
    cfg.stepper.dt = parse_double("dt", require("dt"));
    if (cfg.stepper.dt <= 0.0) throw ConfigError("key 'dt': must be > 0");
    cfg.stepper.t_end = parse_double("t_end", require("t_end"));
    if (cfg.stepper.t_end < 0.0) throw ConfigError("key 't_end': must be >= 0");

    if (auto [f, v] = take("alpha"); f) cfg.spec.params.alpha = parse_double("alpha", v);
    if (auto [f, v] = take("beta"); f) cfg.spec.params.beta = parse_double("beta", v);
    if (auto [f, v] = take("nu"); f) cfg.spec.params.nu = parse_double("nu", v);
    if (auto [f, v] = take("kappa"); f) cfg.spec.params.kappa = parse_double("kappa", v);
    if (auto [f, v] = take("gamma"); f) cfg.spec.params.gamma = parse_double("gamma", v);
    if (auto [f, v] = take("mu"); f) cfg.spec.params.mu = parse_double("mu", v);

    bool is_log = model == Model::LogNoAngular || model == Model::LogWithAngular;
    if (auto [f, v] = take("g"); f) {
        if (!is_log)
            throw ConfigError("key 'g' is only valid for the logarithmic "
                              "models (model is " + model_label(model) + ")");
        try {
            cfg.spec.params.g = g_by_label(v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (is_log) {
        throw ConfigError("missing required key 'g' (model " +
                          model_label(model) + " needs a log weight)");
    }

    cfg.cutoff = default_cutoff(make_grid(cfg.spec.dim(), cfg.n));
    if (auto [f, v] = take("cutoff"); f) {
        if (v == "none") {
            cfg.cutoff.active = false;
        } else {
            cfg.cutoff.radius = parse_double("cutoff", v);
            if (cfg.cutoff.radius < 0.0)
                throw ConfigError("key 'cutoff': must be >= 0 or 'none'");
        }
    }

    if (auto [f, v] = take("seed"); f)
        cfg.seed = std::uint64_t(parse_int("seed", v));
    if (auto [f, v] = take("probe_cadence"); f) {
        cfg.stepper.probe_cadence = int(parse_int("probe_cadence", v));
        if (cfg.stepper.probe_cadence < 0)
            throw ConfigError("key 'probe_cadence': must be >= 0");
    }
    if (auto [f, v] = take("checkpoint_cadence"); f) {
        cfg.stepper.checkpoint_cadence = int(parse_int("checkpoint_cadence", v));
        if (cfg.stepper.checkpoint_cadence < 0)
            throw ConfigError("key 'checkpoint_cadence': must be >= 0");
    }
    if (auto [f, v] = take("scheme"); f) {
        try {
            cfg.stepper.scheme = scheme_by_label(v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (auto [f, v] = take("cfl_safety"); f) {
        cfg.stepper.cfl_safety = parse_double("cfl_safety", v);
        if (cfg.stepper.cfl_safety <= 0.0 || cfg.stepper.cfl_safety > 1.0)
            throw ConfigError("key 'cfl_safety': must be in (0, 1]");
    }
    if (auto [f, v] = take("init"); f) {
        if (v != "taylor_green" && v != "random")
            throw ConfigError("key 'init': expected taylor_green or random");
        cfg.init = v;
    }
    if (auto [f, v] = take("amplitude"); f) {
        cfg.amplitude = parse_double("amplitude", v);
        if (cfg.amplitude < 0.0)
            throw ConfigError("key 'amplitude': must be >= 0");
    }
    if (auto [f, v] = take("spectrum_slope"); f)
        cfg.spectrum_slope = parse_double("spectrum_slope", v);
    if (auto [f, v] = take("kmax"); f) {
        cfg.kmax = parse_double("kmax", v);
        if (cfg.kmax < 0.0) throw ConfigError("key 'kmax': must be >= 0");
    }
    if (auto [f, v] = take("s_norm"); f) cfg.s_norm = parse_double("s_norm", v);
    if (auto [f, v] = take("alpha_list"); f)
        cfg.alpha_list = parse_list("alpha_list", v);
    if (auto [f, v] = take("beta_list"); f)
        cfg.beta_list = parse_list("beta_list", v);

    if (!kv.empty())
        throw ConfigError("unknown key '" + kv.begin()->first + "'");

    try {
        cfg.spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace mps
