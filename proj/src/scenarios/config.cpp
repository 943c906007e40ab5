#include "approxinv/scenarios.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "approxinv/rng.hpp"

namespace approxinv::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size())
        throw ConfigError("'" + key + "': expected a non-negative integer, got '" + text + "'");
    return v;
}

std::size_t parse_size(const std::string& key, const std::string& text) {
    const auto v = parse_u64(key, text);
    if (v == 0) throw ConfigError("'" + key + "' must be positive");
    return static_cast<std::size_t>(v);
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "inf" || t == "infinity") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || std::isnan(v))
        throw ConfigError("'" + key + "': expected a number, got '" + text + "'");
    return v;
}

double parse_positive(const std::string& key, const std::string& text) {
    const double v = parse_double(key, text);
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("'" + key + "' must be a positive finite number");
    return v;
}

std::vector<std::uint32_t> parse_schedule(const std::string& key, const std::string& text) {
    std::vector<std::uint32_t> out;
    for (const auto& item : split_list(text)) {
        const auto v = parse_u64(key, item);
        if (v == 0 || v > std::numeric_limits<std::uint32_t>::max())
            throw ConfigError("'" + key + "': net indices must be in [1, 2^32)");
        out.push_back(static_cast<std::uint32_t>(v));
    }
    if (out.empty()) throw ConfigError("'" + key + "': empty schedule");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw ConfigError("'" + key + "': schedule must be strictly increasing");
    return out;
}

void apply_run(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "seed") {
        cfg.seed = parse_u64("run.seed", value);
    } else if (key == "out") {
        if (trim(value).empty()) throw ConfigError("'run.out' must not be empty");
        cfg.out_dir = trim(value);
    } else if (key == "scenarios") {
        cfg.scenarios = split_list(value);
    } else {
        throw ConfigError("unknown key 'run." + key + "'");
    }
}

void apply_model(ModelParams& m, const std::string& key, const std::string& value) {
    const std::string k = "model." + key;
    if (key == "circle_samples") {
        m.circle_samples = parse_size(k, value);
    } else if (key == "c0_points") {
        m.c0_points = parse_size(k, value);
    } else if (key == "c0_half_width") {
        m.c0_half_width = parse_positive(k, value);
    } else if (key == "c0_tail_tolerance") {
        m.c0_tail_tolerance = parse_positive(k, value);
    } else if (key == "matrix_size") {
        m.matrix_size = parse_size(k, value);
    } else if (key == "disk_degree") {
        m.disk_degree = parse_size(k, value);
    } else if (key == "disk_starts") {
        m.disk_starts = parse_size(k, value);
    } else if (key == "disk_angles") {
        m.disk_angles = parse_size(k, value);
    } else if (key == "schatten_p") {
        m.schatten_p.clear();
        for (const auto& item : split_list(value)) {
            const double p = parse_double(k, item);
            if (!(p >= 1.0)) throw ConfigError("'" + k + "': exponents must be >= 1");
            m.schatten_p.push_back(p);
        }
        if (m.schatten_p.empty()) throw ConfigError("'" + k + "': empty list");
    } else if (key == "module_p") {
        m.module_p = parse_double(k, value);
        if (!(m.module_p >= 1.0)) throw ConfigError("'" + k + "' must be >= 1");
    } else {
        throw ConfigError("unknown key '" + k + "'");
    }
}

void apply_tolerances(Tolerances& t, const std::string& key, const std::string& value) {
    if (key == "exact") {
        t.exact = parse_positive("tolerances.exact", value);
    } else if (key == "asymptotic") {
        t.asymptotic = parse_positive("tolerances.asymptotic", value);
    } else {
        throw ConfigError("unknown key 'tolerances." + key + "'");
    }
}

}  // namespace

void ScenarioConfig::validate() const {
    if (!is_registered(name)) throw ConfigError("unknown scenario '" + name + "'");
    if (schedule.empty()) throw ConfigError("scenario '" + name + "': empty schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] == 0) throw ConfigError("scenario '" + name + "': net index 0");
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw ConfigError("scenario '" + name + "': schedule must be strictly increasing");
    }
    if (model.circle_samples < 8) throw ConfigError("model.circle_samples must be >= 8");
    if (model.c0_points < 3) throw ConfigError("model.c0_points must be >= 3");
    if (model.disk_angles < 1024) throw ConfigError("model.disk_angles must be >= 1024");
    if (model.matrix_size == 0 || model.disk_degree == 0 || model.disk_starts == 0)
        throw ConfigError("model sizes must be positive");
    if (!(tolerances.exact > 0.0) || !(tolerances.asymptotic > 0.0))
        throw ConfigError("tolerances must be positive");
    if (!(noise_sigma >= 0.0)) throw ConfigError("noise.sigma must be >= 0");
}

ScenarioConfig RunConfig::scenario_config(const std::string& name) const {
    ScenarioConfig c;
    c.name = name;
    c.model = model;
    const auto it = schedules.find(name);
    c.schedule = it != schedules.end() ? it->second : default_schedule(name, model);
    c.tolerances = tolerances;
    c.noise_sigma = noise_sigma;
    c.seed = seed ^ stable_hash(name);
    c.out_dir = out_dir;
    return c;
}

RunConfig parse_config_text(const std::string& text) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }

    RunConfig cfg;
    for (const auto& [section, body] : tree) {
        if (!body.data().empty()) throw ConfigError("key '" + section + "' must appear inside a [section]");
        for (const auto& [key, node] : body) {
            const std::string value = node.get_value<std::string>();
            if (section == "run") {
                apply_run(cfg, key, value);
            } else if (section == "model") {
                apply_model(cfg.model, key, value);
            } else if (section == "nets") {
                if (!is_registered(key)) throw ConfigError("unknown key 'nets." + key + "' (not a scenario)");
                cfg.schedules[key] = parse_schedule("nets." + key, value);
            } else if (section == "tolerances") {
                apply_tolerances(cfg.tolerances, key, value);
            } else if (section == "noise") {
                if (key != "sigma") throw ConfigError("unknown key 'noise." + key + "'");
                cfg.noise_sigma = parse_double("noise.sigma", value);
                if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma))
                    throw ConfigError("'noise.sigma' must be a finite number >= 0");
            } else {
                throw ConfigError("unknown section [" + section + "]");
            }
        }
    }
    for (const auto& s : cfg.scenarios)
        if (!is_registered(s)) throw ConfigError("unknown scenario '" + s + "' in run.scenarios");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace approxinv::cli
