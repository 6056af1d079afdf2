#include "opsel/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

namespace opsel {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw Error(errc::kConfig, (where.empty() ? "/" : where) + ": " + msg);
}

const json& require_object(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    return j;
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!keys.count(key)) fail(where + "/" + key, "unknown key");
    }
}

double get_number(const json& obj, const char* key, const std::string& where, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(where + "/" + key, "expected a number");
    return v.get<double>();
}

int get_count(const json& obj, const char* key, const std::string& where, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(where + "/" + key, "expected an integer");
    const auto n = v.get<std::int64_t>();
    if (n < 1 || n > 100'000'000) fail(where + "/" + key, "must be in [1, 1e8]");
    return static_cast<int>(n);
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) fail(where, std::string("missing key '") + key + "'");
    const json& v = obj.at(key);
    if (!v.is_string()) fail(where + "/" + key, "expected a string");
    return v.get<std::string>();
}

OperatorSpec parse_operator(const json& j, const std::string& where) {
    require_object(j, where);
    reject_unknown(j, where, {"name", "params"});
    const std::string name = get_string(j, "name", where);
    std::map<std::string, std::vector<ParamValue>> grids;
    if (j.contains("params")) {
        const std::string pw = where + "/params";
        for (const auto& [pname, grid] : require_object(j.at("params"), pw).items()) {
            const std::string gw = pw + "/" + pname;
            std::vector<ParamValue> values;
            if (grid.is_array()) {
                for (std::size_t i = 0; i < grid.size(); ++i)
                    values.push_back(param_from_json(grid[i], gw + "/" + std::to_string(i)));
            } else {
                values.push_back(param_from_json(grid, gw));
            }
            if (values.empty()) fail(gw, "empty value list");
            grids.emplace(pname, std::move(values));
        }
    }
    try {
        return make_operator_spec(name, grids);
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

Phase parse_phase(const json& j, const std::string& where) {
    require_object(j, where);
    reject_unknown(j, where, {"name", "operators"});
    Phase phase;
    phase.name = get_string(j, "name", where);
    if (!j.contains("operators") || !j.at("operators").is_array()) {
        fail(where, "phase '" + phase.name + "' needs an 'operators' array");
    }
    const json& ops = j.at("operators");
    if (ops.empty()) fail(where + "/operators", "phase '" + phase.name + "' has no operators");
    for (std::size_t i = 0; i < ops.size(); ++i) {
        phase.candidates.push_back(parse_operator(ops[i], where + "/operators/" + std::to_string(i)));
    }
    for (std::size_t a = 0; a < phase.candidates.size(); ++a)
        for (std::size_t b = a + 1; b < phase.candidates.size(); ++b)
            if (phase.candidates[a].name == phase.candidates[b].name)
                fail(where + "/operators", "phase '" + phase.name + "' lists '" + phase.candidates[a].name + "' twice");
    return phase;
}

}  // namespace

ParamValue param_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) return v.get<double>();
    if (v.is_string()) return v.get<std::string>();
    fail(where, "parameter values must be numbers or strings");
}

nlohmann::ordered_json param_to_json(const ParamValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    if (const auto* d = std::get_if<double>(&v)) return *d;
    return std::get<std::string>(v);
}

TaskConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
    require_object(doc, "");
    reject_unknown(doc, "", {"phases", "metrics", "learner", "dataset", "run"});
    TaskConfig cfg;

    if (!doc.contains("phases") || !doc.at("phases").is_array() || doc.at("phases").empty()) {
        fail("/phases", "expected a non-empty array of phases");
    }
    const json& phases = doc.at("phases");
    for (std::size_t i = 0; i < phases.size(); ++i) {
        cfg.phases.push_back(parse_phase(phases[i], "/phases/" + std::to_string(i)));
    }

    if (doc.contains("metrics")) {
        const json& m = require_object(doc.at("metrics"), "/metrics");
        reject_unknown(m, "/metrics", {"weights", "eps_quality", "delta"});
        if (m.contains("weights")) {
            const json& w = require_object(m.at("weights"), "/metrics/weights");
            reject_unknown(w, "/metrics/weights", {"w1", "w2", "w3"});
            cfg.metrics.weights.w1 = get_number(w, "w1", "/metrics/weights", cfg.metrics.weights.w1);
            cfg.metrics.weights.w2 = get_number(w, "w2", "/metrics/weights", cfg.metrics.weights.w2);
            cfg.metrics.weights.w3 = get_number(w, "w3", "/metrics/weights", cfg.metrics.weights.w3);
        }
        cfg.metrics.thresholds.eps_quality = get_number(m, "eps_quality", "/metrics", cfg.metrics.thresholds.eps_quality);
        cfg.metrics.thresholds.delta = get_number(m, "delta", "/metrics", cfg.metrics.thresholds.delta);
    }

    if (doc.contains("learner")) {
        const json& l = require_object(doc.at("learner"), "/learner");
        reject_unknown(l, "/learner", {"alpha", "gamma", "eps_explore", "episodes", "steps", "seed"});
        cfg.learner.alpha = get_number(l, "alpha", "/learner", cfg.learner.alpha);
        cfg.learner.gamma = get_number(l, "gamma", "/learner", cfg.learner.gamma);
        cfg.learner.eps_explore = get_number(l, "eps_explore", "/learner", cfg.learner.eps_explore);
        cfg.learner.episodes = get_count(l, "episodes", "/learner", cfg.learner.episodes);
        cfg.learner.steps_per_episode = get_count(l, "steps", "/learner", cfg.learner.steps_per_episode);
        if (l.contains("seed")) {
            const json& s = l.at("seed");
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
                fail("/learner/seed", "expected a non-negative integer");
            }
            cfg.learner.rng_seed = s.get<std::uint64_t>();
        }
    }

    if (!doc.contains("dataset")) fail("/dataset", "missing dataset section");
    const json& d = require_object(doc.at("dataset"), "/dataset");
    reject_unknown(d, "/dataset", {"path", "ground_truth_suffix"});
    std::filesystem::path data = get_string(d, "path", "/dataset");
    if (data.is_relative() && !base_dir.empty()) data = base_dir / data;
    cfg.dataset_path = data.lexically_normal();
    if (d.contains("ground_truth_suffix")) {
        cfg.ground_truth_suffix = get_string(d, "ground_truth_suffix", "/dataset");
        if (cfg.ground_truth_suffix.empty()) fail("/dataset/ground_truth_suffix", "must not be empty");
    }

    if (doc.contains("run")) {
        const json& r = require_object(doc.at("run"), "/run");
        reject_unknown(r, "/run", {"workers"});
        cfg.workers = get_count(r, "workers", "/run", cfg.workers);
    }

    try {
        cfg.validate();
    } catch (const Error& e) {
        throw Error(errc::kConfig, e.what());
    }
    return cfg;
}

TaskConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::kIo, "cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(errc::kConfig, path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

nlohmann::ordered_json config_to_json(const TaskConfig& cfg) {
    nlohmann::ordered_json phases = nlohmann::ordered_json::array();
    for (const auto& phase : cfg.phases) {
        nlohmann::ordered_json ops = nlohmann::ordered_json::array();
        for (const auto& op : phase.candidates) {
            nlohmann::ordered_json params = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < op.param_names.size(); ++i) {
                nlohmann::ordered_json grid = nlohmann::ordered_json::array();
                for (const auto& v : op.param_grids[i]) grid.push_back(param_to_json(v));
                params[op.param_names[i]] = std::move(grid);
            }
            ops.push_back({{"name", op.name}, {"params", std::move(params)}});
        }
        phases.push_back({{"name", phase.name}, {"operators", std::move(ops)}});
    }
    nlohmann::ordered_json out;
    out["phases"] = std::move(phases);
    out["metrics"] = {{"weights", {{"w1", cfg.metrics.weights.w1}, {"w2", cfg.metrics.weights.w2}, {"w3", cfg.metrics.weights.w3}}},
                      {"eps_quality", cfg.metrics.thresholds.eps_quality},
                      {"delta", cfg.metrics.thresholds.delta}};
    out["learner"] = {{"alpha", cfg.learner.alpha},
                      {"gamma", cfg.learner.gamma},
                      {"eps_explore", cfg.learner.eps_explore},
                      {"episodes", cfg.learner.episodes},
                      {"steps", cfg.learner.steps_per_episode},
                      {"seed", cfg.learner.rng_seed}};
    out["dataset"] = {{"path", cfg.dataset_path.generic_string()}, {"ground_truth_suffix", cfg.ground_truth_suffix}};
    out["run"] = {{"workers", cfg.workers}};
    return out;
}

}  // namespace opsel
