#include "opsel/model_io.hpp"

#include <fstream>
#include <sstream>

#include "opsel/config.hpp"

namespace opsel {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw Error(errc::kModel, "model " + (where.empty() ? "/" : where) + ": " + msg);
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    if (!obj.contains(key)) fail(where, std::string("missing field '") + key + "'");
    return obj.at(key);
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        fail(where + "/" + key, "wrong type");
    }
}

ordered_json result_to_json(const PaResult& r) {
    ordered_json ops = ordered_json::array();
    for (const auto& op : r.combination.ops) {
        ordered_json params = ordered_json::object();
        for (std::size_t i = 0; i < op.param_names.size(); ++i) {
            ordered_json grid = ordered_json::array();
            for (const auto& v : op.param_grids[i]) grid.push_back(param_to_json(v));
            params[op.param_names[i]] = std::move(grid);
        }
        ops.push_back({{"name", op.name}, {"params", std::move(params)}});
    }
    ordered_json assignment = ordered_json::array();
    for (const auto& v : r.best_action.assignment) assignment.push_back(param_to_json(v));
    const ActionSpace space(r.combination);

    ordered_json out;
    out["combination"] = r.combination.label();
    out["combination_index"] = r.combination_index;
    out["operators"] = std::move(ops);
    out["action"] = {{"index", r.best_action.index},
                     {"assignment", std::move(assignment)},
                     {"display", format_action(space, r.best_action)}};
    out["quality"] = r.quality;
    out["per_image_d"] = r.per_image_d;
    out["action_space_size"] = r.action_space_size;
    out["seed"] = r.seed;
    out["episodes"] = r.episodes;
    out["total_steps"] = r.total_steps;
    return out;
}

PaResult result_from_json(const json& j, const std::string& where) {
    PaResult r;
    const json& ops = field(j, "operators", where);
    if (!ops.is_array() || ops.empty()) fail(where + "/operators", "expected a non-empty array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const std::string ow = where + "/operators/" + std::to_string(i);
        const auto name = get<std::string>(ops[i], "name", ow);
        std::map<std::string, std::vector<ParamValue>> grids;
        const json& params = field(ops[i], "params", ow);
        if (!params.is_object()) fail(ow + "/params", "expected an object");
        for (const auto& [pname, grid] : params.items()) {
            if (!grid.is_array()) fail(ow + "/params/" + pname, "expected an array");
            std::vector<ParamValue> values;
            for (const auto& v : grid) {
                try {
                    values.push_back(param_from_json(v, ow + "/params/" + pname));
                } catch (const Error& e) {
                    fail(ow, e.what());
                }
            }
            grids.emplace(pname, std::move(values));
        }
        try {
            r.combination.ops.push_back(make_operator_spec(name, grids));
        } catch (const Error& e) {
            fail(ow, e.what());
        }
    }

    const std::string aw = where + "/action";
    const json& action = field(j, "action", where);
    const json& assignment = field(action, "assignment", aw);
    if (!assignment.is_array()) fail(aw + "/assignment", "expected an array");
    std::vector<ParamValue> values;
    for (const auto& v : assignment) {
        try {
            values.push_back(param_from_json(v, aw + "/assignment"));
        } catch (const Error& e) {
            fail(aw, e.what());
        }
    }
    const ActionSpace space(r.combination);
    try {
        // The explicit values win over the stored index.
        r.best_action = decode_action(space, space.encode(values));
    } catch (const Error& e) {
        fail(aw, e.what());
    }
    if (get<std::uint64_t>(action, "index", aw) != r.best_action.index) {
        fail(aw + "/index", "does not match the stored assignment");
    }

    if (get<std::string>(j, "combination", where) != r.combination.label()) {
        fail(where + "/combination", "label does not match the operators");
    }
    r.combination_index = get<std::size_t>(j, "combination_index", where);
    r.quality = get<double>(j, "quality", where);
    r.per_image_d = get<std::vector<double>>(j, "per_image_d", where);
    r.action_space_size = get<std::uint64_t>(j, "action_space_size", where);
    if (r.action_space_size != space.size()) fail(where + "/action_space_size", "does not match the operators");
    r.seed = get<std::uint64_t>(j, "seed", where);
    r.episodes = get<int>(j, "episodes", where);
    r.total_steps = get<std::uint64_t>(j, "total_steps", where);
    return r;
}

}  // namespace

nlohmann::ordered_json model_to_json(const LearnedModel& model) {
    ordered_json out;
    out["format"] = kModelFormat;
    out["version"] = LearnedModel::kFormatVersion;
    out["winner"] = result_to_json(model.winner());
    ordered_json results = ordered_json::array();
    for (const auto& r : model.results) results.push_back(result_to_json(r));
    out["results"] = std::move(results);
    ordered_json failures = ordered_json::array();
    for (const auto& f : model.failures) failures.push_back({{"combination", f.combination}, {"reason", f.reason}});
    out["failures"] = std::move(failures);
    out["config"] = config_to_json(model.config);
    return out;
}

LearnedModel model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) fail("", "expected an object");
    if (get<std::string>(doc, "format", "") != kModelFormat) fail("/format", "not an opsel model");
    const int version = get<int>(doc, "version", "");
    if (version != LearnedModel::kFormatVersion) fail("/version", "unsupported version " + std::to_string(version));

    LearnedModel model;
    const json& results = field(doc, "results", "");
    if (!results.is_array() || results.empty()) fail("/results", "expected a non-empty array");
    for (std::size_t i = 0; i < results.size(); ++i) {
        model.results.push_back(result_from_json(results[i], "/results/" + std::to_string(i)));
    }
    const PaResult winner = result_from_json(field(doc, "winner", ""), "/winner");
    if (winner.combination != model.results.front().combination ||
        winner.best_action != model.results.front().best_action) {
        fail("/winner", "does not match the first ranked result");
    }
    for (std::size_t i = 1; i < model.results.size(); ++i) {
        if (model.results[i].quality < model.results[0].quality) fail("/results", "not sorted by quality");
    }

    if (doc.contains("failures")) {
        const json& failures = doc.at("failures");
        if (!failures.is_array()) fail("/failures", "expected an array");
        for (std::size_t i = 0; i < failures.size(); ++i) {
            const std::string fw = "/failures/" + std::to_string(i);
            model.failures.push_back({get<std::string>(failures[i], "combination", fw),
                                      get<std::string>(failures[i], "reason", fw)});
        }
    }
    try {
        model.config = parse_config(field(doc, "config", ""));
    } catch (const Error& e) {
        fail("/config", e.what());
    }
    return model;
}

std::string serialize_model(const LearnedModel& model) {
    return model_to_json(model).dump(2) + "\n";
}

void save_model(const LearnedModel& model, const std::filesystem::path& path) {
    const std::string text = serialize_model(model);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(errc::kIo, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(errc::kIo, "write failed: " + path.string());
}

LearnedModel load_model(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) throw Error(errc::kIo, "file not found: " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::kIo, "cannot read " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(errc::kModel, path.string() + ": " + e.what());
    }
    return model_from_json(doc);
}

}  // namespace opsel
