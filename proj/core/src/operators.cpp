#include "opsel/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "opsel/edge.hpp"
#include "opsel/filters.hpp"
#include "opsel/morphology.hpp"

namespace opsel {
namespace {

const std::vector<OperatorDef>& registry() {
    static const std::vector<OperatorDef> defs = {
        {"medfilt2", ImageKind::Gray, ImageKind::Gray, {{"size", ParamType::Integer, {}, false}}},
        {"ordfilt2",
         ImageKind::Gray,
         ImageKind::Gray,
         {{"size", ParamType::Integer, {}, false}, {"order", ParamType::Integer, {}, true}}},
        {"wiener2", ImageKind::Gray, ImageKind::Gray, {{"size", ParamType::Integer, {}, false}}},
        {"edge",
         ImageKind::Gray,
         ImageKind::Binary,
         {{"method", ParamType::Symbol, {"sobel", "prewitt", "log", "zerocross", "canny"}, false},
          {"threshold", ParamType::Real, {}, false}}},
        {"bwareaopen",
         ImageKind::Binary,
         ImageKind::Binary,
         {{"min_size", ParamType::Integer, {}, false}, {"conn", ParamType::Integer, {}, false}}},
        {"imdilate",
         ImageKind::Binary,
         ImageKind::Binary,
         {{"shape", ParamType::Symbol, {"line", "diamond"}, false}, {"size", ParamType::Integer, {}, false}}},
        {"imerode",
         ImageKind::Binary,
         ImageKind::Binary,
         {{"shape", ParamType::Symbol, {"line", "diamond"}, false}, {"size", ParamType::Integer, {}, false}}},
        {"imfill", ImageKind::Binary, ImageKind::Binary, {{"mode", ParamType::Symbol, {"holes"}, false}}},
        {"bwperim", ImageKind::Binary, ImageKind::Binary, {}},
    };
    return defs;
}

[[noreturn]] void config_error(const std::string& op, const std::string& msg) {
    throw Error(errc::kConfig, "operator '" + op + "': " + msg);
}

std::int64_t as_int(const ParamValue& v) { return std::get<std::int64_t>(v); }

std::vector<std::int64_t> int_grid(const std::vector<ParamValue>& grid) {
    std::vector<std::int64_t> out;
    for (const auto& v : grid) out.push_back(as_int(v));
    return out;
}

// Cross-parameter range checks, so every grid point is runnable.
void check_ranges(const OperatorSpec& spec) {
    auto grid = [&](const std::string& name) -> const std::vector<ParamValue>* {
        for (std::size_t i = 0; i < spec.param_names.size(); ++i)
            if (spec.param_names[i] == name) return &spec.param_grids[i];
        return nullptr;
    };
    const std::string& op = spec.name;
    if (op == "medfilt2" || op == "ordfilt2" || op == "wiener2") {
        for (auto s : int_grid(*grid("size")))
            if (s < 1 || s % 2 == 0 || s > 99) config_error(op, "size must be odd in [1, 99], got " + std::to_string(s));
        if (const auto* order = grid("order")) {
            for (auto s : int_grid(*grid("size")))
                for (auto o : int_grid(*order))
                    if (o < 1 || o > s * s)
                        config_error(op, "order " + std::to_string(o) + " outside [1, " + std::to_string(s * s) +
                                             "] for size " + std::to_string(s));
        }
    } else if (op == "edge") {
        for (const auto& v : *grid("threshold")) {
            const double t = std::get<double>(v);
            if (!std::isfinite(t) || t < 0.0) config_error(op, "threshold must be finite and non-negative");
        }
    } else if (op == "bwareaopen") {
        for (auto s : int_grid(*grid("min_size")))
            if (s < 0) config_error(op, "min_size must be non-negative");
        for (auto c : int_grid(*grid("conn")))
            if (c != 4 && c != 8) config_error(op, "conn must be 4 or 8, got " + std::to_string(c));
    } else if (op == "imdilate" || op == "imerode") {
        for (const auto& shape : *grid("shape")) {
            for (auto s : int_grid(*grid("size"))) {
                const StructuringElement se{parse_se_shape(std::get<std::string>(shape)), static_cast<int>(s)};
                if ((se.shape == SeShape::Line && (s < 1 || s % 2 == 0 || s > 99)) ||
                    (se.shape == SeShape::Diamond && (s < 0 || s > 49))) {
                    config_error(op, "unsupported structuring element " + std::get<std::string>(shape) + " " +
                                         std::to_string(s));
                }
            }
        }
    }
}

const ParamValue* lookup(const OperatorInstance& inst, std::string_view name) {
    for (std::size_t i = 0; i < inst.spec->param_names.size(); ++i)
        if (inst.spec->param_names[i] == name) return &inst.values[i];
    return nullptr;
}

std::int64_t int_param(const OperatorInstance& inst, std::string_view name) {
    const ParamValue* v = lookup(inst, name);
    if (!v || !std::holds_alternative<std::int64_t>(*v))
        throw Error(errc::kArgument, inst.spec->name + ": missing integer parameter " + std::string(name));
    return std::get<std::int64_t>(*v);
}

double real_param(const OperatorInstance& inst, std::string_view name) {
    const ParamValue* v = lookup(inst, name);
    if (!v || !std::holds_alternative<double>(*v))
        throw Error(errc::kArgument, inst.spec->name + ": missing real parameter " + std::string(name));
    return std::get<double>(*v);
}

const std::string& symbol_param(const OperatorInstance& inst, std::string_view name) {
    const ParamValue* v = lookup(inst, name);
    if (!v || !std::holds_alternative<std::string>(*v))
        throw Error(errc::kArgument, inst.spec->name + ": missing symbol parameter " + std::string(name));
    return std::get<std::string>(*v);
}

Connectivity connectivity(std::int64_t c) {
    if (c == 4) return Connectivity::Four;
    if (c == 8) return Connectivity::Eight;
    throw Error(errc::kArgument, "connectivity must be 4 or 8");
}

}  // namespace

std::string_view to_string(ImageKind kind) {
    return kind == ImageKind::Gray ? "gray" : "binary";
}

ImageKind kind_of(const AnyImage& img) {
    return std::holds_alternative<GrayImage>(img) ? ImageKind::Gray : ImageKind::Binary;
}

std::string format_param(const ParamValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) {
        std::array<char, 32> buf{};
        std::snprintf(buf.data(), buf.size(), "%.15g", *d);
        return buf.data();
    }
    return std::get<std::string>(v);
}

std::span<const OperatorDef> builtin_operators() {
    return registry();
}

std::optional<OperatorDef> find_operator(std::string_view name) {
    for (const auto& def : registry())
        if (def.name == name) return def;
    return std::nullopt;
}

OperatorSpec make_operator_spec(const std::string& name,
                                const std::map<std::string, std::vector<ParamValue>>& grids) {
    const auto def = find_operator(name);
    if (!def) throw Error(errc::kConfig, "unknown operator '" + name + "'");

    for (const auto& [param, grid] : grids) {
        const bool known = std::any_of(def->params.begin(), def->params.end(),
                                       [&](const ParamSchema& p) { return p.name == param; });
        if (!known) config_error(name, "unknown parameter '" + param + "'");
    }

    OperatorSpec spec;
    spec.name = name;
    spec.input_kind = def->input_kind;
    spec.output_kind = def->output_kind;
    for (const auto& schema : def->params) {
        const auto it = grids.find(schema.name);
        if (it == grids.end()) {
            if (schema.optional) continue;
            config_error(name, "missing parameter '" + schema.name + "'");
        }
        if (it->second.empty()) config_error(name, "parameter '" + schema.name + "' has an empty value list");
        std::vector<ParamValue> grid;
        for (const auto& v : it->second) {
            switch (schema.type) {
                case ParamType::Integer:
                    if (!std::holds_alternative<std::int64_t>(v))
                        config_error(name, "parameter '" + schema.name + "' expects integers");
                    grid.push_back(v);
                    break;
                case ParamType::Real:
                    if (const auto* i = std::get_if<std::int64_t>(&v)) {
                        grid.emplace_back(static_cast<double>(*i));
                    } else if (std::holds_alternative<double>(v)) {
                        grid.push_back(v);
                    } else {
                        config_error(name, "parameter '" + schema.name + "' expects numbers");
                    }
                    break;
                case ParamType::Symbol: {
                    const auto* s = std::get_if<std::string>(&v);
                    if (!s || std::find(schema.vocabulary.begin(), schema.vocabulary.end(), *s) ==
                                  schema.vocabulary.end()) {
                        std::string allowed;
                        for (const auto& tok : schema.vocabulary) allowed += (allowed.empty() ? "" : ", ") + tok;
                        config_error(name, "parameter '" + schema.name + "' expects one of {" + allowed + "}, got " +
                                               format_param(v));
                    }
                    grid.push_back(v);
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = i + 1; j < grid.size(); ++j)
                if (grid[i] == grid[j])
                    config_error(name, "parameter '" + schema.name + "' lists " + format_param(grid[i]) + " twice");
        spec.param_names.push_back(schema.name);
        spec.param_grids.push_back(std::move(grid));
    }
    check_ranges(spec);
    return spec;
}

OperatorInstance make_instance(const OperatorSpec& spec, std::vector<ParamValue> values) {
    if (values.size() != spec.param_grids.size()) {
        throw Error(errc::kArgument, spec.name + ": expected " + std::to_string(spec.param_grids.size()) +
                                         " parameter values, got " + std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& grid = spec.param_grids[i];
        if (std::find(grid.begin(), grid.end(), values[i]) == grid.end()) {
            throw Error(errc::kArgument, spec.name + ": value " + format_param(values[i]) +
                                             " is not in the grid of '" + spec.param_names[i] + "'");
        }
    }
    return OperatorInstance{&spec, std::move(values)};
}

AnyImage apply_operator(const OperatorInstance& inst, const AnyImage& input) {
    if (!inst.spec) throw Error(errc::kArgument, "operator instance without spec");
    const OperatorSpec& spec = *inst.spec;
    if (kind_of(input) != spec.input_kind) {
        throw Error(errc::kKind, spec.name + " expects a " + std::string(to_string(spec.input_kind)) +
                                     " image, got " + std::string(to_string(kind_of(input))));
    }
    const std::string& op = spec.name;
    if (op == "medfilt2") {
        return median_filter(std::get<GrayImage>(input), static_cast<int>(int_param(inst, "size")));
    }
    if (op == "ordfilt2") {
        const int size = static_cast<int>(int_param(inst, "size"));
        const int order = lookup(inst, "order") ? static_cast<int>(int_param(inst, "order")) : median_rank(size);
        return order_filter(std::get<GrayImage>(input), size, order);
    }
    if (op == "wiener2") {
        return wiener_filter(std::get<GrayImage>(input), static_cast<int>(int_param(inst, "size")));
    }
    if (op == "edge") {
        return edge_detect(std::get<GrayImage>(input), parse_edge_method(symbol_param(inst, "method")),
                           real_param(inst, "threshold"));
    }
    if (op == "bwareaopen") {
        const auto min_size = int_param(inst, "min_size");
        if (min_size < 0) throw Error(errc::kArgument, "min_size must be non-negative");
        return area_open(std::get<BinaryImage>(input), static_cast<std::size_t>(min_size),
                         connectivity(int_param(inst, "conn")));
    }
    if (op == "imdilate" || op == "imerode") {
        const StructuringElement se{parse_se_shape(symbol_param(inst, "shape")),
                                    static_cast<int>(int_param(inst, "size"))};
        return op == "imdilate" ? dilate(std::get<BinaryImage>(input), se)
                                : erode(std::get<BinaryImage>(input), se);
    }
    if (op == "imfill") {
        return fill_holes(std::get<BinaryImage>(input));
    }
    if (op == "bwperim") {
        return perimeter(std::get<BinaryImage>(input));
    }
    throw Error(errc::kArgument, "unknown operator '" + op + "'");
}

}  // namespace opsel
