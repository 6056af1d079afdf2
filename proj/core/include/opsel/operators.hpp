#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "opsel/image.hpp"

namespace opsel {

enum class ImageKind { Gray, Binary };

std::string_view to_string(ImageKind kind);

using AnyImage = std::variant<GrayImage, BinaryImage>;

ImageKind kind_of(const AnyImage& img);

enum class ParamType { Integer, Real, Symbol };

/// A single parameter value: integer, real, or a symbol token such as
/// "sobel" or "holes".
using ParamValue = std::variant<std::int64_t, double, std::string>;

std::string format_param(const ParamValue& v);

/// Declared shape of one operator parameter.
struct ParamSchema {
    std::string name;
    ParamType type = ParamType::Integer;
    /// Allowed tokens, for symbol parameters.
    std::vector<std::string> vocabulary;
    /// Optional parameters may be left out of a configuration; the operator
    /// then uses a derived default (e.g. the median rank for ordfilt2).
    bool optional = false;
};

/// Built-in operator definition: what it consumes/produces and which
/// parameters it understands.
struct OperatorDef {
    std::string name;
    ImageKind input_kind = ImageKind::Gray;
    ImageKind output_kind = ImageKind::Gray;
    std::vector<ParamSchema> params;
};

/// All operators known to the library, in a fixed order.
std::span<const OperatorDef> builtin_operators();

/// Nullopt for unknown names.
std::optional<OperatorDef> find_operator(std::string_view name);

/// An operator with a finite grid of candidate values for each of its
/// configured parameters.
struct OperatorSpec {
    std::string name;
    std::vector<std::string> param_names;
    std::vector<std::vector<ParamValue>> param_grids;
    ImageKind input_kind = ImageKind::Gray;
    ImageKind output_kind = ImageKind::Gray;

    friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

/// Builds a validated spec from named grids. Integers given for real
/// parameters are promoted; every grid value is range-checked so that any
/// point of the grid product is executable. Throws E_CONFIG.
OperatorSpec make_operator_spec(const std::string& name,
                                const std::map<std::string, std::vector<ParamValue>>& grids);

/// One concrete parameter assignment for an operator.
struct OperatorInstance {
    const OperatorSpec* spec = nullptr;
    std::vector<ParamValue> values;
};

/// Throws E_ARG if a value is not a member of its grid.
OperatorInstance make_instance(const OperatorSpec& spec, std::vector<ParamValue> values);

/// Runs the instance on `input`. Throws E_KIND when the input kind does not
/// match the operator and E_ARG for unknown operators.
AnyImage apply_operator(const OperatorInstance& inst, const AnyImage& input);

}  // namespace opsel
