#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opsel/operators.hpp"

namespace opsel {

/// One processing stage and the operators that may fill it.
struct Phase {
    std::string name;
    std::vector<OperatorSpec> candidates;

    friend bool operator==(const Phase&, const Phase&) = default;
};

/// One operator per phase, applied in order.
struct Combination {
    std::vector<OperatorSpec> ops;

    /// Operator names joined with '+', e.g. "wiener2+edge+bwareaopen".
    std::string label() const;

    friend bool operator==(const Combination&, const Combination&) = default;
};

/// Cartesian product of candidates in phase order (first phase varies
/// slowest), keeping only chains that start from a gray image, end in a
/// binary one, and whose adjacent kinds agree. Dropped chains are logged.
/// Throws E_CONFIG on an empty phase or when nothing survives.
std::vector<Combination> enumerate_combinations(const std::vector<Phase>& phases);

/// Upper bound on an action space; keeps Q-tables in memory.
inline constexpr std::uint64_t kMaxActionSpace = 1'000'000;

/// Joint parameter grid of a combination. Parameters are laid out in chain
/// order and the index is mixed-radix with the last parameter fastest.
class ActionSpace {
public:
    explicit ActionSpace(Combination combination);

    const Combination& combination() const noexcept { return combination_; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::uint64_t size() const noexcept { return size_; }

    /// Grid values for `index`, one per parameter in chain order.
    /// Throws E_ARG when index >= size().
    std::vector<ParamValue> decode(std::uint64_t index) const;

    /// Inverse of decode. Throws E_ARG for values not on the grid.
    std::uint64_t encode(const std::vector<ParamValue>& assignment) const;

    /// Per-operator instances for `index`; they point into combination().
    std::vector<OperatorInstance> instances(std::uint64_t index) const;

private:
    struct Slot {
        std::size_t op;
        std::size_t param;
    };

    Combination combination_;
    std::vector<std::size_t> dims_;
    std::vector<Slot> slots_;
    std::uint64_t size_ = 1;
};

ActionSpace build_action_space(const Combination& c);

struct Action {
    std::uint64_t index = 0;
    std::vector<ParamValue> assignment;

    friend bool operator==(const Action&, const Action&) = default;
};

Action decode_action(const ActionSpace& space, std::uint64_t index);

/// Groups the assignment per operator, e.g. "[5, (prewitt, 0.03), (10, 8)]".
std::string format_action(const ActionSpace& space, const Action& action);

/// Runs every operator of the combination in order, starting from `img`.
/// Throws E_KIND if the chain does not end in a binary image.
BinaryImage apply_pipeline(const GrayImage& img, const ActionSpace& space, std::uint64_t action_index);
BinaryImage apply_pipeline(const GrayImage& img, const ActionSpace& space, const Action& action);
BinaryImage apply_pipeline(const GrayImage& img, const Combination& c, const Action& action);

}  // namespace opsel
