#include "opsel/pipeline.hpp"

#include <algorithm>

#include "opsel/log.hpp"

namespace opsel {
namespace {

bool chain_compatible(const std::vector<OperatorSpec>& ops) {
    if (ops.empty() || ops.front().input_kind != ImageKind::Gray || ops.back().output_kind != ImageKind::Binary) {
        return false;
    }
    for (std::size_t i = 1; i < ops.size(); ++i)
        if (ops[i - 1].output_kind != ops[i].input_kind) return false;
    return true;
}

}  // namespace

std::string Combination::label() const {
    std::string out;
    for (const auto& op : ops) {
        if (!out.empty()) out += '+';
        out += op.name;
    }
    return out;
}

std::vector<Combination> enumerate_combinations(const std::vector<Phase>& phases) {
    if (phases.empty()) throw Error(errc::kConfig, "no phases configured");
    for (const auto& phase : phases) {
        if (phase.candidates.empty()) throw Error(errc::kConfig, "phase '" + phase.name + "' has no operators");
        for (std::size_t i = 0; i < phase.candidates.size(); ++i)
            for (std::size_t j = i + 1; j < phase.candidates.size(); ++j)
                if (phase.candidates[i].name == phase.candidates[j].name)
                    throw Error(errc::kConfig, "phase '" + phase.name + "' lists operator '" +
                                                   phase.candidates[i].name + "' twice");
    }

    std::vector<Combination> out;
    std::vector<std::size_t> pick(phases.size(), 0);
    while (true) {
        Combination c;
        for (std::size_t p = 0; p < phases.size(); ++p) c.ops.push_back(phases[p].candidates[pick[p]]);
        if (chain_compatible(c.ops)) {
            out.push_back(std::move(c));
        } else {
            log::warning("dropping kind-incompatible combination " + c.label());
        }
        // Odometer with the last phase fastest.
        std::size_t p = phases.size();
        bool done = true;
        while (p > 0) {
            --p;
            if (++pick[p] < phases[p].candidates.size()) {
                done = false;
                break;
            }
            pick[p] = 0;
        }
        if (done) break;
    }
    if (out.empty()) throw Error(errc::kConfig, "no kind-compatible combination");
    return out;
}

ActionSpace::ActionSpace(Combination combination) : combination_(std::move(combination)) {
    for (std::size_t op = 0; op < combination_.ops.size(); ++op) {
        const auto& spec = combination_.ops[op];
        for (std::size_t param = 0; param < spec.param_grids.size(); ++param) {
            const std::size_t n = spec.param_grids[param].size();
            if (n == 0) {
                throw Error(errc::kConfig, spec.name + ": parameter '" + spec.param_names[param] + "' has an empty grid");
            }
            if (size_ > kMaxActionSpace / n) {
                throw Error(errc::kConfig, "action space of " + combination_.label() + " exceeds " +
                                               std::to_string(kMaxActionSpace) + " actions");
            }
            size_ *= n;
            dims_.push_back(n);
            slots_.push_back({op, param});
        }
    }
}

std::vector<ParamValue> ActionSpace::decode(std::uint64_t index) const {
    if (index >= size_) {
        throw Error(errc::kArgument, "action index " + std::to_string(index) + " outside [0, " +
                                         std::to_string(size_) + ")");
    }
    std::vector<ParamValue> out(dims_.size());
    for (std::size_t k = dims_.size(); k > 0; --k) {
        const std::size_t i = k - 1;
        const auto digit = static_cast<std::size_t>(index % dims_[i]);
        index /= dims_[i];
        out[i] = combination_.ops[slots_[i].op].param_grids[slots_[i].param][digit];
    }
    return out;
}

std::uint64_t ActionSpace::encode(const std::vector<ParamValue>& assignment) const {
    if (assignment.size() != dims_.size()) {
        throw Error(errc::kArgument, "assignment has " + std::to_string(assignment.size()) + " values, expected " +
                                         std::to_string(dims_.size()));
    }
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        const auto& spec = combination_.ops[slots_[i].op];
        const auto& grid = spec.param_grids[slots_[i].param];
        const auto it = std::find(grid.begin(), grid.end(), assignment[i]);
        if (it == grid.end()) {
            throw Error(errc::kArgument, spec.name + ": value " + format_param(assignment[i]) +
                                             " is not in the grid of '" + spec.param_names[slots_[i].param] + "'");
        }
        index = index * dims_[i] + static_cast<std::uint64_t>(it - grid.begin());
    }
    return index;
}

std::vector<OperatorInstance> ActionSpace::instances(std::uint64_t index) const {
    const auto values = decode(index);
    std::vector<OperatorInstance> out;
    std::size_t next = 0;
    for (const auto& spec : combination_.ops) {
        std::vector<ParamValue> own(values.begin() + static_cast<std::ptrdiff_t>(next),
                                    values.begin() + static_cast<std::ptrdiff_t>(next + spec.param_grids.size()));
        next += spec.param_grids.size();
        out.push_back(OperatorInstance{&spec, std::move(own)});
    }
    return out;
}

ActionSpace build_action_space(const Combination& c) {
    return ActionSpace(c);
}

Action decode_action(const ActionSpace& space, std::uint64_t index) {
    return Action{index, space.decode(index)};
}

std::string format_action(const ActionSpace& space, const Action& action) {
    std::string out = "[";
    std::size_t next = 0;
    for (std::size_t op = 0; op < space.combination().ops.size(); ++op) {
        const std::size_t n = space.combination().ops[op].param_grids.size();
        if (op > 0) out += ", ";
        if (n != 1) out += '(';
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) out += ", ";
            out += format_param(action.assignment.at(next + k));
        }
        if (n != 1) out += ')';
        next += n;
    }
    return out + "]";
}

BinaryImage apply_pipeline(const GrayImage& img, const ActionSpace& space, std::uint64_t action_index) {
    AnyImage current = img;
    for (const auto& inst : space.instances(action_index)) current = apply_operator(inst, current);
    if (kind_of(current) != ImageKind::Binary) {
        throw Error(errc::kKind, space.combination().label() + " does not end in a binary image");
    }
    return std::get<BinaryImage>(std::move(current));
}

BinaryImage apply_pipeline(const GrayImage& img, const ActionSpace& space, const Action& action) {
    return apply_pipeline(img, space, space.encode(action.assignment));
}

BinaryImage apply_pipeline(const GrayImage& img, const Combination& c, const Action& action) {
    const ActionSpace space(c);
    return apply_pipeline(img, space, space.encode(action.assignment));
}

}  // namespace opsel
