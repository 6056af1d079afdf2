#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace opsel::cli {

// Each command returns a process exit status. Failures print one line
// "error[<CODE>]: <message>" to `err` and return nonzero.

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct LearnArgs {
    std::filesystem::path config;
    std::filesystem::path out;
    std::optional<int> workers;
    std::vector<std::string> combinations;
};

int cmd_learn(const LearnArgs& args, std::ostream& out, std::ostream& err);

int cmd_apply(const std::filesystem::path& model, const std::filesystem::path& input,
              const std::filesystem::path& output, std::ostream& out, std::ostream& err);

struct GenArgs {
    std::filesystem::path out;
    int count = 20;
    std::uint64_t seed = 1;
    double noise = 0.1;
    int size = 64;
    std::string suffix = "_gt";
};

int cmd_gen_dataset(const GenArgs& args, std::ostream& out, std::ostream& err);

int cmd_inspect(const std::filesystem::path& model, std::ostream& out, std::ostream& err);

/// Full command-line entry point (argv[0] included).
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace opsel::cli
