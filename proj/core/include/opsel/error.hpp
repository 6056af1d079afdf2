#pragma once

#include <stdexcept>
#include <string>

namespace opsel {

/// Error carrying a short machine-readable code (e.g. "E_CONFIG") next to
/// the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* kIo = "E_IO";
inline constexpr const char* kFormat = "E_FORMAT";
inline constexpr const char* kArgument = "E_ARG";
inline constexpr const char* kDimension = "E_DIM";
inline constexpr const char* kKind = "E_KIND";
inline constexpr const char* kConfig = "E_CONFIG";
inline constexpr const char* kDataset = "E_DATASET";
inline constexpr const char* kModel = "E_MODEL";
inline constexpr const char* kRun = "E_RUN";
}  // namespace errc

}  // namespace opsel
