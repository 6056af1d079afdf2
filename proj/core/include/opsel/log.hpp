#pragma once

#include <string_view>

namespace opsel::log {

enum class Level { Debug, Info, Warning, Error, Off };

/// Messages below the threshold are dropped. Default: Info.
void set_level(Level level);
Level level();

void write(Level level, std::string_view message);

inline void debug(std::string_view m) { write(Level::Debug, m); }
inline void info(std::string_view m) { write(Level::Info, m); }
inline void warning(std::string_view m) { write(Level::Warning, m); }
inline void error(std::string_view m) { write(Level::Error, m); }

}  // namespace opsel::log
