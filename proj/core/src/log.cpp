#include "opsel/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace opsel::log {
namespace {

std::atomic<Level> g_level{Level::Info};
std::mutex g_mutex;

const char* tag(Level level) {
    switch (level) {
        case Level::Debug: return "debug";
        case Level::Info: return "info";
        case Level::Warning: return "warning";
        case Level::Error: return "error";
        case Level::Off: break;
    }
    return "";
}

}  // namespace

void set_level(Level level) { g_level.store(level); }

Level level() { return g_level.load(); }

void write(Level level, std::string_view message) {
    if (level < g_level.load() || level == Level::Off) return;
    std::lock_guard lock(g_mutex);
    std::clog << "[" << tag(level) << "] " << message << '\n';
}

}  // namespace opsel::log
