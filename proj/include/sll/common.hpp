#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>

namespace sll {

// Bad call-site input (invalid node index, malformed parameters).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed external input (CSV cells, network JSON, spec files).
struct DataFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant (incomplete table handed to a consumer).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

namespace detail {
inline LogLevel& log_threshold_ref() {
    static LogLevel lvl = [] {
        const char* env = std::getenv("SLL_LOG");
        if (env == nullptr) return LogLevel::warn;
        const std::string s(env);
        if (s == "error") return LogLevel::error;
        if (s == "info") return LogLevel::info;
        if (s == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return lvl;
}
}  // namespace detail

inline LogLevel log_threshold() { return detail::log_threshold_ref(); }

inline void set_log_threshold(LogLevel lvl) { detail::log_threshold_ref() = lvl; }

// Diagnostics go to stderr; result payloads own stdout.
inline void log(LogLevel lvl, const std::string& msg) {
    if (lvl > log_threshold()) return;
    static std::mutex mu;
    const std::lock_guard<std::mutex> lock(mu);
    const char* tag = lvl == LogLevel::error  ? "error"
                      : lvl == LogLevel::warn ? "warn"
                      : lvl == LogLevel::info ? "info"
                                              : "debug";
    std::cerr << "[sll:" << tag << "] " << msg << '\n';
}

}  // namespace sll
