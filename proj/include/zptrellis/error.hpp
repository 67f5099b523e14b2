#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace zpt {

/// Malformed textual input. Carries a 1-based line/column when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        if (line == 0) return msg;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
    }
    std::size_t line_;
    std::size_t column_;
};

/// Two computations that must agree did not. Always a bug.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The request is well-formed but cannot be satisfied (e.g. dependent generators).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured element cap.
class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Element-count cap for exhaustive enumerations. TRELLIS_GUARD overrides the default 2^20.
inline std::uint64_t enumeration_cap() {
    constexpr std::uint64_t fallback = std::uint64_t{1} << 20;
    const char* env = std::getenv("TRELLIS_GUARD");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) return fallback;
    return v;
}

inline void check_guard(std::uint64_t count, const char* what) {
    if (count > enumeration_cap())
        throw GuardExceeded(std::string(what) + ": " + std::to_string(count) +
                            " elements exceeds enumeration cap " + std::to_string(enumeration_cap()));
}

} // namespace zpt
