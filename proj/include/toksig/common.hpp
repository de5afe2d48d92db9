#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace toksig {

/// Base error for everything raised by this library. Messages are meant to be
/// actionable: they name the file, line, record id, or field that failed.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A correlation over a constant sequence has no defined value. Callers decide
/// whether that is fatal (direct calls) or a flag (corpus-level means).
struct undefined_correlation : error {
    explicit undefined_correlation(const std::string& what) : error(what) {}
};

namespace jsonfmt {

/// Locale-independent float formatting with 17 significant digits, enough to
/// round-trip any binary64 value exactly.
inline std::string number(double v) {
    if (!std::isfinite(v)) throw error("cannot serialize non-finite number");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    if (ec != std::errc{}) throw error("float formatting failed");
    return std::string(buf, ptr);
}

inline std::string number(std::int64_t v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw error("integer formatting failed");
    return std::string(buf, ptr);
}

/// JSON string escaping. UTF-8 payload bytes pass through untouched; only
/// control characters, quotes and backslashes are escaped.
inline std::string quote(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(static_cast<char>(c));
                }
        }
    }
    out.push_back('"');
    return out;
}

}  // namespace jsonfmt
}  // namespace toksig
