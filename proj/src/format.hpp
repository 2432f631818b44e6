#pragma once

#include <charconv>
#include <string>

namespace macbench::fmt {

/// Locale-independent decimal rendering with 6 significant digits; the one
/// number format used by every CSV and report emitter.
inline std::string format_double(double v) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

}  // namespace macbench::fmt
