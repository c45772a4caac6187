#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace fclt {

// Shortest round-trip decimal representation, independent of the C locale.
inline std::string format_double(double x)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, end);
}

}  // namespace fclt
