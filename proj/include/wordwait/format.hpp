#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace wordwait {

/// Shortest text that parses back to the same double.
inline std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

inline std::string format_number(std::uint64_t value) { return std::to_string(value); }

}  // namespace wordwait
