#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geocl/errors.hpp"

// Minimal CSV helpers shared by the loaders. No quoting: fields must not
// contain commas (enforced on write where labels are involved).

namespace geocl::csv {

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline double parse_double(std::string_view field, const std::string& file, std::size_t line) {
  field = strip(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError(file + ":" + std::to_string(line) + ": bad numeric field '" +
                    std::string(field) + "'");
  }
  return v;
}

inline std::uint64_t parse_u64(std::string_view field, const std::string& file,
                               std::size_t line) {
  field = strip(field);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError(file + ":" + std::to_string(line) + ": bad integer field '" +
                    std::string(field) + "'");
  }
  return v;
}

}  // namespace geocl::csv
