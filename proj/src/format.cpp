#include "tmotif/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace tmotif {

namespace {

std::string non_finite(double v) {
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return non_finite(v);
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

std::string format_ratio(double v) {
  if (!std::isfinite(v)) return non_finite(v);
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), p);
}

}  // namespace tmotif
