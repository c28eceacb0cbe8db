#pragma once

#include <string>

namespace tmotif {

/// Shortest round-trip decimal.
std::string format_double(double v);

/// Fixed 17-significant-digit decimal, "inf"/"nan" for non-finite values.
std::string format_ratio(double v);

}  // namespace tmotif
