#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hbtfisher {

/// steps evenly spaced values from lo to hi inclusive. steps = 1 gives {lo}.
inline std::vector<double> linspace(double lo, double hi, std::int64_t steps) {
  if (steps < 1) throw std::invalid_argument("linspace: steps must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(lo);
    return out;
  }
  const double h = (hi - lo) / static_cast<double>(steps - 1);
  for (std::int64_t i = 0; i < steps; ++i)
    out.push_back(i + 1 == steps ? hi : lo + h * static_cast<double>(i));
  return out;
}

}  // namespace hbtfisher
