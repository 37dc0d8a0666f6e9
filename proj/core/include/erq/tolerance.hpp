#pragma once

#include <algorithm>
#include <cmath>

namespace erq {

// The single comparison policy used across verification and reconstruction.
// Two values are "close" when |a-b| <= abs + rel * max(|a|, |b|).
struct Tolerance {
  double rel = 1e-8;
  double abs = 1e-10;

  bool close(double a, double b) const {
    return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
  }
};

}  // namespace erq
