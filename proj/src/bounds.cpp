#include "wgs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wgs {

double weak_disk_bound() { return 1.0 + kPi; }

double heptagon_weighted_bound(double w) {
  if (!(w >= 0.0 && w <= 1.0))
    throw std::invalid_argument("weight must lie in [0,1]");
  return 1.0 + std::cos(3.0 * kPi / 14.0) / (w + 1.0) +
         5.0 * std::sin(kPi / 7.0);
}

double lift_to_disk(double ngon_value, int n) {
  require_ngon(n);
  return ngon_value + kPi / static_cast<double>(n);
}

double disk_weighted_bound(double w) {
  return std::max(weak_disk_bound(), lift_to_disk(heptagon_weighted_bound(w), 7));
}

double weighted_transition() {
  return 7.0 * std::cos(3.0 * kPi / 14.0) /
             (6.0 * kPi - 35.0 * std::sin(kPi / 7.0)) -
         1.0;
}

}  // namespace wgs
