#include "csac/interventions/toggle.hpp"

#include <algorithm>
#include <cmath>

namespace csac::interventions {

double percentile_linear(std::vector<double> values, double k) {
  if (values.empty()) throw std::invalid_argument("percentile of empty set");
  std::sort(values.begin(), values.end());
  const double pos = (k / 100.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  if (lo == hi) return values[lo];
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

double update_qscale(double eta, const Vec& q_values) {
  std::vector<double> v(q_values.data(), q_values.data() + q_values.size());
  const double p95 = percentile_linear(v, 95.0);
  const double p5 = percentile_linear(std::move(v), 5.0);
  return 0.99 * eta + 0.01 * std::max(p95 - p5, 1.0);
}

}  // namespace csac::interventions
