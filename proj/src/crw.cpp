#include "coinwalk/crw.hpp"

#include <cmath>

#include <fmt/format.h>

#include "coinwalk/numerics.hpp"

namespace coinwalk {

void require_valid(const CrwParams& p) {
  if (p.n < 0) throw ValidationError(fmt::format("step count must be non-negative, got {}", p.n));
  if (!(p.p1 >= 0.0 && p.p1 <= 1.0)) throw ValidationError(fmt::format("p1 in [0, 1] violated (p1 = {:.17g})", p.p1));
  if (!(p.pm1 >= 0.0 && p.pm1 <= 1.0)) {
    throw ValidationError(fmt::format("pm1 in [0, 1] violated (pm1 = {:.17g})", p.pm1));
  }
  const double r = p.p1 + p.pm1 - 1.0;
  if (!(std::abs(r) <= tolerance::kProbabilitySum)) {
    throw ValidationError(fmt::format("p1 + pm1 = 1 violated (residual {:.17g})", r));
  }
}

Distribution1D binomial_walk(int n, double p_right, double p_left) {
  if (n < 0) throw ValidationError("step count must be non-negative");
  p_right = clamp_probability(p_right);
  p_left = clamp_probability(p_left);
  Distribution1D d(n);
  for (int right = 0; right <= n; ++right) {
    d.at(2 * right - n) = binomial_term(n, right, p_right, p_left);
  }
  return d;
}

Distribution1D crw_distribution(const CrwParams& params) {
  require_valid(params);
  return binomial_walk(params.n, params.p1, params.pm1);
}

Moments1D crw_moments(const CrwParams& params) {
  require_valid(params);
  return {params.n * (params.p1 - params.pm1), 4.0 * params.n * params.p1 * params.pm1};
}

Moments1D summed_moments(const Distribution1D& d) {
  CompensatedSum m1;
  for (int x = d.min_site(); x <= d.max_site(); ++x) m1.add(x * d.mass(x));
  const double mean = m1.value();
  CompensatedSum m2;
  for (int x = d.min_site(); x <= d.max_site(); ++x) {
    const double dx = x - mean;
    m2.add(dx * dx * d.mass(x));
  }
  return {mean, m2.value()};
}

}  // namespace coinwalk
