#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

#include <fmt/format.h>

#include "coinwalk/types.hpp"

namespace coinwalk {

template <std::size_t K>
struct QuadratureResult {
  std::array<double, K> value{};
  double residual = 0.0;  // max component change over the last doubling
  std::size_t nodes = 0;
};

// Composite Simpson rule over one period [-pi, pi) for a vector-valued
// 2pi-periodic integrand. The grid starts with `initial_nodes` intervals
// (rounded up to even) and is doubled until successive estimates agree to
// `tol` in every component. Old nodes are reused on each doubling.
template <std::size_t K, class F>
QuadratureResult<K> integrate_periodic(F&& f, std::size_t initial_nodes, double tol = 1e-11,
                                       std::size_t max_nodes = std::size_t{1} << 24) {
  constexpr double kPi = std::numbers::pi;
  std::size_t n = std::max<std::size_t>(initial_nodes + (initial_nodes & 1U), 2);

  std::array<double, K> even{};
  std::array<double, K> odd{};
  const double h0 = 2.0 * kPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto v = f(-kPi + static_cast<double>(j) * h0);
    auto& acc = (j % 2 == 0) ? even : odd;
    for (std::size_t c = 0; c < K; ++c) acc[c] += v[c];
  }

  const auto simpson = [&](std::size_t intervals) {
    const double h = 2.0 * kPi / static_cast<double>(intervals);
    std::array<double, K> s{};
    for (std::size_t c = 0; c < K; ++c) s[c] = h / 3.0 * (2.0 * even[c] + 4.0 * odd[c]);
    return s;
  };

  QuadratureResult<K> out;
  auto previous = simpson(n);
  while (true) {
    if (2 * n > max_nodes) {
      throw ConvergenceError(
          fmt::format("periodic quadrature did not converge within {} nodes (residual {:.3g})", n, out.residual),
          out.residual);
    }
    const double h = 2.0 * kPi / static_cast<double>(2 * n);
    std::array<double, K> mid{};
    for (std::size_t j = 0; j < n; ++j) {
      const auto v = f(-kPi + static_cast<double>(2 * j + 1) * h);
      for (std::size_t c = 0; c < K; ++c) mid[c] += v[c];
    }
    for (std::size_t c = 0; c < K; ++c) {
      even[c] += odd[c];
      odd[c] = mid[c];
    }
    n *= 2;
    const auto current = simpson(n);
    double diff = 0.0;
    for (std::size_t c = 0; c < K; ++c) diff = std::max(diff, std::abs(current[c] - previous[c]));
    out.value = current;
    out.residual = diff;
    out.nodes = n;
    if (diff < tol) return out;
    previous = current;
  }
}

}  // namespace coinwalk
