#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "coinwalk/types.hpp"

namespace coinwalk::testing {

inline CoinState2 random_coin2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CoinState2 s;
  s.p1 = u(rng);
  s.pm1 = 1.0 - s.p1;
  const double radius = std::sqrt(s.p1 * s.pm1) * u(rng);
  s.eta = std::polar(radius, 2.0 * std::numbers::pi * u(rng));
  return s;
}

inline Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  return a;
}

// Haar-ish unitary from the QR factor of a Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int dim) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_matrix(rng, dim));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

// A A^dagger / tr, optionally of reduced rank to land on the PSD boundary.
inline CoinState4 random_coin4(std::mt19937_64& rng, int rank = 4) {
  Eigen::MatrixXcd a = random_matrix(rng, 4).leftCols(rank);
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  CoinState4 s;
  for (int i = 0; i < 4; ++i) s.q[static_cast<std::size_t>(i)] = rho(i, i).real();
  for (int i = 1; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) s.coherence(i, j) = rho(i - 1, j - 1);
  }
  return s;
}

}  // namespace coinwalk::testing
