#pragma once

#include <vector>

#include "coinwalk/types.hpp"

namespace coinwalk {

// Walker (x in [-n_max, n_max]) tensor one Hadamard-flipped coin, stored as
// a dense pure state. Coin index 0 is |+1> (moves right), 1 is |-1>.
class QWState {
 public:
  // Walker localized at the origin with the given coin amplitudes.
  QWState(int n_max, const Eigen::Vector2cd& coin);
  // Arbitrary amplitudes, laid out as [(x + n_max) * 2 + coin].
  QWState(int n_max, std::vector<Complex> amplitudes);

  int n_max() const { return n_max_; }
  int steps_taken() const { return steps_; }

  Complex amplitude(int x, int coin) const;
  double probability(int x) const;
  double norm() const;

  // Hadamard on every site's coin, then the |+1> part moves one site right
  // and the |-1> part one site left. Throws std::out_of_range when
  // amplitude would leave [-n_max, n_max].
  void step();

  // Requires a state that started at the origin, so that the support lies
  // in [-steps, steps].
  Distribution1D position_distribution() const;

  // Partial trace over the walker.
  Eigen::Matrix2cd reduced_coin() const;

 private:
  std::size_t slot(int x, int coin) const {
    return static_cast<std::size_t>(x + n_max_) * 2 + static_cast<std::size_t>(coin);
  }

  int n_max_;
  int steps_ = 0;
  int lo_;  // active site range
  int hi_;
  bool odd_scale_ = false;  // stored amplitudes carry an extra factor sqrt2
  std::vector<Complex> amps_;
  std::vector<Complex> scratch_;
};

QWState qw_step(QWState state);

// Mixed initial coins are split into at most two orthogonal pure states by
// a 2x2 Hermitian eigen-decomposition; their position laws are mixed with
// the spectral weights.
Distribution1D qw_distribution(const CoinState2& initial_coin, int n);

enum class CoinBasis { plus, minus };

enum class Method { direct, integral };

const char* to_string(Method m);

struct ReducedCoinMatrix {
  Complex rho11;
  Complex rho1m1;
  Complex rhom11;
  Complex rhom1m1;
  Method method = Method::direct;

  double trace_residual() const;
  double hermiticity_residual() const;
};

// Evolve |0> (x) |basis> for n steps and trace out the walker.
ReducedCoinMatrix coin_reduced_direct(CoinBasis basis, int n);
// All of n = 0..n_max from a single evolution.
std::vector<ReducedCoinMatrix> coin_reduced_direct_series(CoinBasis basis, int n_max);

// The same matrix from its momentum-space integral form with
// omega_k = asin(sin k / sqrt 2), integrated over [-pi, pi] by periodic
// Simpson quadrature. Throws ConvergenceError when the quadrature stalls.
ReducedCoinMatrix coin_reduced_integral(CoinBasis basis, int n);

// Int_{-pi}^{pi} cos(2 n omega_k) / (1 + cos^2 k) dk
double oscillatory_integral(int n);

// Limit of the covariance for a maximally mixed start: 1 - sqrt(2)/2.
double covariance_limit();

// <sz(n) sz(0)> - <sz(n)><sz(0)> for a diagonal initial coin, from the
// directly evolved reduced coin matrices of both projected starts.
double covariance_direct(const CoinState2& initial, int n);
// covariance_direct for every n = 0..n_max from one pair of evolutions.
std::vector<double> covariance_direct_series(const CoinState2& initial, int n_max);
// Closed form (1 - sqrt2/2 + (-1)^n/(2 pi) Int) [1 - (p1 - pm1)^2].
double covariance_integral(const CoinState2& initial, int n);

struct CovarianceEntry {
  int n = 0;
  double value = 0.0;
  Method method = Method::direct;
};

struct CovarianceSeries {
  std::vector<CovarianceEntry> entries;

  // Values of one method, ordered by n.
  std::vector<double> values(Method m) const;
};

// Both methods for n = 1..n_max, ascending in n.
CovarianceSeries covariance_series(const CoinState2& initial, int n_max);

// Covariance between the first coin before walking and a different coin
// after flipping, as in the classical and many-coin walks. The coins are
// independent, so this is zero up to rounding.
double independent_flip_covariance(const CoinState2& initial, const CoinOperator& coin);

}  // namespace coinwalk
