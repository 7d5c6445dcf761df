#include "coinwalk/qw.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "coinwalk/numerics.hpp"
#include "coinwalk/quadrature.hpp"

namespace coinwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kDiagonalTolerance = 1e-12;

std::size_t initial_nodes(int n) { return std::max<std::size_t>(1024, 64 * static_cast<std::size_t>(n)); }

void require_steps(int n) {
  if (n < 0) throw ValidationError(fmt::format("step count must be non-negative, got {}", n));
}

void require_diagonal(const CoinState2& initial) {
  require_valid(initial);
  const double off = std::abs(initial.eta);
  if (off > kDiagonalTolerance) {
    throw ValidationError(fmt::format("diagonal initial coin violated (|eta| = {:.17g})", off));
  }
}

Eigen::Vector2cd basis_vector(CoinBasis b) {
  return b == CoinBasis::plus ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
}

ReducedCoinMatrix to_reduced(const Eigen::Matrix2cd& m, Method method) {
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1), method};
}

}  // namespace

const char* to_string(Method m) { return m == Method::direct ? "direct" : "integral"; }

QWState::QWState(int n_max, const Eigen::Vector2cd& coin)
    : QWState(n_max, [&] {
        if (n_max < 0) throw ValidationError("n_max must be non-negative");
        std::vector<Complex> a(2 * (2 * static_cast<std::size_t>(n_max) + 1));
        a[2 * static_cast<std::size_t>(n_max)] = coin(0);
        a[2 * static_cast<std::size_t>(n_max) + 1] = coin(1);
        return a;
      }()) {}

QWState::QWState(int n_max, std::vector<Complex> amplitudes) : n_max_(n_max), amps_(std::move(amplitudes)) {
  if (n_max < 0) throw ValidationError("n_max must be non-negative");
  if (amps_.size() != 2 * (2 * static_cast<std::size_t>(n_max) + 1)) {
    throw std::invalid_argument("amplitude storage must hold 2 (2 n_max + 1) values");
  }
  const double r = norm() - 1.0;
  if (!(std::abs(r) <= tolerance::kProbabilitySum)) {
    throw ValidationError(fmt::format("normalization violated (residual {:.17g})", r));
  }
  lo_ = n_max_;
  hi_ = -n_max_;
  for (int x = -n_max_; x <= n_max_; ++x) {
    if (amps_[slot(x, 0)] != Complex{} || amps_[slot(x, 1)] != Complex{}) {
      lo_ = std::min(lo_, x);
      hi_ = std::max(hi_, x);
    }
  }
  scratch_.resize(amps_.size());
}

Complex QWState::amplitude(int x, int coin) const {
  if (x < -n_max_ || x > n_max_) return {};
  return odd_scale_ ? amps_[slot(x, coin)] / kSqrt2 : amps_[slot(x, coin)];
}

double QWState::probability(int x) const {
  if (x < -n_max_ || x > n_max_) return 0.0;
  const double p = std::norm(amps_[slot(x, 0)]) + std::norm(amps_[slot(x, 1)]);
  return odd_scale_ ? 0.5 * p : p;
}

double QWState::norm() const {
  CompensatedSum s;
  for (const auto& a : amps_) s.add(std::norm(a));
  return odd_scale_ ? 0.5 * s.value() : s.value();
}

void QWState::step() {
  // Unnormalized a +- b, with the two 1/sqrt2 factors applied as an exact 1/2
  // every second step.
  const double h = odd_scale_ ? 0.5 : 1.0;
  std::fill(scratch_.begin(), scratch_.end(), Complex{});
  int new_lo = n_max_;
  int new_hi = -n_max_;
  for (int x = lo_; x <= hi_; ++x) {
    const Complex a = amps_[slot(x, 0)];
    const Complex b = amps_[slot(x, 1)];
    const Complex up = h * (a + b);
    const Complex down = h * (a - b);
    if (up != Complex{}) {
      if (x + 1 > n_max_) throw std::out_of_range("quantum walk step leaves [-n_max, n_max]");
      scratch_[slot(x + 1, 0)] = up;
      new_lo = std::min(new_lo, x + 1);
      new_hi = std::max(new_hi, x + 1);
    }
    if (down != Complex{}) {
      if (x - 1 < -n_max_) throw std::out_of_range("quantum walk step leaves [-n_max, n_max]");
      scratch_[slot(x - 1, 1)] = down;
      new_lo = std::min(new_lo, x - 1);
      new_hi = std::max(new_hi, x - 1);
    }
  }
  amps_.swap(scratch_);
  odd_scale_ = !odd_scale_;
  lo_ = new_lo;
  hi_ = new_hi;
  ++steps_;
}

Distribution1D QWState::position_distribution() const {
  if (steps_ > n_max_) throw std::logic_error("more steps than the lattice holds");
  Distribution1D d(steps_);
  for (int x = -n_max_; x <= n_max_; ++x) {
    const double p = probability(x);
    if (p == 0.0) continue;
    if (x < -steps_ || x > steps_) throw std::logic_error("support exceeds [-steps, steps]; start was not at the origin");
    d.at(x) = p;
  }
  return d;
}

Eigen::Matrix2cd QWState::reduced_coin() const {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (int x = lo_; x <= hi_; ++x) {
    const Complex a = amps_[slot(x, 0)];
    const Complex b = amps_[slot(x, 1)];
    rho(0, 0) += a * std::conj(a);
    rho(0, 1) += a * std::conj(b);
    rho(1, 0) += b * std::conj(a);
    rho(1, 1) += b * std::conj(b);
  }
  return odd_scale_ ? Eigen::Matrix2cd(0.5 * rho) : rho;
}

QWState qw_step(QWState state) {
  state.step();
  return state;
}

Distribution1D qw_distribution(const CoinState2& initial_coin, int n) {
  require_valid(initial_coin);
  require_steps(n);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(initial_coin.matrix());
  Distribution1D out(n);
  for (int i = 0; i < 2; ++i) {
    const double weight = es.eigenvalues()(i);
    if (weight <= 0.0) continue;
    QWState s(n, Eigen::Vector2cd(es.eigenvectors().col(i)));
    for (int k = 0; k < n; ++k) s.step();
    for (int x = -n; x <= n; ++x) out.at(x) += weight * s.probability(x);
  }
  return out;
}

double ReducedCoinMatrix::trace_residual() const { return std::abs(rho11 + rhom1m1 - 1.0); }

double ReducedCoinMatrix::hermiticity_residual() const {
  return std::max({std::abs(rho11.imag()), std::abs(rhom1m1.imag()), std::abs(rho1m1 - std::conj(rhom11))});
}

std::vector<ReducedCoinMatrix> coin_reduced_direct_series(CoinBasis basis, int n_max) {
  require_steps(n_max);
  QWState s(n_max, basis_vector(basis));
  std::vector<ReducedCoinMatrix> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  out.push_back(to_reduced(s.reduced_coin(), Method::direct));
  for (int k = 0; k < n_max; ++k) {
    s.step();
    out.push_back(to_reduced(s.reduced_coin(), Method::direct));
  }
  return out;
}

ReducedCoinMatrix coin_reduced_direct(CoinBasis basis, int n) { return coin_reduced_direct_series(basis, n).back(); }

ReducedCoinMatrix coin_reduced_integral(CoinBasis basis, int n) {
  require_steps(n);
  const bool plus = basis == CoinBasis::plus;
  // Components: cos-integral, then re/im of the (1,-1) and (-1,1) integrals.
  const auto integrand = [n, plus](double k) {
    const double c = std::cos(k);
    const double s = std::sin(k);
    const double omega = std::asin(s / kSqrt2);
    const double denom = 1.0 + c * c;
    const double root = std::sqrt(denom);
    const double cos2 = std::cos(2.0 * n * omega);
    const double sin2 = std::sin(2.0 * n * omega);
    const Complex e_minus(c, -s);
    const Complex e_plus(c, s);
    const double sign = plus ? 1.0 : -1.0;
    const Complex upper = e_minus * Complex(-sign * c * cos2 / denom, sign * sin2 / root);
    const Complex lower = e_plus * Complex(-sign * c * cos2 / denom, -sign * sin2 / root);
    return std::array<double, 5>{cos2 / denom, upper.real(), upper.imag(), lower.real(), lower.imag()};
  };
  const auto q = integrate_periodic<5>(integrand, initial_nodes(n));
  const double w = ((n % 2 == 0) ? 1.0 : -1.0) / (4.0 * kPi);
  const double diag_shift = w * q.value[0];
  const Complex upper(q.value[1], q.value[2]);
  const Complex lower(q.value[3], q.value[4]);
  const double off = (2.0 - kSqrt2) / 4.0;

  ReducedCoinMatrix r;
  r.method = Method::integral;
  if (plus) {
    r.rho11 = 1.0 - kSqrt2 / 4.0 + diag_shift;
    r.rhom1m1 = kSqrt2 / 4.0 - diag_shift;
    r.rho1m1 = off + w * upper;
    r.rhom11 = off + w * lower;
  } else {
    r.rho11 = kSqrt2 / 4.0 - diag_shift;
    r.rhom1m1 = 1.0 - kSqrt2 / 4.0 + diag_shift;
    r.rho1m1 = -off + w * upper;
    r.rhom11 = -off + w * lower;
  }
  return r;
}

double oscillatory_integral(int n) {
  require_steps(n);
  const auto integrand = [n](double k) {
    const double c = std::cos(k);
    const double omega = std::asin(std::sin(k) / kSqrt2);
    return std::array<double, 1>{std::cos(2.0 * n * omega) / (1.0 + c * c)};
  };
  return integrate_periodic<1>(integrand, initial_nodes(n)).value[0];
}

double covariance_limit() { return 1.0 - kSqrt2 / 2.0; }

namespace {

double covariance_from(const CoinState2& initial, const ReducedCoinMatrix& plus, const ReducedCoinMatrix& minus) {
  const double z_plus = (plus.rho11 - plus.rhom1m1).real();
  const double z_minus = (minus.rho11 - minus.rhom1m1).real();
  const double joint = initial.p1 * z_plus - initial.pm1 * z_minus;
  const double final_mean = initial.p1 * z_plus + initial.pm1 * z_minus;
  const double initial_mean = initial.p1 - initial.pm1;
  return joint - final_mean * initial_mean;
}

}  // namespace

double covariance_direct(const CoinState2& initial, int n) {
  require_diagonal(initial);
  require_steps(n);
  return covariance_from(initial, coin_reduced_direct(CoinBasis::plus, n), coin_reduced_direct(CoinBasis::minus, n));
}

std::vector<double> covariance_direct_series(const CoinState2& initial, int n_max) {
  require_diagonal(initial);
  require_steps(n_max);
  const auto plus = coin_reduced_direct_series(CoinBasis::plus, n_max);
  const auto minus = coin_reduced_direct_series(CoinBasis::minus, n_max);
  std::vector<double> out(plus.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = covariance_from(initial, plus[i], minus[i]);
  return out;
}

double covariance_integral(const CoinState2& initial, int n) {
  require_diagonal(initial);
  require_steps(n);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double bias = initial.p1 - initial.pm1;
  return (covariance_limit() + sign / (2.0 * kPi) * oscillatory_integral(n)) * (1.0 - bias * bias);
}

std::vector<double> CovarianceSeries::values(Method m) const {
  std::vector<double> out;
  for (const auto& e : entries) {
    if (e.method == m) out.push_back(e.value);
  }
  return out;
}

CovarianceSeries covariance_series(const CoinState2& initial, int n_max) {
  require_diagonal(initial);
  if (n_max < 1) throw ValidationError("covariance series needs n_max >= 1");
  const auto direct = covariance_direct_series(initial, n_max);
  CovarianceSeries series;
  series.entries.reserve(2 * static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    series.entries.push_back({n, direct[static_cast<std::size_t>(n)], Method::direct});
    series.entries.push_back({n, covariance_integral(initial, n), Method::integral});
  }
  return series;
}

double independent_flip_covariance(const CoinState2& initial, const CoinOperator& coin) {
  require_valid(initial);
  const CoinState2 flipped = conjugate(initial, coin);
  const std::array<double, 2> first{initial.p1, initial.pm1};
  const std::array<double, 2> last{flipped.p1, flipped.pm1};
  const std::array<double, 2> sign{1.0, -1.0};
  double joint = 0.0;
  double mean_first = 0.0;
  double mean_last = 0.0;
  for (int a = 0; a < 2; ++a) {
    mean_first += sign[a] * first[a];
    mean_last += sign[a] * last[a];
    for (int b = 0; b < 2; ++b) joint += sign[a] * sign[b] * first[a] * last[b];
  }
  return joint - mean_first * mean_last;
}

}  // namespace coinwalk
