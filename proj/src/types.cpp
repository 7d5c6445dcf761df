#include "coinwalk/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace coinwalk {

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ValidationReport::failure_message() const {
  for (const auto& c : checks) {
    if (!c.passed) return fmt::format("{} violated (residual {:.17g})", c.name, c.residual);
  }
  return {};
}

void ValidationReport::add(std::string name, bool passed, double residual) {
  checks.push_back({std::move(name), passed, residual});
}

Eigen::Matrix2cd CoinState2::matrix() const {
  Eigen::Matrix2cd m;
  m << Complex(p1, 0.0), eta, std::conj(eta), Complex(pm1, 0.0);
  return m;
}

namespace {

int pair_slot(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > 4 || i == j) throw std::out_of_range("coherence index must satisfy 1 <= i < j <= 4");
  // 12 13 14 23 24 34
  static constexpr int kFirst[4] = {0, 0, 3, 5};
  return kFirst[i] + (j - i - 1);
}

}  // namespace

Complex& CoinState4::coherence(int i, int j) { return eta[pair_slot(i, j)]; }

Complex CoinState4::coherence(int i, int j) const { return eta[pair_slot(i, j)]; }

Eigen::Matrix4cd CoinState4::matrix() const {
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i) {
    m(i, i) = q[i];
    for (int j = i + 1; j < 4; ++j) {
      const Complex c = coherence(i + 1, j + 1);
      m(i, j) = c;
      m(j, i) = std::conj(c);
    }
  }
  return m;
}

double unitarity_residual(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd diff = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return diff.cwiseAbs().maxCoeff();
}

CoinOperator::CoinOperator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || (entries_.rows() != 2 && entries_.rows() != 4)) {
    throw ValidationError(fmt::format("coin operator must be 2x2 or 4x4, got {}x{}", entries_.rows(),
                                      entries_.cols()));
  }
  const double r = coinwalk::unitarity_residual(entries_);
  if (!(r <= tolerance::kUnitary)) {
    throw ValidationError(fmt::format("unitarity violated (residual {:.17g})", r));
  }
}

double CoinOperator::unitarity_residual() const { return coinwalk::unitarity_residual(entries_); }

CoinOperator hadamard2() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd h(2, 2);
  h << s, s, s, -s;
  return CoinOperator(std::move(h));
}

CoinOperator grover4() {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Constant(4, 4, Complex(0.5, 0.0));
  g.diagonal().setConstant(Complex(-0.5, 0.0));
  return CoinOperator(std::move(g));
}

Distribution1D::Distribution1D(int steps) : Distribution1D(steps, std::vector<double>(2 * std::max(steps, 0) + 1)) {}

Distribution1D::Distribution1D(int steps, std::vector<double> mass) : steps_(steps), mass_(std::move(mass)) {
  if (steps < 0) throw ValidationError("step count must be non-negative");
  if (mass_.size() != static_cast<std::size_t>(2 * steps + 1)) {
    throw std::invalid_argument("distribution storage must hold 2n+1 sites");
  }
}

double Distribution1D::mass(int x) const {
  if (x < -steps_ || x > steps_) return 0.0;
  return mass_[static_cast<std::size_t>(x + steps_)];
}

double& Distribution1D::at(int x) {
  if (x < -steps_ || x > steps_) throw std::out_of_range("site outside [-n, n]");
  return mass_[static_cast<std::size_t>(x + steps_)];
}

double Distribution1D::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

Distribution2D::Distribution2D(int steps) : steps_(steps) {
  if (steps < 0) throw ValidationError("step count must be non-negative");
  const auto w = static_cast<std::size_t>(width());
  mass_.assign(w * w, 0.0);
}

std::size_t Distribution2D::index(int x, int y) const {
  return static_cast<std::size_t>(y + steps_) * static_cast<std::size_t>(width()) +
         static_cast<std::size_t>(x + steps_);
}

double Distribution2D::mass(int x, int y) const {
  if (x < -steps_ || x > steps_ || y < -steps_ || y > steps_) return 0.0;
  return mass_[index(x, y)];
}

double& Distribution2D::at(int x, int y) {
  if (x < -steps_ || x > steps_ || y < -steps_ || y > steps_) throw std::out_of_range("site outside [-n, n]^2");
  return mass_[index(x, y)];
}

double Distribution2D::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

Distribution1D Distribution2D::marginal_x() const {
  Distribution1D out(steps_);
  for (int y = -steps_; y <= steps_; ++y) {
    for (int x = -steps_; x <= steps_; ++x) out.at(x) += mass(x, y);
  }
  return out;
}

ValidationReport validate_coin2(const CoinState2& s) {
  ValidationReport r;
  r.add("p1 >= 0", s.p1 >= 0.0, std::min(s.p1, 0.0));
  r.add("pm1 >= 0", s.pm1 >= 0.0, std::min(s.pm1, 0.0));
  const double sum = s.p1 + s.pm1 - 1.0;
  r.add("p1 + pm1 = 1", std::abs(sum) <= tolerance::kProbabilitySum, sum);
  const double det = s.p1 * s.pm1 - std::norm(s.eta);
  r.add("positive semidefinite", det >= -tolerance::kPsd2, det);
  return r;
}

ValidationReport validate_coin4(const CoinState4& s) {
  ValidationReport r;
  const double qmin = *std::min_element(s.q.begin(), s.q.end());
  r.add("q >= 0", qmin >= 0.0, std::min(qmin, 0.0));
  const double sum = std::accumulate(s.q.begin(), s.q.end(), 0.0) - 1.0;
  r.add("sum q = 1", std::abs(sum) <= tolerance::kProbabilitySum, sum);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(s.matrix(), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  r.add("positive semidefinite", lmin >= -tolerance::kPsd, lmin);
  return r;
}

ValidationReport validate_distribution(const Distribution1D& d) {
  ValidationReport r;
  const double sum = d.total() - 1.0;
  r.add("sum mass = 1", std::abs(sum) <= tolerance::kDistributionSum, sum);
  double odd = 0.0;
  for (int x = d.min_site(); x <= d.max_site(); ++x) {
    if (((d.steps() + x) & 1) != 0) odd = std::max(odd, std::abs(d.mass(x)));
  }
  r.add("zero mass on odd-parity sites", odd == 0.0, odd);
  return r;
}

ValidationReport validate_distribution(const Distribution2D& d) {
  ValidationReport r;
  const double sum = d.total() - 1.0;
  r.add("sum mass = 1", std::abs(sum) <= tolerance::kDistributionSum, sum);
  const int n = d.steps();
  double odd = 0.0;
  for (int y = -n; y <= n; ++y) {
    for (int x = -n; x <= n; ++x) {
      if (((x + y + n) & 1) != 0) odd = std::max(odd, std::abs(d.mass(x, y)));
    }
  }
  r.add("zero mass unless x and n+y share parity", odd == 0.0, odd);
  return r;
}

void require_valid(const CoinState2& state) {
  const auto report = validate_coin2(state);
  if (!report.ok()) throw ValidationError("coin state: " + report.failure_message());
}

void require_valid(const CoinState4& state) {
  const auto report = validate_coin4(state);
  if (!report.ok()) throw ValidationError("coin state: " + report.failure_message());
}

CoinState2 conjugate(const CoinState2& state, const CoinOperator& coin) {
  if (coin.dim() != 2) throw ValidationError("coin operator dimension does not match a 2-level coin");
  const Eigen::Matrix2cd u = coin.matrix();
  const Eigen::Matrix2cd out = u * state.matrix() * u.adjoint();
  return {out(0, 0).real(), out(1, 1).real(), out(0, 1)};
}

CoinState4 conjugate(const CoinState4& state, const CoinOperator& coin) {
  if (coin.dim() != 4) throw ValidationError("coin operator dimension does not match a 4-level coin");
  const Eigen::Matrix4cd u = coin.matrix();
  const Eigen::Matrix4cd out = u * state.matrix() * u.adjoint();
  CoinState4 r;
  for (int i = 0; i < 4; ++i) {
    r.q[i] = out(i, i).real();
    for (int j = i + 1; j < 4; ++j) r.coherence(i + 1, j + 1) = out(i, j);
  }
  return r;
}

EffectiveCoherence effective_coherence(const CoinState4& state) {
  require_valid(state);
  const auto re = [&](int i, int j) { return state.coherence(i, j).real(); };
  return {re(1, 2) - re(3, 4), re(1, 3) - re(2, 4), re(1, 4) - re(2, 3)};
}

}  // namespace coinwalk
