#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coinwalk {

using Complex = std::complex<double>;

// Thrown when an input violates a domain invariant. The message names the
// violated invariant and the measured residual.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative numerical method fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

namespace tolerance {
inline constexpr double kProbabilitySum = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kPsd2 = 1e-12;
inline constexpr double kUnitary = 1e-12;
inline constexpr double kDistributionSum = 1e-10;
}  // namespace tolerance

struct Check {
  std::string name;
  bool passed = true;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const;
  // First failed check formatted as "<name> violated (residual <r>)", or
  // empty when everything passed.
  std::string failure_message() const;
  void add(std::string name, bool passed, double residual);
};

// 2x2 coin density matrix [[p1, eta], [conj(eta), pm1]].
struct CoinState2 {
  double p1 = 0.5;
  double pm1 = 0.5;
  Complex eta{0.0, 0.0};

  Eigen::Matrix2cd matrix() const;
};

// 4x4 coin density matrix over the R, L, U, D basis. Only the upper
// triangle of coherences is stored, so the assembled matrix is Hermitian by
// construction.
struct CoinState4 {
  std::array<double, 4> q{0.25, 0.25, 0.25, 0.25};
  // Ordered 12, 13, 14, 23, 24, 34 (one-based indices as printed).
  std::array<Complex, 6> eta{};

  // One-based i < j.
  Complex& coherence(int i, int j);
  Complex coherence(int i, int j) const;

  Eigen::Matrix4cd matrix() const;
};

class CoinOperator {
 public:
  // Throws ValidationError unless the matrix is square of dimension 2 or 4
  // and unitary within tolerance::kUnitary.
  explicit CoinOperator(Eigen::MatrixXcd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }

  // max |U^dagger U - I|
  double unitarity_residual() const;

 private:
  Eigen::MatrixXcd entries_;
};

CoinOperator hadamard2();
CoinOperator grover4();

double unitarity_residual(const Eigen::MatrixXcd& m);

// Probability mass on sites -n..n after n steps.
class Distribution1D {
 public:
  explicit Distribution1D(int steps);
  Distribution1D(int steps, std::vector<double> mass);

  int steps() const { return steps_; }
  int min_site() const { return -steps_; }
  int max_site() const { return steps_; }

  double mass(int x) const;
  double& at(int x);
  const std::vector<double>& values() const { return mass_; }

  double total() const;

 private:
  int steps_;
  std::vector<double> mass_;
};

// Probability mass on the square [-n, n]^2 after n steps.
class Distribution2D {
 public:
  explicit Distribution2D(int steps);

  int steps() const { return steps_; }
  int width() const { return 2 * steps_ + 1; }

  double mass(int x, int y) const;
  double& at(int x, int y);
  const std::vector<double>& values() const { return mass_; }

  double total() const;
  // Sum over y at fixed x.
  Distribution1D marginal_x() const;

 private:
  std::size_t index(int x, int y) const;

  int steps_;
  std::vector<double> mass_;
};

struct EffectiveCoherence {
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double zeta3 = 0.0;
};

ValidationReport validate_coin2(const CoinState2& state);
ValidationReport validate_coin4(const CoinState4& state);
ValidationReport validate_distribution(const Distribution1D& d);
ValidationReport validate_distribution(const Distribution2D& d);

// Throw ValidationError carrying the first failed check.
void require_valid(const CoinState2& state);
void require_valid(const CoinState4& state);

// U rho U^dagger, re-expressed in the same storage.
CoinState2 conjugate(const CoinState2& state, const CoinOperator& coin);
CoinState4 conjugate(const CoinState4& state, const CoinOperator& coin);

// zeta1 = Re eta12 - Re eta34, zeta2 = Re eta13 - Re eta24,
// zeta3 = Re eta14 - Re eta23. Throws ValidationError on invalid states.
EffectiveCoherence effective_coherence(const CoinState4& state);

}  // namespace coinwalk
