#pragma once

#include <cmath>

namespace coinwalk {

/// Step probabilities inside [-1e-12, 0) are numerical noise at a feasibility
/// boundary and are clamped to zero.
inline double clamp_probability(double p) { return (p < 0.0 && p >= -1e-12) ? 0.0 : p; }

/// C(n, k) p^k q^(n-k) with 0^0 = 1 and (p, q) rescaled to sum to one;
/// accurate to a few ulp up to n ~ 1e6.
/// Bit-identical under (k, p, q) -> (n - k, q, p).
double binomial_term(int n, int k, double p, double q);

/// Compensated (Neumaier) summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace coinwalk
