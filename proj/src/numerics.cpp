#include "coinwalk/numerics.hpp"

#include <cmath>

#include <boost/math/distributions/binomial.hpp>

namespace coinwalk {

double binomial_term(int n, int k, double p, double q) {
  if (k > n - k) return binomial_term(n, n - k, q, p);
  if (p <= 0.0) return k == 0 ? std::pow(q, n) : 0.0;
  if (q <= 0.0) return k == n ? std::pow(p, n) : 0.0;
  const boost::math::binomial_distribution<double> law(n, p / (p + q));
  return boost::math::pdf(law, k);
}

}  // namespace coinwalk
