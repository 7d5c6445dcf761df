#pragma once

#include "coinwalk/types.hpp"

namespace coinwalk {

// Classical walk: each step goes right with p1 and left with pm1.
struct CrwParams {
  double p1 = 0.5;
  double pm1 = 0.5;
  int n = 0;
};

struct Moments1D {
  double mean = 0.0;
  double variance = 0.0;
};

void require_valid(const CrwParams& params);

// Binomial law C(n, (n+x)/2) p1^((n+x)/2) pm1^((n-x)/2) on even-parity sites.
Distribution1D crw_distribution(const CrwParams& params);

// (n (p1 - pm1), 4 n p1 pm1)
Moments1D crw_moments(const CrwParams& params);

// Binomial walk on [-n, n] with the given right/left step probabilities.
// Shared by the classical and coherence-driven engines.
Distribution1D binomial_walk(int n, double p_right, double p_left);

// Mean and variance by direct summation over the sites.
Moments1D summed_moments(const Distribution1D& d);

}  // namespace coinwalk
