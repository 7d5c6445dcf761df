#pragma once

#include "coinwalk/crw.hpp"
#include "coinwalk/types.hpp"

namespace coinwalk {

// Diagonal and upper off-diagonal of C rho C^dagger for a 2-level coin.
struct FlippedCoin2 {
  double rho11 = 0.5;
  double rho_m1m1 = 0.5;
  Complex rho1m1{0.0, 0.0};

  Complex rho_m11() const { return std::conj(rho1m1); }
};

// Direction probabilities of a Grover-flipped 4-level coin.
struct GroverProbabilities {
  double rr = 0.25;
  double ll = 0.25;
  double uu = 0.25;
  double dd = 0.25;
};

struct Moments2D {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double var_total = 0.0;
};

FlippedCoin2 flip_coin2(const CoinState2& state, const CoinOperator& coin);

Distribution1D qrw1d_distribution(const CoinState2& state, const CoinOperator& coin, int n);

// Hadamard coin: mean 2 n Re(eta), variance n (1 - (2 Re eta)^2).
Moments1D qrw1d_moments(const CoinState2& state, int n);

GroverProbabilities grover_probabilities(const CoinState4& state);
GroverProbabilities grover_probabilities(const EffectiveCoherence& zeta);

// Inside the tetrahedron where every Grover direction probability is >= 0.
bool feasibility_region_check(const EffectiveCoherence& zeta);

void require_valid(const GroverProbabilities& probs);

Distribution2D qrw2d_distribution(const CoinState4& state, int n);
Distribution2D qrw2d_distribution(const GroverProbabilities& probs, int n);

Moments2D qrw2d_moments(const CoinState4& state, int n);
Moments2D qrw2d_moments(const EffectiveCoherence& zeta, int n);

Moments2D summed_moments(const Distribution2D& d);

}  // namespace coinwalk
