#include "coinwalk/qrw.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "coinwalk/numerics.hpp"

namespace coinwalk {

namespace {

constexpr double kFeasibilityTolerance = 1e-12;

// Row k of the lower-triangular table holds C(k, j) p^j q^(k-j), j = 0..k.
class BinomialTable {
 public:
  BinomialTable(int n, double p, double q) : offsets_(static_cast<std::size_t>(n) + 2) {
    for (int k = 0; k <= n; ++k) offsets_[k + 1] = offsets_[k] + static_cast<std::size_t>(k) + 1;
    values_.resize(offsets_.back());
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j <= k; ++j) values_[offsets_[k] + j] = binomial_term(k, j, p, q);
    }
  }

  double operator()(int k, int j) const { return values_[offsets_[k] + static_cast<std::size_t>(j)]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> values_;
};

}  // namespace

FlippedCoin2 flip_coin2(const CoinState2& state, const CoinOperator& coin) {
  require_valid(state);
  if (coin.dim() != 2) {
    throw ValidationError(fmt::format("coin operator dimension {} does not match a 2-level coin", coin.dim()));
  }
  const CoinState2 flipped = conjugate(state, coin);
  return {flipped.p1, flipped.pm1, flipped.eta};
}

Distribution1D qrw1d_distribution(const CoinState2& state, const CoinOperator& coin, int n) {
  const FlippedCoin2 f = flip_coin2(state, coin);
  return binomial_walk(n, f.rho11, f.rho_m1m1);
}

Moments1D qrw1d_moments(const CoinState2& state, int n) {
  require_valid(state);
  if (n < 0) throw ValidationError("step count must be non-negative");
  const double bias = 2.0 * state.eta.real();
  return {n * bias, n * (1.0 - bias * bias)};
}

GroverProbabilities grover_probabilities(const EffectiveCoherence& z) {
  // (1/4) [[1,-2,-2,-2],[1,-2,2,2],[1,2,-2,2],[1,2,2,-2]] (1, z1, z2, z3)^T
  return {
      0.25 * (1.0 - 2.0 * z.zeta1 - 2.0 * z.zeta2 - 2.0 * z.zeta3),
      0.25 * (1.0 - 2.0 * z.zeta1 + 2.0 * z.zeta2 + 2.0 * z.zeta3),
      0.25 * (1.0 + 2.0 * z.zeta1 - 2.0 * z.zeta2 + 2.0 * z.zeta3),
      0.25 * (1.0 + 2.0 * z.zeta1 + 2.0 * z.zeta2 - 2.0 * z.zeta3),
  };
}

GroverProbabilities grover_probabilities(const CoinState4& state) {
  return grover_probabilities(effective_coherence(state));
}

bool feasibility_region_check(const EffectiveCoherence& zeta) {
  const auto p = grover_probabilities(zeta);
  return p.rr >= -kFeasibilityTolerance && p.ll >= -kFeasibilityTolerance && p.uu >= -kFeasibilityTolerance &&
         p.dd >= -kFeasibilityTolerance;
}

void require_valid(const GroverProbabilities& p) {
  const std::array<double, 4> v{p.rr, p.ll, p.uu, p.dd};
  static constexpr const char* kNames[] = {"rho_RR", "rho_LL", "rho_UU", "rho_DD"};
  for (int i = 0; i < 4; ++i) {
    if (!(v[i] >= -kFeasibilityTolerance && v[i] <= 1.0 + kFeasibilityTolerance)) {
      throw ValidationError(fmt::format("{} in [0, 1] violated (value {:.17g})", kNames[i], v[i]));
    }
  }
  const double r = v[0] + v[1] + v[2] + v[3] - 1.0;
  if (!(std::abs(r) <= tolerance::kProbabilitySum)) {
    throw ValidationError(fmt::format("direction probabilities sum to 1 violated (residual {:.17g})", r));
  }
}

Distribution2D qrw2d_distribution(const CoinState4& state, int n) {
  const auto zeta = effective_coherence(state);
  if (!feasibility_region_check(zeta)) {
    const auto p = grover_probabilities(zeta);
    throw ValidationError(fmt::format("Grover direction probabilities must be non-negative, got ({}, {}, {}, {})",
                                      p.rr, p.ll, p.uu, p.dd));
  }
  return qrw2d_distribution(grover_probabilities(zeta), n);
}

Distribution2D qrw2d_distribution(const GroverProbabilities& probs, int n) {
  require_valid(probs);
  if (n < 0) throw ValidationError("step count must be non-negative");
  const double rr = clamp_probability(probs.rr);
  const double ll = clamp_probability(probs.ll);
  const double uu = clamp_probability(probs.uu);
  const double dd = clamp_probability(probs.dd);

  // The quadrinomial term C(n,l) C(l,j) C(n-l,m) RR^j LL^(l-j) UU^m DD^(n-l-m)
  // factors into three binomial probabilities: l horizontal steps out of n,
  // j of them to the right, m of the vertical ones upward. Each factor is
  // bounded by one, so no intermediate overflows at large n.
  const double horizontal = rr + ll;
  const double vertical = uu + dd;
  const double right = horizontal > 0.0 ? rr / horizontal : 0.5;
  const double up = vertical > 0.0 ? uu / vertical : 0.5;
  const BinomialTable axis(n, horizontal, vertical);
  const BinomialTable along_x(n, right, 1.0 - right);
  const BinomialTable along_y(n, up, 1.0 - up);

  Distribution2D d(n);
  for (int y = -n; y <= n; ++y) {
    for (int x = -n; x <= n; ++x) {
      if (((x + y + n) & 1) != 0) continue;
      const int l_min = std::abs(x);
      const int l_max = n - std::abs(y);
      if (l_min > l_max) continue;
      CompensatedSum acc;
      // l + x must be even.
      for (int l = l_min; l <= l_max; l += 2) {
        const int j = (l + x) / 2;
        const int m = (n - l + y) / 2;
        acc.add(axis(n, l) * along_x(l, j) * along_y(n - l, m));
      }
      d.at(x, y) = acc.value();
    }
  }
  return d;
}

Moments2D qrw2d_moments(const EffectiveCoherence& z, int n) {
  if (n < 0) throw ValidationError("step count must be non-negative");
  const double s = z.zeta2 + z.zeta3;
  const double t = z.zeta2 - z.zeta3;
  return {
      n * (-z.zeta2 - z.zeta3),
      n * (-z.zeta2 + z.zeta3),
      n * (0.5 - z.zeta1 - s * s),
      n * (0.5 + z.zeta1 - t * t),
      n * (1.0 - 2.0 * z.zeta2 * z.zeta2 - 2.0 * z.zeta3 * z.zeta3),
  };
}

Moments2D qrw2d_moments(const CoinState4& state, int n) {
  const auto zeta = effective_coherence(state);
  if (!feasibility_region_check(zeta)) throw ValidationError("effective coherence outside the feasible tetrahedron");
  return qrw2d_moments(zeta, n);
}

Moments2D summed_moments(const Distribution2D& d) {
  const int n = d.steps();
  CompensatedSum sx, sy;
  for (int y = -n; y <= n; ++y) {
    for (int x = -n; x <= n; ++x) {
      const double p = d.mass(x, y);
      sx.add(x * p);
      sy.add(y * p);
    }
  }
  const double mx = sx.value();
  const double my = sy.value();
  CompensatedSum vx, vy;
  for (int y = -n; y <= n; ++y) {
    for (int x = -n; x <= n; ++x) {
      const double p = d.mass(x, y);
      vx.add((x - mx) * (x - mx) * p);
      vy.add((y - my) * (y - my) * p);
    }
  }
  return {mx, my, vx.value(), vy.value(), vx.value() + vy.value()};
}

}  // namespace coinwalk
