#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "coinwalk/qrw.hpp"
#include "coinwalk/types.hpp"

namespace coinwalk {

inline constexpr int kMaxEnumerationSteps1D = 20;
inline constexpr int kMaxEnumerationSteps2D = 10;

// Exact sum of prod p_{u_l} over all 2^n step sequences, grouped by final
// position. Independent of the closed-form engines.
Distribution1D enumerate_paths_1d(double p_right, double p_left, int n);

// Same over all 4^n sequences in {R, L, U, D}^n.
Distribution2D enumerate_paths_2d(const GroverProbabilities& probs, int n);

// Counter-based generator: output i of stream `key` is a SplitMix64
// finalization of key + i * golden_gamma, so any stream can jump ahead in
// O(1) and distinct chunks get independent keys.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  void discard(std::uint64_t count) { counter_ += count; }
  std::uint64_t counter() const { return counter_; }

  // Key of chunk `chunk` under a user seed.
  static std::uint64_t stream_key(std::uint64_t seed, std::uint64_t chunk);

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

struct CrwModel {
  double p1 = 0.5;
  double pm1 = 0.5;
};

struct Qrw1dModel {
  CoinState2 coin;
  CoinOperator flip = hadamard2();
};

struct Qrw2dModel {
  CoinState4 coin;
};

using WalkModel = std::variant<CrwModel, Qrw1dModel, Qrw2dModel>;

struct SampleOptions {
  std::uint64_t seed = 0;
  int chunk_count = 16;
  int threads = 0;  // 0 = hardware concurrency
};

struct SampleReport {
  std::uint64_t n_samples = 0;
  std::variant<Distribution1D, Distribution2D> empirical{Distribution1D(0)};
  // Walker counts in the same site order as the empirical distribution.
  std::vector<std::uint64_t> counts;
  std::uint64_t seed = 0;
  int chunk_count = 0;
};

// Walks n_samples independent walkers for n steps, drawing every step
// direction i.i.d. from the model's step distribution. Chunk c draws from
// stream CounterRng::stream_key(seed, c), so the output depends only on
// (seed, chunk_count) and not on the number of threads.
SampleReport sample_walk(const WalkModel& model, int n, std::uint64_t n_samples, const SampleOptions& options);

struct Comparison {
  double total_variation = 0.0;
  std::optional<double> chi_square_p;
  double chi_square = 0.0;
  int degrees_of_freedom = 0;
};

// Total variation (1/2) sum |a - b|. With a sample size, also a chi-square
// goodness-of-fit test of `observed` against `expected`; expected counts
// below 5 are pooled into a single tail bin.
Comparison compare_distributions(const Distribution1D& expected, const Distribution1D& observed,
                                 std::optional<std::uint64_t> n_samples = std::nullopt);
Comparison compare_distributions(const Distribution2D& expected, const Distribution2D& observed,
                                 std::optional<std::uint64_t> n_samples = std::nullopt);

}  // namespace coinwalk
