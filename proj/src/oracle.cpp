#include "coinwalk/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

namespace coinwalk {

Distribution1D enumerate_paths_1d(double p_right, double p_left, int n) {
  if (n < 0) throw ValidationError("step count must be non-negative");
  if (n > kMaxEnumerationSteps1D) {
    throw ValidationError(fmt::format("path enumeration limited to n <= {}, got {}", kMaxEnumerationSteps1D, n));
  }
  Distribution1D d(n);
  const std::uint64_t paths = std::uint64_t{1} << n;
  for (std::uint64_t path = 0; path < paths; ++path) {
    double weight = 1.0;
    int x = 0;
    for (int l = 0; l < n; ++l) {
      if ((path >> l) & 1U) {
        weight *= p_right;
        ++x;
      } else {
        weight *= p_left;
        --x;
      }
    }
    d.at(x) += weight;
  }
  return d;
}

Distribution2D enumerate_paths_2d(const GroverProbabilities& probs, int n) {
  if (n < 0) throw ValidationError("step count must be non-negative");
  if (n > kMaxEnumerationSteps2D) {
    throw ValidationError(fmt::format("path enumeration limited to n <= {}, got {}", kMaxEnumerationSteps2D, n));
  }
  const std::array<double, 4> p{probs.rr, probs.ll, probs.uu, probs.dd};
  static constexpr std::array<int, 4> kDx{1, -1, 0, 0};
  static constexpr std::array<int, 4> kDy{0, 0, 1, -1};
  Distribution2D d(n);
  const std::uint64_t paths = std::uint64_t{1} << (2 * n);
  for (std::uint64_t path = 0; path < paths; ++path) {
    double weight = 1.0;
    int x = 0;
    int y = 0;
    for (int l = 0; l < n; ++l) {
      const auto dir = static_cast<std::size_t>((path >> (2 * l)) & 3U);
      weight *= p[dir];
      x += kDx[dir];
      y += kDy[dir];
    }
    d.at(x, y) += weight;
  }
  return d;
}

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::next() { return mix64(key_ + (++counter_) * kGoldenGamma); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t CounterRng::stream_key(std::uint64_t seed, std::uint64_t chunk) {
  return mix64(mix64(seed) ^ mix64(chunk + 0x632be59bd9b4e019ULL));
}

namespace {

// Cumulative thresholds of the per-step direction law plus the geometry of
// the resulting lattice.
struct StepLaw {
  bool two_dimensional = false;
  std::array<double, 3> cumulative{};
};

StepLaw step_law(const WalkModel& model) {
  return std::visit(
      [](const auto& m) -> StepLaw {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, CrwModel>) {
          require_valid(CrwParams{m.p1, m.pm1, 0});
          return {false, {m.p1, 1.0, 1.0}};
        } else if constexpr (std::is_same_v<T, Qrw1dModel>) {
          const auto f = flip_coin2(m.coin, m.flip);
          return {false, {f.rho11, 1.0, 1.0}};
        } else {
          const auto p = grover_probabilities(m.coin);
          require_valid(p);
          return {true, {p.rr, p.rr + p.ll, p.rr + p.ll + p.uu}};
        }
      },
      model);
}

void run_chunk(const StepLaw& law, int n, std::uint64_t walkers, std::uint64_t key, std::span<std::uint64_t> counts) {
  CounterRng rng(key);
  const int width = 2 * n + 1;
  for (std::uint64_t w = 0; w < walkers; ++w) {
    int x = 0;
    int y = 0;
    if (!law.two_dimensional) {
      for (int l = 0; l < n; ++l) x += rng.uniform() < law.cumulative[0] ? 1 : -1;
      ++counts[static_cast<std::size_t>(x + n)];
    } else {
      for (int l = 0; l < n; ++l) {
        const double u = rng.uniform();
        if (u < law.cumulative[0]) {
          ++x;
        } else if (u < law.cumulative[1]) {
          --x;
        } else if (u < law.cumulative[2]) {
          ++y;
        } else {
          --y;
        }
      }
      ++counts[static_cast<std::size_t>(y + n) * width + static_cast<std::size_t>(x + n)];
    }
  }
}

}  // namespace

SampleReport sample_walk(const WalkModel& model, int n, std::uint64_t n_samples, const SampleOptions& options) {
  if (n < 0) throw ValidationError("step count must be non-negative");
  if (n_samples < 1) throw ValidationError("n_samples must be at least 1");
  if (options.chunk_count < 1) throw ValidationError("chunk_count must be at least 1");
  const StepLaw law = step_law(model);

  const auto width = static_cast<std::size_t>(2 * n + 1);
  const std::size_t cells = law.two_dimensional ? width * width : width;
  const auto chunks = static_cast<std::size_t>(options.chunk_count);
  std::vector<std::vector<std::uint64_t>> per_chunk(chunks, std::vector<std::uint64_t>(cells));

  const auto chunk_walkers = [&](std::size_t c) {
    const std::uint64_t begin = n_samples * c / chunks;
    const std::uint64_t end = n_samples * (c + 1) / chunks;
    return end - begin;
  };

  unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads) : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(chunks));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t c = t; c < chunks; c += threads) {
          run_chunk(law, n, chunk_walkers(c), CounterRng::stream_key(options.seed, c), per_chunk[c]);
        }
      });
    }
  }

  SampleReport report;
  report.n_samples = n_samples;
  report.seed = options.seed;
  report.chunk_count = options.chunk_count;
  report.counts.assign(cells, 0);
  for (const auto& chunk : per_chunk) {
    for (std::size_t i = 0; i < cells; ++i) report.counts[i] += chunk[i];
  }
  const auto total = static_cast<double>(n_samples);
  if (!law.two_dimensional) {
    Distribution1D d(n);
    for (int x = -n; x <= n; ++x) d.at(x) = static_cast<double>(report.counts[static_cast<std::size_t>(x + n)]) / total;
    report.empirical = std::move(d);
  } else {
    Distribution2D d(n);
    for (int y = -n; y <= n; ++y) {
      for (int x = -n; x <= n; ++x) {
        const std::size_t i = static_cast<std::size_t>(y + n) * width + static_cast<std::size_t>(x + n);
        d.at(x, y) = static_cast<double>(report.counts[i]) / total;
      }
    }
    report.empirical = std::move(d);
  }
  return report;
}

namespace {

constexpr double kMinExpectedCount = 5.0;

Comparison compare_flat(const std::vector<double>& expected, const std::vector<double>& observed,
                        std::optional<std::uint64_t> n_samples) {
  Comparison out;
  double tv = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) tv += std::abs(expected[i] - observed[i]);
  out.total_variation = 0.5 * tv;
  if (!n_samples) return out;

  const double total = static_cast<double>(*n_samples);
  std::vector<double> bin_expected;
  std::vector<double> bin_observed;
  double tail_expected = 0.0;
  double tail_observed = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double e = expected[i] * total;
    const double o = observed[i] * total;
    if (e >= kMinExpectedCount) {
      bin_expected.push_back(e);
      bin_observed.push_back(o);
    } else {
      tail_expected += e;
      tail_observed += o;
    }
  }
  if (tail_expected >= kMinExpectedCount) {
    bin_expected.push_back(tail_expected);
    bin_observed.push_back(tail_observed);
  } else if ((tail_expected > 0.0 || tail_observed > 0.0) && !bin_expected.empty()) {
    const auto smallest = std::min_element(bin_expected.begin(), bin_expected.end()) - bin_expected.begin();
    bin_expected[smallest] += tail_expected;
    bin_observed[smallest] += tail_observed;
  }
  if (bin_expected.size() < 2) return out;

  double chi2 = 0.0;
  for (std::size_t i = 0; i < bin_expected.size(); ++i) {
    const double d = bin_observed[i] - bin_expected[i];
    chi2 += d * d / bin_expected[i];
  }
  out.chi_square = chi2;
  out.degrees_of_freedom = static_cast<int>(bin_expected.size()) - 1;
  out.chi_square_p = boost::math::gamma_q(0.5 * out.degrees_of_freedom, 0.5 * chi2);
  return out;
}

}  // namespace

Comparison compare_distributions(const Distribution1D& expected, const Distribution1D& observed,
                                 std::optional<std::uint64_t> n_samples) {
  if (expected.steps() != observed.steps()) {
    throw ValidationError(fmt::format("distributions cover different step counts ({} vs {})", expected.steps(),
                                      observed.steps()));
  }
  return compare_flat(expected.values(), observed.values(), n_samples);
}

Comparison compare_distributions(const Distribution2D& expected, const Distribution2D& observed,
                                 std::optional<std::uint64_t> n_samples) {
  if (expected.steps() != observed.steps()) {
    throw ValidationError(fmt::format("distributions cover different step counts ({} vs {})", expected.steps(),
                                      observed.steps()));
  }
  return compare_flat(expected.values(), observed.values(), n_samples);
}

}  // namespace coinwalk
