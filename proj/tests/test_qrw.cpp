#include <doctest.h>

#include <cmath>

#include "coinwalk/oracle.hpp"
#include "coinwalk/qrw.hpp"
#include "support.hpp"

using namespace coinwalk;

namespace {

// U rho U^dagger by explicit index sums.
Eigen::MatrixXcd conjugate_by_hand(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& rho) {
  const auto d = u.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) out(i, j) += u(i, k) * rho(k, l) * std::conj(u(j, l));
      }
    }
  }
  return out;
}

CoinState4 coin_with_zeta(double z1, double z2, double z3) {
  CoinState4 s;
  s.coherence(1, 2) = z1 / 2;
  s.coherence(3, 4) = -z1 / 2;
  s.coherence(1, 3) = z2 / 2;
  s.coherence(2, 4) = -z2 / 2;
  s.coherence(1, 4) = z3 / 2;
  s.coherence(2, 3) = -z3 / 2;
  return s;
}

}  // namespace

TEST_CASE("flip examples") {
  auto f = flip_coin2({0.5, 0.5, {0.1, 0.0}}, hadamard2());
  const Eigen::MatrixXcd oracle = conjugate_by_hand(hadamard2().matrix(), CoinState2{0.5, 0.5, {0.1, 0.0}}.matrix());
  CHECK(f.rho11 == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(f.rho_m1m1 == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(std::abs(f.rho1m1) < 1e-15);
  CHECK(std::abs(f.rho11 - oracle(0, 0).real()) < 1e-15);

  f = flip_coin2({0.5, 0.5, {0.0, 0.0}}, hadamard2());
  CHECK(f.rho11 == doctest::Approx(0.5));
  CHECK(f.rho_m1m1 == doctest::Approx(0.5));

  f = flip_coin2({0.5, 0.5, {0.0, 0.1}}, hadamard2());
  CHECK(std::abs(f.rho11 - 0.5) < 1e-15);

  CHECK_THROWS_AS(flip_coin2(CoinState2{}, grover4()), ValidationError);
}

TEST_CASE("flip matches the matrix product for general SU(2) coins") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_coin2(rng);
    const Eigen::MatrixXcd u = testing::random_unitary(rng, 2);
    const auto f = flip_coin2(s, CoinOperator(u));
    const Eigen::MatrixXcd oracle = conjugate_by_hand(u, s.matrix());
    CHECK(std::abs(f.rho11 - oracle(0, 0).real()) < 1e-14);
    CHECK(std::abs(f.rho_m1m1 - oracle(1, 1).real()) < 1e-14);
    CHECK(std::abs(f.rho1m1 - oracle(0, 1)) < 1e-14);
    CHECK(std::abs(f.rho_m11() - oracle(1, 0)) < 1e-14);
    CHECK(std::abs(f.rho11 + f.rho_m1m1 - 1.0) < 1e-12);
  }
}

TEST_CASE("1d distribution examples") {
  const auto d = qrw1d_distribution({0.5, 0.5, {0.1, 0.0}}, hadamard2(), 2);
  CHECK(d.mass(2) == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(d.mass(0) == doctest::Approx(0.48).epsilon(1e-14));
  CHECK(d.mass(-2) == doctest::Approx(0.16).epsilon(1e-14));

  for (int n : {1, 4, 37, 200}) {
    const auto q = qrw1d_distribution(CoinState2{}, hadamard2(), n);
    const auto c = crw_distribution({0.5, 0.5, n});
    for (int x = -n; x <= n; ++x) CHECK(std::abs(q.mass(x) - c.mass(x)) <= 1e-12);
  }

  const auto pure = qrw1d_distribution({0.5, 0.5, {0.5, 0.0}}, hadamard2(), 5);
  CHECK(pure.mass(5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pure.mass(3) < 1e-12);
}

TEST_CASE("only the real part of eta matters") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = testing::random_coin2(rng);
    auto t = s;
    t.eta = std::conj(s.eta);
    const int n = 1 + trial * 5;
    const auto a = qrw1d_distribution(s, hadamard2(), n);
    const auto b = qrw1d_distribution(t, hadamard2(), n);
    for (int x = -n; x <= n; ++x) CHECK(a.mass(x) == b.mass(x));
  }
}

TEST_CASE("1d moments") {
  auto m = qrw1d_moments({0.5, 0.5, {0.1, 0.0}}, 100);
  CHECK(m.mean == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(m.variance == doctest::Approx(96.0).epsilon(1e-14));
  m = qrw1d_moments(CoinState2{}, 100);
  CHECK(m.mean == 0.0);
  CHECK(m.variance == 100.0);
  m = qrw1d_moments({0.5, 0.5, {0.5, 0.0}}, 40);
  CHECK(m.mean == 40.0);
  CHECK(m.variance == 0.0);

  std::mt19937_64 rng(9);
  for (int n : {1, 10, 100, 999, 2000}) {
    auto s = testing::random_coin2(rng);
    s.p1 = s.pm1 = 0.5;
    s.eta = {0.45 * std::cos(n * 1.0), 0.2};
    if (std::norm(s.eta) > 0.25) s.eta *= 0.9;
    const auto closed = qrw1d_moments(s, n);
    const auto summed = summed_moments(qrw1d_distribution(s, hadamard2(), n));
    CHECK(std::abs(summed.mean - closed.mean) <= 1e-9 * std::max(1.0, std::abs(closed.mean)));
    CHECK(std::abs(summed.variance - closed.variance) <= 1e-9 * closed.variance);
  }
}

TEST_CASE("grover probability examples") {
  auto p = grover_probabilities(CoinState4{});
  CHECK(p.rr == doctest::Approx(0.25));
  CHECK(p.dd == doctest::Approx(0.25));

  p = grover_probabilities(EffectiveCoherence{-0.5, 0.0, 0.0});
  CHECK(p.rr == doctest::Approx(0.5));
  CHECK(p.ll == doctest::Approx(0.5));
  CHECK(p.uu == 0.0);
  CHECK(p.dd == 0.0);

  CoinState4 h;
  h.coherence(1, 2) = -0.1;
  h.coherence(3, 4) = 0.1;
  h.coherence(2, 3) = 0.2;
  REQUIRE(validate_coin4(h).ok());
  const auto z = effective_coherence(h);
  CHECK(z.zeta1 == doctest::Approx(-0.2));
  CHECK(z.zeta2 == doctest::Approx(0.0));
  CHECK(z.zeta3 == doctest::Approx(-0.2));
  p = grover_probabilities(h);
  const Eigen::MatrixXcd oracle = conjugate_by_hand(grover4().matrix(), h.matrix());
  CHECK(p.rr == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(p.ll == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(p.uu == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(p.dd == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(p.rr - oracle(0, 0).real()) < 1e-15);
  CHECK(std::abs(p.uu - oracle(2, 2).real()) < 1e-15);
}

TEST_CASE("grover probabilities equal the conjugated diagonal") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_coin4(rng, 1 + trial % 4);
    const auto p = grover_probabilities(s);
    const Eigen::MatrixXcd oracle = conjugate_by_hand(grover4().matrix(), s.matrix());
    CHECK(std::abs(p.rr - oracle(0, 0).real()) < 1e-14);
    CHECK(std::abs(p.ll - oracle(1, 1).real()) < 1e-14);
    CHECK(std::abs(p.uu - oracle(2, 2).real()) < 1e-14);
    CHECK(std::abs(p.dd - oracle(3, 3).real()) < 1e-14);
    CHECK(std::abs(p.rr + p.ll + p.uu + p.dd - 1.0) < 1e-12);
    CHECK(feasibility_region_check(effective_coherence(s)));
  }
}

TEST_CASE("feasibility region") {
  CHECK(feasibility_region_check({0, 0, 0}));
  CHECK(feasibility_region_check({-0.5, 0, 0}));
  CHECK_FALSE(feasibility_region_check({0.5, 0.5, 0.5}));
  CHECK(feasibility_region_check({-0.5 - 1e-13, 0, 0}));
  CHECK_FALSE(feasibility_region_check({-0.5 - 1e-9, 0, 0}));
  CHECK_THROWS_AS(qrw2d_distribution(grover_probabilities(EffectiveCoherence{0.5, 0.5, 0.5}), 2), ValidationError);
}

TEST_CASE("2d distribution examples") {
  const auto one = qrw2d_distribution(CoinState4{}, 1);
  CHECK(one.mass(1, 0) == doctest::Approx(0.25));
  CHECK(one.mass(-1, 0) == doctest::Approx(0.25));
  CHECK(one.mass(0, 1) == doctest::Approx(0.25));
  CHECK(one.mass(0, -1) == doctest::Approx(0.25));
  CHECK(one.mass(0, 0) == 0.0);

  const auto flat = qrw2d_distribution(GroverProbabilities{0.5, 0.5, 0.0, 0.0}, 2);
  CHECK(flat.mass(-2, 0) == doctest::Approx(0.25));
  CHECK(flat.mass(0, 0) == doctest::Approx(0.5));
  CHECK(flat.mass(2, 0) == doctest::Approx(0.25));
  CHECK(std::abs(flat.total() - 1.0) < 1e-15);

  const GroverProbabilities h{0.45, 0.25, 0.05, 0.25};
  const auto d = qrw2d_distribution(h, 3);
  const auto paths = enumerate_paths_2d(h, 3);
  for (std::size_t i = 0; i < d.values().size(); ++i) CHECK(std::abs(d.values()[i] - paths.values()[i]) <= 1e-15);
}

TEST_CASE("x marginal with no vertical motion is binomial") {
  for (double rr : {0.5, 0.3, 0.9, 1.0}) {
    for (int n : {1, 8, 40, 120}) {
      const auto d = qrw2d_distribution(GroverProbabilities{rr, 1.0 - rr, 0.0, 0.0}, n);
      const auto marginal = d.marginal_x();
      const auto binom = binomial_walk(n, rr, 1.0 - rr);
      for (int x = -n; x <= n; ++x) CHECK(std::abs(marginal.mass(x) - binom.mass(x)) <= 1e-12);
    }
  }
}

TEST_CASE("2d moments") {
  auto m = qrw2d_moments(EffectiveCoherence{-0.2, 0.0, -0.2}, 40);
  CHECK(m.mean_x == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(m.mean_y == doctest::Approx(-8.0).epsilon(1e-14));
  m = qrw2d_moments(EffectiveCoherence{}, 40);
  CHECK(m.mean_x == 0.0);
  CHECK(m.mean_y == 0.0);
  CHECK(m.var_total == 40.0);
  m = qrw2d_moments(EffectiveCoherence{-0.5, 0.0, 0.0}, 40);
  CHECK(m.var_x == doctest::Approx(40.0));
  CHECK(m.var_y == doctest::Approx(0.0));
  CHECK(m.var_x == doctest::Approx(crw_moments({0.5, 0.5, 40}).variance));
}

TEST_CASE("2d moments agree with summation and var_total = var_x + var_y") {
  std::mt19937_64 rng(17);
  for (int n : {1, 5, 40, 150, 400}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto s = testing::random_coin4(rng, 1 + trial);
      const auto closed = qrw2d_moments(s, n);
      const auto summed = summed_moments(qrw2d_distribution(s, n));
      CHECK(closed.var_total == doctest::Approx(closed.var_x + closed.var_y).epsilon(1e-14));
      CHECK(summed.var_total == doctest::Approx(summed.var_x + summed.var_y).epsilon(1e-14));
      const double scale = std::max(1.0, static_cast<double>(n));
      CHECK(std::abs(summed.mean_x - closed.mean_x) <= 1e-9 * scale);
      CHECK(std::abs(summed.mean_y - closed.mean_y) <= 1e-9 * scale);
      CHECK(std::abs(summed.var_x - closed.var_x) <= 1e-9 * scale);
      CHECK(std::abs(summed.var_y - closed.var_y) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("coin with a given effective coherence") {
  const auto s = coin_with_zeta(0.1, -0.2, 0.05);
  REQUIRE(validate_coin4(s).ok());
  const auto z = effective_coherence(s);
  CHECK(z.zeta1 == doctest::Approx(0.1));
  CHECK(z.zeta2 == doctest::Approx(-0.2));
  CHECK(z.zeta3 == doctest::Approx(0.05));
  CHECK(qrw2d_moments(s, 10).mean_x == doctest::Approx(qrw2d_moments(z, 10).mean_x));
}

TEST_CASE("1d and 2d engines match path enumeration") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s2 = testing::random_coin2(rng);
    const auto f = flip_coin2(s2, hadamard2());
    for (int n = 0; n <= 10; ++n) {
      const auto a = qrw1d_distribution(s2, hadamard2(), n);
      const auto b = enumerate_paths_1d(f.rho11, f.rho_m1m1, n);
      for (int x = -n; x <= n; ++x) CHECK(std::abs(a.mass(x) - b.mass(x)) <= 1e-13);
    }
    const auto s4 = testing::random_coin4(rng, 1 + trial % 4);
    const auto p = grover_probabilities(s4);
    for (int n = 0; n <= 6; ++n) {
      const auto a = qrw2d_distribution(s4, n);
      const auto b = enumerate_paths_2d(p, n);
      for (std::size_t i = 0; i < a.values().size(); ++i) CHECK(std::abs(a.values()[i] - b.values()[i]) <= 1e-13);
    }
  }
}
