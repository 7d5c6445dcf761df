#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coinwalk/io.hpp"
#include "coinwalk/qrw.hpp"
#include "support.hpp"

using namespace coinwalk;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("coin json examples") {
  const auto a = parse_coin_json(R"({"dim":2,"p":[0.5,0.5],"eta":[0.1,0]})");
  REQUIRE(std::holds_alternative<CoinState2>(a));
  CHECK(std::get<CoinState2>(a).eta == Complex(0.1, 0.0));

  const auto b = parse_coin_json(R"({"dim":4,"q":[0.25,0.25,0.25,0.25],"eta":{}})");
  REQUIRE(std::holds_alternative<CoinState4>(b));
  for (const auto& e : std::get<CoinState4>(b).eta) CHECK(e == Complex(0.0, 0.0));

  try {
    parse_coin_json(R"({"dim":2,"p":[0.5,0.5],"eta":[0.6,0]})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("violated") != std::string::npos);
    CHECK(msg.find("residual") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_coin_json("{not json"), ValidationError);
  CHECK_THROWS_AS(parse_coin_json(R"({"dim":3})"), ValidationError);
  CHECK_THROWS_AS(parse_coin_json(R"({"dim":4,"q":[0.25,0.25,0.25,0.25],"eta":{"15":[0]}})"), ValidationError);
  CHECK_THROWS_AS(load_coin_json("/nonexistent/coin.json"), ValidationError);
}

TEST_CASE("coin json round trip is exact") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s2 = testing::random_coin2(rng);
    const auto back2 = std::get<CoinState2>(parse_coin_json(coin_to_json(s2)));
    CHECK(back2.p1 == s2.p1);
    CHECK(back2.pm1 == s2.pm1);
    CHECK(back2.eta == s2.eta);

    const auto s4 = testing::random_coin4(rng);
    const auto back4 = std::get<CoinState4>(parse_coin_json(coin_to_json(s4)));
    CHECK(back4.q == s4.q);
    CHECK(back4.eta == s4.eta);
  }
}

TEST_CASE("distribution csv round trip") {
  const auto d = qrw1d_distribution({0.5, 0.5, {0.1, 0.0}}, hadamard2(), 100);
  const auto csv = distribution_csv(d);
  CHECK(first_line(csv) == "x,p");
  const auto back = parse_distribution_csv_1d(csv, 100);
  for (int x = -100; x <= 100; ++x) CHECK(back.mass(x) == d.mass(x));
  CHECK(std::abs(back.total() - 1.0) < 1e-10);

  const auto p = qrw2d_distribution(figure4_coin('h'), 20);
  const auto csv2 = distribution_csv(p);
  CHECK(first_line(csv2) == "x,y,p");
  const auto back2 = parse_distribution_csv_2d(csv2, 20);
  CHECK(back2.values() == p.values());

  CHECK_THROWS_AS(parse_distribution_csv_1d("x,p\n5,1\n", 2), ValidationError);
  CHECK_THROWS_AS(parse_distribution_csv_1d("y,q\n0,1\n", 2), ValidationError);
}

TEST_CASE("json layouts") {
  const auto j = distribution_json(crw_distribution({0.5, 0.5, 2}));
  CHECK(j.find("\"columns\":[\"x\",\"p\"]") != std::string::npos);
  CovarianceSeries s;
  s.entries.push_back({1, 0.0, Method::direct});
  CHECK(covariance_json(s).find("null") != std::string::npos);
  CHECK(first_line(covariance_csv(s)) == "n,cov_direct,cov_integral");
  CHECK(covariance_csv(s).find("nan") != std::string::npos);
}

TEST_CASE("atomic write replaces the destination and leaves no temporary") {
  const fs::path dir = fs::temp_directory_path() / "coinwalk_io_test" / "nested";
  fs::remove_all(dir.parent_path());
  const fs::path target = dir / "out.csv";
  write_atomic(target, "first\n");
  write_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().filename() == "out.csv");
  fs::remove_all(dir.parent_path());
}

TEST_CASE("figure coins") {
  for (char panel = 'a'; panel <= 'h'; ++panel) {
    const auto s = figure4_coin(panel);
    CHECK(validate_coin4(s).ok());
    for (double q : s.q) CHECK(q == 0.25);
  }
  const auto zc = effective_coherence(figure4_coin('c'));
  CHECK(zc.zeta1 == doctest::Approx(-0.5));
  const auto zh = effective_coherence(figure4_coin('h'));
  CHECK(zh.zeta1 == doctest::Approx(-0.2));
  CHECK(zh.zeta3 == doctest::Approx(-0.2));
  CHECK_THROWS_AS(figure4_coin('z'), ValidationError);
}

TEST_CASE("figure data") {
  CHECK(figure_ids().size() == 12);
  CHECK_THROWS_AS(figure_data("fig9"), ValidationError);

  std::istringstream a(figure_data("fig2a"));
  std::string line;
  std::getline(a, line);
  CHECK(line == "x,p_crw,p_qrw,p_qw");
  int rows = 0;
  while (std::getline(a, line)) {
    double x, crw, qrw, qw;
    char c;
    std::istringstream row(line);
    row >> x >> c >> crw >> c >> qrw >> c >> qw;
    CHECK(std::abs(crw - qrw) <= 1e-12);
    ++rows;
  }
  CHECK(rows == 101);

  std::istringstream b(figure_data("fig4b"));
  std::getline(b, line);
  CHECK(line == "x,y,p");
  double mx = 0.0, my = 0.0;
  while (std::getline(b, line)) {
    double x, y, p;
    char c;
    std::istringstream row(line);
    row >> x >> c >> y >> c >> p;
    mx += x * p;
    my += y * p;
  }
  CHECK(std::abs(mx) < 1e-12);
  CHECK(std::abs(my) < 1e-12);

  std::istringstream ll(figure_data("fig_loglog"));
  std::getline(ll, line);
  CHECK(line == "n,abs_diff,reference");
  while (std::getline(ll, line)) {
    double n, diff, ref;
    char c;
    std::istringstream row(line);
    row >> n >> c >> diff >> c >> ref;
    if (n >= 100) CHECK(diff <= 0.5 / std::sqrt(n));
  }

  std::istringstream cov(figure_data("fig_cov"));
  std::getline(cov, line);
  CHECK(line == "n,cov_direct,cov_integral,cov_independent,limit");
}
