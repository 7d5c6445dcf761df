#include "coinwalk/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <json.hpp>

#include "coinwalk/crw.hpp"
#include "coinwalk/qrw.hpp"

namespace coinwalk {

namespace {

using nlohmann::json;

constexpr const char* kPairKeys[6] = {"12", "13", "14", "23", "24", "34"};

double number_at(const json& arr, std::size_t i, std::string_view field) {
  if (!arr.is_array() || i >= arr.size() || !arr[i].is_number()) {
    throw ValidationError(fmt::format("parse failure: field \"{}\" must be an array of numbers", field));
  }
  return arr[i].get<double>();
}

Complex complex_from(const json& arr, std::string_view field) {
  if (!arr.is_array() || arr.empty() || arr.size() > 2) {
    throw ValidationError(fmt::format("parse failure: field \"{}\" must be [re, im]", field));
  }
  const double re = number_at(arr, 0, field);
  const double im = arr.size() == 2 ? number_at(arr, 1, field) : 0.0;
  return {re, im};
}

std::string complex_json(Complex c) { return fmt::format("[{},{}]", format_real(c.real()), format_real(c.imag())); }

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<double> parse_row(std::string_view line, std::size_t expected) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(',', start);
    if (end == std::string_view::npos) end = line.size();
    const std::string cell(line.substr(start, end - start));
    char* stop = nullptr;
    const double v = std::strtod(cell.c_str(), &stop);
    if (cell.empty() || stop != cell.c_str() + cell.size()) {
      throw ValidationError(fmt::format("parse failure: bad CSV cell \"{}\"", cell));
    }
    out.push_back(v);
    start = end + 1;
  }
  if (out.size() != expected) throw ValidationError(fmt::format("parse failure: expected {} CSV columns", expected));
  return out;
}

int as_site(double v) {
  if (v != std::round(v)) throw ValidationError("parse failure: site coordinate is not an integer");
  return static_cast<int>(v);
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v); }

AnyCoinState parse_coin_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("parse failure: {}", e.what()));
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ValidationError("parse failure: coin state needs an integer \"dim\"");
  }
  const int dim = doc["dim"].get<int>();
  if (dim == 2) {
    if (!doc.contains("p") || doc["p"].size() != 2) throw ValidationError("parse failure: \"p\" must hold 2 numbers");
    CoinState2 s{number_at(doc["p"], 0, "p"), number_at(doc["p"], 1, "p"), {0.0, 0.0}};
    if (doc.contains("eta")) s.eta = complex_from(doc["eta"], "eta");
    require_valid(s);
    return s;
  }
  if (dim == 4) {
    if (!doc.contains("q") || doc["q"].size() != 4) throw ValidationError("parse failure: \"q\" must hold 4 numbers");
    CoinState4 s;
    for (std::size_t i = 0; i < 4; ++i) s.q[i] = number_at(doc["q"], i, "q");
    if (doc.contains("eta")) {
      const json& eta = doc["eta"];
      if (!eta.is_object()) throw ValidationError("parse failure: \"eta\" must be an object keyed \"12\"..\"34\"");
      for (const auto& [key, value] : eta.items()) {
        const auto* it = std::find(std::begin(kPairKeys), std::end(kPairKeys), key);
        if (it == std::end(kPairKeys)) {
          throw ValidationError(fmt::format("parse failure: unknown coherence key \"{}\"", key));
        }
        s.eta[static_cast<std::size_t>(it - std::begin(kPairKeys))] = complex_from(value, "eta." + key);
      }
    }
    require_valid(s);
    return s;
  }
  throw ValidationError(fmt::format("parse failure: \"dim\" must be 2 or 4, got {}", dim));
}

AnyCoinState load_coin_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open coin file {}", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_coin_json(buf.str());
}

std::string coin_to_json(const CoinState2& s) {
  return fmt::format("{{\"dim\":2,\"p\":[{},{}],\"eta\":{}}}\n", format_real(s.p1), format_real(s.pm1),
                     complex_json(s.eta));
}

std::string coin_to_json(const CoinState4& s) {
  std::string eta;
  for (std::size_t i = 0; i < 6; ++i) {
    if (i > 0) eta += ',';
    eta += fmt::format("\"{}\":{}", kPairKeys[i], complex_json(s.eta[i]));
  }
  return fmt::format("{{\"dim\":4,\"q\":[{},{},{},{}],\"eta\":{{{}}}}}\n", format_real(s.q[0]), format_real(s.q[1]),
                     format_real(s.q[2]), format_real(s.q[3]), eta);
}

std::string distribution_csv(const Distribution1D& d) {
  std::string out = "x,p\n";
  for (int x = -d.steps(); x <= d.steps(); x += 2) out += fmt::format("{},{}\n", x, format_real(d.mass(x)));
  return out;
}

std::string distribution_csv(const Distribution2D& d) {
  std::string out = "x,y,p\n";
  const int n = d.steps();
  for (int y = -n; y <= n; ++y) {
    for (int x = -n; x <= n; ++x) {
      const double p = d.mass(x, y);
      if (p != 0.0) out += fmt::format("{},{},{}\n", x, y, format_real(p));
    }
  }
  return out;
}

std::string distribution_json(const Distribution1D& d) {
  std::string sites;
  for (int x = -d.steps(); x <= d.steps(); x += 2) {
    if (!sites.empty()) sites += ',';
    sites += fmt::format("[{},{}]", x, format_real(d.mass(x)));
  }
  return fmt::format("{{\"dim\":1,\"n\":{},\"columns\":[\"x\",\"p\"],\"sites\":[{}]}}\n", d.steps(), sites);
}

std::string distribution_json(const Distribution2D& d) {
  std::string sites;
  const int n = d.steps();
  for (int y = -n; y <= n; ++y) {
    for (int x = -n; x <= n; ++x) {
      const double p = d.mass(x, y);
      if (p == 0.0) continue;
      if (!sites.empty()) sites += ',';
      sites += fmt::format("[{},{},{}]", x, y, format_real(p));
    }
  }
  return fmt::format("{{\"dim\":2,\"n\":{},\"columns\":[\"x\",\"y\",\"p\"],\"sites\":[{}]}}\n", n, sites);
}

Distribution1D parse_distribution_csv_1d(std::string_view text, int n) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != "x,p") throw ValidationError("parse failure: expected header \"x,p\"");
  Distribution1D d(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = parse_row(lines[i], 2);
    const int x = as_site(row[0]);
    if (x < -n || x > n) throw ValidationError(fmt::format("parse failure: site {} outside [-{}, {}]", x, n, n));
    d.at(x) = row[1];
  }
  return d;
}

Distribution2D parse_distribution_csv_2d(std::string_view text, int n) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != "x,y,p") throw ValidationError("parse failure: expected header \"x,y,p\"");
  Distribution2D d(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto row = parse_row(lines[i], 3);
    const int x = as_site(row[0]);
    const int y = as_site(row[1]);
    if (std::abs(x) > n || std::abs(y) > n) {
      throw ValidationError(fmt::format("parse failure: site ({}, {}) outside [-{}, {}]^2", x, y, n, n));
    }
    d.at(x, y) = row[2];
  }
  return d;
}

namespace {

// Rows keyed by n, one optional value per method.
std::vector<std::array<double, 3>> covariance_rows(const CovarianceSeries& series) {
  std::vector<std::array<double, 3>> rows;
  for (const auto& e : series.entries) {
    if (rows.empty() || rows.back()[0] != e.n) rows.push_back({static_cast<double>(e.n), NAN, NAN});
    rows.back()[e.method == Method::direct ? 1 : 2] = e.value;
  }
  return rows;
}

}  // namespace

std::string covariance_csv(const CovarianceSeries& series) {
  std::string out = "n,cov_direct,cov_integral\n";
  for (const auto& r : covariance_rows(series)) {
    out += fmt::format("{},{},{}\n", static_cast<int>(r[0]), format_real(r[1]), format_real(r[2]));
  }
  return out;
}

std::string covariance_json(const CovarianceSeries& series) {
  std::string rows;
  const auto value = [](double v) { return std::isnan(v) ? std::string("null") : format_real(v); };
  for (const auto& r : covariance_rows(series)) {
    if (!rows.empty()) rows += ',';
    rows += fmt::format("[{},{},{}]", static_cast<int>(r[0]), value(r[1]), value(r[2]));
  }
  return fmt::format("{{\"columns\":[\"n\",\"cov_direct\",\"cov_integral\"],\"limit\":{},\"rows\":[{}]}}\n",
                     format_real(covariance_limit()), rows);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write {}", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error(fmt::format("cannot move {} into place: {}", path.string(), ec.message()));
  }
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2a", "fig2b", "fig4a", "fig4b", "fig4c",  "fig4d",
                                            "fig4e", "fig4f", "fig4g", "fig4h", "fig_cov", "fig_loglog"};
  return ids;
}

CoinState4 figure4_coin(char panel) {
  CoinState4 s;
  const auto set = [&s](int i, int j, double v) { s.coherence(i, j) = v; };
  switch (panel) {
    case 'a':
      break;
    case 'b':
      for (auto& e : s.eta) e = 0.25;
      break;
    case 'c':
      set(1, 2, -0.25), set(3, 4, 0.25);
      break;
    case 'd':
      set(1, 2, 0.25), set(3, 4, -0.25);
      break;
    case 'e':
      set(1, 2, -0.2), set(3, 4, 0.2);
      break;
    case 'f':
      set(1, 2, 0.2), set(3, 4, -0.2);
      break;
    case 'g':
      set(1, 4, -0.1), set(2, 3, 0.1);
      break;
    case 'h':
      set(1, 2, -0.1), set(3, 4, 0.1), set(2, 3, 0.2);
      break;
    default:
      throw ValidationError(fmt::format("unknown figure 4 panel '{}'", panel));
  }
  return s;
}

namespace {

constexpr int kFig2Steps = 100;
constexpr int kFig4Steps = 40;
constexpr int kFigCovSteps = 200;
constexpr int kFigLogLogSteps = 1000;

std::string fig2(double eta) {
  const CoinState2 coin{0.5, 0.5, {eta, 0.0}};
  const auto crw = crw_distribution({0.5, 0.5, kFig2Steps});
  const auto qrw = qrw1d_distribution(coin, hadamard2(), kFig2Steps);
  const auto qw = qw_distribution(coin, kFig2Steps);
  std::string out = "x,p_crw,p_qrw,p_qw\n";
  for (int x = -kFig2Steps; x <= kFig2Steps; x += 2) {
    out += fmt::format("{},{},{},{}\n", x, format_real(crw.mass(x)), format_real(qrw.mass(x)), format_real(qw.mass(x)));
  }
  return out;
}

std::string fig_cov() {
  const CoinState2 mixed{0.5, 0.5, {0.0, 0.0}};
  const auto series = covariance_series(mixed, kFigCovSteps);
  const auto direct = series.values(Method::direct);
  const auto integral = series.values(Method::integral);
  std::string out = "n,cov_direct,cov_integral,cov_independent,limit\n";
  const double independent = independent_flip_covariance(mixed, hadamard2());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    out += fmt::format("{},{},{},{},{}\n", i + 1, format_real(direct[i]), format_real(integral[i]),
                       format_real(independent), format_real(covariance_limit()));
  }
  return out;
}

std::string fig_loglog() {
  const auto cov = covariance_direct_series({0.5, 0.5, {0.0, 0.0}}, kFigLogLogSteps);
  std::string out = "n,abs_diff,reference\n";
  for (int n = 1; n <= kFigLogLogSteps; ++n) {
    out += fmt::format("{},{},{}\n", n, format_real(std::abs(cov[static_cast<std::size_t>(n)] - covariance_limit())),
                       format_real(2.0 / (5.0 * std::sqrt(static_cast<double>(n)))));
  }
  return out;
}

}  // namespace

std::string figure_data(std::string_view id) {
  if (id == "fig2a") return fig2(0.0);
  if (id == "fig2b") return fig2(0.1);
  if (id.size() == 5 && id.substr(0, 4) == "fig4" && id[4] >= 'a' && id[4] <= 'h') {
    return distribution_csv(qrw2d_distribution(figure4_coin(id[4]), kFig4Steps));
  }
  if (id == "fig_cov") return fig_cov();
  if (id == "fig_loglog") return fig_loglog();
  throw ValidationError(fmt::format("unknown figure id \"{}\"", id));
}

void emit_figure_data(std::string_view id, const std::filesystem::path& output) {
  write_atomic(output, figure_data(id));
}

}  // namespace coinwalk
