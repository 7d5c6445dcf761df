#include "coinwalk/cli.hpp"

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "coinwalk/crw.hpp"
#include "coinwalk/io.hpp"
#include "coinwalk/oracle.hpp"
#include "coinwalk/qrw.hpp"
#include "coinwalk/qw.hpp"

namespace coinwalk::cli {

namespace {

constexpr std::array<const char*, 6> kPairNames{"12", "13", "14", "23", "24", "34"};

struct CoinFlags {
  std::string coin_path;
  std::optional<double> p1;
  std::vector<double> eta;
  std::vector<double> q;
  std::array<std::vector<double>, 6> pair_eta;
  std::string dump_path;

  bool has_4d_flags() const {
    if (!q.empty()) return true;
    for (const auto& e : pair_eta) {
      if (!e.empty()) return true;
    }
    return false;
  }
};

struct Common {
  std::string output;
  std::string format = "csv";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-o,--output", c.output, "Output file (written atomically); stdout when absent");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_coin2_flags(CLI::App* app, CoinFlags& f) {
  app->add_option("--coin", f.coin_path, "Coin state JSON file")->check(CLI::ExistingFile);
  app->add_option("--p1", f.p1, "Probability of |+1> (pm1 = 1 - p1)");
  app->add_option("--eta", f.eta, "Coherence eta as RE [IM]")->expected(1, 2);
  app->add_option("--dump-coin", f.dump_path, "Write the resolved coin state as JSON");
}

void add_coin4_flags(CLI::App* app, CoinFlags& f) {
  app->add_option("--q", f.q, "Diagonal q1 q2 q3 q4")->expected(4);
  for (std::size_t i = 0; i < kPairNames.size(); ++i) {
    app->add_option(fmt::format("--eta{}", kPairNames[i]), f.pair_eta[i], "Coherence as RE [IM]")->expected(1, 2);
  }
}

Complex to_complex(const std::vector<double>& v) { return {v.at(0), v.size() > 1 ? v[1] : 0.0}; }

void warn_override(std::ostream& err, bool from_file, std::string_view name, double old_value, double new_value) {
  if (from_file && old_value != new_value) {
    err << fmt::format("warning: --{} overrides coin file value {} with {}\n", name, format_real(old_value),
                       format_real(new_value));
  }
}

CoinState2 resolve_coin2(const CoinFlags& f, std::ostream& err) {
  CoinState2 s{0.5, 0.5, {0.0, 0.0}};
  const bool from_file = !f.coin_path.empty();
  if (from_file) {
    const auto loaded = load_coin_json(f.coin_path);
    if (!std::holds_alternative<CoinState2>(loaded)) throw ValidationError("coin file must describe a 2-level coin");
    s = std::get<CoinState2>(loaded);
  }
  if (f.p1) {
    warn_override(err, from_file, "p1", s.p1, *f.p1);
    s.p1 = *f.p1;
    s.pm1 = 1.0 - *f.p1;
  }
  if (!f.eta.empty()) {
    const Complex eta = to_complex(f.eta);
    warn_override(err, from_file, "eta", s.eta.real(), eta.real());
    warn_override(err, from_file, "eta", s.eta.imag(), eta.imag());
    s.eta = eta;
  }
  require_valid(s);
  if (!f.dump_path.empty()) write_atomic(f.dump_path, coin_to_json(s));
  return s;
}

CoinState4 resolve_coin4(const CoinFlags& f, std::ostream& err) {
  CoinState4 s;
  const bool from_file = !f.coin_path.empty();
  if (from_file) {
    const auto loaded = load_coin_json(f.coin_path);
    if (!std::holds_alternative<CoinState4>(loaded)) throw ValidationError("coin file must describe a 4-level coin");
    s = std::get<CoinState4>(loaded);
  }
  if (!f.q.empty()) {
    for (std::size_t i = 0; i < 4; ++i) {
      warn_override(err, from_file, "q", s.q[i], f.q[i]);
      s.q[i] = f.q[i];
    }
  }
  for (std::size_t i = 0; i < 6; ++i) {
    if (f.pair_eta[i].empty()) continue;
    const Complex eta = to_complex(f.pair_eta[i]);
    warn_override(err, from_file, fmt::format("eta{}", kPairNames[i]), s.eta[i].real(), eta.real());
    warn_override(err, from_file, fmt::format("eta{}", kPairNames[i]), s.eta[i].imag(), eta.imag());
    s.eta[i] = eta;
  }
  require_valid(s);
  if (!f.dump_path.empty()) write_atomic(f.dump_path, coin_to_json(s));
  return s;
}

void emit(const Common& c, const std::string& content, std::ostream& out) {
  if (c.output.empty()) {
    out << content;
  } else {
    write_atomic(c.output, content);
  }
}

std::string render(const Common& c, const Distribution1D& d) {
  return c.format == "json" ? distribution_json(d) : distribution_csv(d);
}

std::string render(const Common& c, const Distribution2D& d) {
  return c.format == "json" ? distribution_json(d) : distribution_csv(d);
}

// Rows of (name, value) rendered as `quantity,value` CSV or a flat JSON object.
std::string render_table(const Common& c, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string body;
  if (c.format == "json") {
    for (const auto& [k, v] : rows) {
      if (!body.empty()) body += ',';
      body += fmt::format("\"{}\":{}", k, v);
    }
    return "{" + body + "}\n";
  }
  body = "quantity,value\n";
  for (const auto& [k, v] : rows) body += fmt::format("{},{}\n", k, v);
  return body;
}

int sampler_threads() {
  if (const char* env = std::getenv("COINWALK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;
}

struct SamplerFlags {
  std::string model;
  int n = 0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  int chunks = 16;
};

void add_sampler_flags(CLI::App* app, SamplerFlags& s) {
  app->add_option("--model", s.model, "Walk model")->required()->check(CLI::IsMember({"crw", "qrw1d", "qrw2d"}));
  app->add_option("--n", s.n, "Number of steps")->required()->check(CLI::NonNegativeNumber);
  app->add_option("--samples", s.samples, "Number of sampled walkers")->check(CLI::PositiveNumber);
  app->add_option("--seed", s.seed, "Sampler seed");
  app->add_option("--chunks", s.chunks, "Independent RNG streams")->check(CLI::PositiveNumber);
}

WalkModel resolve_model(const SamplerFlags& s, const CoinFlags& f, std::ostream& err) {
  if (s.model == "crw") {
    const CoinState2 c = resolve_coin2(f, err);
    return CrwModel{c.p1, c.pm1};
  }
  if (s.model == "qrw1d") return Qrw1dModel{resolve_coin2(f, err)};
  return Qrw2dModel{resolve_coin4(f, err)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and sampled position laws of classical, coherence-driven and coined quantum walks", "coinwalk"};
  app.require_subcommand(1);

  Common common;
  CoinFlags coin;
  int n = 0;
  const auto add_steps = [&n](CLI::App* sub) {
    sub->add_option("--n", n, "Number of steps")->required()->check(CLI::NonNegativeNumber);
  };

  auto* crw = app.add_subcommand("crw", "Classical random walk distribution");
  add_common(crw, common);
  add_coin2_flags(crw, coin);
  add_steps(crw);

  auto* qrw1d = app.add_subcommand("qrw1d", "1D quantum random walk distribution (Hadamard flip)");
  add_common(qrw1d, common);
  add_coin2_flags(qrw1d, coin);
  add_steps(qrw1d);

  std::vector<double> zeta;
  auto* qrw2d = app.add_subcommand("qrw2d", "2D quantum random walk distribution (Grover flip)");
  add_common(qrw2d, common);
  qrw2d->add_option("--coin", coin.coin_path, "Coin state JSON file")->check(CLI::ExistingFile);
  qrw2d->add_option("--dump-coin", coin.dump_path, "Write the resolved coin state as JSON");
  add_coin4_flags(qrw2d, coin);
  qrw2d->add_option("--zeta", zeta, "Effective coherence z1 z2 z3 instead of a coin state")->expected(3);
  add_steps(qrw2d);

  auto* qw = app.add_subcommand("qw", "Coined Hadamard quantum walk distribution");
  add_common(qw, common);
  add_coin2_flags(qw, coin);
  add_steps(qw);

  int n_max = 0;
  std::string method = "both";
  auto* cov = app.add_subcommand("covariance", "Coin covariance <sz(n) sz(0)> - <sz(n)><sz(0)> of the quantum walk");
  add_common(cov, common);
  add_coin2_flags(cov, coin);
  cov->add_option("--n-max", n_max, "Largest step count")->required()->check(CLI::PositiveNumber);
  cov->add_option("--method", method, "Evaluation route")->check(CLI::IsMember({"direct", "integral", "both"}));

  int dim = 0;
  int analytics_n = 100;
  auto* analytics = app.add_subcommand("coin-analytics", "Flipped-coin probabilities, coherence and moments");
  add_common(analytics, common);
  add_coin2_flags(analytics, coin);
  add_coin4_flags(analytics, coin);
  analytics->add_option("--dim", dim, "Coin dimension (default: from the coin file or flags)")
      ->check(CLI::IsMember({2, 4}));
  analytics->add_option("--n", analytics_n, "Step count for the moments")->check(CLI::NonNegativeNumber);

  SamplerFlags sampler;
  auto* sample = app.add_subcommand("sample", "Monte Carlo sample of a walk");
  add_common(sample, common);
  add_coin2_flags(sample, coin);
  add_coin4_flags(sample, coin);
  add_sampler_flags(sample, sampler);

  std::string against;
  auto* compare = app.add_subcommand("compare", "Compare the exact law with a sample or a CSV distribution");
  add_common(compare, common);
  add_coin2_flags(compare, coin);
  add_coin4_flags(compare, coin);
  add_sampler_flags(compare, sampler);
  compare->add_option("--against", against, "CSV distribution to compare (default: draw a fresh sample)")
      ->check(CLI::ExistingFile);

  std::vector<double> feasible_zeta;
  auto* feasibility = app.add_subcommand("feasibility", "Check an effective coherence against the tetrahedron");
  add_common(feasibility, common);
  feasibility->add_option("--zeta", feasible_zeta, "z1 z2 z3")->expected(3)->required()->allow_extra_args();

  std::string figure_id;
  auto* figure = app.add_subcommand("figure", "Emit the data behind one figure (or all, into a directory)");
  add_common(figure, common);
  std::vector<std::string> ids = figure_ids();
  ids.push_back("all");
  figure->add_option("id,--id", figure_id, "Figure id")->required()->check(CLI::IsMember(ids));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (crw->parsed()) {
      const CoinState2 c = resolve_coin2(coin, err);
      emit(common, render(common, crw_distribution({c.p1, c.pm1, n})), out);
    } else if (qrw1d->parsed()) {
      emit(common, render(common, qrw1d_distribution(resolve_coin2(coin, err), hadamard2(), n)), out);
    } else if (qrw2d->parsed()) {
      if (!zeta.empty()) {
        const EffectiveCoherence z{zeta[0], zeta[1], zeta[2]};
        if (!feasibility_region_check(z)) throw ValidationError("effective coherence outside the feasible tetrahedron");
        emit(common, render(common, qrw2d_distribution(grover_probabilities(z), n)), out);
      } else {
        emit(common, render(common, qrw2d_distribution(resolve_coin4(coin, err), n)), out);
      }
    } else if (qw->parsed()) {
      emit(common, render(common, qw_distribution(resolve_coin2(coin, err), n)), out);
    } else if (cov->parsed()) {
      const CoinState2 c = resolve_coin2(coin, err);
      CovarianceSeries series;
      if (method == "both") {
        series = covariance_series(c, n_max);
      } else if (method == "direct") {
        const auto values = covariance_direct_series(c, n_max);
        for (int k = 1; k <= n_max; ++k) series.entries.push_back({k, values[static_cast<std::size_t>(k)], Method::direct});
      } else {
        for (int k = 1; k <= n_max; ++k) series.entries.push_back({k, covariance_integral(c, k), Method::integral});
      }
      emit(common, common.format == "json" ? covariance_json(series) : covariance_csv(series), out);
    } else if (analytics->parsed()) {
      std::vector<std::pair<std::string, std::string>> rows;
      const auto row = [&rows](std::string k, double v) { rows.emplace_back(std::move(k), format_real(v)); };
      int d = dim;
      if (d == 0) {
        d = coin.has_4d_flags() ? 4 : 2;
        if (!coin.coin_path.empty()) d = std::holds_alternative<CoinState4>(load_coin_json(coin.coin_path)) ? 4 : 2;
      }
      if (d == 2) {
        const CoinState2 c = resolve_coin2(coin, err);
        const FlippedCoin2 f = flip_coin2(c, hadamard2());
        const Moments1D m = qrw1d_moments(c, analytics_n);
        row("p1", c.p1);
        row("pm1", c.pm1);
        row("eta_re", c.eta.real());
        row("eta_im", c.eta.imag());
        row("psd_margin", c.p1 * c.pm1 - std::norm(c.eta));
        row("rho11", f.rho11);
        row("rho_m1m1", f.rho_m1m1);
        row("rho1m1_re", f.rho1m1.real());
        row("rho1m1_im", f.rho1m1.imag());
        row("n", analytics_n);
        row("mean", m.mean);
        row("variance", m.variance);
      } else {
        const CoinState4 c = resolve_coin4(coin, err);
        const EffectiveCoherence z = effective_coherence(c);
        const GroverProbabilities p = grover_probabilities(z);
        row("zeta1", z.zeta1);
        row("zeta2", z.zeta2);
        row("zeta3", z.zeta3);
        row("rho_rr", p.rr);
        row("rho_ll", p.ll);
        row("rho_uu", p.uu);
        row("rho_dd", p.dd);
        row("feasible", feasibility_region_check(z) ? 1.0 : 0.0);
        if (feasibility_region_check(z)) {
          const Moments2D m = qrw2d_moments(z, analytics_n);
          row("n", analytics_n);
          row("mean_x", m.mean_x);
          row("mean_y", m.mean_y);
          row("var_x", m.var_x);
          row("var_y", m.var_y);
          row("var_total", m.var_total);
        }
      }
      emit(common, render_table(common, rows), out);
    } else if (sample->parsed() || compare->parsed()) {
      const WalkModel model = resolve_model(sampler, coin, err);
      const SampleOptions opts{sampler.seed, sampler.chunks, sampler_threads()};
      const bool planar = std::holds_alternative<Qrw2dModel>(model);
      if (sample->parsed()) {
        const SampleReport report = sample_walk(model, sampler.n, sampler.samples, opts);
        if (planar) {
          emit(common, render(common, std::get<Distribution2D>(report.empirical)), out);
        } else {
          emit(common, render(common, std::get<Distribution1D>(report.empirical)), out);
        }
      } else {
        Comparison result;
        std::optional<std::uint64_t> context = sampler.samples;
        if (!against.empty() && compare->count("--samples") == 0) context.reset();
        std::string text;
        if (!against.empty()) {
          std::ifstream in(against);
          std::stringstream buf;
          buf << in.rdbuf();
          text = buf.str();
        }
        if (planar) {
          const auto exact = qrw2d_distribution(std::get<Qrw2dModel>(model).coin, sampler.n);
          const auto observed = against.empty()
                                    ? std::get<Distribution2D>(sample_walk(model, sampler.n, sampler.samples, opts).empirical)
                                    : parse_distribution_csv_2d(text, sampler.n);
          result = compare_distributions(exact, observed, context);
        } else {
          const auto exact = std::holds_alternative<CrwModel>(model)
                                 ? binomial_walk(sampler.n, std::get<CrwModel>(model).p1, std::get<CrwModel>(model).pm1)
                                 : qrw1d_distribution(std::get<Qrw1dModel>(model).coin, hadamard2(), sampler.n);
          const auto observed = against.empty()
                                    ? std::get<Distribution1D>(sample_walk(model, sampler.n, sampler.samples, opts).empirical)
                                    : parse_distribution_csv_1d(text, sampler.n);
          result = compare_distributions(exact, observed, context);
        }
        std::vector<std::pair<std::string, std::string>> rows;
        rows.emplace_back("total_variation", format_real(result.total_variation));
        if (result.chi_square_p) {
          rows.emplace_back("chi_square", format_real(result.chi_square));
          rows.emplace_back("degrees_of_freedom", std::to_string(result.degrees_of_freedom));
          rows.emplace_back("chi_square_p", format_real(*result.chi_square_p));
        }
        emit(common, render_table(common, rows), out);
      }
    } else if (feasibility->parsed()) {
      const EffectiveCoherence z{feasible_zeta[0], feasible_zeta[1], feasible_zeta[2]};
      const GroverProbabilities p = grover_probabilities(z);
      const bool ok = feasibility_region_check(z);
      std::string text;
      if (common.format == "json") {
        text = fmt::format("{{\"feasible\":{},\"rho_uu\":[{},{},{},{}]}}\n", ok ? "true" : "false", format_real(p.rr),
                           format_real(p.ll), format_real(p.uu), format_real(p.dd));
      } else {
        text = fmt::format("status,rho_rr,rho_ll,rho_uu,rho_dd\n{},{},{},{},{}\n", ok ? "feasible" : "infeasible",
                           format_real(p.rr), format_real(p.ll), format_real(p.uu), format_real(p.dd));
      }
      emit(common, text, out);
    } else if (figure->parsed()) {
      if (figure_id == "all") {
        if (common.output.empty()) throw ValidationError("figure all needs --output <directory>");
        for (const auto& id : figure_ids()) emit_figure_data(id, std::filesystem::path(common.output) / (id + ".csv"));
      } else {
        emit(common, figure_data(figure_id), out);
      }
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace coinwalk::cli
