#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coinwalk/qw.hpp"
#include "coinwalk/types.hpp"

namespace coinwalk {

using AnyCoinState = std::variant<CoinState2, CoinState4>;

// Round-trip decimal with 17 significant digits.
std::string format_real(double v);

// Coin state schema:
//   {"dim":2,"p":[p1,pm1],"eta":[re,im]}
//   {"dim":4,"q":[q1,q2,q3,q4],"eta":{"12":[re,im],...,"34":[re,im]}}
// Absent eta entries are zero. Throws ValidationError naming the violated
// invariant, or the parse failure.
AnyCoinState parse_coin_json(std::string_view text);
AnyCoinState load_coin_json(const std::filesystem::path& path);

std::string coin_to_json(const CoinState2& state);
std::string coin_to_json(const CoinState4& state);

// `x,p` on even-parity sites.
std::string distribution_csv(const Distribution1D& d);
// `x,y,p` on sites with non-zero mass.
std::string distribution_csv(const Distribution2D& d);
std::string distribution_json(const Distribution1D& d);
std::string distribution_json(const Distribution2D& d);

// Parse the CSV layouts above into an n-step distribution. Rows outside
// [-n, n] are rejected.
Distribution1D parse_distribution_csv_1d(std::string_view text, int n);
Distribution2D parse_distribution_csv_2d(std::string_view text, int n);

// `n,cov_direct,cov_integral`; a method that was not requested prints nan.
std::string covariance_csv(const CovarianceSeries& series);
std::string covariance_json(const CovarianceSeries& series);

// Write to a temporary sibling, then rename over the destination.
void write_atomic(const std::filesystem::path& path, std::string_view content);

// Figure ids: fig2a fig2b fig4a..fig4h fig_cov fig_loglog.
const std::vector<std::string>& figure_ids();
// CSV data for one figure. Throws ValidationError on an unknown id.
std::string figure_data(std::string_view id);
void emit_figure_data(std::string_view id, const std::filesystem::path& output);

// Initial coin behind each 2D figure panel (q = 1/4 each).
CoinState4 figure4_coin(char panel);

}  // namespace coinwalk
