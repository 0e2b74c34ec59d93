#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamest/design.hpp"
#include "hamest/inference.hpp"
#include "hamest/model.hpp"
#include "hamest/risk.hpp"

namespace hamest::cli {

/// Everything a command needs, as parsed from flags and the optional
/// key=value config file.
struct RunConfig {
  std::string model = "ideal";  // ideal | noisy
  double visibility = 0.75;
  double t2 = half_decay_t2(10.0 * std::numbers::pi);
  std::size_t prior_points = 1000;
  std::string support = "0,1";
  std::optional<double> t_max;  // defaults to n_max * pi
  int n_grid = 240;
  int n_max = 12;
  std::vector<std::string> strategies{"greedy-negvar", "nyquist-bayes"};
  std::string utility = "negvar";
  std::string history;  // "t:d,t:d,..."
  std::string times;    // "t,t,..." for the schedule strategy of simulate
  double true_omega = 0.5;
  std::uint64_t seed = 1;
  std::string output_path = "-";

  /// Throws std::invalid_argument describing the first invalid field.
  void validate() const;

  LikelihoodModel make_model() const;
  Distribution make_prior() const;
  DesignDomain make_domain() const;
  std::pair<double, double> support_bounds() const;
};

using History = std::vector<std::pair<double, Outcome>>;

/// Parses "t:d,t:d,..." (empty string -> empty history).
History parse_history(const std::string& text);

/// Parses "t,t,..." into non-negative times.
std::vector<double> parse_times(const std::string& text);

/// Writes the risk-curve CSV. A strategy that exceeds a resource cap is
/// reported in its own row and the remaining strategies are still written;
/// returns false if any strategy failed.
bool write_risk_curve(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes "t,expected_utility" over the coarse design grid for the posterior
/// obtained by applying `config.history` to the prior.
void write_utility_scan(const RunConfig& config, std::ostream& out);

/// Simulates one trajectory and writes
/// "step,t,outcome,posterior_mean,posterior_variance".
void write_simulation(const RunConfig& config, std::ostream& out);

/// Entry point shared by the executable and the tests. Returns the process
/// exit status; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& err);

}  // namespace hamest::cli
