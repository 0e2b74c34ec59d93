#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hamest/design.hpp"
#include "hamest/inference.hpp"
#include "hamest/model.hpp"
#include "hamest/policy.hpp"

namespace hamest {

/// A requested decision tree exceeds the configured size caps.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RiskOptions {
  // Outcome branches whose conditional predictive probability falls below
  // this are neither expanded nor counted (greedy and global trees only).
  double prune_eps = 1e-15;
  int max_offline_depth = 20;
  int max_greedy_depth = 14;
  int max_global_depth = 6;
  std::size_t max_global_grid = 64;
  // Worker threads for the root of the global search; 0 picks the hardware
  // concurrency. Results do not depend on this value.
  unsigned threads = 0;
};

// All risks below are Bayes risks of the posterior-mean estimator under
// squared-error loss, integrated against the given prior, which equal the
// expected final posterior variance. Every outcome branch is enumerated.

/// Risk of a fixed schedule.
double exact_bayes_risk_offline(const Schedule& schedule, const Distribution& prior,
                                const LikelihoodModel& model, const RiskOptions& opts = {});

/// Risk of every prefix of the schedule: entry k-1 is the risk after k times.
std::vector<double> offline_risk_profile(const Schedule& schedule, const Distribution& prior,
                                         const LikelihoodModel& model,
                                         const RiskOptions& opts = {});

/// Risk of the greedy (one-step-lookahead) strategy after n measurements; the
/// design at each node comes from optimize_experiment over `domain`.
double exact_bayes_risk_greedy(const Distribution& prior, const LikelihoodModel& model,
                               UtilityKind utility, int n_measurements,
                               const DesignDomain& domain, const RiskOptions& opts = {});

/// Greedy risk after 1..n measurements from a single tree walk. The greedy
/// choice does not depend on the horizon, so entry k-1 is the n = k risk.
std::vector<double> greedy_risk_profile(const Distribution& prior, const LikelihoodModel& model,
                                        UtilityKind utility, int n_measurements,
                                        const DesignDomain& domain,
                                        const RiskOptions& opts = {});

/// Greedy strategy restricted to a finite list of candidate times.
std::vector<double> greedy_risk_profile_on_grid(const Distribution& prior,
                                                const LikelihoodModel& model,
                                                UtilityKind utility, int n_measurements,
                                                const std::vector<double>& time_grid,
                                                const RiskOptions& opts = {});

/// Minimal risk over all adaptive strategies that draw each time from
/// `time_grid`, by backward induction over the full decision tree.
double exact_bayes_risk_global(const Distribution& prior, const LikelihoodModel& model,
                               int n_measurements, const std::vector<double>& time_grid,
                               const RiskOptions& opts = {});

enum class Strategy { GreedyNegVar, GreedyInfoGain, NyquistBayes, Global };

std::string to_string(Strategy s);
/// Throws std::invalid_argument for unknown identifiers.
Strategy parse_strategy(const std::string& name);

struct RiskConfig {
  DesignDomain domain;
  int global_grid_points = 48;  // uniform over [domain.t_min, domain.t_max]
  double omega_max = 0.0;       // Nyquist rate; <= 0 means prior support upper bound
  RiskOptions options;

  std::string descriptor(const Distribution& prior) const;
};

struct RiskEntry {
  int n_measurements = 0;
  double bayes_risk = 0.0;
};

struct RiskCurve {
  std::string strategy;
  std::vector<RiskEntry> entries;
  std::string model_descriptor;
  std::string config_descriptor;
};

/// Exact risks for n = 1..n_max.
RiskCurve risk_curve(Strategy strategy, const Distribution& prior, const LikelihoodModel& model,
                     int n_max, const RiskConfig& config);

}  // namespace hamest
