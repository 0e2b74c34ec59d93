#include "hamest/risk.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <thread>

#include "hamest/format.hpp"

namespace hamest {

namespace {

constexpr double kTieTolerance = 1e-12;

// ---------------------------------------------------------------------------
// Offline schedules

void offline_walk(const Distribution& dist, const LikelihoodModel& model,
                  const std::vector<double>& times, std::size_t depth, double path_prob,
                  std::vector<double>& risk) {
  const double t = times[depth];
  const double p0 = predictive(dist, model, t);
  const double probs[2] = {p0, 1.0 - p0};
  for (int d = 0; d < 2; ++d) {
    if (!(probs[d] > 0.0)) continue;
    std::optional<Distribution> child;
    try {
      child = bayes_update(dist, model, t, outcome_from_int(d));
    } catch (const PosteriorUndefined&) {
      continue;
    }
    const double prob = path_prob * probs[d];
    risk[depth] += prob * variance(*child);
    if (depth + 1 < times.size()) offline_walk(*child, model, times, depth + 1, prob, risk);
  }
}

// ---------------------------------------------------------------------------
// Greedy strategy

using Chooser = std::function<OptimizedDesign(const Distribution&)>;

// Returns r with r[0] = variance(dist) and r[k] = expected posterior variance
// after k further greedy measurements, k = 1..remaining.
std::vector<double> greedy_walk(const Distribution& dist, const LikelihoodModel& model,
                                UtilityKind utility, const Chooser& choose, int remaining,
                                double prune_eps) {
  std::vector<double> r(static_cast<std::size_t>(remaining) + 1, 0.0);
  r[0] = variance(dist);
  const OptimizedDesign design = choose(dist);
  if (remaining == 1) {
    r[1] = utility == UtilityKind::NegVariance
               ? -design.utility
               : expected_posterior_variance(dist, model, design.time);
    return r;
  }
  const double p0 = predictive(dist, model, design.time);
  const double probs[2] = {p0, 1.0 - p0};
  for (int d = 0; d < 2; ++d) {
    if (!(probs[d] >= prune_eps) || probs[d] == 0.0) continue;
    std::vector<double> sub;
    try {
      const Distribution child = bayes_update(dist, model, design.time, outcome_from_int(d));
      sub = greedy_walk(child, model, utility, choose, remaining - 1, prune_eps);
    } catch (const PosteriorUndefined&) {
      continue;
    }
    for (std::size_t k = 1; k < r.size(); ++k) r[k] += probs[d] * sub[k - 1];
  }
  return r;
}

void check_greedy_depth(int n, const RiskOptions& opts) {
  if (n < 1) throw std::invalid_argument("greedy risk: n must be >= 1");
  if (n > opts.max_greedy_depth)
    throw ResourceError("greedy risk: depth " + std::to_string(n) + " exceeds cap " +
                        std::to_string(opts.max_greedy_depth));
}

std::vector<double> greedy_profile(const Distribution& prior, const LikelihoodModel& model,
                                   UtilityKind utility, int n, const Chooser& choose,
                                   const RiskOptions& opts) {
  auto r = greedy_walk(prior, model, utility, choose, n, opts.prune_eps);
  r.erase(r.begin());
  return r;
}

// ---------------------------------------------------------------------------
// Global backward induction

class GlobalSearch {
 public:
  GlobalSearch(const LikelihoodModel& model, const std::vector<double>& grid,
               const Distribution& prior, double prune_eps)
      : model_(model), table_(model, grid, prior.points()), prune_eps_(prune_eps) {}

  // Minimal expected final variance with `remaining` measurements left.
  double value(const Distribution& dist, int remaining) const {
    if (remaining == 1) {
      const Eigen::VectorXd scores =
          UtilityScorer(dist, model_, UtilityKind::NegVariance).score_table(table_);
      return -scores(static_cast<Eigen::Index>(first_argmax(scores)));
    }
    const auto rows = static_cast<Eigen::Index>(table_.times().size());
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < rows; ++j) {
      const double v = value_at(dist, j, remaining);
      if (v < best - kTieTolerance) best = v;
    }
    return best;
  }

  // Expected value of measuring at grid time j, then continuing optimally.
  double value_at(const Distribution& dist, Eigen::Index j, int remaining) const {
    const auto w = dist.weights();
    const auto row = table_.prob_zero().row(j);
    std::vector<double> m0(w.size()), m1(w.size());
    double p0 = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double l = row(static_cast<Eigen::Index>(i));
      m0[i] = w[i] * l;
      m1[i] = w[i] * (1.0 - l);
      p0 += m0[i];
    }
    const double probs[2] = {p0, 1.0 - p0};
    std::vector<double>* masses[2] = {&m0, &m1};
    double total = 0.0;
    for (int d = 0; d < 2; ++d) {
      if (!(probs[d] >= prune_eps_) || probs[d] == 0.0) continue;
      try {
        const Distribution child = reweighted(dist, std::move(*masses[d]));
        total += probs[d] * value(child, remaining - 1);
      } catch (const PosteriorUndefined&) {
      }
    }
    return total;
  }

  std::size_t grid_size() const { return table_.times().size(); }

 private:
  LikelihoodModel model_;
  LikelihoodTable table_;
  double prune_eps_;
};

}  // namespace

std::vector<double> offline_risk_profile(const Schedule& schedule, const Distribution& prior,
                                         const LikelihoodModel& model, const RiskOptions& opts) {
  schedule.validate();
  if (schedule.times.size() > static_cast<std::size_t>(opts.max_offline_depth))
    throw ResourceError("offline risk: schedule length " + std::to_string(schedule.times.size()) +
                        " exceeds cap " + std::to_string(opts.max_offline_depth));
  std::vector<double> risk(schedule.times.size(), 0.0);
  offline_walk(prior, model, schedule.times, 0, 1.0, risk);
  return risk;
}

double exact_bayes_risk_offline(const Schedule& schedule, const Distribution& prior,
                                const LikelihoodModel& model, const RiskOptions& opts) {
  return offline_risk_profile(schedule, prior, model, opts).back();
}

std::vector<double> greedy_risk_profile(const Distribution& prior, const LikelihoodModel& model,
                                        UtilityKind utility, int n_measurements,
                                        const DesignDomain& domain, const RiskOptions& opts) {
  domain.validate();
  check_greedy_depth(n_measurements, opts);
  const LikelihoodTable coarse(model, domain.coarse_grid(), prior.points());
  const Chooser choose = [&](const Distribution& dist) {
    return optimize_experiment(dist, model, utility, domain, coarse);
  };
  return greedy_profile(prior, model, utility, n_measurements, choose, opts);
}

double exact_bayes_risk_greedy(const Distribution& prior, const LikelihoodModel& model,
                               UtilityKind utility, int n_measurements,
                               const DesignDomain& domain, const RiskOptions& opts) {
  return greedy_risk_profile(prior, model, utility, n_measurements, domain, opts).back();
}

std::vector<double> greedy_risk_profile_on_grid(const Distribution& prior,
                                                const LikelihoodModel& model,
                                                UtilityKind utility, int n_measurements,
                                                const std::vector<double>& time_grid,
                                                const RiskOptions& opts) {
  if (time_grid.empty()) throw std::invalid_argument("greedy risk: empty time grid");
  check_greedy_depth(n_measurements, opts);
  const LikelihoodTable table(model, time_grid, prior.points());
  const Chooser choose = [&](const Distribution& dist) {
    return best_on_grid(dist, model, utility, table);
  };
  return greedy_profile(prior, model, utility, n_measurements, choose, opts);
}

double exact_bayes_risk_global(const Distribution& prior, const LikelihoodModel& model,
                               int n_measurements, const std::vector<double>& time_grid,
                               const RiskOptions& opts) {
  if (n_measurements < 1) throw std::invalid_argument("global risk: n must be >= 1");
  if (time_grid.empty()) throw std::invalid_argument("global risk: empty time grid");
  if (n_measurements > opts.max_global_depth)
    throw ResourceError("global risk: depth " + std::to_string(n_measurements) +
                        " exceeds cap " + std::to_string(opts.max_global_depth));
  if (time_grid.size() > opts.max_global_grid)
    throw ResourceError("global risk: grid of " + std::to_string(time_grid.size()) +
                        " times exceeds cap " + std::to_string(opts.max_global_grid));

  const GlobalSearch search(model, time_grid, prior, opts.prune_eps);
  if (n_measurements == 1) return search.value(prior, 1);

  // Root candidates are independent; evaluate them on a small pool and reduce
  // in grid order so the result is independent of scheduling.
  const std::size_t m = search.grid_size();
  std::vector<double> at_root(m);
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(m));
  if (threads <= 1) {
    for (std::size_t j = 0; j < m; ++j)
      at_root[j] = search.value_at(prior, static_cast<Eigen::Index>(j), n_measurements);
  } else {
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t j = w; j < m; j += threads)
          at_root[j] = search.value_at(prior, static_cast<Eigen::Index>(j), n_measurements);
      }));
    }
    for (auto& f : workers) f.get();
  }
  double best = std::numeric_limits<double>::infinity();
  for (double v : at_root)
    if (v < best - kTieTolerance) best = v;
  return best;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::GreedyNegVar: return "greedy-negvar";
    case Strategy::GreedyInfoGain: return "greedy-infogain";
    case Strategy::NyquistBayes: return "nyquist-bayes";
    case Strategy::Global: return "global";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  for (Strategy s : {Strategy::GreedyNegVar, Strategy::GreedyInfoGain, Strategy::NyquistBayes,
                     Strategy::Global})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown strategy '" + name +
                              "' (expected greedy-negvar|greedy-infogain|nyquist-bayes|global)");
}

std::string RiskConfig::descriptor(const Distribution& prior) const {
  const double wmax = omega_max > 0.0 ? omega_max : prior.support_hi();
  return "prior_points=" + std::to_string(prior.size()) + ";support=" +
         format_double(prior.support_lo()) + ":" + format_double(prior.support_hi()) +
         ";t_min=" + format_double(domain.t_min) + ";t_max=" + format_double(domain.t_max) +
         ";n_grid=" + std::to_string(domain.n_grid) + ";refine_tol=" +
         format_double(domain.refine_tol) + ";global_grid=" +
         std::to_string(global_grid_points) + ";omega_max=" + format_double(wmax) +
         ";prune_eps=" + format_double(options.prune_eps);
}

RiskCurve risk_curve(Strategy strategy, const Distribution& prior, const LikelihoodModel& model,
                     int n_max, const RiskConfig& config) {
  if (n_max < 1) throw std::invalid_argument("risk curve: n_max must be >= 1");
  RiskCurve curve;
  curve.strategy = to_string(strategy);
  curve.model_descriptor = model.descriptor();
  curve.config_descriptor = config.descriptor(prior);

  std::vector<double> risks;
  switch (strategy) {
    case Strategy::GreedyNegVar:
    case Strategy::GreedyInfoGain: {
      const auto utility = strategy == Strategy::GreedyNegVar ? UtilityKind::NegVariance
                                                               : UtilityKind::InfoGain;
      risks = greedy_risk_profile(prior, model, utility, n_max, config.domain, config.options);
      break;
    }
    case Strategy::NyquistBayes: {
      const double wmax = config.omega_max > 0.0 ? config.omega_max : prior.support_hi();
      risks = offline_risk_profile(nyquist_schedule(n_max, wmax), prior, model, config.options);
      break;
    }
    case Strategy::Global: {
      if (n_max > config.options.max_global_depth)
        throw ResourceError("global risk: depth " + std::to_string(n_max) + " exceeds cap " +
                            std::to_string(config.options.max_global_depth));
      const auto grid =
          linspace(config.domain.t_min, config.domain.t_max, config.global_grid_points);
      for (int n = 1; n <= n_max; ++n)
        risks.push_back(exact_bayes_risk_global(prior, model, n, grid, config.options));
      break;
    }
  }
  for (std::size_t k = 0; k < risks.size(); ++k)
    curve.entries.push_back({static_cast<int>(k) + 1, risks[k]});
  return curve;
}

}  // namespace hamest
