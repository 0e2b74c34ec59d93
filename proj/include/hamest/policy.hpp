#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hamest/design.hpp"
#include "hamest/inference.hpp"
#include "hamest/model.hpp"

namespace hamest {

/// Fixed (offline) list of measurement times.
struct Schedule {
  std::vector<double> times;

  /// Throws std::invalid_argument if empty or any time is negative.
  void validate() const;
};

/// t_k = k pi / omega_max for k = 1..n.
Schedule nyquist_schedule(int n_measurements, double omega_max);

struct TrajectoryStep {
  double time = 0.0;
  Outcome outcome = Outcome::Zero;
  double posterior_mean = 0.0;
  double posterior_variance = 0.0;
};

struct TrajectoryRecord {
  std::vector<TrajectoryStep> steps;
  double final_estimate = 0.0;
  double true_omega = 0.0;
  std::uint64_t seed = 0;
};

/// Deterministic outcome sampler. Uniform draws use the top 53 bits of a
/// 64-bit Mersenne Twister so the stream is identical on every platform.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(std::uint64_t seed);

  double uniform();
  /// Draws d ~ Pr(d | true_omega, t): outcome 1 iff u < Pr(1 | omega, t).
  Outcome draw(const LikelihoodModel& model, double true_omega, double t);

 private:
  std::mt19937_64 engine_;
};

/// One step of the adaptive loop: the utility-maximizing time for `dist`.
Experiment greedy_step(const Distribution& dist, const LikelihoodModel& model,
                       UtilityKind utility, const DesignDomain& domain);

/// Simulates the adaptive strategy against a known frequency.
TrajectoryRecord run_adaptive(double true_omega, const LikelihoodModel& model,
                              const Distribution& prior, int n_measurements,
                              UtilityKind utility, const DesignDomain& domain,
                              std::uint64_t seed);

/// Simulates a fixed schedule against a known frequency.
TrajectoryRecord run_schedule(double true_omega, const LikelihoodModel& model,
                              const Distribution& prior, const Schedule& schedule,
                              std::uint64_t seed);

}  // namespace hamest
