#include "hamest/policy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hamest {

void Schedule::validate() const {
  if (times.empty()) throw std::invalid_argument("schedule: needs at least one time");
  for (double t : times)
    if (!(t >= 0.0)) throw std::invalid_argument("schedule: times must be non-negative");
}

Schedule nyquist_schedule(int n_measurements, double omega_max) {
  if (n_measurements < 1) throw std::invalid_argument("nyquist_schedule: n must be >= 1");
  if (!(omega_max > 0.0)) throw std::invalid_argument("nyquist_schedule: omega_max must be > 0");
  Schedule s;
  s.times.reserve(static_cast<std::size_t>(n_measurements));
  for (int k = 1; k <= n_measurements; ++k) s.times.push_back(k * std::numbers::pi / omega_max);
  return s;
}

OutcomeSampler::OutcomeSampler(std::uint64_t seed) : engine_(seed) {}

double OutcomeSampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Outcome OutcomeSampler::draw(const LikelihoodModel& model, double true_omega, double t) {
  const double p1 = model.probability(true_omega, t, Outcome::One);
  return uniform() < p1 ? Outcome::One : Outcome::Zero;
}

Experiment greedy_step(const Distribution& dist, const LikelihoodModel& model,
                       UtilityKind utility, const DesignDomain& domain) {
  return Experiment{optimize_experiment(dist, model, utility, domain).time};
}

namespace {

void check_truth(double true_omega, const Distribution& prior) {
  if (!prior.contains(true_omega))
    throw std::invalid_argument("true omega lies outside the prior support");
}

TrajectoryStep observe(Distribution& dist, const LikelihoodModel& model, double t, Outcome d) {
  dist = bayes_update(dist, model, t, d);
  return TrajectoryStep{t, d, mean(dist), variance(dist)};
}

TrajectoryRecord finish(std::vector<TrajectoryStep> steps, const Distribution& prior,
                        double true_omega, std::uint64_t seed) {
  TrajectoryRecord rec;
  rec.final_estimate = steps.empty() ? mean(prior) : steps.back().posterior_mean;
  rec.steps = std::move(steps);
  rec.true_omega = true_omega;
  rec.seed = seed;
  return rec;
}

}  // namespace

TrajectoryRecord run_adaptive(double true_omega, const LikelihoodModel& model,
                              const Distribution& prior, int n_measurements,
                              UtilityKind utility, const DesignDomain& domain,
                              std::uint64_t seed) {
  check_truth(true_omega, prior);
  if (n_measurements < 1) throw std::invalid_argument("run_adaptive: n must be >= 1");
  domain.validate();

  const LikelihoodTable coarse(model, domain.coarse_grid(), prior.points());
  OutcomeSampler sampler(seed);
  Distribution dist = prior;
  std::vector<TrajectoryStep> steps;
  for (int k = 0; k < n_measurements; ++k) {
    const double t = optimize_experiment(dist, model, utility, domain, coarse).time;
    steps.push_back(observe(dist, model, t, sampler.draw(model, true_omega, t)));
  }
  return finish(std::move(steps), prior, true_omega, seed);
}

TrajectoryRecord run_schedule(double true_omega, const LikelihoodModel& model,
                              const Distribution& prior, const Schedule& schedule,
                              std::uint64_t seed) {
  check_truth(true_omega, prior);
  schedule.validate();

  OutcomeSampler sampler(seed);
  Distribution dist = prior;
  std::vector<TrajectoryStep> steps;
  for (double t : schedule.times)
    steps.push_back(observe(dist, model, t, sampler.draw(model, true_omega, t)));
  return finish(std::move(steps), prior, true_omega, seed);
}

}  // namespace hamest
