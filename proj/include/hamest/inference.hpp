#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "hamest/model.hpp"

namespace hamest {

/// Raised when an observed outcome has zero probability under the current
/// distribution, so the posterior cannot be normalized.
class PosteriorUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discretized distribution over the frequency omega.
///
/// The support [a,b] is split into n equal cells of width (b-a)/n; each grid
/// point is a cell midpoint and carries the probability mass of its cell.
/// Integrals against the distribution are sums over the masses. Values are
/// immutable once constructed.
class Distribution {
 public:
  /// Equal masses on an n-point midpoint grid. Requires n >= 2 and a < b.
  static Distribution uniform(std::size_t n_points, double a, double b);

  /// Arbitrary non-negative masses on the midpoint grid of [a,b]; the masses
  /// are normalized. Throws std::invalid_argument on negative/non-finite
  /// masses, zero total mass, fewer than 2 points, or a >= b.
  static Distribution from_weights(std::vector<double> weights, double a, double b);

  std::span<const double> points() const { return *points_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double cell_width() const { return (hi_ - lo_) / static_cast<double>(weights_.size()); }

  bool contains(double omega) const { return omega >= lo_ && omega <= hi_; }
  /// True if both distributions live on the same grid (same n and support).
  bool same_grid(const Distribution& other) const;

 private:
  Distribution(std::shared_ptr<const std::vector<double>> points, std::vector<double> weights,
               double lo, double hi)
      : points_(std::move(points)), weights_(std::move(weights)), lo_(lo), hi_(hi) {}

  friend Distribution reweighted(const Distribution& base, std::vector<double> masses);

  // The grid is shared between a distribution and everything updated from it.
  std::shared_ptr<const std::vector<double>> points_;
  std::vector<double> weights_;
  double lo_;
  double hi_;
};

/// Same grid as `base`, new (unnormalized, non-negative) masses. Throws
/// PosteriorUndefined if the masses sum to zero.
Distribution reweighted(const Distribution& base, std::vector<double> masses);

/// Uniform prior, the usual starting point.
inline Distribution make_uniform_prior(std::size_t n_points, double a, double b) {
  return Distribution::uniform(n_points, a, b);
}

/// Posterior after observing `d` at evolution time `t`.
Distribution bayes_update(const Distribution& prior, const LikelihoodModel& model, double t,
                          Outcome d);

/// Posterior predictive probability of outcome 0 at time t.
double predictive(const Distribution& dist, const LikelihoodModel& model, double t);

/// Posterior predictive probability of outcome d at time t.
double predictive(const Distribution& dist, const LikelihoodModel& model, double t, Outcome d);

double mean(const Distribution& dist);
double variance(const Distribution& dist);

/// Integral of p log p (natural log) for the piecewise-constant density
/// implied by the masses, with 0 log 0 = 0. Equals minus the differential
/// entropy.
double neg_entropy(const Distribution& dist);

}  // namespace hamest
