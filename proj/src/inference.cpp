#include "hamest/inference.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace hamest {

namespace {

std::shared_ptr<const std::vector<double>> midpoints(std::size_t n, double a, double b) {
  auto pts = std::make_shared<std::vector<double>>(n);
  const double width = (b - a) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) (*pts)[i] = a + (static_cast<double>(i) + 0.5) * width;
  return pts;
}

void check_grid(std::size_t n, double a, double b) {
  if (n < 2) throw std::invalid_argument("distribution: need at least 2 grid points");
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("distribution: support must satisfy a < b");
}

}  // namespace

Distribution Distribution::uniform(std::size_t n_points, double a, double b) {
  check_grid(n_points, a, b);
  std::vector<double> w(n_points, 1.0 / static_cast<double>(n_points));
  return Distribution(midpoints(n_points, a, b), std::move(w), a, b);
}

Distribution Distribution::from_weights(std::vector<double> weights, double a, double b) {
  check_grid(weights.size(), a, b);
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("distribution: masses must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("distribution: total mass is zero");
  for (double& w : weights) w /= total;
  auto pts = midpoints(weights.size(), a, b);
  return Distribution(std::move(pts), std::move(weights), a, b);
}

bool Distribution::same_grid(const Distribution& other) const {
  return size() == other.size() && lo_ == other.lo_ && hi_ == other.hi_;
}

Distribution reweighted(const Distribution& base, std::vector<double> masses) {
  if (masses.size() != base.size())
    throw std::invalid_argument("reweighted: mass vector does not match grid");
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (!(total > 0.0)) throw PosteriorUndefined("posterior undefined: outcome has zero probability");
  for (double& m : masses) m /= total;
  return Distribution(base.points_, std::move(masses), base.lo_, base.hi_);
}

Distribution bayes_update(const Distribution& prior, const LikelihoodModel& model, double t,
                          Outcome d) {
  if (!(t >= 0.0)) throw std::domain_error("bayes_update: evolution time must be non-negative");
  const auto pts = prior.points();
  const auto w = prior.weights();
  std::vector<double> post(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) post[i] = w[i] * model.probability(pts[i], t, d);
  return reweighted(prior, std::move(post));
}

double predictive(const Distribution& dist, const LikelihoodModel& model, double t) {
  return predictive(dist, model, t, Outcome::Zero);
}

double predictive(const Distribution& dist, const LikelihoodModel& model, double t, Outcome d) {
  if (!(t >= 0.0)) throw std::domain_error("predictive: evolution time must be non-negative");
  const auto pts = dist.points();
  const auto w = dist.weights();
  double p0 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) p0 += w[i] * model.prob_zero(pts[i], t);
  return d == Outcome::Zero ? p0 : 1.0 - p0;
}

double mean(const Distribution& dist) {
  const auto pts = dist.points();
  const auto w = dist.weights();
  double m = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) m += w[i] * pts[i];
  return m;
}

double variance(const Distribution& dist) {
  const double m = mean(dist);
  const auto pts = dist.points();
  const auto w = dist.weights();
  double v = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double x = pts[i] - m;
    v += w[i] * x * x;
  }
  return v;
}

double neg_entropy(const Distribution& dist) {
  const double width = dist.cell_width();
  double h = 0.0;
  for (double w : dist.weights())
    if (w > 0.0) h += w * std::log(w / width);
  return h;
}

}  // namespace hamest
