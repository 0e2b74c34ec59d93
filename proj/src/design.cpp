#include "hamest/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "golden_section.hpp"

namespace hamest {

namespace {

constexpr double kTieTolerance = 1e-12;

double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

std::string to_string(UtilityKind kind) {
  return kind == UtilityKind::InfoGain ? "infogain" : "negvar";
}

UtilityKind parse_utility(const std::string& name) {
  if (name == "infogain") return UtilityKind::InfoGain;
  if (name == "negvar") return UtilityKind::NegVariance;
  throw std::invalid_argument("unknown utility '" + name + "' (expected infogain|negvar)");
}

void DesignDomain::validate() const {
  if (!(t_min >= 0.0)) throw std::invalid_argument("design domain: t_min must be >= 0");
  if (!(t_max > t_min) || !std::isfinite(t_max))
    throw std::invalid_argument("design domain: t_max must exceed t_min");
  if (n_grid < 2) throw std::invalid_argument("design domain: n_grid must be >= 2");
  if (!(refine_tol > 0.0)) throw std::invalid_argument("design domain: refine_tol must be > 0");
}

std::vector<double> DesignDomain::coarse_grid() const {
  validate();
  return linspace(t_min, t_max, n_grid);
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = lo + step * k;
  out.back() = hi;
  return out;
}

double expected_utility(const Distribution& dist, const LikelihoodModel& model, double t,
                        UtilityKind utility) {
  const double p0 = predictive(dist, model, t);
  const double probs[2] = {p0, 1.0 - p0};
  double total = 0.0;
  for (int d = 0; d < 2; ++d) {
    if (!(probs[d] > 0.0)) continue;
    try {
      const Distribution post = bayes_update(dist, model, t, outcome_from_int(d));
      const double u = utility == UtilityKind::InfoGain ? neg_entropy(post) : -variance(post);
      total += probs[d] * u;
    } catch (const PosteriorUndefined&) {
      // p_d is rounding noise; the branch carries no mass.
    }
  }
  return total;
}

LikelihoodTable::LikelihoodTable(const LikelihoodModel& model, std::vector<double> times,
                                 std::span<const double> omegas)
    : times_(std::move(times)) {
  const auto rows = static_cast<Eigen::Index>(times_.size());
  const auto cols = static_cast<Eigen::Index>(omegas.size());
  p0_.resize(rows, cols);
  p0_log_p0_.resize(rows, cols);
  p1_log_p1_.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double t = times_[static_cast<std::size_t>(r)];
    if (!(t >= 0.0)) throw std::domain_error("likelihood table: negative time");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double p0 = model.prob_zero(omegas[static_cast<std::size_t>(c)], t);
      p0_(r, c) = p0;
      p0_log_p0_(r, c) = x_log_x(p0);
      p1_log_p1_(r, c) = x_log_x(1.0 - p0);
    }
  }
}

UtilityScorer::UtilityScorer(const Distribution& dist, const LikelihoodModel& model,
                             UtilityKind utility)
    : model_(model), utility_(utility) {
  const auto n = static_cast<Eigen::Index>(dist.size());
  omega_ = Eigen::Map<const Eigen::VectorXd>(dist.points().data(), n);
  w_ = Eigen::Map<const Eigen::VectorXd>(dist.weights().data(), n);
  const double mu = mean(dist);
  moments_.resize(n, 2);
  moments_.col(0) = w_;
  moments_.col(1) = w_.array() * (omega_.array() - mu);
  var_ = variance(dist);
  if (utility_ == UtilityKind::InfoGain) {
    w_log_w_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) w_log_w_(i) = x_log_x(w_(i));
    sum_w_log_w_ = w_log_w_.sum();
    log_cell_ = std::log(dist.cell_width());
  }
}

double UtilityScorer::combine(double p0, double s, double a0, double b0, double b1) const {
  const double p1 = 1.0 - p0;
  if (utility_ == UtilityKind::NegVariance) {
    double explained = 0.0;
    if (p0 > 0.0 && p1 > 0.0) explained = s * s / (p0 * p1);
    return -std::max(0.0, var_ - explained);
  }
  double u = 0.0;
  if (p0 > 0.0) u += a0 + b0 - p0 * std::log(p0) - p0 * log_cell_;
  if (p1 > 0.0) u += (sum_w_log_w_ - a0) + b1 - p1 * std::log(p1) - p1 * log_cell_;
  return u;
}

double UtilityScorer::score(double t) const {
  double p0 = 0.0, s = 0.0, a0 = 0.0, b0 = 0.0, b1 = 0.0;
  const bool info = utility_ == UtilityKind::InfoGain;
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    const double l = model_.prob_zero(omega_(i), t);
    p0 += w_(i) * l;
    s += moments_(i, 1) * l;
    if (info) {
      a0 += w_log_w_(i) * l;
      b0 += w_(i) * x_log_x(l);
      b1 += w_(i) * x_log_x(1.0 - l);
    }
  }
  return combine(p0, s, a0, b0, b1);
}

Eigen::VectorXd UtilityScorer::score_table(const LikelihoodTable& table) const {
  if (static_cast<Eigen::Index>(table.n_points()) != w_.size())
    throw std::invalid_argument("score_table: table grid does not match distribution");
  const auto rows = static_cast<Eigen::Index>(table.times().size());
  Eigen::VectorXd out(rows);
  if (utility_ == UtilityKind::NegVariance) {
    const Eigen::Matrix<double, Eigen::Dynamic, 2> m = table.prob_zero() * moments_;
    for (Eigen::Index r = 0; r < rows; ++r) out(r) = combine(m(r, 0), m(r, 1), 0.0, 0.0, 0.0);
    return out;
  }
  Eigen::Matrix<double, Eigen::Dynamic, 2> rhs(w_.size(), 2);
  rhs.col(0) = w_;
  rhs.col(1) = w_log_w_;
  const Eigen::Matrix<double, Eigen::Dynamic, 2> m = table.prob_zero() * rhs;
  const Eigen::VectorXd b0 = table.p0_log_p0() * w_;
  const Eigen::VectorXd b1 = table.p1_log_p1() * w_;
  for (Eigen::Index r = 0; r < rows; ++r) out(r) = combine(m(r, 0), 0.0, m(r, 1), b0(r), b1(r));
  return out;
}

double expected_posterior_variance(const Distribution& dist, const LikelihoodModel& model,
                                   double t) {
  return -UtilityScorer(dist, model, UtilityKind::NegVariance).score(t);
}

std::size_t first_argmax(const Eigen::VectorXd& scores) {
  if (scores.size() == 0) throw std::invalid_argument("first_argmax: empty score vector");
  const double best = scores.maxCoeff();
  for (Eigen::Index j = 0; j < scores.size(); ++j)
    if (scores(j) >= best - kTieTolerance) return static_cast<std::size_t>(j);
  return 0;
}

OptimizedDesign optimize_experiment(const Distribution& dist, const LikelihoodModel& model,
                                    UtilityKind utility, const DesignDomain& domain) {
  const LikelihoodTable coarse(model, domain.coarse_grid(), dist.points());
  return optimize_experiment(dist, model, utility, domain, coarse);
}

OptimizedDesign optimize_experiment(const Distribution& dist, const LikelihoodModel& model,
                                    UtilityKind utility, const DesignDomain& domain,
                                    const LikelihoodTable& coarse) {
  domain.validate();
  const auto& grid = coarse.times();
  if (grid.size() != static_cast<std::size_t>(domain.n_grid) || grid.front() != domain.t_min ||
      grid.back() != domain.t_max)
    throw std::invalid_argument("optimize_experiment: table does not match the design domain");

  const UtilityScorer scorer(dist, model, utility);
  const Eigen::VectorXd scores = scorer.score_table(coarse);
  const std::size_t j = first_argmax(scores);
  OptimizedDesign best{grid[j], scores(static_cast<Eigen::Index>(j))};

  const double lo = grid[j > 0 ? j - 1 : 0];
  const double hi = grid[std::min(j + 1, grid.size() - 1)];
  const auto refined = detail::golden_section_maximize(
      [&](double t) { return scorer.score(t); }, lo, hi, domain.refine_tol);
  if (refined.fx > best.utility) best = {refined.x, refined.fx};
  return best;
}

OptimizedDesign best_on_grid(const Distribution& dist, const LikelihoodModel& model,
                             UtilityKind utility, const LikelihoodTable& table) {
  const Eigen::VectorXd scores = UtilityScorer(dist, model, utility).score_table(table);
  const std::size_t j = first_argmax(scores);
  return {table.times()[j], scores(static_cast<Eigen::Index>(j))};
}

}  // namespace hamest
