#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hamest/inference.hpp"
#include "hamest/model.hpp"

namespace hamest {

/// Which utility scores a candidate experiment.
///  - InfoGain: expected posterior negative entropy (information gain up to a
///    constant).
///  - NegVariance: expected negative posterior variance. For a single step this
///    is minus the Bayes risk of the posterior-mean estimator.
enum class UtilityKind { InfoGain, NegVariance };

std::string to_string(UtilityKind kind);
/// Accepts "infogain" or "negvar"; throws std::invalid_argument otherwise.
UtilityKind parse_utility(const std::string& name);

/// Search space for the evolution time.
struct DesignDomain {
  double t_min = 0.0;
  double t_max = 12.0 * std::numbers::pi;
  int n_grid = 240;         // coarse scan resolution
  double refine_tol = 1e-6; // golden-section bracket width at termination

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
  /// n_grid equally spaced times from t_min to t_max inclusive.
  std::vector<double> coarse_grid() const;
};

/// n equally spaced values from lo to hi inclusive (n >= 2), or {lo} for n == 1.
std::vector<double> linspace(double lo, double hi, int n);

/// Expected utility of measuring at time t, computed by forming both
/// posteriors explicitly. An outcome with zero predictive probability
/// contributes nothing.
double expected_utility(const Distribution& dist, const LikelihoodModel& model, double t,
                        UtilityKind utility);

/// Pr(0 | omega_i, t) for a fixed set of times and a fixed omega grid, with the
/// p log p terms that the information-gain score needs.
class LikelihoodTable {
 public:
  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  LikelihoodTable(const LikelihoodModel& model, std::vector<double> times,
                  std::span<const double> omegas);

  const std::vector<double>& times() const { return times_; }
  std::size_t n_points() const { return static_cast<std::size_t>(p0_.cols()); }
  const RowMatrix& prob_zero() const { return p0_; }
  const RowMatrix& p0_log_p0() const { return p0_log_p0_; }
  const RowMatrix& p1_log_p1() const { return p1_log_p1_; }

 private:
  std::vector<double> times_;
  RowMatrix p0_;
  RowMatrix p0_log_p0_;
  RowMatrix p1_log_p1_;
};

/// Scores experiments against one fixed distribution using moment identities
/// instead of materializing posteriors:
///
///   NegVariance:  -(v - s^2 / (p0 p1)),  s = sum_i w_i l_i (omega_i - mean)
///   InfoGain:     sum_d [ sum_i w_i l_di (ln w_i + ln l_di) - p_d ln p_d ] - ln(cell)
///
/// where l_i = Pr(0 | omega_i, t). Agrees with expected_utility to rounding.
class UtilityScorer {
 public:
  UtilityScorer(const Distribution& dist, const LikelihoodModel& model, UtilityKind utility);

  UtilityKind utility() const { return utility_; }

  /// Score at an arbitrary time.
  double score(double t) const;
  /// Scores at every time of the table. The table must share dist's grid.
  Eigen::VectorXd score_table(const LikelihoodTable& table) const;

 private:
  double combine(double p0, double s, double a0, double b0, double b1) const;

  LikelihoodModel model_;
  UtilityKind utility_;
  Eigen::VectorXd omega_;
  Eigen::VectorXd w_;
  Eigen::Matrix<double, Eigen::Dynamic, 2> moments_;  // columns: w, w*x
  Eigen::VectorXd w_log_w_;
  double var_ = 0.0;
  double sum_w_log_w_ = 0.0;
  double log_cell_ = 0.0;
};

/// Expected posterior variance after measuring at t (the one-step Bayes risk).
double expected_posterior_variance(const Distribution& dist, const LikelihoodModel& model,
                                   double t);

struct OptimizedDesign {
  double time = 0.0;
  double utility = 0.0;
};

/// Index of the best score; among scores within 1e-12 of the best, the first.
std::size_t first_argmax(const Eigen::VectorXd& scores);

/// Global maximization of the expected utility over the domain: coarse scan
/// over domain.coarse_grid(), then golden-section refinement on the cells
/// adjacent to the best coarse point. The refined point replaces the coarse
/// one only if it scores strictly higher, so the result dominates the scan.
OptimizedDesign optimize_experiment(const Distribution& dist, const LikelihoodModel& model,
                                    UtilityKind utility, const DesignDomain& domain);

/// Same, reusing a prebuilt table over domain.coarse_grid().
OptimizedDesign optimize_experiment(const Distribution& dist, const LikelihoodModel& model,
                                    UtilityKind utility, const DesignDomain& domain,
                                    const LikelihoodTable& coarse);

/// Best time among the table's times only (no refinement).
OptimizedDesign best_on_grid(const Distribution& dist, const LikelihoodModel& model,
                             UtilityKind utility, const LikelihoodTable& table);

}  // namespace hamest
