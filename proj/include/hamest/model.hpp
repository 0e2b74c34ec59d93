#pragma once

#include <string>

namespace hamest {

/// Outcome of a single projective measurement in the sigma_x basis.
enum class Outcome : int { Zero = 0, One = 1 };

/// Converts 0/1 to an Outcome; anything else throws std::invalid_argument.
Outcome outcome_from_int(int value);

inline int to_int(Outcome d) { return static_cast<int>(d); }

/// A single design choice: how long the Hamiltonian acts before measuring.
struct Experiment {
  double time = 0.0;
};

/// Two-outcome likelihood for the precession model H = (omega/2) sigma_z with
/// |+> input and sigma_x readout.
///
/// Ideal:  Pr(0 | omega, t) = cos^2(omega t / 2) = 1/2 + 1/2 cos(omega t)
/// Noisy:  Pr(0 | omega, t) = 1/2 + (visibility/2) exp(-t / t2) cos(omega t)
///
/// Pr(1 | omega, t) is always computed as the complement of Pr(0 | omega, t).
class LikelihoodModel {
 public:
  enum class Kind { Ideal, Noisy };

  static LikelihoodModel ideal();
  /// Throws std::invalid_argument unless visibility in [0,1] and t2 > 0.
  static LikelihoodModel noisy(double visibility, double t2);

  Kind kind() const { return kind_; }
  double visibility() const { return visibility_; }
  double t2() const { return t2_; }

  /// Pr(d = 0 | omega, t). Requires t >= 0 (not checked; see probability()).
  double prob_zero(double omega, double t) const;

  /// Pr(d | omega, t). Throws std::domain_error for negative t.
  double probability(double omega, double t, Outcome d) const;

  /// Stable one-token description, e.g. "ideal" or
  /// "noisy(visibility=0.75;t2=45.32...)". Contains no commas.
  std::string descriptor() const;

 private:
  LikelihoodModel(Kind kind, double visibility, double t2)
      : kind_(kind), visibility_(visibility), t2_(t2) {}

  Kind kind_;
  double visibility_;
  double t2_;
};

/// Free-function form of LikelihoodModel::probability.
inline double outcome_probability(const LikelihoodModel& model, double omega, double t,
                                  Outcome d) {
  return model.probability(omega, t, d);
}

/// Decay constant t2 for which exp(-t/t2) equals 1/2 at t = half_time.
double half_decay_t2(double half_time);

}  // namespace hamest
