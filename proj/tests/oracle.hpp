#pragma once

// Test-only reference computations. Nothing here calls into the library's
// inference/design/risk code paths.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace hamest::oracle {

// Composite 5-point Gauss-Legendre quadrature on [a,b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 400) {
  static constexpr std::array<double, 5> x = {0.0, -0.5384693101056831, 0.5384693101056831,
                                              -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> w = {0.5688888888888889, 0.4786286704993665,
                                              0.4786286704993665, 0.2369268850561891,
                                              0.2369268850561891};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < 5; ++k) total += w[k] * f(mid + 0.5 * h * x[k]);
  }
  return 0.5 * h * total;
}

struct Moments {
  double mass;
  double mean;
  double variance;
};

// Moments of the density proportional to g on [a,b].
inline Moments moments(const std::function<double(double)>& g, double a, double b) {
  const double z = integrate(g, a, b);
  const double m = integrate([&](double x) { return x * g(x); }, a, b) / z;
  const double v = integrate([&](double x) { return (x - m) * (x - m) * g(x); }, a, b) / z;
  return {z, m, v};
}

inline double born_zero(double omega, double t) {
  const double c = std::cos(0.5 * omega * t);
  return c * c;
}

// One-step Bayes risk of the posterior-mean estimator on a discrete
// distribution, enumerated as sum_d sum_i w_i p(d|omega_i) (omega_i - mu_d)^2.
inline double one_step_risk(const std::vector<double>& omegas, const std::vector<double>& w,
                            const std::function<double(double)>& p_zero) {
  double risk = 0.0;
  for (int d = 0; d < 2; ++d) {
    double mass = 0.0, first = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double l = d == 0 ? p_zero(omegas[i]) : 1.0 - p_zero(omegas[i]);
      mass += w[i] * l;
      first += w[i] * l * omegas[i];
    }
    if (mass <= 0.0) continue;
    const double mu = first / mass;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double l = d == 0 ? p_zero(omegas[i]) : 1.0 - p_zero(omegas[i]);
      risk += w[i] * l * (omegas[i] - mu) * (omegas[i] - mu);
    }
  }
  return risk;
}

// Average mean squared error of the posterior-mean estimator for a fixed
// schedule, by direct enumeration of every outcome sequence:
//   sum_seq sum_i w_i Pr(seq | omega_i) (omega_i - mu_seq)^2.
inline double schedule_amse(const std::vector<double>& omegas, const std::vector<double>& w,
                            const std::vector<double>& times,
                            const std::function<double(double, double)>& p_zero) {
  const std::size_t n = times.size();
  double total = 0.0;
  std::vector<double> lik(w.size());
  for (unsigned long seq = 0; seq < (1ul << n); ++seq) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      double l = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double p0 = p_zero(omegas[i], times[k]);
        l *= ((seq >> k) & 1ul) ? 1.0 - p0 : p0;
      }
      lik[i] = l;
    }
    double mass = 0.0, first = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      mass += w[i] * lik[i];
      first += w[i] * lik[i] * omegas[i];
    }
    if (mass <= 0.0) continue;
    const double mu = first / mass;
    for (std::size_t i = 0; i < w.size(); ++i)
      total += w[i] * lik[i] * (omegas[i] - mu) * (omegas[i] - mu);
  }
  return total;
}

// Least-squares R^2 of y against x.
inline double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - slope * sx) / n;
  const double ybar = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (slope * x[i] + icept);
    ss_res += r * r;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  return 1.0 - ss_res / ss_tot;
}

}  // namespace hamest::oracle
