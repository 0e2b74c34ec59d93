#include "hamest/model.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "hamest/format.hpp"

namespace hamest {

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

Outcome outcome_from_int(int value) {
  if (value == 0) return Outcome::Zero;
  if (value == 1) return Outcome::One;
  throw std::invalid_argument("outcome must be 0 or 1, got " + std::to_string(value));
}

LikelihoodModel LikelihoodModel::ideal() { return LikelihoodModel(Kind::Ideal, 1.0, INFINITY); }

LikelihoodModel LikelihoodModel::noisy(double visibility, double t2) {
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::invalid_argument("noisy model: visibility must lie in [0,1]");
  if (!(t2 > 0.0)) throw std::invalid_argument("noisy model: t2 must be positive");
  return LikelihoodModel(Kind::Noisy, visibility, t2);
}

double LikelihoodModel::prob_zero(double omega, double t) const {
  const double c = std::cos(omega * t);
  if (kind_ == Kind::Ideal) return 0.5 + 0.5 * c;
  return 0.5 + 0.5 * visibility_ * std::exp(-t / t2_) * c;
}

double LikelihoodModel::probability(double omega, double t, Outcome d) const {
  if (!(t >= 0.0)) throw std::domain_error("likelihood: evolution time must be non-negative");
  const double p0 = prob_zero(omega, t);
  return d == Outcome::Zero ? p0 : 1.0 - p0;
}

std::string LikelihoodModel::descriptor() const {
  if (kind_ == Kind::Ideal) return "ideal";
  return "noisy(visibility=" + format_double(visibility_) + ";t2=" + format_double(t2_) + ")";
}

double half_decay_t2(double half_time) { return half_time / std::log(2.0); }

}  // namespace hamest
