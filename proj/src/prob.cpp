#include "recopt/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "recopt/errors.hpp"

namespace recopt {
namespace {

double entry_sum(const std::vector<double>& probs) {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

std::vector<double> checked(std::vector<double> probs, double sum_tol,
                            bool allow_zero) {
  if (probs.size() < 2) {
    throw TooShort("need at least two classes, got " +
                   std::to_string(probs.size()));
  }
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    const bool ok = std::isfinite(p) && (allow_zero ? p >= 0.0 : p > 0.0);
    if (!ok) {
      throw NonPositiveEntry("entry " + std::to_string(i) + " = " +
                             std::to_string(p) +
                             (allow_zero ? ", must be finite and >= 0"
                                         : ", must be finite and > 0"));
    }
  }
  const double sum = entry_sum(probs);
  if (std::abs(sum - 1.0) > sum_tol) {
    throw SumOutOfTolerance("entries sum to " + std::to_string(sum) +
                            ", tolerance " + std::to_string(sum_tol));
  }
  // Rescale unless the sum is already exact to rounding noise; dividing a
  // near-exact input would only churn its last bits, and leaving it alone
  // makes construction idempotent.
  if (std::abs(sum - 1.0) > 64 * std::numeric_limits<double>::epsilon()) {
    for (double& p : probs) p /= sum;
  }
  return probs;
}

}  // namespace

ProbVector::ProbVector(std::vector<double> probs, double sum_tol) {
  probs_ = checked(std::move(probs), sum_tol, false);
}

ProbVector ProbVector::boundary(std::vector<double> probs, double sum_tol) {
  ProbVector v;
  v.probs_ = checked(std::move(probs), sum_tol, true);
  return v;
}

double ProbVector::min_value() const noexcept {
  return *std::min_element(probs_.begin(), probs_.end());
}

double ProbVector::max_value() const noexcept {
  return *std::max_element(probs_.begin(), probs_.end());
}

std::size_t ProbVector::argmin() const noexcept {
  return static_cast<std::size_t>(
      std::min_element(probs_.begin(), probs_.end()) - probs_.begin());
}

std::size_t ProbVector::argmax() const noexcept {
  return static_cast<std::size_t>(
      std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

bool ProbVector::min_unique() const noexcept {
  return std::count(probs_.begin(), probs_.end(), min_value()) == 1;
}

bool ProbVector::max_unique() const noexcept {
  return std::count(probs_.begin(), probs_.end(), max_value()) == 1;
}

bool ProbVector::full_support() const noexcept {
  return std::all_of(probs_.begin(), probs_.end(),
                     [](double p) { return p > 0.0; });
}

double kl_divergence(const ProbVector& p, const ProbVector& u, LogBase base) {
  if (p.size() != u.size()) {
    throw LengthMismatch("kl_divergence: sizes " + std::to_string(p.size()) +
                         " and " + std::to_string(u.size()));
  }
  double nats = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) nats += p[i] * std::log(p[i] / u[i]);
  }
  return base == LogBase::bits ? nats / std::numbers::ln2 : nats;
}

double collision_probability(const ProbVector& u) noexcept {
  double s = 0.0;
  for (double ui : u) s += ui * ui;
  return s;
}

}  // namespace recopt
