#include "recopt/mim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "recopt/errors.hpp"

namespace recopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Max of tilt * (1 - v_i) over the support; subtracting it from every
// exponent keeps the tilted sums representable.
double exponent_shift(double tilt, const ProbVector& v) {
  double m = -kInf;
  for (double vi : v) {
    if (vi > 0.0) m = std::max(m, tilt * (1.0 - vi));
  }
  return m;
}

// Index of the unique extreme entry over the support. smallest = true picks
// the minimum (the +inf tilt limit), false the maximum (-inf).
std::size_t unique_support_extreme(const ProbVector& v, bool smallest) {
  double best = smallest ? kInf : -kInf;
  std::size_t idx = 0;
  int count = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double vi = v[i];
    if (vi <= 0.0) continue;
    if (vi == best) {
      ++count;
    } else if (smallest ? vi < best : vi > best) {
      best = vi;
      idx = i;
      count = 1;
    }
  }
  if (count != 1) {
    throw AmbiguousExtremum(
        std::string("tied ") + (smallest ? "minimum" : "maximum") +
        " entry; the infinite-tilt limit needs a unique extreme class");
  }
  return idx;
}

}  // namespace

double importance_weight(double u, double tilt) {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error("importance_weight: utility probability must lie in (0,1), got " +
                std::to_string(u));
  }
  if (!std::isfinite(tilt)) {
    throw Error("importance_weight: tilt must be finite");
  }
  const double w = u * std::exp(tilt * (1.0 - u));
  if (!std::isfinite(w)) {
    throw NonFiniteResult("importance_weight overflow at tilt = " +
                          std::to_string(tilt));
  }
  return w;
}

double tilted_mean(double tilt, const ProbVector& v) {
  if (std::isinf(tilt)) {
    double best = tilt > 0 ? kInf : -kInf;
    for (double vi : v) {
      if (vi <= 0.0) continue;
      best = tilt > 0 ? std::min(best, vi) : std::max(best, vi);
    }
    return best;
  }
  const double shift = exponent_shift(tilt, v);
  double num = 0.0;
  double den = 0.0;
  for (double vi : v) {
    if (vi <= 0.0) continue;
    const double e = std::exp(tilt * (1.0 - vi) - shift);
    num += vi * vi * e;
    den += vi * e;
  }
  return num / den;
}

double tilted_mean_derivative(double tilt, const ProbVector& v) {
  const double shift = exponent_shift(tilt, v);
  std::vector<double> scaled(v.size(), 0.0);
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= 0.0) continue;
    scaled[i] = std::exp(tilt * (1.0 - v[i]) - shift);
    den += v[i] * scaled[i];
  }
  double num = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= 0.0) continue;
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[j] <= 0.0) continue;
      const double gap = v[i] - v[j];
      if (gap == 0.0) continue;
      num += v[i] * v[j] * gap * gap * scaled[i] * scaled[j];
    }
  }
  return -num / (den * den);
}

double tilted_prob(double tilt, std::size_t x, const ProbVector& u) {
  if (x >= u.size()) {
    throw IndexOutOfRange("class index " + std::to_string(x) + " for N = " +
                          std::to_string(u.size()));
  }
  if (std::isinf(tilt)) {
    return unique_support_extreme(u, tilt > 0) == x ? 1.0 : 0.0;
  }
  if (u[x] <= 0.0) return 0.0;
  const double shift = exponent_shift(tilt, u);
  double den = 0.0;
  for (double ui : u) {
    if (ui > 0.0) den += ui * std::exp(tilt * (1.0 - ui) - shift);
  }
  return u[x] * std::exp(tilt * (1.0 - u[x]) - shift) / den;
}

ProbVector tilted_distribution(double tilt, const ProbVector& u) {
  std::vector<double> p(u.size(), 0.0);
  if (std::isinf(tilt)) {
    p[unique_support_extreme(u, tilt > 0)] = 1.0;
    return ProbVector::boundary(std::move(p));
  }
  const double shift = exponent_shift(tilt, u);
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] <= 0.0) continue;
    p[i] = u[i] * std::exp(tilt * (1.0 - u[i]) - shift);
    total += p[i];
  }
  for (double& pi : p) pi /= total;
  // boundary(): extreme finite tilts can legitimately underflow the far
  // classes to zero.
  return ProbVector::boundary(std::move(p));
}

}  // namespace recopt
