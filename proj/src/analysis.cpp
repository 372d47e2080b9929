#include "recopt/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "recopt/errors.hpp"
#include "recopt/mim.hpp"

namespace recopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Classes this close to the collision probability count as sitting on it;
// their crossover collapses into the origin.
constexpr double kGammaTol = 1e-12;
constexpr int kMaxIter = 300;

void check_index(const ProbVector& u, std::size_t x) {
  if (x >= u.size()) {
    throw IndexOutOfRange("class index " + std::to_string(x) + " for N = " +
                          std::to_string(u.size()));
  }
}

// Bisection for tilted_prob(tilt, x, u) = u_x between lo (value above u_x)
// and hi (value below). The endpoints need not be numerically ordered.
double bisect_crossing(const ProbVector& u, std::size_t x, double lo,
                       double hi, double tol) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = tilted_prob(mid, x, u);
    if (std::abs(f - u[x]) <= tol) return mid;
    if (f > u[x]) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw NoConvergence("crossover_tilt: residual above tolerance");
}

}  // namespace

double peak_tilt(const ProbVector& u, std::size_t x) {
  check_index(u, x);
  // Extreme classes never peak; their tilted probability is monotone and
  // tops out in the infinite-tilt limit.
  if (u[x] == u.min_value()) return kInf;
  if (u[x] == u.max_value()) return -kInf;
  return solve_tilt(u, u[x]);
}

std::optional<double> crossover_tilt(const ProbVector& u, std::size_t x,
                                     double tol) {
  check_index(u, x);
  if (u[x] == u.min_value() || u[x] == u.max_value()) return std::nullopt;
  const double gamma = collision_probability(u);
  if (std::abs(u[x] - gamma) <= kGammaTol) return std::nullopt;

  // The tilted probability starts at u_x, rises to its peak, then falls back
  // through u_x exactly once. Bracket that far side of the peak.
  const double peak = peak_tilt(u, x);
  const double side = u[x] < gamma ? 1.0 : -1.0;  // sign of peak and root

  double delta = 1e-6 * (1.0 + std::abs(peak));
  while (tilted_prob(peak + side * delta, x, u) <= u[x]) {
    delta /= 8.0;
    if (delta < 1e-15 * (1.0 + std::abs(peak))) {
      throw NoConvergence("crossover_tilt: no rise past the peak");
    }
  }
  const double near = peak + side * delta;

  double step = 1.0 + std::abs(peak);
  double far = peak + side * step;
  for (int i = 0; tilted_prob(far, x, u) > u[x]; ++i) {
    if (i >= kMaxIter) throw NoConvergence("crossover_tilt: bracket growth");
    step *= 2.0;
    far = peak + side * step;
  }

  return bisect_crossing(u, x, near, far, tol);
}

std::string_view to_string(SignRegion r) noexcept {
  switch (r) {
    case SignRegion::amplified_above: return "amplified-above";
    case SignRegion::amplified_below: return "amplified-below";
    case SignRegion::always_utility: return "always-utility";
  }
  return "unknown";
}

std::vector<ClassCrossover> crossover_report(const ProbVector& u) {
  const double gamma = collision_probability(u);
  std::vector<ClassCrossover> report;
  report.reserve(u.size());
  for (std::size_t x = 0; x < u.size(); ++x) {
    ClassCrossover c;
    c.index = x;
    c.peak = peak_tilt(u, x);
    c.crossover = crossover_tilt(u, x);
    if (std::abs(u[x] - gamma) <= kGammaTol) {
      c.region = SignRegion::always_utility;
    } else {
      c.region = u[x] < gamma ? SignRegion::amplified_above
                              : SignRegion::amplified_below;
    }
    report.push_back(std::move(c));
  }
  return report;
}

Partition crossover_partition(const ProbVector& u, double tilt) {
  constexpr double eq_tol = 1e-12;
  const ProbVector f = tilted_distribution(tilt, u);
  Partition part;
  for (std::size_t x = 0; x < u.size(); ++x) {
    if (f[x] > u[x] + eq_tol) {
      part.amplified.push_back(x);
    } else if (f[x] < u[x] - eq_tol) {
      part.attenuated.push_back(x);
    }
  }
  return part;
}

double peak_revenue(const RevenueParams& params, const ProbVector& u,
                    std::size_t x) {
  check_index(u, x);
  if (system_kind(params) == SystemKind::neutral) {
    throw NeutralSystem("peak_revenue undefined: zero revenue denominator");
  }
  return -params.denominator() * u[x] + params.reward_ad - params.cost_push -
         params.cost_miss_like - params.cost_omit;
}

SweepSeries sweep_tilt(const ProbVector& u, double tilt_min, double tilt_max,
                       std::size_t steps) {
  if (steps < 2) throw Error("sweep_tilt: need at least two grid points");
  if (!(tilt_min < tilt_max)) throw Error("sweep_tilt: empty tilt range");
  SweepSeries s;
  s.columns.push_back("varpi");
  for (std::size_t i = 0; i < u.size(); ++i) {
    s.columns.push_back("f_" + std::to_string(i + 1));
  }
  const double h = (tilt_max - tilt_min) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    const double tilt = tilt_min + h * static_cast<double>(k);
    const ProbVector f = tilted_distribution(tilt, u);
    std::vector<double> row;
    row.reserve(u.size() + 1);
    row.push_back(tilt);
    row.insert(row.end(), f.begin(), f.end());
    s.rows.push_back(std::move(row));
  }
  return s;
}

SweepSeries sweep_beta(const RevenueParams& params, const ProbVector& u,
                       double beta_min, double beta_max, std::size_t steps) {
  if (steps < 2) throw Error("sweep_beta: need at least two grid points");
  if (!(beta_min < beta_max)) throw Error("sweep_beta: empty beta range");
  SweepSeries s;
  s.columns = {"beta", "case", "alpha", "varpi"};
  for (std::size_t i = 0; i < u.size(); ++i) {
    s.columns.push_back("p" + std::to_string(i + 1));
  }
  s.columns.push_back("kl");
  s.columns.push_back("revenue");

  const double h = (beta_max - beta_min) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    const double beta = beta_min + h * static_cast<double>(k);
    const SolveResult res = optimal_distribution(params, u, beta);
    std::vector<double> row(s.columns.size(), kNaN);
    row[0] = beta;
    row[1] = static_cast<double>(static_cast<int>(res.regime.id));
    if (res.alpha) row[2] = *res.alpha;
    if (res.regime.feasible) {
      row[3] = *res.tilt;
      for (std::size_t i = 0; i < u.size(); ++i) row[4 + i] = (*res.p_star)[i];
      row[4 + u.size()] = *res.kl_bits;
      row[5 + u.size()] = expected_revenue(*res.p_star, u, params);
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

}  // namespace recopt
