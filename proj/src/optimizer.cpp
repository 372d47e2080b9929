#include "recopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "recopt/errors.hpp"
#include "recopt/mim.hpp"

namespace recopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxIter = 200;

// log(sum_i u_i e^{tilt (1 - u_i)}), shift-stabilized.
double log_tilted_total(double tilt, const ProbVector& u) {
  double shift = -kInf;
  for (double ui : u) {
    if (ui > 0.0) shift = std::max(shift, tilt * (1.0 - ui));
  }
  double s = 0.0;
  for (double ui : u) {
    if (ui > 0.0) s += ui * std::exp(tilt * (1.0 - ui) - shift);
  }
  return shift + std::log(s);
}

}  // namespace

std::string_view to_string(RegimeCase c) noexcept {
  switch (c) {
    case RegimeCase::advertising_utility: return "advertising: utility optimal";
    case RegimeCase::advertising_tilted: return "advertising: tilted";
    case RegimeCase::advertising_infeasible: return "advertising: infeasible";
    case RegimeCase::neutral_utility: return "neutral: utility optimal";
    case RegimeCase::neutral_infeasible: return "neutral: infeasible";
    case RegimeCase::noncommercial_tilted: return "noncommercial: tilted";
    case RegimeCase::noncommercial_utility: return "noncommercial: utility optimal";
    case RegimeCase::noncommercial_infeasible: return "noncommercial: infeasible";
  }
  return "unknown";
}

Regime classify_regime(const RevenueParams& params, const ProbVector& u,
                       double beta) {
  const SystemKind kind = system_kind(params);
  const Thresholds th = thresholds(params, u);
  Regime r;
  r.system = kind;
  switch (kind) {
    case SystemKind::advertising:
      if (beta <= th.beta_0) {
        r.id = RegimeCase::advertising_utility;
        r.feasible = true;
      } else if (beta <= *th.beta_edge) {
        r.id = RegimeCase::advertising_tilted;
        r.feasible = true;
        r.tilt_needed = true;
      } else {
        r.id = RegimeCase::advertising_infeasible;
      }
      break;
    case SystemKind::neutral:
      if (beta <= th.beta_ne) {
        r.id = RegimeCase::neutral_utility;
        r.feasible = true;
      } else {
        r.id = RegimeCase::neutral_infeasible;
      }
      break;
    case SystemKind::noncommercial:
      if (beta <= th.beta_0) {
        r.id = RegimeCase::noncommercial_utility;
        r.feasible = true;
      } else if (beta <= *th.beta_edge) {
        r.id = RegimeCase::noncommercial_tilted;
        r.feasible = true;
        r.tilt_needed = true;
      } else {
        r.id = RegimeCase::noncommercial_infeasible;
      }
      break;
  }
  return r;
}

double solve_tilt(const ProbVector& u, double target, double tol) {
  const double lo_val = u.min_value();
  const double hi_val = u.max_value();
  if (!(target > lo_val && target < hi_val)) {
    throw TargetOutOfRange("target " + std::to_string(target) +
                           " outside (" + std::to_string(lo_val) + ", " +
                           std::to_string(hi_val) + ")");
  }
  // tilted_mean decreases from max(u) to min(u); bracket with g(lo) >= target
  // >= g(hi), growing the ends exponentially until both hold.
  double lo = -1.0;
  double hi = 1.0;
  for (int i = 0; tilted_mean(lo, u) < target; ++i) {
    if (i >= kMaxIter) throw NoConvergence("solve_tilt: bracket growth (low side)");
    lo *= 2.0;
  }
  for (int i = 0; tilted_mean(hi, u) > target; ++i) {
    if (i >= kMaxIter) throw NoConvergence("solve_tilt: bracket growth (high side)");
    hi *= 2.0;
  }
  for (int i = 0; i < kMaxIter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g = tilted_mean(mid, u);
    if (std::abs(g - target) <= tol) return mid;
    if (g > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw NoConvergence("solve_tilt: residual above tolerance after " +
                      std::to_string(kMaxIter) + " bisection steps");
}

SolveResult optimal_distribution(const RevenueParams& params,
                                 const ProbVector& u, double beta) {
  SolveResult res;
  res.regime = classify_regime(params, u, beta);
  res.thresholds = thresholds(params, u);
  if (res.regime.system != SystemKind::neutral) {
    res.alpha = alpha(params, beta);
  }
  if (!res.regime.feasible) return res;

  if (!res.regime.tilt_needed) {
    res.tilt = 0.0;
    res.p_star = u;
    res.kl_bits = 0.0;
    return res;
  }

  const bool advertising = res.regime.system == SystemKind::advertising;
  const double target = 1.0 - *res.alpha;  // required tilted mean of u
  const bool at_edge =
      beta == *res.thresholds.beta_edge ||
      (advertising ? target <= u.min_value() : target >= u.max_value());
  if (at_edge) {
    res.tilt = advertising ? kInf : -kInf;
  } else {
    res.tilt = solve_tilt(u, target);
  }
  res.p_star = tilted_distribution(*res.tilt, u);
  res.kl_bits = kl_divergence(*res.p_star, u, LogBase::bits);
  return res;
}

double KktReport::max_residual() const noexcept {
  return std::max({stationarity, primal_sum, std::max(0.0, -slack),
                   std::max(0.0, -multiplier), complementarity});
}

KktReport verify_kkt(const SolveResult& result, const ProbVector& u,
                     const RevenueParams& params, double beta) {
  if (!result.regime.feasible || !result.tilt || !result.p_star ||
      !std::isfinite(*result.tilt)) {
    throw NotApplicable(
        "verify_kkt needs a feasible solve with a finite tilt");
  }
  const double tilt = *result.tilt;
  const ProbVector& p = *result.p_star;
  if (p.size() != u.size()) throw LengthMismatch("verify_kkt: length mismatch");

  KktReport rep;
  rep.multiplier = std::abs(tilt);

  // Lagrangian stationarity: log p_x + 1 - log u_x - tilt (1 - u_x) + mu = 0
  // with mu = log_tilted_total - 1 absorbing the normalization.
  const double mu = log_tilted_total(tilt, u) - 1.0;
  double sum = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    sum += p[x];
    const double r =
        std::log(p[x]) + 1.0 - std::log(u[x]) - tilt * (1.0 - u[x]) + mu;
    rep.stationarity = std::max(rep.stationarity, std::abs(r));
  }
  rep.primal_sum = std::abs(sum - 1.0);

  // Constraint data recomputed from the original parameters rather than the
  // solve's own echo.
  const SystemKind kind = system_kind(params);
  if (kind == SystemKind::neutral) {
    rep.slack = params.reward_hit - params.cost_push - beta;
  } else {
    double miss = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) miss += p[x] * (1.0 - u[x]);
    const double a = alpha(params, beta);
    rep.slack = kind == SystemKind::advertising ? miss - a : a - miss;
  }
  rep.complementarity = std::abs(rep.multiplier * rep.slack);
  return rep;
}

}  // namespace recopt
