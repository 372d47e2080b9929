#include "recopt/revenue.hpp"

#include <cmath>
#include <string>

#include "recopt/errors.hpp"

namespace recopt {

std::string_view to_string(SystemKind kind) noexcept {
  switch (kind) {
    case SystemKind::advertising: return "advertising";
    case SystemKind::noncommercial: return "noncommercial";
    case SystemKind::neutral: return "neutral";
  }
  return "unknown";
}

SystemKind system_kind(const RevenueParams& params) {
  const bool finite =
      std::isfinite(params.cost_push) && std::isfinite(params.reward_hit) &&
      std::isfinite(params.cost_miss_like) && std::isfinite(params.reward_ad) &&
      std::isfinite(params.cost_omit);
  if (!finite) throw Error("revenue parameters must all be finite");
  const double d = params.denominator();
  if (d > 0.0) return SystemKind::advertising;
  if (d < 0.0) return SystemKind::noncommercial;
  return SystemKind::neutral;
}

double alpha(const RevenueParams& params, double beta) {
  if (system_kind(params) == SystemKind::neutral) {
    throw NeutralSystem("alpha undefined: zero revenue denominator");
  }
  return (beta + params.cost_push - params.reward_hit) / params.denominator();
}

double expected_revenue(const ProbVector& p, const ProbVector& u,
                        const RevenueParams& params) {
  if (p.size() != u.size()) {
    throw LengthMismatch("expected_revenue: sizes " + std::to_string(p.size()) +
                         " and " + std::to_string(u.size()));
  }
  double miss = 0.0;  // sum_x p_x (1 - u_x)
  for (std::size_t i = 0; i < p.size(); ++i) miss += p[i] * (1.0 - u[i]);
  return params.denominator() * miss + params.reward_hit - params.cost_push;
}

RevenueMatrix revenue_matrix(const RevenueParams& params) noexcept {
  return {{{params.reward_hit - params.cost_push, -params.cost_omit},
           {params.reward_ad - params.cost_push - params.cost_miss_like, 0.0}}};
}

Thresholds thresholds(const RevenueParams& params, const ProbVector& u) {
  const SystemKind kind = system_kind(params);
  const double d = params.denominator();
  Thresholds t;
  t.beta_0 = (1.0 - collision_probability(u)) * d + params.reward_hit -
             params.cost_push;
  t.beta_ne = params.reward_hit - params.cost_push;
  if (kind != SystemKind::neutral) {
    const double u_edge = kind == SystemKind::advertising ? u.min_value()
                                                          : u.max_value();
    t.beta_edge = -d * u_edge + params.reward_ad - params.cost_push -
                  params.cost_miss_like - params.cost_omit;
  }
  return t;
}

}  // namespace recopt
