#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "recopt/prob.hpp"

namespace recopt {

// Per-class economics of one push decision.
struct RevenueParams {
  double cost_push = 0.0;       // charged for every pushed item
  double reward_hit = 0.0;      // earned when the pushed item is desired
  double cost_miss_like = 0.0;  // lost when the pushed item is unwanted
  double reward_ad = 0.0;       // ad income when the pushed item is unwanted
  double cost_omit = 0.0;       // lost when a desired item is not pushed

  // Revenue per unit of unwanted-push probability mass. Its sign classifies
  // the system; see system_kind().
  double denominator() const noexcept {
    return reward_ad - reward_hit - cost_miss_like - cost_omit;
  }
};

enum class SystemKind { advertising, noncommercial, neutral };

std::string_view to_string(SystemKind kind) noexcept;

// Sign classification of denominator(): positive = advertising (mismatch
// pays), negative = noncommercial (mismatch costs), zero = neutral.
// Throws Error when any parameter is not finite.
SystemKind system_kind(const RevenueParams& params);

// Normalized revenue demand alpha = (beta + cost_push - reward_hit) / d.
// The revenue floor beta translates into the constraint
//   sum_x p_x (1 - u_x) >= alpha   (advertising)
//   sum_x p_x (1 - u_x) <= alpha   (noncommercial).
// Throws NeutralSystem when the denominator is zero.
double alpha(const RevenueParams& params, double beta);

// Expected per-decision revenue d * sum_x p_x (1 - u_x) + reward_hit -
// cost_push of recommending with p against utility distribution u.
double expected_revenue(const ProbVector& p, const ProbVector& u,
                        const RevenueParams& params);

// Payoff of one decision, indexed [desired is false][pushed is false]:
//   [0][0] desired, pushed       reward_hit - cost_push
//   [0][1] desired, not pushed   -cost_omit
//   [1][0] unwanted, pushed      reward_ad - cost_push - cost_miss_like
//   [1][1] unwanted, not pushed  0
using RevenueMatrix = std::array<std::array<double, 2>, 2>;
RevenueMatrix revenue_matrix(const RevenueParams& params) noexcept;

// Critical revenue floors for a given utility distribution:
//   beta_0    largest beta the untouched utility distribution meets,
//             (1 - collision_probability(u)) * d + reward_hit - cost_push
//   beta_edge largest feasible beta at all; absent for neutral systems
//             (-d * min(u) + ... for advertising, -d * max(u) + ... for
//             noncommercial)
//   beta_ne   reward_hit - cost_push, the flat revenue of a neutral system
struct Thresholds {
  double beta_0 = 0.0;
  std::optional<double> beta_edge;
  double beta_ne = 0.0;
};

Thresholds thresholds(const RevenueParams& params, const ProbVector& u);

}  // namespace recopt
