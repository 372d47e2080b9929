#pragma once

#include <optional>
#include <string_view>

#include "recopt/prob.hpp"
#include "recopt/revenue.hpp"

namespace recopt {

// The eight operating regimes of the constrained problem, numbered in the
// conventional order. Infeasible regimes have no distribution meeting the
// revenue floor; tilted regimes need a nonzero tilt; the remaining feasible
// regimes are served by the utility distribution itself.
enum class RegimeCase : int {
  advertising_utility = 1,     // beta <= beta_0
  advertising_tilted = 2,      // beta_0 < beta <= beta_edge, tilt > 0
  advertising_infeasible = 3,  // beta > beta_edge
  neutral_utility = 4,         // beta <= beta_ne
  neutral_infeasible = 5,      // beta > beta_ne
  noncommercial_tilted = 6,    // beta_0 < beta <= beta_edge, tilt < 0
  noncommercial_utility = 7,   // beta <= beta_0
  noncommercial_infeasible = 8 // beta > beta_edge
};

std::string_view to_string(RegimeCase c) noexcept;

struct Regime {
  RegimeCase id = RegimeCase::advertising_utility;
  SystemKind system = SystemKind::advertising;
  bool feasible = false;
  bool tilt_needed = false;
};

// Places (params, u, beta) into its regime by comparing beta against the
// thresholds. Boundary betas belong to the feasible side; beta == beta_edge
// is still feasible (served by the degenerate one-point distribution).
Regime classify_regime(const RevenueParams& params, const ProbVector& u,
                       double beta);

// Solves tilted_mean(tilt, u) = target by bisection with an exponentially
// grown initial bracket. Requires min(u) < target < max(u); the solution is
// unique by strict monotonicity. tol bounds |tilted_mean - target|.
double solve_tilt(const ProbVector& u, double target, double tol = 1e-12);

struct SolveResult {
  Regime regime;
  Thresholds thresholds;
  std::optional<double> alpha;       // absent for neutral systems
  std::optional<double> tilt;        // +-inf exactly at beta == beta_edge
  std::optional<ProbVector> p_star;  // present iff feasible
  std::optional<double> kl_bits;     // D(p_star || u) in bits
};

// Distribution of minimum relative entropy to u whose expected revenue
// reaches beta. Feasible non-tilted regimes return u itself; tilted regimes
// return the tilted distribution at the unique tilt meeting the constraint
// with equality; at beta == beta_edge the optimum degenerates onto the
// extreme class (AmbiguousExtremum if that class is tied). Infeasible betas
// yield a result without p_star rather than an error.
SolveResult optimal_distribution(const RevenueParams& params,
                                 const ProbVector& u, double beta);

// First-order optimality residuals of a feasible solve.
struct KktReport {
  double stationarity = 0.0;     // max_x |log p_x + 1 - log u_x -+ lambda (1-u_x) + mu|
  double primal_sum = 0.0;       // |sum_x p_x - 1|
  double slack = 0.0;            // revenue constraint slack, >= 0 when feasible
  double multiplier = 0.0;       // lambda = |tilt| >= 0
  double complementarity = 0.0;  // |lambda * slack|
  double max_residual() const noexcept;
};

// Checks the stationarity, primal, dual-sign and complementary-slackness
// conditions of a solve. Requires a feasible result with a finite tilt;
// throws NotApplicable otherwise.
KktReport verify_kkt(const SolveResult& result, const ProbVector& u,
                     const RevenueParams& params, double beta);

}  // namespace recopt
