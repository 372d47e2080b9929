#include "recopt/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace recopt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Lattice points this close to the constraint boundary still count as
// feasible; exact-boundary vertices otherwise drop out to float roundoff.
constexpr double kFeasTol = 1e-12;

}  // namespace

std::uint64_t simplex_point_count(std::size_t n, int m) {
  // C(m + n - 1, n - 1), multiplicative form.
  std::uint64_t num = 1;
  for (std::size_t k = 1; k < n; ++k) {
    num = num * static_cast<std::uint64_t>(m + k) / k;
  }
  return num;
}

double lattice_kl_bound_bits(int resolution) { return 0.4 / resolution; }

OracleOptimum brute_force_optimum(const ProbVector& u,
                                  const RevenueParams& params, double beta,
                                  const GridSpec& grid) {
  const std::size_t n = u.size();
  if (n > grid.max_dimension) {
    throw DimensionTooLarge("grid search over " + std::to_string(n) +
                            " classes; cap is " +
                            std::to_string(grid.max_dimension));
  }
  if (grid.resolution < 10) {
    throw Error("grid resolution must be at least 10");
  }
  const int m = grid.resolution;
  const SystemKind kind = system_kind(params);

  OracleOptimum best;
  if (kind == SystemKind::neutral) {
    // Revenue does not depend on p; either everything is feasible or
    // nothing is.
    if (beta > params.reward_hit - params.cost_push) return best;
  }
  const double a =
      kind == SystemKind::neutral ? 0.0 : alpha(params, beta);

  // Per-class lookup tables over the count k: divergence contribution
  // (k/m) log((k/m) / u_i) and constraint contribution (k/m)(1 - u_i).
  std::vector<std::vector<double>> kl_term(n), miss_term(n);
  for (std::size_t i = 0; i < n; ++i) {
    kl_term[i].resize(m + 1);
    miss_term[i].resize(m + 1);
    const double log_u = std::log(u[i]);
    for (int k = 0; k <= m; ++k) {
      const double p = static_cast<double>(k) / m;
      kl_term[i][k] = k == 0 ? 0.0 : p * (std::log(p) - log_u);
      miss_term[i][k] = p * (1.0 - u[i]);
    }
  }

  double best_kl = std::numeric_limits<double>::infinity();
  double best_miss = 0.0;
  std::vector<int> best_counts;
  for_each_simplex_point(n, m, [&](std::span<const int> counts) {
    double kl = 0.0;
    double miss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      kl += kl_term[i][counts[i]];
      miss += miss_term[i][counts[i]];
    }
    switch (kind) {
      case SystemKind::advertising:
        if (miss < a - kFeasTol) return;
        break;
      case SystemKind::noncommercial:
        if (miss > a + kFeasTol) return;
        break;
      case SystemKind::neutral:
        break;
    }
    if (kl < best_kl) {
      best_kl = kl;
      best_miss = miss;
      best_counts.assign(counts.begin(), counts.end());
    }
  });

  if (best_counts.empty()) return best;
  best.feasible = true;
  best.probs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    best.probs[i] = static_cast<double>(best_counts[i]) / m;
  }
  best.kl_bits = best_kl / std::numbers::ln2;
  best.revenue =
      params.denominator() * best_miss + params.reward_hit - params.cost_push;
  return best;
}

OracleComparison compare_with_oracle(const SolveResult& result,
                                     const OracleOptimum& oracle,
                                     const GridSpec& grid) {
  OracleComparison cmp;
  cmp.grid_bound_bits = lattice_kl_bound_bits(grid.resolution);
  cmp.delta_kl_bits = kNaN;
  if (result.regime.feasible && oracle.feasible) {
    cmp.feasibility_match = true;
    cmp.delta_kl_bits = oracle.kl_bits - *result.kl_bits;
  } else if (result.regime.feasible && !oracle.feasible) {
    cmp.lattice_miss = true;
  } else if (!result.regime.feasible && oracle.feasible) {
    throw FeasibilityMismatch(
        "exhaustive search found a feasible lattice point where the closed "
        "form reports infeasibility");
  } else {
    cmp.feasibility_match = true;
  }
  return cmp;
}

}  // namespace recopt
