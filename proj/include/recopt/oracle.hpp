#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recopt/errors.hpp"
#include "recopt/optimizer.hpp"
#include "recopt/prob.hpp"
#include "recopt/revenue.hpp"

namespace recopt {

// Lattice used by the exhaustive reference search: all distributions with
// entries k_i / resolution. The point count C(m + n - 1, n - 1) explodes
// with the class count, hence the dimension cap.
struct GridSpec {
  int resolution = 200;
  std::size_t max_dimension = 5;
};

// Number of lattice points: compositions of m into n nonnegative parts.
std::uint64_t simplex_point_count(std::size_t n, int m);

// Visits every composition (k_1, ..., k_n) of m, i.e. every lattice
// distribution, in lexicographic order. fn receives the counts.
template <typename Fn>
void for_each_simplex_point(std::size_t n, int m, Fn&& fn) {
  std::vector<int> counts(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int rem) -> void {
    if (i + 1 == n) {
      counts[i] = rem;
      fn(std::span<const int>(counts));
      return;
    }
    for (int k = 0; k <= rem; ++k) {
      counts[i] = k;
      self(self, i + 1, rem - k);
    }
  };
  if (n >= 1) rec(rec, 0, m);
}

struct OracleOptimum {
  bool feasible = false;
  std::vector<double> probs;  // best lattice point; may contain zeros
  double kl_bits = 0.0;       // divergence of the best point from u
  double revenue = 0.0;       // expected revenue of the best point
};

// Exhaustive minimum-divergence search over the lattice, the independent
// check of the closed-form optimizer. Throws DimensionTooLarge above the
// configured cap; requires resolution >= 10.
OracleOptimum brute_force_optimum(const ProbVector& u,
                                  const RevenueParams& params, double beta,
                                  const GridSpec& grid = {});

// Divergence gap attributable to lattice resolution alone, in bits.
// Calibrated so that instances whose optimum keeps every class above ~0.05
// and whose revenue floor stays away from the feasibility edge fit within
// it; 0.4 / resolution gives 2e-3 at the default resolution of 200.
double lattice_kl_bound_bits(int resolution);

struct OracleComparison {
  double delta_kl_bits = 0.0;   // grid optimum minus closed form; NaN if
                                // either side is infeasible
  double grid_bound_bits = 0.0; // lattice_kl_bound_bits(resolution)
  bool feasibility_match = false;
  bool lattice_miss = false;    // closed form feasible, lattice too coarse
                                // to contain a feasible point
};

// Reconciles the closed form against the exhaustive search. A lattice with
// no feasible point while the closed form is feasible is only a resolution
// warning; the reverse (a feasible lattice point where the closed form
// reports infeasibility) is a genuine contradiction and throws
// FeasibilityMismatch.
OracleComparison compare_with_oracle(const SolveResult& result,
                                     const OracleOptimum& oracle,
                                     const GridSpec& grid);

}  // namespace recopt
