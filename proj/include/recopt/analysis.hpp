#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recopt/optimizer.hpp"
#include "recopt/prob.hpp"
#include "recopt/revenue.hpp"

namespace recopt {

// Tilt at which the tilted probability of class x peaks; it solves
// tilted_mean(tilt, u) = u_x. Positive when u_x < collision_probability(u),
// negative above it, and +inf / -inf for the classes attaining min(u) /
// max(u) (their tilted probability is monotone).
double peak_tilt(const ProbVector& u, std::size_t x);

// The nonzero tilt at which class x's tilted probability returns to its
// utility value u_x. Lies strictly beyond peak_tilt on the same side of
// zero. Absent (nullopt) for the extreme classes and for a class whose
// utility equals the collision probability; those never cross back.
std::optional<double> crossover_tilt(const ProbVector& u, std::size_t x,
                                     double tol = 1e-12);

// How a class responds to tilting, determined by u_x against the collision
// probability: amplified on positive tilts (u_x below), amplified on
// negative tilts (u_x above), or pinned at its utility value (equal).
enum class SignRegion { amplified_above, amplified_below, always_utility };

std::string_view to_string(SignRegion r) noexcept;

struct ClassCrossover {
  std::size_t index = 0;
  double peak = 0.0;                // peak_tilt, +-inf at the extremes
  std::optional<double> crossover;  // crossover_tilt where defined
  SignRegion region = SignRegion::always_utility;
};

std::vector<ClassCrossover> crossover_report(const ProbVector& u);

// Classes whose tilted probability sits strictly above (amplified) or below
// (attenuated) their utility value at the given tilt. Classes within 1e-12
// of their utility value land in neither set, so a zero tilt returns two
// empty sets.
struct Partition {
  std::vector<std::size_t> amplified;
  std::vector<std::size_t> attenuated;
};

Partition crossover_partition(const ProbVector& u, double tilt);

// Revenue floor at which class x's share of the optimal distribution peaks
// along the beta axis: -d u_x + reward_ad - cost_push - cost_miss_like -
// cost_omit. Throws NeutralSystem when the denominator is zero.
double peak_revenue(const RevenueParams& params, const ProbVector& u,
                    std::size_t x);

// Rectangular numeric series for CSV emission; NaN marks an empty cell.
struct SweepSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Tilted probabilities of every class on a uniform tilt grid.
// Columns: varpi, f_1..f_N. Requires steps >= 2.
SweepSeries sweep_tilt(const ProbVector& u, double tilt_min, double tilt_max,
                       std::size_t steps);

// Full solve on a uniform revenue-floor grid. Columns: beta, case, alpha,
// varpi, p1..pN, kl, revenue; infeasible rows keep their beta/case/alpha
// and leave the rest empty. kl is reported in bits.
SweepSeries sweep_beta(const RevenueParams& params, const ProbVector& u,
                       double beta_min, double beta_max, std::size_t steps);

}  // namespace recopt
