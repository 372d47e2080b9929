#pragma once

#include <cstddef>

#include "recopt/prob.hpp"

namespace recopt {

// Importance weight u * e^{tilt * (1 - u)} of a class with utility
// probability u. Requires 0 < u < 1 and a finite tilt; throws
// NonFiniteResult when the exponential overflows.
double importance_weight(double u, double tilt);

// Mean of v under its tilted distribution:
//   sum_i v_i^2 e^{tilt (1 - v_i)} / sum_i v_i e^{tilt (1 - v_i)}.
// Strictly decreasing in the tilt unless v is uniform. At tilt = 0 it equals
// collision_probability(v); tilt = -inf / +inf return max(v) / min(v).
// Exponents are shifted by their maximum before exponentiation, so the value
// stays finite for |tilt| far beyond the bare overflow range.
double tilted_mean(double tilt, const ProbVector& v);

// Derivative of tilted_mean with respect to the tilt, in the pairwise
// closed form
//   - sum_{v_i > v_j} v_i v_j (v_i - v_j)^2 e^{tilt (2 - v_i - v_j)}
//     / (sum_i v_i e^{tilt (1 - v_i)})^2.
// Nonpositive everywhere; zero exactly when v is uniform.
double tilted_mean_derivative(double tilt, const ProbVector& v);

// Tilted probability of class x: its importance weight over the total.
// Equals u_x at tilt = 0. An infinite tilt concentrates all mass on the
// extreme class (+inf on the argmin, -inf on the argmax) and requires that
// extremum to be unique; otherwise AmbiguousExtremum is thrown.
double tilted_prob(double tilt, std::size_t x, const ProbVector& u);

// Full tilted distribution {tilted_prob(tilt, x, u)}_x, i.e. the normalized
// importance-weight profile of u at the given tilt. Infinite tilts yield the
// one-point distribution on the unique extreme class.
ProbVector tilted_distribution(double tilt, const ProbVector& u);

}  // namespace recopt
