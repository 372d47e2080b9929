#pragma once

#include <cstddef>
#include <vector>

#include "recopt/prob.hpp"
#include "recopt/revenue.hpp"
#include "recopt/simulator.hpp"

namespace testdata {

// Standard utility profiles shared across the suites.
inline recopt::ProbVector u1() {
  return recopt::ProbVector({0.1, 0.2, 0.3, 0.4});
}

inline recopt::ProbVector u2() {
  return recopt::ProbVector({0.05, 0.15, 0.3, 0.5});
}

// Six classes, two nearly tied in the middle.
inline recopt::ProbVector u6() {
  return recopt::ProbVector({0.03, 0.07, 0.12, 0.24, 0.25, 0.29});
}

inline recopt::ProbVector uniform4() {
  return recopt::ProbVector({0.25, 0.25, 0.25, 0.25});
}

// Advertising economics, denominator +5.
inline recopt::RevenueParams d1() {
  return {.cost_push = 4.5,
          .reward_hit = 2.0,
          .cost_miss_like = 2.0,
          .reward_ad = 11.0,
          .cost_omit = 2.0};
}

// Noncommercial economics, denominator -10.
inline recopt::RevenueParams d2() {
  return {.cost_push = 1.0,
          .reward_hit = 9.0,
          .cost_miss_like = 2.0,
          .reward_ad = 3.0,
          .cost_omit = 2.0};
}

// Random full-support distribution with entries bounded away from zero.
inline recopt::ProbVector random_distribution(recopt::SplitMix64& rng,
                                              std::size_t n,
                                              double floor = 0.05) {
  std::vector<double> x(n);
  double sum = 0.0;
  for (double& xi : x) {
    xi = floor + rng.next_unit();
    sum += xi;
  }
  for (double& xi : x) xi /= sum;
  return recopt::ProbVector(std::move(x), 1e-6);
}

}  // namespace testdata
