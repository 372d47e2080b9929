#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "recopt/prob.hpp"
#include "recopt/revenue.hpp"

namespace recopt {

// splitmix64, the pinned generator for every Monte-Carlo path. Chosen for
// its trivial, platform-independent state: identical seeds give identical
// streams everywhere, and any counter value can be turned into an
// independent stream through the same finalizer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;
  // Uniform draw in [0, 1) built from the top 53 bits.
  double next_unit() noexcept;

 private:
  std::uint64_t state_;
};

// Seed of the independent substream for one trial. Simulations draw each
// trial from its own derived stream, so results do not depend on execution
// order and parallel runs stay deterministic.
std::uint64_t derive_stream_seed(std::uint64_t seed,
                                 std::uint64_t index) noexcept;

struct SimConfig {
  std::uint64_t trials = 1;
  std::size_t sequence_length = 0;
  std::uint64_t seed = 0;
  RevenueParams params;
  ProbVector u;
  ProbVector p;
};

struct RevenueEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo estimate of the expected per-decision revenue: every trial
// draws an independent push decision (Bernoulli p_i) and desire indicator
// (Bernoulli u_i) per class and sums the payoffs of revenue_matrix().
RevenueEstimate simulate_revenue(const SimConfig& cfg);

// n i.i.d. class indices distributed as p, by inverse-CDF lookup on one
// uniform draw each.
std::vector<std::uint32_t> sample_sequence(const ProbVector& p, std::size_t n,
                                           std::uint64_t seed);

struct CrossEntropyReport {
  double cross_entropy = 0.0;  // -(1/n) sum_t log u_{x_t}
  double type_entropy = 0.0;   // entropy of the empirical type
  double kl_estimate = 0.0;    // cross_entropy - type_entropy, the plug-in
                               // divergence of the type from u
  double kl_std_error = 0.0;   // delta-method standard error of kl_estimate
};

// Empirical cross-entropy rate of a sequence against the utility
// distribution u, with the plug-in divergence estimate it implies.
CrossEntropyReport cross_entropy_rate(std::span<const std::uint32_t> seq,
                                      const ProbVector& u, LogBase base);

}  // namespace recopt
