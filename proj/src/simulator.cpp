#include "recopt/simulator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "recopt/errors.hpp"

namespace recopt {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::next_unit() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_stream_seed(std::uint64_t seed,
                                 std::uint64_t index) noexcept {
  return mix(seed + (index + 1) * kGolden);
}

RevenueEstimate simulate_revenue(const SimConfig& cfg) {
  if (cfg.trials < 1) throw Error("simulate_revenue: need at least one trial");
  if (cfg.p.size() != cfg.u.size()) {
    throw LengthMismatch("simulate_revenue: sizes " +
                         std::to_string(cfg.p.size()) + " and " +
                         std::to_string(cfg.u.size()));
  }
  const RevenueMatrix payoff = revenue_matrix(cfg.params);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    SplitMix64 rng(derive_stream_seed(cfg.seed, t));
    double revenue = 0.0;
    for (std::size_t i = 0; i < cfg.p.size(); ++i) {
      const bool pushed = rng.next_unit() < cfg.p[i];
      const bool desired = rng.next_unit() < cfg.u[i];
      revenue += payoff[desired ? 0 : 1][pushed ? 0 : 1];
    }
    sum += revenue;
    sum_sq += revenue * revenue;
  }
  const double n = static_cast<double>(cfg.trials);
  RevenueEstimate est;
  est.mean = sum / n;
  if (cfg.trials > 1) {
    const double var = (sum_sq - n * est.mean * est.mean) / (n - 1.0);
    est.std_error = std::sqrt(std::max(0.0, var) / n);
  }
  return est;
}

std::vector<std::uint32_t> sample_sequence(const ProbVector& p, std::size_t n,
                                           std::uint64_t seed) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  std::vector<std::uint32_t> seq(n);
  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < n; ++t) {
    const double r = rng.next_unit();
    std::uint32_t x = 0;
    while (r >= cdf[x]) ++x;
    seq[t] = x;
  }
  return seq;
}

CrossEntropyReport cross_entropy_rate(std::span<const std::uint32_t> seq,
                                      const ProbVector& u, LogBase base) {
  if (seq.empty()) throw Error("cross_entropy_rate: empty sequence");
  std::vector<std::uint64_t> counts(u.size(), 0);
  for (std::uint32_t x : seq) {
    if (x >= u.size()) {
      throw IndexOutOfRange("sequence symbol " + std::to_string(x) +
                            " for N = " + std::to_string(u.size()));
    }
    ++counts[x];
  }
  const double n = static_cast<double>(seq.size());
  const double scale =
      base == LogBase::bits ? 1.0 / std::numbers::ln2 : 1.0;

  CrossEntropyReport rep;
  double ratio_sq = 0.0;  // E_type[(log(q/u))^2] for the delta method
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (counts[i] == 0) continue;
    const double q = static_cast<double>(counts[i]) / n;
    const double log_ratio = scale * std::log(q / u[i]);
    rep.cross_entropy -= q * scale * std::log(u[i]);
    rep.type_entropy -= q * scale * std::log(q);
    ratio_sq += q * log_ratio * log_ratio;
  }
  rep.kl_estimate = rep.cross_entropy - rep.type_entropy;
  const double var = std::max(0.0, ratio_sq - rep.kl_estimate * rep.kl_estimate);
  rep.kl_std_error = std::sqrt(var / n);
  return rep;
}

}  // namespace recopt
