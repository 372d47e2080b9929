#pragma once

#include <cstddef>
#include <vector>

namespace recopt {

enum class LogBase { nats, bits };

// Discrete probability distribution over N >= 2 classes, renormalized on
// construction. The validating constructor requires full support (every
// entry strictly positive). boundary() admits zero entries and exists for
// distributions that live on the edge of the simplex: degenerate one-point
// optima and lattice grid points.
class ProbVector {
 public:
  static constexpr double default_sum_tol = 1e-9;

  explicit ProbVector(std::vector<double> probs,
                      double sum_tol = default_sum_tol);

  static ProbVector boundary(std::vector<double> probs,
                             double sum_tol = default_sum_tol);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  const std::vector<double>& values() const noexcept { return probs_; }

  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  double min_value() const noexcept;
  double max_value() const noexcept;
  std::size_t argmin() const noexcept;  // first index attaining min_value()
  std::size_t argmax() const noexcept;  // first index attaining max_value()
  bool min_unique() const noexcept;
  bool max_unique() const noexcept;
  bool full_support() const noexcept;   // true when no entry is zero

  bool operator==(const ProbVector&) const = default;

 private:
  ProbVector() = default;
  std::vector<double> probs_;
};

// Relative entropy D(p || u) = sum_i p_i log(p_i / u_i). Zero entries of p
// contribute nothing (0 log 0 = 0). Throws LengthMismatch on unequal sizes.
double kl_divergence(const ProbVector& p, const ProbVector& u, LogBase base);

// Collision probability sum_i u_i^2, the chance two independent draws from
// u coincide. Lies in [1/N, max(u)] for any distribution on N classes.
double collision_probability(const ProbVector& u) noexcept;

}  // namespace recopt
