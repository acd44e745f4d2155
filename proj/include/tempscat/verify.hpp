#pragma once

#include <span>
#include <vector>

#include "tempscat/types.hpp"

namespace tempscat {

struct ExponentialTerm {
  Eigen::VectorXcd amplitude;
  double omega;
};

/// sum_j A_j exp(i omega_j x) with every A_j a non-zero vector of one
/// common dimension n >= 1.
class ExponentialSum {
 public:
  explicit ExponentialSum(std::vector<ExponentialTerm> terms);

  const std::vector<ExponentialTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  Eigen::Index dimension() const noexcept { return terms_.front().amplitude.size(); }

  Eigen::VectorXcd evaluate(double x) const;
  /// sum_j |A_j|
  double amplitude_mass() const;

 private:
  std::vector<ExponentialTerm> terms_;
};

/// prod_{k < l} (i omega_l - i omega_k); zero exactly when a frequency repeats.
Complex vandermonde_product(std::span<const double> omegas);

/// max over the grid of |sum_j A_j exp(i omega_j x)|. The grid must hold at
/// least 2N distinct points.
double sum_residual(const ExponentialSum& s, std::span<const double> x_grid);

/// Smallest non-zero gap between distinct frequencies (0 if all coincide).
double min_frequency_gap(std::span<const double> omegas);

/// 4N points uniformly spaced on [0, 2 pi / gap_min). With a single
/// distinct frequency the span is [0, 2 pi).
std::vector<double> canonical_grid(const ExponentialSum& s);

/// Executable form of exponential independence. A sum with a single
/// distinct frequency returns true at once. Otherwise requires the sum to vanish
/// on the canonical grid (residual <= tol * amplitude_mass, else
/// Error(precondition)). Frequencies closer than rounding (1e-12 relative)
/// are merged; returns true iff a single frequency carries non-cancelled
/// amplitude. Gaps that are non-zero but below 1e-9 relative cannot be
/// resolved and throw Error(resolution).
bool assert_forced_equality(const ExponentialSum& s, double tol);

/// V(p, j) = exp(i omega_j x_p).
Eigen::MatrixXcd phasor_matrix(std::span<const double> omegas, std::span<const double> xs);

/// Least-squares solution a of V a = rhs via full-pivot Householder QR.
Eigen::VectorXcd solve_phasor_system(std::span<const double> omegas, std::span<const double> xs,
                                     const Eigen::VectorXcd& rhs);

}  // namespace tempscat
