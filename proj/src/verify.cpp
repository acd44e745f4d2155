#include "tempscat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tempscat/error.hpp"

namespace tempscat {

namespace {

constexpr double kMergeTolerance = 1e-12;
constexpr double kResolutionFloor = 1e-9;

std::vector<double> omegas_of(const ExponentialSum& s) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const ExponentialTerm& term : s.terms()) out.push_back(term.omega);
  return out;
}

double frequency_scale(std::span<const double> omegas) {
  double scale = 1.0;
  for (double w : omegas) scale = std::max(scale, std::abs(w));
  return scale;
}

}  // namespace

ExponentialSum::ExponentialSum(std::vector<ExponentialTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw Error(ErrorCode::precondition, "exponential sum needs at least one term");
  const Eigen::Index n = terms_.front().amplitude.size();
  if (n < 1) throw Error(ErrorCode::precondition, "amplitude dimension must be >= 1");
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const ExponentialTerm& term = terms_[j];
    if (term.amplitude.size() != n) {
      throw Error(ErrorCode::precondition, "all amplitudes must share one dimension");
    }
    if (!std::isfinite(term.omega) || !term.amplitude.allFinite()) {
      throw Error(ErrorCode::domain, "term " + std::to_string(j) + " is not finite");
    }
    if (term.amplitude.norm() == 0.0) {
      throw Error(ErrorCode::precondition, "term " + std::to_string(j) + " has a zero amplitude");
    }
  }
}

Eigen::VectorXcd ExponentialSum::evaluate(double x) const {
  Eigen::VectorXcd total = Eigen::VectorXcd::Zero(dimension());
  for (const ExponentialTerm& term : terms_) total += term.amplitude * std::polar(1.0, term.omega * x);
  return total;
}

double ExponentialSum::amplitude_mass() const {
  double mass = 0.0;
  for (const ExponentialTerm& term : terms_) mass += term.amplitude.norm();
  return mass;
}

Complex vandermonde_product(std::span<const double> omegas) {
  Complex product(1.0, 0.0);
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    for (std::size_t l = k + 1; l < omegas.size(); ++l) {
      product *= Complex(0.0, omegas[l]) - Complex(0.0, omegas[k]);
    }
  }
  return product;
}

double sum_residual(const ExponentialSum& s, std::span<const double> x_grid) {
  std::vector<double> sorted(x_grid.begin(), x_grid.end());
  std::sort(sorted.begin(), sorted.end());
  const auto distinct = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
  if (static_cast<std::size_t>(distinct) < 2 * s.size()) {
    throw Error(ErrorCode::precondition, "residual grid needs at least 2N distinct points");
  }
  double worst = 0.0;
  for (double x : x_grid) worst = std::max(worst, s.evaluate(x).norm());
  return worst;
}

double min_frequency_gap(std::span<const double> omegas) {
  std::vector<double> sorted(omegas.begin(), omegas.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = 0.0;
  for (std::size_t j = 1; j < sorted.size(); ++j) {
    const double d = sorted[j] - sorted[j - 1];
    if (d > 0.0 && (gap == 0.0 || d < gap)) gap = d;
  }
  return gap;
}

std::vector<double> canonical_grid(const ExponentialSum& s) {
  const std::vector<double> omegas = omegas_of(s);
  const double gap = min_frequency_gap(omegas);
  const double span = 2.0 * std::numbers::pi / (gap > 0.0 ? gap : 1.0);
  const std::size_t count = 4 * s.size();
  std::vector<double> grid(count);
  for (std::size_t j = 0; j < count; ++j) grid[j] = span * static_cast<double>(j) / static_cast<double>(count);
  return grid;
}

bool assert_forced_equality(const ExponentialSum& s, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::precondition, "tolerance must be > 0");
  const double mass = s.amplitude_mass();
  const std::vector<double> omegas = omegas_of(s);
  const double scale = frequency_scale(omegas);

  // Group terms whose frequencies agree to rounding.
  std::vector<std::size_t> order(s.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return omegas[a] < omegas[b]; });
  std::vector<ExponentialTerm> clusters;
  for (std::size_t idx : order) {
    const ExponentialTerm& term = s.terms()[idx];
    if (!clusters.empty() && term.omega - clusters.back().omega <= kMergeTolerance * scale) {
      clusters.back().amplitude += term.amplitude;
    } else {
      clusters.push_back(term);
    }
  }

  // A single distinct frequency satisfies the conclusion outright.
  if (clusters.size() <= 1) return true;

  // The merged sum is what the canonical grid can see.
  std::vector<ExponentialTerm> live;
  for (const ExponentialTerm& c : clusters) {
    if (c.amplitude.norm() > tol * mass) live.push_back(c);
  }
  std::vector<double> live_omegas;
  for (const ExponentialTerm& c : live) live_omegas.push_back(c.omega);
  const double gap = min_frequency_gap(live_omegas);
  if (gap > 0.0 && gap < kResolutionFloor * scale) {
    throw Error(ErrorCode::resolution, "frequency gap " + std::to_string(gap) +
                                           " is below the resolvable precision of the sampling grid");
  }

  double residual = 0.0;
  for (double x : canonical_grid(s)) residual = std::max(residual, s.evaluate(x).norm());
  if (residual > tol * mass) {
    throw Error(ErrorCode::precondition, "the exponential sum does not vanish (residual " +
                                             std::to_string(residual) + ")");
  }
  return live.size() <= 1;
}

Eigen::MatrixXcd phasor_matrix(std::span<const double> omegas, std::span<const double> xs) {
  Eigen::MatrixXcd v(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(omegas.size()));
  for (std::size_t p = 0; p < xs.size(); ++p) {
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      v(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(j)) = std::polar(1.0, omegas[j] * xs[p]);
    }
  }
  return v;
}

Eigen::VectorXcd solve_phasor_system(std::span<const double> omegas, std::span<const double> xs,
                                     const Eigen::VectorXcd& rhs) {
  if (rhs.size() != static_cast<Eigen::Index>(xs.size())) {
    throw Error(ErrorCode::precondition, "right-hand side length must match the number of points");
  }
  return phasor_matrix(omegas, xs).fullPivHouseholderQr().solve(rhs);
}

}  // namespace tempscat
