#pragma once

#include "tempscat/types.hpp"

namespace tempscat {

/// Monochromatic plane wave E(x, t) = A exp(i omega (k.x / v - t)).
///
/// The ordinary constructor rejects a zero amplitude. Scattering can
/// legitimately produce a vanishing branch (no reflection between identical
/// media), which is what `allow_vanishing` is for.
class PlaneWave {
 public:
  PlaneWave(const CVec3& amplitude, double omega, const Vec3& k, double v);

  static PlaneWave allow_vanishing(const CVec3& amplitude, double omega, const Vec3& k, double v);

  const CVec3& amplitude() const noexcept { return amplitude_; }
  double omega() const noexcept { return omega_; }
  const Vec3& k() const noexcept { return k_; }
  double v() const noexcept { return v_; }

 private:
  PlaneWave(const CVec3& amplitude, double omega, const Vec3& k, double v, bool allow_zero);

  CVec3 amplitude_;
  double omega_;
  Vec3 k_;
  double v_;
};

struct PhaseVector {
  Vec3 m;
};

CVec3 evaluate_E(const PlaneWave& w, const Vec3& x, double t);

/// H amplitude -(A x k) / (mu v); the result shares omega, k and v.
PlaneWave magnetic_from_electric(const PlaneWave& w, double mu);

/// |A . k|; zero for a divergence-free wave.
double transversality_residual(const PlaneWave& w);

/// omega k / v.
PhaseVector phase_vector(const PlaneWave& w);

}  // namespace tempscat
