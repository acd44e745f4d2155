#include "tempscat/waves.hpp"

#include <cmath>

#include "tempscat/error.hpp"

namespace tempscat {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kTransverseTolerance = 1e-9;

}  // namespace

PlaneWave::PlaneWave(const CVec3& amplitude, double omega, const Vec3& k, double v)
    : PlaneWave(amplitude, omega, k, v, false) {}

PlaneWave PlaneWave::allow_vanishing(const CVec3& amplitude, double omega, const Vec3& k,
                                     double v) {
  return PlaneWave(amplitude, omega, k, v, true);
}

PlaneWave::PlaneWave(const CVec3& amplitude, double omega, const Vec3& k, double v,
                     bool allow_zero)
    : amplitude_(amplitude), omega_(omega), k_(k), v_(v) {
  if (!amplitude.allFinite() || !k.allFinite() || !std::isfinite(omega) || !std::isfinite(v)) {
    throw Error(ErrorCode::domain, "plane wave parameters must be finite");
  }
  if (std::abs(k.norm() - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::domain, "wave vector k must be a unit vector");
  }
  if (omega == 0.0) throw Error(ErrorCode::domain, "plane wave frequency must be non-zero");
  if (v == 0.0) throw Error(ErrorCode::domain, "plane wave phase speed must be non-zero");
  if (!allow_zero && amplitude.norm() == 0.0) {
    throw Error(ErrorCode::precondition, "plane wave amplitude must be non-zero");
  }
}

CVec3 evaluate_E(const PlaneWave& w, const Vec3& x, double t) {
  const double phase = w.omega() * (w.k().dot(x) / w.v() - t);
  return w.amplitude() * std::polar(1.0, phase);
}

PlaneWave magnetic_from_electric(const PlaneWave& w, double mu) {
  if (mu == 0.0 || !std::isfinite(mu)) {
    throw Error(ErrorCode::domain, "magnetic field needs a finite non-zero mu");
  }
  if (transversality_residual(w) > kTransverseTolerance * std::max(1.0, w.amplitude().norm())) {
    throw Error(ErrorCode::precondition, "magnetic field requested for a non-transversal wave");
  }
  const CVec3 h = -cross(w.amplitude(), w.k()) / (mu * w.v());
  return PlaneWave::allow_vanishing(h, w.omega(), w.k(), w.v());
}

double transversality_residual(const PlaneWave& w) { return std::abs(dot(w.amplitude(), w.k())); }

PhaseVector phase_vector(const PlaneWave& w) { return {w.omega() / w.v() * w.k()}; }

}  // namespace tempscat
