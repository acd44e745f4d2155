#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "tempscat/waves.hpp"

using namespace tempscat;
using support::close;

namespace {
const Complex I(0.0, 1.0);
const double pi = std::numbers::pi;
}  // namespace

TEST_CASE("evaluate_E examples") {
  const PlaneWave w(CVec3(1, 0, 0), 1.0, Vec3(0, 0, 1), 1.0);
  CHECK(close(evaluate_E(w, Vec3::Zero(), 0.0), CVec3(1, 0, 0), 1e-15));
  CHECK(close(evaluate_E(w, Vec3::Zero(), pi), CVec3(-1, 0, 0), 1e-15));
  CHECK(close(evaluate_E(w, Vec3(0, 0, pi / 2), 0.0), CVec3(I, 0, 0), 1e-15));
}

TEST_CASE("evaluate_E is periodic in time") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int n = 0; n < 200; ++n) {
    const Vec3 k = support::random_unit(rng);
    const double omega = u(rng) + (u(rng) > 0 ? 6.0 : -6.0);
    const PlaneWave w(support::random_transverse(rng, k), omega, k, 0.7);
    const Vec3 x(u(rng), u(rng), u(rng));
    const double t = u(rng);
    CHECK(close(evaluate_E(w, x, t + 2 * pi / omega), evaluate_E(w, x, t), 1e-12));
  }
}

TEST_CASE("magnetic_from_electric examples") {
  const PlaneWave a(CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0), 1.0);
  const PlaneWave ha = magnetic_from_electric(a, 1.0);
  CHECK(close(ha.amplitude(), CVec3(0, 0, 1), 1e-15));
  CHECK(ha.omega() == 1.0);
  CHECK(ha.v() == 1.0);
  CHECK(ha.k() == Vec3(1, 0, 0));

  const PlaneWave b(CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0), 0.5);
  CHECK(close(magnetic_from_electric(b, 1.0).amplitude(), CVec3(0, 0, 2), 1e-15));

  CHECK_ERROR_CODE(magnetic_from_electric(a, 0.0), ErrorCode::domain);
  const PlaneWave longitudinal(CVec3(1, 0, 0), 1.0, Vec3(1, 0, 0), 1.0);
  CHECK_ERROR_CODE(magnetic_from_electric(longitudinal, 1.0), ErrorCode::precondition);
}

TEST_CASE("plane wave construction errors") {
  CHECK_ERROR_CODE(PlaneWave(CVec3::Zero(), 1.0, Vec3(1, 0, 0), 1.0), ErrorCode::precondition);
  CHECK_ERROR_CODE(PlaneWave(CVec3(0, 1, 0), 0.0, Vec3(1, 0, 0), 1.0), ErrorCode::domain);
  CHECK_ERROR_CODE(PlaneWave(CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0), 0.0), ErrorCode::domain);
  CHECK_ERROR_CODE(PlaneWave(CVec3(0, 1, 0), 1.0, Vec3(1.1, 0, 0), 1.0), ErrorCode::domain);
  CHECK_ERROR_CODE(PlaneWave(CVec3(0, NAN, 0), 1.0, Vec3(1, 0, 0), 1.0), ErrorCode::domain);
  CHECK_ERROR_CODE(PlaneWave(CVec3(0, 1, 0), INFINITY, Vec3(1, 0, 0), 1.0), ErrorCode::domain);
  // unit within 1e-12 is accepted
  CHECK_NOTHROW(PlaneWave(CVec3(0, 1, 0), 1.0, Vec3(1 + 5e-13, 0, 0), 1.0));
  CHECK_NOTHROW(PlaneWave::allow_vanishing(CVec3::Zero(), -1.0, Vec3(1, 0, 0), 1.0));
  CHECK_ERROR_CODE(PlaneWave::allow_vanishing(CVec3::Zero(), 0.0, Vec3(1, 0, 0), 1.0), ErrorCode::domain);
}

TEST_CASE("transversality residual examples") {
  CHECK(transversality_residual(PlaneWave(CVec3(0, 1, 0), 1, Vec3(1, 0, 0), 1)) == 0.0);
  CHECK(transversality_residual(PlaneWave(CVec3(1, 0, 0), 1, Vec3(1, 0, 0), 1)) == 1.0);
  const CVec3 circular = CVec3(1, I, 0) / std::sqrt(2.0);
  CHECK(transversality_residual(PlaneWave(circular, 1, Vec3(0, 0, 1), 1)) == 0.0);
  // complex amplitudes use the non-conjugating product
  CHECK(transversality_residual(PlaneWave(CVec3(I, 0, 0), 1, Vec3(1, 0, 0), 1)) == 1.0);
}

TEST_CASE("phase vector examples") {
  CHECK(phase_vector(PlaneWave(CVec3(0, 1, 0), 1, Vec3(1, 0, 0), 1)).m == Vec3(1, 0, 0));
  CHECK(phase_vector(PlaneWave(CVec3(0, 1, 0), 0.5, Vec3(1, 0, 0), 0.5)).m == Vec3(1, 0, 0));
  CHECK(phase_vector(PlaneWave(CVec3(0, 1, 0), -0.5, Vec3(-1, 0, 0), 0.5)).m == Vec3(1, 0, 0));
}

TEST_CASE("magnetic field stays transversal") {
  std::mt19937_64 rng(17);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 k = support::random_unit(rng);
    const CVec3 a = support::random_transverse(rng, k);
    const double mu = support::log_uniform(rng, 0.1, 10);
    const double v = support::log_uniform(rng, 0.1, 10);
    const PlaneWave w(a, 1.3, k, v);
    const PlaneWave h = magnetic_from_electric(w, mu);
    CHECK(transversality_residual(w) <= 1e-12 * a.norm());
    CHECK(transversality_residual(h) <= 1e-12 * h.amplitude().norm());
    // |H| = |A| / (mu |v|) for a transversal wave
    CHECK(close(h.amplitude().norm(), a.norm() / (mu * v), 1e-12));
  }
}
