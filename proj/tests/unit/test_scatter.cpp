#include <cmath>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "support.hpp"
#include "tempscat/scatter.hpp"

using namespace tempscat;
using support::close;

namespace {

const Complex I(0.0, 1.0);

const FrequencyConvention kSwapped{TransmittedBranch::backward, ReflectedBranch::positive};
const FrequencyConvention kDegenerateForward{TransmittedBranch::forward, ReflectedBranch::positive};
const FrequencyConvention kDegenerateBackward{TransmittedBranch::backward, ReflectedBranch::negative};

PlaneWave incident_in(const MediumState& m, const CVec3& a, double omega, const Vec3& k) {
  return PlaneWave(a, omega, k, wave_speed(m));
}

ScatteringResult solve(const MediumState& before, const MediumState& after, const PlaneWave& w,
                       double t0 = 0.0, FrequencyConvention conv = {}) {
  return scatter_interface(w, TemporalProfile::step(before, after, t0), conv);
}

Eigen::Matrix3cd skew(const Vec3& k) {
  Eigen::Matrix3cd s;
  s << 0, -k(2), k(1), k(2), 0, -k(0), -k(1), k(0), 0;
  return s;
}

// Independent solve of the jump conditions for (A_r, A_t): continuity of
// eps E and mu H at t0 plus transversality of both scattered amplitudes.
// The wave vectors follow from matching spatial phases.
std::pair<CVec3, CVec3> jump_system(const MediumState& before, const MediumState& after, const PlaneWave& w,
                                    double t0, double omega2, double omega3) {
  const double vm = wave_speed(before);
  const double vp = wave_speed(after);
  const Vec3 k_r = (w.omega() * vp / (omega2 * vm)) * w.k();
  const Vec3 k_t = (w.omega() * vp / (omega3 * vm)) * w.k();
  const Complex e1 = std::polar(1.0, -w.omega() * t0);
  const Complex e2 = std::polar(1.0, -omega2 * t0);
  const Complex e3 = std::polar(1.0, -omega3 * t0);

  Eigen::Matrix<Complex, 8, 6> M = Eigen::Matrix<Complex, 8, 6>::Zero();
  Eigen::Matrix<Complex, 8, 1> rhs = Eigen::Matrix<Complex, 8, 1>::Zero();
  M.block<3, 3>(0, 0) = after.epsilon() * e2 * Eigen::Matrix3cd::Identity();
  M.block<3, 3>(0, 3) = after.epsilon() * e3 * Eigen::Matrix3cd::Identity();
  rhs.segment<3>(0) = before.epsilon() * e1 * w.amplitude();
  M.block<3, 3>(3, 0) = skew(k_r) * e2 / vp;
  M.block<3, 3>(3, 3) = skew(k_t) * e3 / vp;
  rhs.segment<3>(3) = skew(w.k()) * w.amplitude() * e1 / vm;
  M.block<1, 3>(6, 0) = k_r.transpose().cast<Complex>();
  M.block<1, 3>(7, 3) = k_t.transpose().cast<Complex>();
  const Eigen::Matrix<Complex, 6, 1> x = M.fullPivHouseholderQr().solve(rhs);
  return {x.segment<3>(0), x.segment<3>(3)};
}

}  // namespace

TEST_CASE("frequencies examples") {
  auto f = frequencies(1.0, 1.0, 0.5);
  CHECK(f.omega2 == -0.5);
  CHECK(f.omega3 == 0.5);
  f = frequencies(1.0, 1.0, 1.0);
  CHECK(f.omega2 == -1.0);
  CHECK(f.omega3 == 1.0);
  f = frequencies(2.0, 0.5, 1.0);
  CHECK(f.omega2 == -4.0);
  CHECK(f.omega3 == 4.0);
  f = frequencies(1.0, 1.0, 0.5, kSwapped);
  CHECK(f.omega2 == 0.5);
  CHECK(f.omega3 == -0.5);
  f = frequencies(1.0, 1.0, -0.5);
  CHECK(f.omega3 == 0.5);

  CHECK_ERROR_CODE(frequencies(-1.0, 1.0, 1.0), ErrorCode::precondition);
  CHECK_ERROR_CODE(frequencies(0.0, 1.0, 1.0), ErrorCode::precondition);
  CHECK_ERROR_CODE(frequencies(1.0, 0.0, 1.0), ErrorCode::domain);
  CHECK_ERROR_CODE(frequencies(1.0, 1.0, 0.0), ErrorCode::domain);
}

TEST_CASE("wave_vectors examples") {
  const Vec3 k(1, 0, 0);
  auto w = wave_vectors(k, 1.0, -0.5, 0.5, 1.0, 0.5);
  CHECK(w.k_r == Vec3(-1, 0, 0));
  CHECK(w.k_t == Vec3(1, 0, 0));
  w = wave_vectors(k, 1.0, 0.5, -0.5, 1.0, 0.5);
  CHECK(w.k_t == Vec3(-1, 0, 0));
  CHECK(w.k_r == Vec3(1, 0, 0));
  w = wave_vectors(k, 1.0, -0.5, 0.5, 1.0, -0.5);
  CHECK(w.k_t == Vec3(-1, 0, 0));
  CHECK(w.k_r == Vec3(1, 0, 0));

  CHECK_ERROR_CODE(wave_vectors(k, 1.0, -0.6, 0.5, 1.0, 0.5), ErrorCode::consistency);
  CHECK_ERROR_CODE(wave_vectors(k, 1.0, -0.5, 0.5 * (1 + 1e-6), 1.0, 0.5), ErrorCode::consistency);
  CHECK_NOTHROW(wave_vectors(k, 1.0, -0.5, 0.5 * (1 + 1e-11), 1.0, 0.5));
}

TEST_CASE("amplitudes examples") {
  const CVec3 B(0, 1, 0);
  auto a = amplitudes(B, 1.0, -0.5, 0.5, 1.0, 4.0);
  CHECK(close(a.B_r, -B / 8.0, 1e-15));
  CHECK(close(a.B_t, 3.0 * B / 8.0, 1e-15));

  a = amplitudes(B, 1.0, -1.0, 1.0, 2.0, 2.0);
  CHECK(a.B_r.norm() == 0.0);
  CHECK(close(a.B_t, B, 1e-15));

  a = amplitudes(B, 1.0, -0.5, 0.5, 1.0, 1.0);
  CHECK(close(a.B_r, B / 4.0, 1e-15));
  CHECK(close(a.B_t, 3.0 * B / 4.0, 1e-15));

  CHECK_ERROR_CODE(amplitudes(B, 1.0, 0.5, 0.5, 1.0, 4.0), ErrorCode::degenerate);
  CHECK_ERROR_CODE(amplitudes(CVec3::Zero(), 1.0, -0.5, 0.5, 1.0, 4.0), ErrorCode::precondition);
  CHECK_ERROR_CODE(amplitudes(B, 1.0, -0.5, 0.5, 1.0, 0.0), ErrorCode::domain);
}

TEST_CASE("degenerate_amplitude examples") {
  const CVec3 B(0, 1, 0);
  CHECK(close(degenerate_amplitude(B, 1.0, 2.0, 2.0, 1.0), CVec3(0, 2, 0), 1e-15));
  CHECK_ERROR_CODE(degenerate_amplitude(B, 1.0, 2.0, 1.0, 1.0), ErrorCode::no_solution);
  const CVec3 arbitrary(0.3 - I, 2.0, 1.5 * I);
  CHECK(close(degenerate_amplitude(arbitrary, 1.7, 1.7, 3.0, 3.0), arbitrary, 1e-15));
  CHECK_ERROR_CODE(degenerate_amplitude(B, 1.0, 2.0 * (1 + 1e-9), 2.0, 1.0), ErrorCode::no_solution);
}

TEST_CASE("coefficients examples") {
  auto c = coefficients(MediumState(1, 1), MediumState(4, 1));
  CHECK(close(c.R, 1.0 / 8, 1e-15));
  CHECK(close(c.T, 3.0 / 8, 1e-15));
  CHECK(close(c.energy_sum, 0.5, 1e-15));
  CHECK(close(energy_sum_identity(MediumState(1, 1), MediumState(4, 1)), 0.5, 1e-15));

  c = coefficients(MediumState(1, 1), MediumState(1, 4));
  CHECK(close(c.R, 0.25, 1e-15));
  CHECK(close(c.T, 0.75, 1e-15));
  CHECK(close(c.energy_sum, 1.0, 1e-15));
  CHECK(close(energy_sum_identity(MediumState(1, 1), MediumState(1, 4)), 1.0, 1e-15));

  c = coefficients(MediumState(2, 3), MediumState(2, 3));
  CHECK(c.R == 0.0);
  CHECK(c.T == 1.0);
  CHECK(c.energy_sum == 1.0);
}

TEST_CASE("swapped_coefficients examples") {
  auto [R, T] = swapped_coefficients(MediumState(1, 1), MediumState(4, 1));
  CHECK(close(R, 3.0 / 8, 1e-15));
  CHECK(close(T, 1.0 / 8, 1e-15));
  std::tie(R, T) = swapped_coefficients(MediumState(1, 1), MediumState(1, 1));
  CHECK(R == 1.0);
  CHECK(T == 0.0);
  std::tie(R, T) = swapped_coefficients(MediumState(1, 1), MediumState(1, 4));
  CHECK(close(R, 0.75, 1e-15));
  CHECK(close(T, 0.25, 1e-15));
}

TEST_CASE("scatter_interface worked example") {
  const MediumState a(1, 1), b(4, 1);
  const PlaneWave w = incident_in(a, CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0));
  const ScatteringResult r = solve(a, b, w);
  CHECK(r.omega3 == 0.5);
  CHECK(r.omega2 == -0.5);
  CHECK(r.transmitted.k() == Vec3(1, 0, 0));
  CHECK(r.reflected.k() == Vec3(-1, 0, 0));
  CHECK(close(r.R, 1.0 / 8, 1e-15));
  CHECK(close(r.T, 3.0 / 8, 1e-15));
  CHECK(close(r.energy_sum, 0.5, 1e-15));
  CHECK(!r.degenerate);
  CHECK(r.transmitted.v() == 0.5);
  CHECK(close(r.B_reflected(), CVec3(0, -1.0 / 8, 0), 1e-15));
  CHECK(close(r.B_transmitted(), CVec3(0, 3.0 / 8, 0), 1e-15));
}

TEST_CASE("scatter_interface on identical media") {
  const MediumState a(2, 0.5);
  const PlaneWave w = incident_in(a, CVec3(0, 1, I), 1.5, Vec3(1, 0, 0));
  const ScatteringResult r = solve(a, a, w, 0.3);
  CHECK(r.R == 0.0);
  CHECK(r.reflected.amplitude().norm() == 0.0);
  CHECK(close(r.transmitted.amplitude(), w.amplitude(), 1e-15));
  CHECK(r.transmitted.omega() == w.omega());
  CHECK(r.transmitted.k() == w.k());
  const std::vector<Vec3> xs{Vec3(0, 0, 0), Vec3(1, 2, 3), Vec3(-7, 0.5, 9)};
  const BoundaryResidual res = boundary_residual(r, xs);
  CHECK(res.E <= 1e-15);
  CHECK(res.H <= 1e-15);
}

TEST_CASE("interface time only changes phases") {
  const MediumState a(1, 1), b(4, 1);
  const PlaneWave w = incident_in(a, CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0));
  const ScatteringResult r0 = solve(a, b, w, 0.0);
  const ScatteringResult r1 = solve(a, b, w, 1.0);
  CHECK(close(r1.R, r0.R, 1e-15));
  CHECK(close(r1.T, r0.T, 1e-15));
  // A = B exp(i omega t0) with B scaling as B_i = A_i exp(-i omega1 t0)
  const Complex shift_t = std::polar(1.0, (r1.omega3 - 1.0) * 1.0);
  const Complex shift_r = std::polar(1.0, (r1.omega2 - 1.0) * 1.0);
  CHECK(close(r1.transmitted.amplitude(), shift_t * r0.transmitted.amplitude(), 1e-15));
  CHECK(close(r1.reflected.amplitude(), shift_r * r0.reflected.amplitude(), 1e-15));
}

TEST_CASE("scatter_interface preconditions") {
  const MediumState a(1, 1), b(4, 1);
  const PlaneWave w = incident_in(a, CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0));
  CHECK_ERROR_CODE(scatter_interface(w, TemporalProfile::ramp(a, b, 0, 0.1)), ErrorCode::precondition);
  CHECK_ERROR_CODE(scatter_interface(w, TemporalProfile::constant(a)), ErrorCode::precondition);
  CHECK_ERROR_CODE(solve(b, a, w), ErrorCode::precondition);
  const PlaneWave skewed(CVec3(1e-6, 1, 0), 1.0, Vec3(1, 0, 0), 1.0);
  CHECK_ERROR_CODE(solve(a, b, skewed), ErrorCode::precondition);
  const PlaneWave backwards(CVec3(0, 1, 0), -1.0, Vec3(1, 0, 0), 1.0);
  CHECK_ERROR_CODE(solve(a, b, backwards), ErrorCode::precondition);
  // degenerate convention with incompatible media
  CHECK_ERROR_CODE(solve(a, b, w, 0.0, kDegenerateForward), ErrorCode::no_solution);
}

TEST_CASE("swapped convention exchanges the coefficients") {
  const MediumState a(1, 1), b(4, 1);
  const PlaneWave w = incident_in(a, CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0));
  const ScatteringResult r = solve(a, b, w, 0.0, kSwapped);
  CHECK(r.omega3 == -0.5);
  CHECK(r.omega2 == 0.5);
  CHECK(r.transmitted.k() == Vec3(-1, 0, 0));
  CHECK(r.reflected.k() == Vec3(1, 0, 0));
  const auto [R, T] = swapped_coefficients(a, b);
  CHECK(close(r.R, R, 1e-15));
  CHECK(close(r.T, T, 1e-15));
}

TEST_CASE("degenerate branch stores the combined amplitude") {
  // equal impedances satisfy eps- omega1 = eps+ omega2
  const MediumState a(2, 2), b(1, 1);
  const PlaneWave w = incident_in(a, CVec3(0, 0, 1), 1.0, Vec3(0, 1, 0));
  const ScatteringResult r = solve(a, b, w, 0.7, kDegenerateForward);
  CHECK(r.degenerate);
  CHECK(r.omega2 == r.omega3);
  CHECK(r.R == 0.0);
  CHECK(close(r.B_transmitted(), 2.0 * r.B_incident(), 1e-15));
  CHECK(r.reflected.k() == r.transmitted.k());
  CHECK(r.transmitted.k() == w.k());
  const std::vector<Vec3> xs{Vec3(0.1, 0.2, 0.3), Vec3(3, -4, 5)};
  CHECK(boundary_residual(r, xs).E <= 1e-14);

  // omega2 = omega3 < 0 is compatible only with a sign change of eps;
  // the negative speed then turns k_t back onto k_i
  CHECK_ERROR_CODE(solve(a, b, w, 0.0, kDegenerateBackward), ErrorCode::no_solution);
  const MediumState n(-1, -1, Branch::negative);
  const PlaneWave u = incident_in(MediumState(1, 1), CVec3(0, 0, 1), 1.0, Vec3(0, 1, 0));
  const ScatteringResult s = solve(MediumState(1, 1), n, u, 0.0, kDegenerateBackward);
  CHECK(s.degenerate);
  CHECK(s.omega3 == -1.0);
  CHECK(s.transmitted.k() == Vec3(0, 1, 0));
  CHECK(close(s.B_transmitted(), -s.B_incident(), 1e-15));
}

TEST_CASE("negative index branch signs") {
  const MediumState a(1, 1), n(-1, -4, Branch::negative);
  const PlaneWave w = incident_in(a, CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0));
  const ScatteringResult r = solve(a, n, w);
  CHECK(r.transmitted.v() == -0.5);
  CHECK(r.omega3 == 0.5);
  CHECK(r.transmitted.k() == Vec3(-1, 0, 0));
  CHECK(r.reflected.k() == Vec3(1, 0, 0));
  CHECK(close(r.R, 0.75, 1e-15));
  CHECK(close(r.T, 0.25, 1e-15));
  const ScatteringResult s = solve(a, n, w, 0.0, kSwapped);
  CHECK(s.transmitted.k() == Vec3(1, 0, 0));
}

TEST_CASE("boundary residual detects tampering") {
  const MediumState a(1, 1), b(4, 1);
  const PlaneWave w = incident_in(a, CVec3(0, 1, 0), 1.0, Vec3(1, 0, 0));
  ScatteringResult r = solve(a, b, w);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<Vec3> xs;
  for (int j = 0; j < 100; ++j) xs.emplace_back(u(rng), u(rng), u(rng));
  const BoundaryResidual clean = boundary_residual(r, xs);
  CHECK(clean.E <= 1e-10);
  CHECK(clean.H <= 1e-10);

  r.reflected = PlaneWave::allow_vanishing(2.0 * r.reflected.amplitude(), r.reflected.omega(), r.reflected.k(),
                                           r.reflected.v());
  const BoundaryResidual bad = boundary_residual(r, xs);
  CHECK(bad.E > 0.01 * w.amplitude().norm() * b.epsilon());
}

TEST_CASE("frozen amplitudes from an independent jump-condition solve") {
  SUBCASE("oblique elliptic polarization") {
    const MediumState a(1.5, 0.7), b(3.2, 2.1);
    const PlaneWave w = incident_in(a, CVec3(0, 1, I) / std::sqrt(2.0), 1.3, Vec3(1, 0, 0));
    const ScatteringResult r = solve(a, b, w, 0.4);
    CHECK(close(r.omega3, 0.5138701197773615, 1e-15));
    const CVec3 A_r(0.0, Complex(0.0194320089517676, -0.01723486808698248),
                    Complex(0.01723486808698234, 0.01943200895176747));
    const CVec3 A_t(0.0, Complex(2.9050338569396167e-01, -9.4484283748505538e-02),
                    Complex(9.4484283748505496e-02, 2.9050338569396156e-01));
    CHECK(close(r.reflected.amplitude(), A_r, 1e-12));
    CHECK(close(r.transmitted.amplitude(), A_t, 1e-12));
  }
  SUBCASE("negative index, oblique k") {
    const MediumState a(1, 1), b(-2, -0.5, Branch::negative);
    const Vec3 k = Vec3(1, 2, 2) / 3.0;
    const CVec3 amp(Complex(2, 0), Complex(-1, 1), Complex(0, -1));
    const PlaneWave w = incident_in(a, amp, 0.8, k);
    const ScatteringResult r = solve(a, b, w, -0.7);
    const CVec3 A_r(Complex(-0.6535236694150685, -1.3501506632647582), Complex(1.0018371663399135, 0.3483134969248447),
                    Complex(-0.6750753316323783, 0.32676183470753434));
    const CVec3 A_t(Complex(0.5, 0), Complex(-0.25, 0.25), Complex(0, -0.25));
    CHECK(close(r.reflected.amplitude(), A_r, 1e-12));
    CHECK(close(r.transmitted.amplitude(), A_t, 1e-12));
    CHECK(r.transmitted.k() == -k);
  }
}

TEST_CASE("randomized agreement with the jump-condition solve") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3, 3);
  std::bernoulli_distribution coin;
  for (int n = 0; n < 300; ++n) {
    const MediumState a(support::log_uniform(rng, 0.1, 10), support::log_uniform(rng, 0.1, 10));
    const double ep = support::log_uniform(rng, 0.1, 10);
    const double mp = support::log_uniform(rng, 0.1, 10);
    const MediumState b = coin(rng) ? MediumState(-ep, -mp, Branch::negative) : MediumState(ep, mp);
    const Vec3 k = support::random_unit(rng);
    const PlaneWave w = incident_in(a, support::random_transverse(rng, k), support::log_uniform(rng, 0.1, 10), k);
    const double t0 = u(rng);
    const FrequencyConvention conv = coin(rng) ? FrequencyConvention{} : kSwapped;
    const ScatteringResult r = solve(a, b, w, t0, conv);
    const auto [A_r, A_t] = jump_system(a, b, w, t0, r.omega2, r.omega3);
    const double scale = w.amplitude().norm() * std::max(1.0, a.epsilon() / std::abs(b.epsilon()));
    CHECK(close(r.reflected.amplitude(), A_r, 1e-11, scale));
    CHECK(close(r.transmitted.amplitude(), A_t, 1e-11, scale));
  }
}

TEST_CASE("scattering invariants on random inputs") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int n = 0; n < 1000; ++n) {
    const MediumState a(support::log_uniform(rng, 0.05, 20), support::log_uniform(rng, 0.05, 20));
    const MediumState b(support::log_uniform(rng, 0.05, 20), support::log_uniform(rng, 0.05, 20));
    const Vec3 k = support::random_unit(rng);
    const PlaneWave w = incident_in(a, support::random_transverse(rng, k), support::log_uniform(rng, 0.1, 10), k);
    const ScatteringResult r = solve(a, b, w, u(rng));

    // finite real frequencies for every positive pair
    REQUIRE(std::isfinite(r.omega2));
    REQUIRE(std::isfinite(r.omega3));
    CHECK(r.omega3 > 0.0);

    const CVec3 Bi = r.B_incident();
    const double ratio = a.epsilon() / b.epsilon();
    CHECK(close(r.B_reflected() + r.B_transmitted(), ratio * Bi, 1e-12, ratio * Bi.norm()));

    CHECK(close(r.energy_sum, energy_sum_identity(a, b), 1e-12));
    const Coefficients c = coefficients(a, b);
    CHECK(close(r.R, c.R, 1e-12, c.T));
    CHECK(close(r.T, c.T, 1e-12));

    const Vec3 m = phase_vector(w).m;
    CHECK((phase_vector(r.transmitted).m - m).norm() <= 1e-12 * m.norm());
    CHECK((phase_vector(r.reflected).m - m).norm() <= 1e-12 * m.norm());
    CHECK(transversality_residual(r.transmitted) <= 1e-12 * std::max(1.0, r.transmitted.amplitude().norm()));
    CHECK(transversality_residual(r.reflected) <= 1e-12 * std::max(1.0, r.reflected.amplitude().norm()));

    // k_r and k_t are each +-k_i
    CHECK(((r.transmitted.k() - k).norm() == 0.0 || (r.transmitted.k() + k).norm() == 0.0));
    CHECK(((r.reflected.k() - k).norm() == 0.0 || (r.reflected.k() + k).norm() == 0.0));

    // complex rescaling of the incident amplitude
    const Complex s = std::polar(support::log_uniform(rng, 0.1, 10), u(rng));
    const ScatteringResult q = solve(a, b, PlaneWave(s * w.amplitude(), w.omega(), k, w.v()), r.t0);
    CHECK(close(q.reflected.amplitude(), s * r.reflected.amplitude(), 1e-12, std::abs(s) * Bi.norm()));
    CHECK(close(q.transmitted.amplitude(), s * r.transmitted.amplitude(), 1e-12));
    CHECK(close(q.R, r.R, 1e-12, r.T));
    CHECK(close(q.T, r.T, 1e-12));
  }
}
