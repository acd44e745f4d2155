#include "tempscat/scatter.hpp"

#include <algorithm>
#include <cmath>

#include "tempscat/error.hpp"

namespace tempscat {

namespace {

constexpr double kScaleTolerance = 1e-9;
constexpr double kFrequencyTieTolerance = 1e-12;
constexpr double kCompatibilityTolerance = 1e-12;
constexpr double kSpeedMatchTolerance = 1e-12;
constexpr double kTransverseTolerance = 1e-9;

bool nearly_equal(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

Vec3 signed_direction(const Vec3& k_i, double scale) {
  if (!std::isfinite(scale) || std::abs(std::abs(scale) - 1.0) > kScaleTolerance) {
    throw Error(ErrorCode::consistency,
                "frequencies inconsistent with the temporal Snell law (|scale| = " +
                    std::to_string(std::abs(scale)) + ")");
  }
  // adding +0.0 keeps zero components unsigned after the flip
  return scale > 0.0 ? k_i : Vec3((-k_i).array() + 0.0);
}

}  // namespace

CVec3 ScatteringResult::B_incident() const {
  return incident.amplitude() * std::polar(1.0, -incident.omega() * t0);
}

CVec3 ScatteringResult::B_reflected() const {
  return reflected.amplitude() * std::polar(1.0, -reflected.omega() * t0);
}

CVec3 ScatteringResult::B_transmitted() const {
  return transmitted.amplitude() * std::polar(1.0, -transmitted.omega() * t0);
}

Frequencies frequencies(double omega1, double v_minus, double v_plus, FrequencyConvention conv) {
  if (!(omega1 > 0.0) || !std::isfinite(omega1)) {
    throw Error(ErrorCode::precondition, "incident frequency omega1 must be > 0");
  }
  if (v_minus == 0.0 || v_plus == 0.0 || !std::isfinite(v_minus) || !std::isfinite(v_plus)) {
    throw Error(ErrorCode::domain, "phase speeds must be finite and non-zero");
  }
  const double magnitude = std::abs(v_plus / v_minus) * omega1;
  return {
      conv.reflected == ReflectedBranch::negative ? -magnitude : magnitude,
      conv.transmitted == TransmittedBranch::forward ? magnitude : -magnitude,
  };
}

WaveVectors wave_vectors(const Vec3& k_i, double omega1, double omega2, double omega3,
                         double v_minus, double v_plus) {
  const double speed_ratio = v_plus / v_minus;
  return {
      signed_direction(k_i, omega1 / omega2 * speed_ratio),
      signed_direction(k_i, omega1 / omega3 * speed_ratio),
  };
}

std::pair<double, double> amplitude_factors(double omega1, double omega2, double omega3,
                                            double eps_minus, double eps_plus) {
  if (eps_plus == 0.0) throw Error(ErrorCode::domain, "eps+ must be non-zero");
  if (nearly_equal(omega2, omega3, kFrequencyTieTolerance)) {
    throw Error(ErrorCode::degenerate,
                "omega2 == omega3: reflected and transmitted amplitudes are not unique; "
                "use degenerate_amplitude");
  }
  const double a2 = omega1 / omega2;
  const double a3 = omega1 / omega3;
  const double ratio = eps_minus / eps_plus;
  const double denominator = a2 - a3;
  return {(1.0 - a3 * ratio) / denominator, (a2 * ratio - 1.0) / denominator};
}

ScatteredAmplitudes amplitudes(const CVec3& B_i, double omega1, double omega2, double omega3,
                               double eps_minus, double eps_plus) {
  if (B_i.norm() == 0.0) throw Error(ErrorCode::precondition, "B_i must be non-zero");
  const auto [r, t] = amplitude_factors(omega1, omega2, omega3, eps_minus, eps_plus);
  return {r * B_i, t * B_i};
}

CVec3 degenerate_amplitude(const CVec3& B_i, double omega1, double omega2, double eps_minus,
                           double eps_plus) {
  if (eps_plus == 0.0) throw Error(ErrorCode::domain, "eps+ must be non-zero");
  if (!nearly_equal(eps_minus * omega1, eps_plus * omega2, kCompatibilityTolerance)) {
    throw Error(ErrorCode::no_solution,
                "degenerate interface violates eps- omega1 == eps+ omega2; no solution exists");
  }
  return (eps_minus / eps_plus) * B_i;
}

Coefficients coefficients(const MediumState& before, const MediumState& after) {
  const double ratio = before.epsilon() / after.epsilon();
  const double index_ratio =
      std::sqrt(before.epsilon() * before.mu()) / std::sqrt(after.epsilon() * after.mu());
  const double R = 0.5 * std::abs(ratio - index_ratio);
  const double T = 0.5 * std::abs(ratio + index_ratio);
  return {R, T, R + T};
}

std::pair<double, double> swapped_coefficients(const MediumState& before,
                                               const MediumState& after) {
  const Coefficients c = coefficients(before, after);
  return {c.T, c.R};
}

double energy_sum_identity(const MediumState& before, const MediumState& after) {
  if (impedance(before) < impedance(after)) return before.epsilon() / after.epsilon();
  return std::sqrt(before.epsilon() * before.mu() / (after.epsilon() * after.mu()));
}

ScatteringResult scatter_interface(const PlaneWave& incident, const TemporalProfile& profile,
                                   FrequencyConvention conv) {
  if (profile.kind() != ProfileKind::step) {
    throw Error(ErrorCode::precondition, "scatter_interface requires a step profile");
  }
  const MediumState& before = profile.before();
  const MediumState& after = profile.after();
  const double t0 = profile.t0();
  const double v_minus = wave_speed(before);
  const double v_plus = wave_speed(after);

  if (!nearly_equal(incident.v(), v_minus, kSpeedMatchTolerance)) {
    throw Error(ErrorCode::precondition, "incident phase speed does not match the medium before t0");
  }
  if (transversality_residual(incident) > kTransverseTolerance * incident.amplitude().norm()) {
    throw Error(ErrorCode::precondition, "incident wave is not transversal (A.k != 0)");
  }

  const double omega1 = incident.omega();
  const auto [omega2, omega3] = frequencies(omega1, v_minus, v_plus, conv);
  const auto [k_r, k_t] = wave_vectors(incident.k(), omega1, omega2, omega3, v_minus, v_plus);

  const CVec3 B_i = incident.amplitude() * std::polar(1.0, -omega1 * t0);
  const bool degenerate = nearly_equal(omega2, omega3, kFrequencyTieTolerance);

  CVec3 A_r;
  CVec3 A_t;
  double R = 0.0;
  double T = 0.0;
  if (degenerate) {
    const CVec3 combined = degenerate_amplitude(B_i, omega1, omega2, before.epsilon(), after.epsilon());
    A_r.setZero();
    A_t = combined * std::polar(1.0, omega3 * t0);
    T = combined.norm() / B_i.norm();
  } else {
    const ScatteredAmplitudes b = amplitudes(B_i, omega1, omega2, omega3, before.epsilon(), after.epsilon());
    A_r = b.B_r * std::polar(1.0, omega2 * t0);
    A_t = b.B_t * std::polar(1.0, omega3 * t0);
    R = b.B_r.norm() / B_i.norm();
    T = b.B_t.norm() / B_i.norm();
  }

  return ScatteringResult{
      .incident = incident,
      .reflected = PlaneWave::allow_vanishing(A_r, omega2, k_r, v_plus),
      .transmitted = PlaneWave::allow_vanishing(A_t, omega3, k_t, v_plus),
      .before = before,
      .after = after,
      .t0 = t0,
      .R = R,
      .T = T,
      .energy_sum = R + T,
      .omega2 = omega2,
      .omega3 = omega3,
      .degenerate = degenerate,
  };
}

BoundaryResidual boundary_residual(const ScatteringResult& result, std::span<const Vec3> x_samples) {
  const double eps_minus = result.before.epsilon();
  const double eps_plus = result.after.epsilon();
  const double mu_minus = result.before.mu();
  const double mu_plus = result.after.mu();
  const PlaneWave H_i = magnetic_from_electric(result.incident, mu_minus);
  const PlaneWave H_r = magnetic_from_electric(result.reflected, mu_plus);
  const PlaneWave H_t = magnetic_from_electric(result.transmitted, mu_plus);
  const double t0 = result.t0;

  BoundaryResidual res{0.0, 0.0};
  for (const Vec3& x : x_samples) {
    const CVec3 jump_E = eps_plus * (evaluate_E(result.transmitted, x, t0) + evaluate_E(result.reflected, x, t0)) -
                         eps_minus * evaluate_E(result.incident, x, t0);
    const CVec3 jump_H = mu_plus * (evaluate_E(H_t, x, t0) + evaluate_E(H_r, x, t0)) -
                         mu_minus * evaluate_E(H_i, x, t0);
    res.E = std::max(res.E, jump_E.norm());
    res.H = std::max(res.H, jump_H.norm());
  }
  return res;
}

}  // namespace tempscat
