#include "tempscat/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "tempscat/error.hpp"
#include "tempscat/scatter.hpp"

namespace tempscat {

namespace {

using State = std::array<Complex, 6>;
using Stepper = boost::numeric::odeint::runge_kutta_dopri5<State, double, State, double>;

constexpr double kConstraintTolerance = 1e-8;
constexpr double kMaxGrowth = 5.0;
constexpr double kMinShrink = 0.2;
constexpr double kSafety = 0.9;
constexpr std::size_t kMaxSteps = 50'000'000;

State pack(const ModeState& s) {
  return {s.D(0), s.D(1), s.D(2), s.B(0), s.B(1), s.B(2)};
}

ModeState unpack(const State& x, double t) {
  return {CVec3(x[0], x[1], x[2]), CVec3(x[3], x[4], x[5]), t};
}

double max_abs(const State& x) {
  double m = 0.0;
  for (const Complex& c : x) m = std::max(m, std::abs(c));
  return m;
}

double divergence(const State& x, const Vec3& m) {
  const Complex d = x[0] * m(0) + x[1] * m(1) + x[2] * m(2);
  const Complex b = x[3] * m(0) + x[4] * m(1) + x[5] * m(2);
  return std::max(std::abs(d), std::abs(b));
}

double norm_of(const Vec3& m) {
  const double n = m.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::domain, "phase vector must be finite and non-zero");
  }
  return n;
}

// Integrate across one smooth piece [a, b] of the profile. The medium at the
// piece's endpoints is taken as the one-sided limit from inside the piece.
void integrate_piece(const TemporalProfile& profile, const Vec3& m, State& x, double a, double b,
                     double tol, double& h, IntegrationStats& stats) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  auto medium_at = [&](double t) {
    if (t <= lo) return profile.limit_after(lo);
    if (t >= hi) return profile.limit_before(hi);
    return profile.sample(t);
  };
  auto system = [&](const State& s, State& ds, double t) {
    const MediumState med = medium_at(t);
    const ModeDerivative d = mode_rhs(unpack(s, t), PhaseVector{m}, med);
    ds = {d.dD(0), d.dD(1), d.dD(2), d.dB(0), d.dB(1), d.dB(2)};
  };

  const double direction = b > a ? 1.0 : -1.0;
  const double underflow = 1e-13 * std::max({1.0, std::abs(a), std::abs(b)});
  Stepper stepper;
  State dxdt;
  State out;
  State dxdt_out;
  State err;
  double t = a;
  system(x, dxdt, t);
  while (direction * (b - t) > 0.0) {
    double step = std::min(std::abs(h), std::abs(b - t));
    const bool last = step >= std::abs(b - t);
    const double dt = direction * step;
    stepper.do_step(system, x, dxdt, t, out, dxdt_out, dt, err);
    const double error = max_abs(err);
    const double scale = std::max(max_abs(x), max_abs(out));
    const double allowed = tol * step * scale;
    if (error <= allowed) {
      x = out;
      dxdt = dxdt_out;
      t = last ? b : t + dt;
      ++stats.accepted_steps;
      stats.smallest_step = stats.accepted_steps == 1 ? step : std::min(stats.smallest_step, step);
      stats.largest_step = std::max(stats.largest_step, step);
      stats.max_divergence = std::max(stats.max_divergence, divergence(x, m));
      if (stats.accepted_steps + stats.rejected_steps > kMaxSteps) {
        throw Error(ErrorCode::stiffness, "integration exceeded the step budget");
      }
    } else {
      ++stats.rejected_steps;
    }
    const double factor =
        error == 0.0 ? kMaxGrowth
                     : std::clamp(kSafety * std::pow(allowed / error, 0.25), kMinShrink, kMaxGrowth);
    // Do not let a clipped final step shrink the carried step size.
    if (!(last && error <= allowed)) h = step * factor;
    else h = std::max(std::abs(h), step * factor);
    if (h < underflow) {
      throw Error(ErrorCode::stiffness, "step size underflow at t = " + std::to_string(t) +
                                            " (step " + std::to_string(h) + ")");
    }
  }
}

}  // namespace

ModeDerivative mode_rhs(const ModeState& state, const PhaseVector& m, const MediumState& medium) {
  const Complex i(0.0, 1.0);
  return {
      i * cross(m.m, CVec3(state.B / medium.mu())),
      -i * cross(m.m, CVec3(state.D / medium.epsilon())),
  };
}

IntegrationResult integrate_with_stats(const TemporalProfile& profile, const PhaseVector& m,
                                       const ModeState& initial, double t_end, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::precondition, "integration tolerance must be > 0");
  if (!std::isfinite(t_end) || !std::isfinite(initial.t)) {
    throw Error(ErrorCode::precondition, "integration bounds must be finite");
  }
  const double m_norm = norm_of(m.m);
  IntegrationResult result{initial, {}};
  result.stats.max_divergence = divergence(pack(initial), m.m);
  if (t_end == initial.t) return result;

  std::vector<double> nodes{initial.t};
  for (double p : profile.breakpoints(initial.t, t_end)) nodes.push_back(p);
  nodes.push_back(t_end);

  // Initial step: a small fraction of the fastest local oscillation period.
  double fastest = 0.0;
  for (double t : nodes) {
    fastest = std::max({fastest, std::abs(wave_speed(profile.limit_before(t))),
                        std::abs(wave_speed(profile.limit_after(t)))});
  }
  double h = 1e-3 / (m_norm * fastest);

  State x = pack(initial);
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    integrate_piece(profile, m.m, x, nodes[j], nodes[j + 1], tol, h, result.stats);
  }
  result.state = unpack(x, t_end);
  return result;
}

ModeState integrate(const TemporalProfile& profile, const PhaseVector& m, const ModeState& initial,
                    double t_end, double tol) {
  return integrate_with_stats(profile, m, initial, t_end, tol).state;
}

ModeAmplitudes mode_decompose(const ModeState& state, const MediumState& medium, const PhaseVector& m) {
  const double m_norm = norm_of(m.m);
  const double scale_D = state.D.norm() * m_norm;
  const double scale_B = state.B.norm() * m_norm;
  if (std::abs(dot(state.D, m.m)) > kConstraintTolerance * scale_D ||
      std::abs(dot(state.B, m.m)) > kConstraintTolerance * scale_B) {
    throw Error(ErrorCode::constraint, "mode state is not divergence free (D.m or B.m != 0)");
  }
  const double omega = m_norm * std::abs(wave_speed(medium));
  const CVec3 difference = -medium.epsilon() * omega * cross(m.m, state.B) / (m_norm * m_norm);
  const CVec3 forward = 0.5 * (state.D + difference);
  const CVec3 backward = 0.5 * (state.D - difference);

  const CVec3& dominant = forward.norm() >= backward.norm() ? forward : backward;
  const double dominant_norm = dominant.norm();
  if (dominant_norm == 0.0) {
    Vec3 axis = std::abs(m.m(0)) < 0.9 * m_norm ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 p = m.m.cross(axis).normalized();
    return {0.0, 0.0, p.cast<Complex>()};
  }
  const CVec3 p = dominant / dominant_norm;
  const Complex f = p.dot(forward);  // Eigen's dot conjugates the left operand
  const Complex b = p.dot(backward);
  const double tolerance = kConstraintTolerance * (forward.norm() + backward.norm());
  if ((forward - f * p).norm() > tolerance || (backward - b * p).norm() > tolerance) {
    throw Error(ErrorCode::constraint, "forward and backward modes carry different polarizations");
  }
  return {f, b, p};
}

ModeState mode_reconstruct(const ModeAmplitudes& amps, const MediumState& medium,
                           const PhaseVector& m, double t) {
  const double m_norm = norm_of(m.m);
  const double omega = m_norm * std::abs(wave_speed(medium));
  const CVec3 forward = amps.forward * amps.polarization;
  const CVec3 backward = amps.backward * amps.polarization;
  return {forward + backward, cross(m.m, CVec3(forward - backward)) / (medium.epsilon() * omega), t};
}

ModeState mode_state_from_wave(const PlaneWave& wave, const MediumState& medium, double t) {
  if (std::abs(wave.v() - wave_speed(medium)) > 1e-12 * std::abs(wave.v())) {
    throw Error(ErrorCode::precondition, "wave phase speed does not match the medium");
  }
  const Vec3 origin = Vec3::Zero();
  const PlaneWave h = magnetic_from_electric(wave, medium.mu());
  return {medium.epsilon() * evaluate_E(wave, origin, t), medium.mu() * evaluate_E(h, origin, t), t};
}

NumericRT numeric_RT(const TemporalProfile& profile, const PlaneWave& incident, double tol) {
  if (profile.kind() == ProfileKind::periodic) {
    throw Error(ErrorCode::precondition, "numeric_RT needs a profile that settles to a constant medium");
  }
  const MediumState& before = profile.before();
  const MediumState& after = profile.after();
  if (!(incident.omega() > 0.0)) {
    throw Error(ErrorCode::precondition, "incident frequency must be > 0");
  }
  const auto& switches = profile.switch_times();
  const double first = switches.empty() ? profile.t0() : switches.front();
  const double last = switches.empty() ? profile.t0() : switches.back();
  const double period = 2.0 * std::numbers::pi / incident.omega();
  const double t_start = first - 0.5 * profile.tau() - kOraclePaddingPeriods * period;
  const double t_end = last + 0.5 * profile.tau() + kOraclePaddingPeriods * period;

  const PhaseVector m = phase_vector(incident);
  const ModeState initial = mode_state_from_wave(incident, before, t_start);
  const ModeState final_state = integrate(profile, m, initial, t_end, tol);
  const ModeAmplitudes amps = mode_decompose(final_state, after, m);

  const double reference = std::abs(after.epsilon()) * incident.amplitude().norm();
  return {std::abs(amps.backward) / reference, std::abs(amps.forward) / reference};
}

ConvergenceStudy convergence_study(const MediumState& before, const MediumState& after, double t0,
                                   const std::vector<double>& tau_periods, const PlaneWave& incident,
                                   double tol) {
  if (tau_periods.size() < 3) {
    throw Error(ErrorCode::precondition, "convergence study needs at least three ramp widths");
  }
  for (std::size_t j = 1; j < tau_periods.size(); ++j) {
    if (!(tau_periods[j] < tau_periods[j - 1])) {
      throw Error(ErrorCode::precondition, "ramp widths must be strictly decreasing");
    }
  }
  const double period = 2.0 * std::numbers::pi / incident.omega();
  const Coefficients exact = coefficients(before, after);

  ConvergenceStudy study;
  for (double tau : tau_periods) {
    const NumericRT rt = numeric_RT(TemporalProfile::ramp(before, after, t0, tau * period), incident, tol);
    study.rows.push_back({tau, rt.R, rt.T, std::abs(rt.R - exact.R), std::abs(rt.T - exact.T)});
  }

  auto slope = [&](auto error_of) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const ConvergenceRow& row : study.rows) {
      const double e = error_of(row);
      if (e <= 100.0 * tol) continue;
      const double x = std::log(row.tau_periods);
      const double y = std::log(e);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n < 2) return std::nan("");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  study.order_R = slope([](const ConvergenceRow& r) { return r.err_R; });
  study.order_T = slope([](const ConvergenceRow& r) { return r.err_T; });
  return study;
}

}  // namespace tempscat
