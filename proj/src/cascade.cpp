#include "tempscat/cascade.hpp"

#include <cmath>
#include <string>

#include "tempscat/error.hpp"
#include "tempscat/scatter.hpp"

namespace tempscat {

namespace {

constexpr double kDegeneracyTolerance = 1e-9;

void require_valid(const std::vector<TimelineSegment>& segments) {
  if (segments.empty()) throw Error(ErrorCode::precondition, "timeline needs at least one segment");
  for (std::size_t j = 0; j < segments.size(); ++j) {
    if (!(segments[j].duration >= 0.0) || !std::isfinite(segments[j].duration)) {
      throw Error(ErrorCode::precondition,
                  "segment " + std::to_string(j) + " duration must be finite and >= 0");
    }
  }
}

InterfaceMatrix indexed_interface(const MediumState& before, const MediumState& after,
                                  std::size_t index) {
  try {
    return interface_matrix(before, after);
  } catch (const Error& e) {
    throw Error(e.code(), "interface " + std::to_string(index) + ": " + e.what());
  }
}

}  // namespace

InterfaceMatrix interface_matrix(const MediumState& before, const MediumState& after) {
  const double v_minus = wave_speed(before);
  const double v_plus = wave_speed(after);
  const Frequencies f = frequencies(1.0, v_minus, v_plus);
  const auto [r, t] = amplitude_factors(1.0, f.omega2, f.omega3, before.epsilon(), after.epsilon());
  InterfaceMatrix m;
  m.entries << t, r, r, t;
  return m;
}

InterfaceMatrix propagate(double omega, double duration) {
  if (!(duration >= 0.0)) throw Error(ErrorCode::precondition, "propagation duration must be >= 0");
  const double phase = std::abs(omega) * duration;
  InterfaceMatrix m;
  m.entries << std::polar(1.0, -phase), 0.0, 0.0, std::polar(1.0, phase);
  return m;
}

CascadeResult cascade_scatter(const std::vector<TimelineSegment>& segments, const PlaneWave& incident,
                              double t_start) {
  require_valid(segments);
  const MediumState& first = segments.front().medium;
  if (std::abs(incident.v() - wave_speed(first)) > 1e-12 * std::abs(incident.v())) {
    throw Error(ErrorCode::precondition, "incident phase speed does not match the first segment");
  }
  const double amplitude = incident.amplitude().norm();
  if (amplitude == 0.0) throw Error(ErrorCode::precondition, "incident amplitude must be non-zero");

  CascadeResult result;
  result.net = Matrix2c::Identity();
  Eigen::Vector2cd state(amplitude * std::polar(1.0, -incident.omega() * t_start), 0.0);
  double omega = std::abs(incident.omega());
  double time = t_start;

  for (std::size_t j = 0; j < segments.size(); ++j) {
    if (j > 0) {
      const MediumState& before = segments[j - 1].medium;
      const MediumState& after = segments[j].medium;
      const Matrix2c switch_matrix = indexed_interface(before, after, j).entries;
      InterfaceTrace entry{j, time, omega, 0.0, state(0), state(1), 0.0, 0.0};
      state = switch_matrix * state;
      result.net = switch_matrix * result.net;
      omega *= std::abs(wave_speed(after) / wave_speed(before));
      entry.omega_after = omega;
      entry.forward_after = state(0);
      entry.backward_after = state(1);
      result.trace.push_back(entry);
    }
    const Matrix2c dwell = propagate(omega, segments[j].duration).entries;
    state = dwell * state;
    result.net = dwell * result.net;
    time += segments[j].duration;
  }

  result.final_amplitudes = {state(0), state(1), incident.amplitude() / amplitude};
  result.final_omega = omega;
  result.final_time = time;
  return result;
}

Matrix2c period_matrix(const std::vector<TimelineSegment>& cell, double omega_in) {
  require_valid(cell);
  Matrix2c m = Matrix2c::Identity();
  double omega = std::abs(omega_in);
  for (std::size_t j = 0; j < cell.size(); ++j) {
    m = propagate(omega, cell[j].duration).entries * m;
    const MediumState& before = cell[j].medium;
    const MediumState& after = cell[(j + 1) % cell.size()].medium;
    m = indexed_interface(before, after, j + 1).entries * m;
    omega *= std::abs(wave_speed(after) / wave_speed(before));
  }
  return m;
}

FloquetResult floquet_exponent(const std::vector<TimelineSegment>& cell, double omega_in) {
  require_valid(cell);
  double total = 0.0;
  for (const TimelineSegment& s : cell) total += s.duration;
  if (!(total > 0.0)) throw Error(ErrorCode::precondition, "cell duration must be > 0");

  FloquetResult out;
  out.period_matrix = period_matrix(cell, omega_in);
  const Matrix2c& m = out.period_matrix;
  out.half_trace = 0.5 * (m(0, 0) + m(1, 1));
  out.determinant = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex root = std::sqrt(out.half_trace * out.half_trace - out.determinant);
  out.eigenvalues[0] = out.half_trace + root;
  out.eigenvalues[1] = out.half_trace - root;
  for (int j = 0; j < 2; ++j) out.exponents[j] = std::log(out.eigenvalues[j]);
  out.momentum_gap = std::abs(out.half_trace) > 1.0;
  const double scale = std::max(1.0, std::abs(out.half_trace));
  out.degenerate_warning = std::abs(root) <= kDegeneracyTolerance * scale;
  return out;
}

}  // namespace tempscat
