#pragma once

#include <cstddef>
#include <vector>

#include "tempscat/media.hpp"
#include "tempscat/types.hpp"
#include "tempscat/waves.hpp"

namespace tempscat {

/// Flux amplitudes (D, B) of a single spatial harmonic exp(i m.x) at time t.
struct ModeState {
  CVec3 D;
  CVec3 B;
  double t;
};

struct ModeDerivative {
  CVec3 dD;
  CVec3 dB;
};

/// Forward (exp(-i|w| t)) and backward (exp(+i|w| t)) eigenmode amplitudes
/// of a constant medium, as instantaneous values along `polarization`.
///
/// The oracle measures them in the flux (D) basis; the cascade works in the
/// electric-field (E) basis. Both share this type.
struct ModeAmplitudes {
  Complex forward;
  Complex backward;
  CVec3 polarization;
};

/// Source-free Maxwell equations for one spatial harmonic:
/// dD/dt = i m x (B / mu),  dB/dt = -i m x (D / eps).
ModeDerivative mode_rhs(const ModeState& state, const PhaseVector& m, const MediumState& medium);

struct IntegrationStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  double smallest_step = 0.0;
  double largest_step = 0.0;
  /// max over accepted steps of max(|D.m|, |B.m|)
  double max_divergence = 0.0;
};

struct IntegrationResult {
  ModeState state;
  IntegrationStats stats;
};

/// Adaptive Dormand-Prince 5(4) integration of the mode equations from
/// initial.t to t_end (either direction). A step is accepted when the
/// embedded error estimate is at most tol * |h| * max|state|, i.e. the local
/// error per unit time is bounded by tol. Steps never straddle a profile
/// breakpoint. Step underflow throws Error(stiffness).
IntegrationResult integrate_with_stats(const TemporalProfile& profile, const PhaseVector& m,
                                       const ModeState& initial, double t_end, double tol = 1e-10);

ModeState integrate(const TemporalProfile& profile, const PhaseVector& m, const ModeState& initial,
                    double t_end, double tol = 1e-10);

/// Split a state into the two eigenmodes of `medium` (D basis). Throws
/// Error(constraint) if the state is not divergence free or the two modes
/// do not share one polarization.
ModeAmplitudes mode_decompose(const ModeState& state, const MediumState& medium, const PhaseVector& m);

/// Inverse of mode_decompose.
ModeState mode_reconstruct(const ModeAmplitudes& amps, const MediumState& medium,
                           const PhaseVector& m, double t);

/// (D, B) of `wave` at x = 0 and time t in `medium`.
ModeState mode_state_from_wave(const PlaneWave& wave, const MediumState& medium, double t);

struct NumericRT {
  double R;
  double T;
};

/// Launch `incident` several wave periods before the switch region of
/// `profile`, integrate until several periods after it, and read off
/// |E_r| / |E_i| and |E_t| / |E_i|. These are the same moduli ratios as the
/// closed-form coefficients because E_t,r = D_t,r / eps+ and E_i = D_i / eps-.
NumericRT numeric_RT(const TemporalProfile& profile, const PlaneWave& incident, double tol = 1e-10);

struct ConvergenceRow {
  double tau_periods;
  double R_num;
  double T_num;
  double err_R;
  double err_T;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  /// least-squares slope of log(err) against log(tau) over rows above the
  /// tolerance floor; NaN if fewer than two such rows
  double order_R;
  double order_T;
};

/// numeric_RT over a family of ramps (widths in incident wave periods,
/// strictly decreasing, at least three) against the closed-form
/// coefficients of the sudden switch.
ConvergenceStudy convergence_study(const MediumState& before, const MediumState& after, double t0,
                                   const std::vector<double>& tau_periods, const PlaneWave& incident,
                                   double tol = 1e-10);

/// Number of incident wave periods of padding before and after the
/// switch region in numeric_RT.
inline constexpr double kOraclePaddingPeriods = 5.0;

}  // namespace tempscat
