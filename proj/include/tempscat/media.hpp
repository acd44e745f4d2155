#pragma once

#include <vector>

namespace tempscat {

/// Sign of the refractive-index root. `negative` is only meaningful for
/// double-negative media (epsilon < 0 and mu < 0).
enum class Branch : int { positive = 1, negative = -1 };

/// One-sided material sample: relative permittivity and permeability at an
/// instant. Units are normalized so that the vacuum light speed is 1.
class MediumState {
 public:
  /// Throws Error(domain) unless epsilon*mu is finite and strictly positive,
  /// and Branch::negative is paired with epsilon < 0, mu < 0.
  MediumState(double epsilon, double mu, Branch branch = Branch::positive);

  double epsilon() const noexcept { return epsilon_; }
  double mu() const noexcept { return mu_; }
  Branch branch() const noexcept { return branch_; }
  int sign() const noexcept { return static_cast<int>(branch_); }

  friend bool operator==(const MediumState&, const MediumState&) = default;

 private:
  double epsilon_;
  double mu_;
  Branch branch_;
};

/// Signed phase speed branch / sqrt(|epsilon mu|).
double wave_speed(const MediumState& m);
/// sqrt(mu / epsilon), always positive.
double impedance(const MediumState& m);
/// Signed index branch * sqrt(|epsilon mu|); reciprocal of wave_speed.
double refractive_index(const MediumState& m);

enum class ProfileKind { constant, step, ramp, periodic, sequence };

/// Declared time course of epsilon(t), mu(t).
///
/// Non-periodic kinds are stored as a list of constant levels separated by
/// switch times. Each switch is a jump when tau == 0, otherwise a C1
/// smoothstep of total width tau centred on the switch time, applied to
/// epsilon and mu independently.
///
/// The periodic kind equals `before` for t < t0. From t0 on, each period
/// starts with `after` for duty*period and returns to `before` for the rest.
class TemporalProfile {
 public:
  static TemporalProfile constant(const MediumState& medium);
  static TemporalProfile step(const MediumState& before, const MediumState& after, double t0);
  static TemporalProfile ramp(const MediumState& before, const MediumState& after, double t0,
                              double tau);
  static TemporalProfile periodic(const MediumState& before, const MediumState& after, double t0,
                                  double period, double duty);
  /// levels.size() == switch_times.size() + 1; switch times strictly
  /// increasing and at least tau apart so ramps never overlap.
  static TemporalProfile sequence(std::vector<MediumState> levels,
                                  std::vector<double> switch_times, double tau);

  ProfileKind kind() const noexcept { return kind_; }
  const MediumState& before() const noexcept { return levels_.front(); }
  const MediumState& after() const noexcept { return levels_.back(); }
  double t0() const noexcept { return t0_; }
  double tau() const noexcept { return tau_; }
  double period() const noexcept { return period_; }
  double duty() const noexcept { return duty_; }
  const std::vector<MediumState>& levels() const noexcept { return levels_; }
  const std::vector<double>& switch_times() const noexcept { return switch_times_; }

  /// Material state at t. Sampling exactly on a jump throws Error(ambiguous);
  /// use limit_before / limit_after there.
  MediumState sample(double t) const;
  MediumState limit_before(double t) const;
  MediumState limit_after(double t) const;

  /// Interior points of (a, b) where the profile or its derivative is
  /// discontinuous, sorted in the direction from a to b.
  std::vector<double> breakpoints(double a, double b) const;

 private:
  TemporalProfile() = default;

  ProfileKind kind_ = ProfileKind::constant;
  std::vector<MediumState> levels_;
  std::vector<double> switch_times_;
  double t0_ = 0.0;
  double tau_ = 0.0;
  double period_ = 0.0;
  double duty_ = 0.0;
};

}  // namespace tempscat
