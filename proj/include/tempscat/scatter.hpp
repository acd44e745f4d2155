#pragma once

#include <span>
#include <utility>
#include <vector>

#include "tempscat/media.hpp"
#include "tempscat/types.hpp"
#include "tempscat/waves.hpp"

namespace tempscat {

/// Sign of the transmitted frequency omega3.
enum class TransmittedBranch { forward, backward };
/// Sign of the reflected frequency omega2.
enum class ReflectedBranch { negative, positive };

/// Frequency sign choice after a temporal interface. The default
/// (omega3 > 0, omega2 = -omega3) is the forward-transmitted,
/// backward-reflected branch. Equal signs make omega2 == omega3, which is
/// the degenerate case.
struct FrequencyConvention {
  TransmittedBranch transmitted = TransmittedBranch::forward;
  ReflectedBranch reflected = ReflectedBranch::negative;

  bool is_degenerate() const noexcept {
    return (transmitted == TransmittedBranch::forward) == (reflected == ReflectedBranch::positive);
  }
  friend bool operator==(const FrequencyConvention&, const FrequencyConvention&) = default;
};

struct Frequencies {
  double omega2;  // reflected
  double omega3;  // transmitted
};

struct WaveVectors {
  Vec3 k_r;
  Vec3 k_t;
};

struct ScatteredAmplitudes {
  CVec3 B_r;
  CVec3 B_t;
};

struct Coefficients {
  double R;
  double T;
  double energy_sum;
};

/// Everything known about one temporal interface. Waves carry
/// E-amplitudes A; the B-amplitudes A exp(-i omega t0) are derived views.
///
/// In the degenerate case the reflected and transmitted waves coincide;
/// the combined amplitude is stored on `transmitted`, `reflected` carries a
/// zero amplitude, and R = 0.
struct ScatteringResult {
  PlaneWave incident;
  PlaneWave reflected;
  PlaneWave transmitted;
  MediumState before;
  MediumState after;
  double t0;
  double R;
  double T;
  double energy_sum;
  double omega2;
  double omega3;
  bool degenerate;

  CVec3 B_incident() const;
  CVec3 B_reflected() const;
  CVec3 B_transmitted() const;
};

struct BoundaryResidual {
  double E;
  double H;
};

/// Temporal Snell law for the frequencies. omega1 > 0, speeds non-zero.
Frequencies frequencies(double omega1, double v_minus, double v_plus,
                        FrequencyConvention conv = {});

/// k_t = (omega1/omega3)(v+/v-) k_i and k_r likewise. The scale factors must
/// have modulus 1 to within 1e-9 relative, otherwise Error(consistency).
WaveVectors wave_vectors(const Vec3& k_i, double omega1, double omega2, double omega3,
                         double v_minus, double v_plus);

/// Non-degenerate amplitude formulas; both results are scalar multiples of
/// B_i. Throws Error(degenerate) when omega2 == omega3.
ScatteredAmplitudes amplitudes(const CVec3& B_i, double omega1, double omega2, double omega3,
                               double eps_minus, double eps_plus);

/// The scalar pair (B_r / B_i, B_t / B_i) behind `amplitudes`.
std::pair<double, double> amplitude_factors(double omega1, double omega2, double omega3,
                                            double eps_minus, double eps_plus);

/// Degenerate case omega2 == omega3: returns (A_t + A_r) exp(-i omega2 t0)
/// = (eps-/eps+) B_i when eps- omega1 == eps+ omega2, else Error(no_solution).
CVec3 degenerate_amplitude(const CVec3& B_i, double omega1, double omega2, double eps_minus,
                           double eps_plus);

/// Closed-form R, T for the default branch and their sum.
Coefficients coefficients(const MediumState& before, const MediumState& after);

/// R, T for the omega3 < 0, omega2 = -omega3 branch: the roles swap.
std::pair<double, double> swapped_coefficients(const MediumState& before,
                                               const MediumState& after);

/// Value R + T must take on the default branch, chosen by impedance order:
/// eps-/eps+ if Z1 < Z2, sqrt(eps- mu- / (eps+ mu+)) if Z1 > Z2.
double energy_sum_identity(const MediumState& before, const MediumState& after);

/// Solve a single temporal interface. `profile` must be a step profile and
/// the incident speed must match the medium before the switch.
ScatteringResult scatter_interface(const PlaneWave& incident, const TemporalProfile& profile,
                                   FrequencyConvention conv = {});

/// Max over samples of |eps+(E_t + E_r) - eps- E_i| and of
/// |mu+(H_t + H_r) - mu- H_i| at t = t0.
BoundaryResidual boundary_residual(const ScatteringResult& result, std::span<const Vec3> x_samples);

}  // namespace tempscat
