#pragma once

#include <cstddef>
#include <vector>

#include "tempscat/media.hpp"
#include "tempscat/oracle.hpp"
#include "tempscat/types.hpp"
#include "tempscat/waves.hpp"

namespace tempscat {

using Matrix2c = Eigen::Matrix2cd;

/// Maps (forward, backward) E-amplitudes just before a switch, or at the
/// start of a dwell, to the amplitudes just after.
struct InterfaceMatrix {
  Matrix2c entries;
};

/// A medium held for `duration` (>= 0; zero-length dwells model
/// back-to-back switches).
struct TimelineSegment {
  MediumState medium;
  double duration;
};

/// [[t, r], [r, t]] built from the default-branch amplitude factors; the
/// second column is the mirror image for backward incidence.
InterfaceMatrix interface_matrix(const MediumState& before, const MediumState& after);

/// diag(exp(-i|omega| d), exp(+i|omega| d)).
InterfaceMatrix propagate(double omega, double duration);

struct InterfaceTrace {
  std::size_t index;  // 1-based: switch between segment index-1 and index
  double time;
  double omega_before;
  double omega_after;
  Complex forward_before;
  Complex backward_before;
  Complex forward_after;
  Complex backward_after;
};

struct CascadeResult {
  /// E-basis amplitudes at the end of the last segment, along the incident polarization
  ModeAmplitudes final_amplitudes;
  double final_omega;
  double final_time;
  Matrix2c net;
  std::vector<InterfaceTrace> trace;
};

/// Propagate `incident` (living in segments.front().medium from t_start)
/// through every segment and the switches between them.
CascadeResult cascade_scatter(const std::vector<TimelineSegment>& segments, const PlaneWave& incident,
                              double t_start = 0.0);

/// One-period matrix of a piecewise-constant cell: dwell in each segment,
/// switch to the next, and finally switch from the last medium back to the
/// first. Zero total duration is allowed here.
Matrix2c period_matrix(const std::vector<TimelineSegment>& cell, double omega_in);

struct FloquetResult {
  Matrix2c period_matrix;
  Complex eigenvalues[2];
  Complex exponents[2];  // log(eigenvalue), per period
  Complex half_trace;
  Complex determinant;
  bool momentum_gap;         // |trace / 2| > 1
  bool degenerate_warning;   // eigenvalues coincide within 1e-9
};

/// Requires a cell of positive total duration.
FloquetResult floquet_exponent(const std::vector<TimelineSegment>& cell, double omega_in);

}  // namespace tempscat
