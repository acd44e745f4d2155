#include "tempscat/tempscat.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "tempscat/app.hpp"
#include "tempscat/cascade.hpp"
#include "tempscat/error.hpp"
#include "tempscat/media.hpp"
#include "tempscat/oracle.hpp"
#include "tempscat/scatter.hpp"
#include "tempscat/verify.hpp"
#include "tempscat/waves.hpp"

struct tsc_profile {
  tempscat::TemporalProfile value;
};

struct tsc_wave {
  tempscat::PlaneWave value;
};

struct tsc_result {
  tempscat::ScatteringResult value;
};

namespace {

using namespace tempscat;

thread_local std::string g_last_error;

tsc_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return TSC_ERR_DOMAIN;
    case ErrorCode::precondition: return TSC_ERR_PRECONDITION;
    case ErrorCode::ambiguous: return TSC_ERR_AMBIGUOUS;
    case ErrorCode::consistency: return TSC_ERR_CONSISTENCY;
    case ErrorCode::degenerate: return TSC_ERR_DEGENERATE;
    case ErrorCode::no_solution: return TSC_ERR_NO_SOLUTION;
    case ErrorCode::constraint: return TSC_ERR_CONSTRAINT;
    case ErrorCode::stiffness: return TSC_ERR_STIFFNESS;
    case ErrorCode::resolution: return TSC_ERR_RESOLUTION;
    case ErrorCode::config: return TSC_ERR_CONFIG;
    case ErrorCode::io: return TSC_ERR_IO;
  }
  return TSC_ERR_INTERNAL;
}

template <class F>
tsc_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return TSC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TSC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TSC_ERR_INTERNAL;
  }
}

template <class... P>
bool tsc_all_non_null(const P*... pointers) {
  return ((pointers != nullptr) && ...);
}

#define TSC_REQUIRE(...)                               \
  do {                                                 \
    if (!tsc_all_non_null(__VA_ARGS__)) {              \
      g_last_error = "null argument";                  \
      return TSC_ERR_NULL_ARGUMENT;                    \
    }                                                  \
  } while (0)

MediumState medium_of(const tsc_medium& m) {
  if (m.branch != 1 && m.branch != -1) throw Error(ErrorCode::domain, "branch must be +1 or -1");
  return MediumState(m.epsilon, m.mu, m.branch < 0 ? Branch::negative : Branch::positive);
}

tsc_medium medium_to(const MediumState& m) { return {m.epsilon(), m.mu(), m.sign()}; }

FrequencyConvention convention_of(tsc_convention c) {
  switch (c) {
    case TSC_CONVENTION_DEFAULT: return {TransmittedBranch::forward, ReflectedBranch::negative};
    case TSC_CONVENTION_SWAPPED: return {TransmittedBranch::backward, ReflectedBranch::positive};
    case TSC_CONVENTION_DEGENERATE_FORWARD: return {TransmittedBranch::forward, ReflectedBranch::positive};
    case TSC_CONVENTION_DEGENERATE_BACKWARD: return {TransmittedBranch::backward, ReflectedBranch::negative};
  }
  throw Error(ErrorCode::precondition, "unknown frequency convention");
}

tsc_complex complex_to(Complex c) { return {c.real(), c.imag()}; }

std::vector<TimelineSegment> segments_of(const tsc_medium* media, const double* durations, size_t n) {
  std::vector<TimelineSegment> segments;
  segments.reserve(n);
  for (size_t j = 0; j < n; ++j) segments.push_back({medium_of(media[j]), durations[j]});
  return segments;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* tsc_version(void) { return "1.0.0"; }

const char* tsc_last_error(void) { return g_last_error.c_str(); }

const char* tsc_status_name(tsc_status status) {
  switch (status) {
    case TSC_OK: return "ok";
    case TSC_ERR_DOMAIN: return "domain_error";
    case TSC_ERR_PRECONDITION: return "precondition_failed";
    case TSC_ERR_AMBIGUOUS: return "ambiguous_time";
    case TSC_ERR_CONSISTENCY: return "consistency_error";
    case TSC_ERR_DEGENERATE: return "degenerate_case";
    case TSC_ERR_NO_SOLUTION: return "no_solution";
    case TSC_ERR_CONSTRAINT: return "constraint_violation";
    case TSC_ERR_STIFFNESS: return "stiff_integration";
    case TSC_ERR_RESOLUTION: return "resolution_error";
    case TSC_ERR_CONFIG: return "config_error";
    case TSC_ERR_IO: return "io_error";
    case TSC_ERR_NULL_ARGUMENT: return "null_argument";
    case TSC_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

tsc_status tsc_wave_speed(const tsc_medium* m, double* out) {
  TSC_REQUIRE(m, out);
  return guarded([&] { *out = wave_speed(medium_of(*m)); });
}

tsc_status tsc_impedance(const tsc_medium* m, double* out) {
  TSC_REQUIRE(m, out);
  return guarded([&] { *out = impedance(medium_of(*m)); });
}

tsc_status tsc_refractive_index(const tsc_medium* m, double* out) {
  TSC_REQUIRE(m, out);
  return guarded([&] { *out = refractive_index(medium_of(*m)); });
}

tsc_status tsc_profile_create_constant(const tsc_medium* m, tsc_profile** out) {
  TSC_REQUIRE(m, out);
  return guarded([&] { *out = new tsc_profile{TemporalProfile::constant(medium_of(*m))}; });
}

tsc_status tsc_profile_create_step(const tsc_medium* before, const tsc_medium* after, double t0,
                                   tsc_profile** out) {
  TSC_REQUIRE(before, after, out);
  return guarded([&] {
    *out = new tsc_profile{TemporalProfile::step(medium_of(*before), medium_of(*after), t0)};
  });
}

tsc_status tsc_profile_create_ramp(const tsc_medium* before, const tsc_medium* after, double t0, double tau,
                                   tsc_profile** out) {
  TSC_REQUIRE(before, after, out);
  return guarded([&] {
    *out = new tsc_profile{TemporalProfile::ramp(medium_of(*before), medium_of(*after), t0, tau)};
  });
}

tsc_status tsc_profile_create_periodic(const tsc_medium* before, const tsc_medium* after, double t0,
                                       double period, double duty, tsc_profile** out) {
  TSC_REQUIRE(before, after, out);
  return guarded([&] {
    *out = new tsc_profile{
        TemporalProfile::periodic(medium_of(*before), medium_of(*after), t0, period, duty)};
  });
}

void tsc_profile_destroy(tsc_profile* p) { delete p; }

tsc_status tsc_profile_sample(const tsc_profile* p, double t, tsc_medium* out) {
  TSC_REQUIRE(p, out);
  return guarded([&] { *out = medium_to(p->value.sample(t)); });
}

tsc_status tsc_wave_create(const tsc_complex amplitude[3], double omega, const double k[3], double v,
                           tsc_wave** out) {
  TSC_REQUIRE(amplitude, k, out);
  return guarded([&] {
    const CVec3 a(Complex(amplitude[0].re, amplitude[0].im), Complex(amplitude[1].re, amplitude[1].im),
                  Complex(amplitude[2].re, amplitude[2].im));
    *out = new tsc_wave{PlaneWave(a, omega, Vec3(k[0], k[1], k[2]), v)};
  });
}

void tsc_wave_destroy(tsc_wave* w) { delete w; }

tsc_status tsc_wave_get(const tsc_wave* w, tsc_complex amplitude[3], double* omega, double k[3], double* v) {
  TSC_REQUIRE(w);
  return guarded([&] {
    for (int j = 0; j < 3; ++j) {
      if (amplitude) amplitude[j] = complex_to(w->value.amplitude()(j));
      if (k) k[j] = w->value.k()(j);
    }
    if (omega) *omega = w->value.omega();
    if (v) *v = w->value.v();
  });
}

tsc_status tsc_wave_evaluate_E(const tsc_wave* w, const double x[3], double t, tsc_complex out[3]) {
  TSC_REQUIRE(w, x, out);
  return guarded([&] {
    const CVec3 e = evaluate_E(w->value, Vec3(x[0], x[1], x[2]), t);
    for (int j = 0; j < 3; ++j) out[j] = complex_to(e(j));
  });
}

tsc_status tsc_wave_magnetic(const tsc_wave* w, double mu, tsc_wave** out) {
  TSC_REQUIRE(w, out);
  return guarded([&] { *out = new tsc_wave{magnetic_from_electric(w->value, mu)}; });
}

tsc_status tsc_wave_transversality_residual(const tsc_wave* w, double* out) {
  TSC_REQUIRE(w, out);
  return guarded([&] { *out = transversality_residual(w->value); });
}

tsc_status tsc_wave_phase_vector(const tsc_wave* w, double out[3]) {
  TSC_REQUIRE(w, out);
  return guarded([&] {
    const Vec3 m = phase_vector(w->value).m;
    for (int j = 0; j < 3; ++j) out[j] = m(j);
  });
}

tsc_status tsc_coefficients(const tsc_medium* before, const tsc_medium* after, double* R, double* T,
                            double* energy_sum) {
  TSC_REQUIRE(before, after);
  return guarded([&] {
    const Coefficients c = coefficients(medium_of(*before), medium_of(*after));
    if (R) *R = c.R;
    if (T) *T = c.T;
    if (energy_sum) *energy_sum = c.energy_sum;
  });
}

tsc_status tsc_swapped_coefficients(const tsc_medium* before, const tsc_medium* after, double* R, double* T) {
  TSC_REQUIRE(before, after);
  return guarded([&] {
    const auto [r, t] = swapped_coefficients(medium_of(*before), medium_of(*after));
    if (R) *R = r;
    if (T) *T = t;
  });
}

tsc_status tsc_scatter(const tsc_wave* incident, const tsc_profile* step, tsc_convention convention,
                       tsc_result** out) {
  TSC_REQUIRE(incident, step, out);
  return guarded([&] {
    *out = new tsc_result{scatter_interface(incident->value, step->value, convention_of(convention))};
  });
}

void tsc_result_destroy(tsc_result* r) { delete r; }

tsc_status tsc_result_summary(const tsc_result* r, tsc_scatter_summary* out) {
  TSC_REQUIRE(r, out);
  return guarded([&] {
    const ScatteringResult& s = r->value;
    *out = {s.incident.omega(), s.omega2, s.omega3, s.R, s.T, s.energy_sum, s.degenerate ? 1 : 0};
  });
}

tsc_status tsc_result_wave(const tsc_result* r, tsc_wave_role role, tsc_wave** out) {
  TSC_REQUIRE(r, out);
  return guarded([&] {
    switch (role) {
      case TSC_WAVE_INCIDENT: *out = new tsc_wave{r->value.incident}; return;
      case TSC_WAVE_REFLECTED: *out = new tsc_wave{r->value.reflected}; return;
      case TSC_WAVE_TRANSMITTED: *out = new tsc_wave{r->value.transmitted}; return;
    }
    throw Error(ErrorCode::precondition, "unknown wave role");
  });
}

tsc_status tsc_result_boundary_residual(const tsc_result* r, const double* x_samples, size_t n, double* res_E,
                                        double* res_H) {
  TSC_REQUIRE(r);
  if (n > 0 && !x_samples) {
    g_last_error = "null argument";
    return TSC_ERR_NULL_ARGUMENT;
  }
  return guarded([&] {
    std::vector<Vec3> xs(n);
    for (size_t j = 0; j < n; ++j) xs[j] = Vec3(x_samples[3 * j], x_samples[3 * j + 1], x_samples[3 * j + 2]);
    const BoundaryResidual res = boundary_residual(r->value, xs);
    if (res_E) *res_E = res.E;
    if (res_H) *res_H = res.H;
  });
}

tsc_status tsc_numeric_rt(const tsc_profile* profile, const tsc_wave* incident, double tol, double* R,
                          double* T) {
  TSC_REQUIRE(profile, incident);
  return guarded([&] {
    const NumericRT rt = numeric_RT(profile->value, incident->value, tol);
    if (R) *R = rt.R;
    if (T) *T = rt.T;
  });
}

tsc_status tsc_cascade(const tsc_medium* media, const double* durations, size_t n, const tsc_wave* incident,
                       double t_start, tsc_complex* forward, tsc_complex* backward, double* final_omega) {
  TSC_REQUIRE(media, durations, incident);
  return guarded([&] {
    const CascadeResult res = cascade_scatter(segments_of(media, durations, n), incident->value, t_start);
    if (forward) *forward = complex_to(res.final_amplitudes.forward);
    if (backward) *backward = complex_to(res.final_amplitudes.backward);
    if (final_omega) *final_omega = res.final_omega;
  });
}

tsc_status tsc_floquet(const tsc_medium* media, const double* durations, size_t n, double omega_in,
                       tsc_complex eigenvalues[2], tsc_complex* half_trace, int* momentum_gap) {
  TSC_REQUIRE(media, durations);
  return guarded([&] {
    const FloquetResult res = floquet_exponent(segments_of(media, durations, n), omega_in);
    if (eigenvalues) {
      eigenvalues[0] = complex_to(res.eigenvalues[0]);
      eigenvalues[1] = complex_to(res.eigenvalues[1]);
    }
    if (half_trace) *half_trace = complex_to(res.half_trace);
    if (momentum_gap) *momentum_gap = res.momentum_gap ? 1 : 0;
  });
}

tsc_status tsc_vandermonde_product(const double* omegas, size_t n, tsc_complex* out) {
  TSC_REQUIRE(out);
  if (n > 0 && !omegas) {
    g_last_error = "null argument";
    return TSC_ERR_NULL_ARGUMENT;
  }
  return guarded([&] { *out = complex_to(vandermonde_product(std::span<const double>(omegas, n))); });
}

void tsc_run_options_init(tsc_run_options* options) {
  if (!options) return;
  *options = tsc_run_options{nullptr, nullptr, nullptr, 1, 0, 0.0, 0, 0.0};
}

tsc_status tsc_run_config(const char* config_text, const tsc_run_options* options, tsc_run_output* out) {
  TSC_REQUIRE(config_text, out);
  *out = tsc_run_output{0, nullptr, nullptr, nullptr};
  tsc_run_options defaults;
  tsc_run_options_init(&defaults);
  const tsc_run_options& opts = options ? *options : defaults;
  return guarded([&] {
    app::Overrides overrides;
    app::Outcome outcome;
    try {
      if (opts.command) {
        overrides.command = app::command_from_string(opts.command);
        if (!overrides.command) throw Error(ErrorCode::config, std::string("unknown command '") + opts.command + "'");
      }
      if (opts.format) {
        overrides.format = app::format_from_string(opts.format);
        if (!overrides.format) throw Error(ErrorCode::config, std::string("unknown format '") + opts.format + "'");
      }
      if (opts.output_path) overrides.output_path = opts.output_path;
      if (opts.has_tau) overrides.tau_periods = opts.tau;
      if (opts.has_tol) overrides.tol = opts.tol;
      outcome = app::run_document(config_text, overrides, opts.timestamp != 0);
    } catch (const Error& e) {
      outcome.exit_code = app::exit_code_for(e.code());
      outcome.error = app::error_document(to_string(e.code()), e.what(), outcome.exit_code);
      outcome.code = e.code();
    }

    out->exit_code = outcome.exit_code;
    out->output_path = duplicate(outcome.output_path);
    if (outcome.exit_code == 0) {
      out->text = duplicate(outcome.output);
      return;
    }
    out->error_json = duplicate(outcome.error);
    if (outcome.code) throw Error(*outcome.code, outcome.error);
    throw std::runtime_error(outcome.error);
  });
}

void tsc_run_output_free(tsc_run_output* out) {
  if (!out) return;
  std::free(out->text);
  std::free(out->output_path);
  std::free(out->error_json);
  *out = tsc_run_output{0, nullptr, nullptr, nullptr};
}

}  // extern "C"
