/* C interface to the temporal-interface scattering library.
 *
 * Every function returns a tsc_status. On failure the thread-local message
 * from tsc_last_error() describes what went wrong. Objects behind opaque
 * handles are created by *_create / producing calls and released with the
 * matching *_destroy; passing NULL to a destroy function is a no-op.
 */
#ifndef TEMPSCAT_TEMPSCAT_H
#define TEMPSCAT_TEMPSCAT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TSC_BUILDING_LIBRARY)
#    define TSC_API __declspec(dllexport)
#  else
#    define TSC_API __declspec(dllimport)
#  endif
#else
#  define TSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsc_status {
  TSC_OK = 0,
  TSC_ERR_DOMAIN = 1,
  TSC_ERR_PRECONDITION = 2,
  TSC_ERR_AMBIGUOUS = 3,
  TSC_ERR_CONSISTENCY = 4,
  TSC_ERR_DEGENERATE = 5,
  TSC_ERR_NO_SOLUTION = 6,
  TSC_ERR_CONSTRAINT = 7,
  TSC_ERR_STIFFNESS = 8,
  TSC_ERR_RESOLUTION = 9,
  TSC_ERR_CONFIG = 10,
  TSC_ERR_IO = 11,
  TSC_ERR_NULL_ARGUMENT = 12,
  TSC_ERR_INTERNAL = 13
} tsc_status;

typedef struct tsc_complex {
  double re;
  double im;
} tsc_complex;

/* branch: +1 or -1 (negative index, requires epsilon < 0 and mu < 0) */
typedef struct tsc_medium {
  double epsilon;
  double mu;
  int branch;
} tsc_medium;

typedef enum tsc_convention {
  TSC_CONVENTION_DEFAULT = 0,            /* omega3 > 0, omega2 < 0 */
  TSC_CONVENTION_SWAPPED = 1,            /* omega3 < 0, omega2 > 0 */
  TSC_CONVENTION_DEGENERATE_FORWARD = 2, /* omega2 = omega3 > 0 */
  TSC_CONVENTION_DEGENERATE_BACKWARD = 3 /* omega2 = omega3 < 0 */
} tsc_convention;

typedef enum tsc_wave_role {
  TSC_WAVE_INCIDENT = 0,
  TSC_WAVE_REFLECTED = 1,
  TSC_WAVE_TRANSMITTED = 2
} tsc_wave_role;

typedef struct tsc_profile tsc_profile;
typedef struct tsc_wave tsc_wave;
typedef struct tsc_result tsc_result;

typedef struct tsc_scatter_summary {
  double omega1;
  double omega2;
  double omega3;
  double R;
  double T;
  double energy_sum;
  int degenerate;
} tsc_scatter_summary;

TSC_API const char* tsc_version(void);
TSC_API const char* tsc_last_error(void);
TSC_API const char* tsc_status_name(tsc_status status);

/* media */
TSC_API tsc_status tsc_wave_speed(const tsc_medium* m, double* out);
TSC_API tsc_status tsc_impedance(const tsc_medium* m, double* out);
TSC_API tsc_status tsc_refractive_index(const tsc_medium* m, double* out);

TSC_API tsc_status tsc_profile_create_constant(const tsc_medium* m, tsc_profile** out);
TSC_API tsc_status tsc_profile_create_step(const tsc_medium* before, const tsc_medium* after, double t0,
                                           tsc_profile** out);
TSC_API tsc_status tsc_profile_create_ramp(const tsc_medium* before, const tsc_medium* after, double t0,
                                           double tau, tsc_profile** out);
TSC_API tsc_status tsc_profile_create_periodic(const tsc_medium* before, const tsc_medium* after, double t0,
                                               double period, double duty, tsc_profile** out);
TSC_API void tsc_profile_destroy(tsc_profile* p);
TSC_API tsc_status tsc_profile_sample(const tsc_profile* p, double t, tsc_medium* out);

/* waves */
TSC_API tsc_status tsc_wave_create(const tsc_complex amplitude[3], double omega, const double k[3], double v,
                                   tsc_wave** out);
TSC_API void tsc_wave_destroy(tsc_wave* w);
TSC_API tsc_status tsc_wave_get(const tsc_wave* w, tsc_complex amplitude[3], double* omega, double k[3],
                                double* v);
TSC_API tsc_status tsc_wave_evaluate_E(const tsc_wave* w, const double x[3], double t, tsc_complex out[3]);
TSC_API tsc_status tsc_wave_magnetic(const tsc_wave* w, double mu, tsc_wave** out);
TSC_API tsc_status tsc_wave_transversality_residual(const tsc_wave* w, double* out);
TSC_API tsc_status tsc_wave_phase_vector(const tsc_wave* w, double out[3]);

/* single interface */
TSC_API tsc_status tsc_coefficients(const tsc_medium* before, const tsc_medium* after, double* R, double* T,
                                    double* energy_sum);
TSC_API tsc_status tsc_swapped_coefficients(const tsc_medium* before, const tsc_medium* after, double* R,
                                            double* T);
TSC_API tsc_status tsc_scatter(const tsc_wave* incident, const tsc_profile* step, tsc_convention convention,
                               tsc_result** out);
TSC_API void tsc_result_destroy(tsc_result* r);
TSC_API tsc_status tsc_result_summary(const tsc_result* r, tsc_scatter_summary* out);
TSC_API tsc_status tsc_result_wave(const tsc_result* r, tsc_wave_role role, tsc_wave** out);
/* x_samples holds n points as consecutive (x, y, z) triples */
TSC_API tsc_status tsc_result_boundary_residual(const tsc_result* r, const double* x_samples, size_t n,
                                                double* res_E, double* res_H);

/* ODE oracle on a ramp, step or constant profile */
TSC_API tsc_status tsc_numeric_rt(const tsc_profile* profile, const tsc_wave* incident, double tol, double* R,
                                  double* T);

/* cascades: segments given as parallel arrays of media and dwell times */
TSC_API tsc_status tsc_cascade(const tsc_medium* media, const double* durations, size_t n,
                               const tsc_wave* incident, double t_start, tsc_complex* forward,
                               tsc_complex* backward, double* final_omega);
TSC_API tsc_status tsc_floquet(const tsc_medium* media, const double* durations, size_t n, double omega_in,
                               tsc_complex eigenvalues[2], tsc_complex* half_trace, int* momentum_gap);

/* exponential independence */
TSC_API tsc_status tsc_vandermonde_product(const double* omegas, size_t n, tsc_complex* out);

/* Configuration-driven runs (the CLI entry point). */
typedef struct tsc_run_options {
  const char* command;     /* NULL: take from the document */
  const char* format;      /* NULL, "json" or "csv" */
  const char* output_path; /* NULL: take from the document */
  int timestamp;           /* non-zero: emit a generated_at header line */
  int has_tau;
  double tau;              /* ramp width in incident periods */
  int has_tol;
  double tol;
} tsc_run_options;

typedef struct tsc_run_output {
  int exit_code;     /* 0 success, 2 config, 3 numerical, 4 degenerate */
  char* text;        /* artifact on success, else NULL */
  char* output_path; /* resolved destination; empty string means stdout */
  char* error_json;  /* machine-readable error on failure, else NULL */
} tsc_run_output;

TSC_API void tsc_run_options_init(tsc_run_options* options);
/* Always fills *out (if non-NULL); release it with tsc_run_output_free.
 * A failed run returns the status of its error, and tsc_last_error() then
 * holds the same JSON as out->error_json. */
TSC_API tsc_status tsc_run_config(const char* config_text, const tsc_run_options* options, tsc_run_output* out);
TSC_API void tsc_run_output_free(tsc_run_output* out);

#ifdef __cplusplus
}
#endif

#endif /* TEMPSCAT_TEMPSCAT_H */
