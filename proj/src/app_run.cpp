#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "tempscat/app.hpp"
#include "tempscat/oracle.hpp"

namespace tempscat::app {

namespace {

using nlohmann::json;

ojson complex_json(Complex c) { return ojson{{"re", c.real()}, {"im", c.imag()}}; }

ojson cvec_json(const Eigen::VectorXcd& v) {
  ojson arr = ojson::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) arr.push_back(complex_json(v(j)));
  return arr;
}

ojson vec_json(const Vec3& v) { return ojson::array({v(0), v(1), v(2)}); }

ojson medium_json(const MediumState& m) {
  return ojson{{"epsilon", m.epsilon()}, {"mu", m.mu()}, {"branch", m.sign()}};
}

ojson wave_json(const PlaneWave& w) {
  return ojson{{"amplitude", cvec_json(w.amplitude())}, {"omega", w.omega()}, {"k", vec_json(w.k())}, {"v", w.v()}};
}

Complex complex_from(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

CVec3 cvec_from(const json& j) {
  return CVec3(complex_from(j.at(0)), complex_from(j.at(1)), complex_from(j.at(2)));
}

Vec3 vec_from(const json& j) { return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()); }

MediumState medium_from(const json& j) {
  return MediumState(j.at("epsilon").get<double>(), j.at("mu").get<double>(),
                     j.at("branch").get<int>() < 0 ? Branch::negative : Branch::positive);
}

PlaneWave wave_from(const json& j) {
  return PlaneWave::allow_vanishing(cvec_from(j.at("amplitude")), j.at("omega").get<double>(),
                                    vec_from(j.at("k")), j.at("v").get<double>());
}

std::string timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

class CsvWriter {
 public:
  void row(const std::vector<std::string>& fields) {
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (j) out_ << ',';
      out_ << csv_field(fields[j]);
    }
    out_ << '\n';
  }
  void comment(const std::string& line) { out_ << "# " << line << '\n'; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string f(double v) { return format_double(v); }

ojson document_header(const RunConfig& config, bool timestamp) {
  ojson doc;
  if (timestamp) doc["generated_at"] = timestamp_now();
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = std::string(to_string(config.command));
  return doc;
}

std::vector<Vec3> boundary_samples(const BoundarySampling& s) {
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> coord(-s.extent, s.extent);
  std::vector<Vec3> xs(s.count);
  for (Vec3& x : xs) x = Vec3(coord(rng), coord(rng), coord(rng));
  return xs;
}

PlaneWave incident_wave(const IncidentSpec& spec, const MediumState& medium) {
  return PlaneWave(spec.amplitude, spec.omega, spec.k, wave_speed(medium));
}

// --- solve ---------------------------------------------------------------

Artifact run_solve(const RunConfig& c, bool timestamp) {
  const PlaneWave incident = incident_wave(*c.incident, *c.before);
  const ScatteringResult result =
      scatter_interface(incident, TemporalProfile::step(*c.before, *c.after, c.t0), c.convention);
  const std::vector<Vec3> xs = boundary_samples(c.boundary);
  const BoundaryResidual res = boundary_residual(result, xs);
  const double identity = energy_sum_identity(*c.before, *c.after);

  if (c.format == OutputFormat::csv) {
    CsvWriter csv;
    if (timestamp) csv.comment("generated_at " + timestamp_now());
    csv.row({"omega1", "omega2", "omega3", "k_r_x", "k_r_y", "k_r_z", "k_t_x", "k_t_y", "k_t_z", "R", "T",
             "energy_sum", "energy_identity", "res_E", "res_H", "degenerate"});
    const Vec3& kr = result.reflected.k();
    const Vec3& kt = result.transmitted.k();
    csv.row({f(incident.omega()), f(result.omega2), f(result.omega3), f(kr(0)), f(kr(1)), f(kr(2)), f(kt(0)),
             f(kt(1)), f(kt(2)), f(result.R), f(result.T), f(result.energy_sum), f(identity), f(res.E), f(res.H),
             result.degenerate ? "true" : "false"});
    return {csv.str(), "csv"};
  }
  ojson doc = document_header(c, timestamp);
  doc["result"] = to_json(result);
  doc["energy_identity"] = identity;
  doc["boundary_residual"] = ojson{{"E", res.E}, {"H", res.H}, {"samples", xs.size()}};
  return {doc.dump(2) + "\n", "json"};
}

// --- sweep ---------------------------------------------------------------

struct SweepRow {
  std::vector<double> values;
  std::optional<ScatteringResult> result;
  BoundaryResidual residual{0.0, 0.0};
  std::string status = "ok";
  std::string message;
};

SweepRow sweep_point(const RunConfig& c, const std::vector<double>& values, const std::vector<Vec3>& xs) {
  SweepRow row;
  row.values = values;
  try {
    double eps_b = c.before->epsilon(), mu_b = c.before->mu();
    double eps_a = c.after->epsilon(), mu_a = c.after->mu();
    double omega = c.incident->omega, t0 = c.t0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      const std::string& p = c.sweep[j].parameter;
      if (p == "before.epsilon") eps_b = values[j];
      else if (p == "before.mu") mu_b = values[j];
      else if (p == "after.epsilon") eps_a = values[j];
      else if (p == "after.mu") mu_a = values[j];
      else if (p == "incident.omega") omega = values[j];
      else if (p == "t0") t0 = values[j];
    }
    const MediumState before(eps_b, mu_b, c.before->branch());
    const MediumState after(eps_a, mu_a, c.after->branch());
    const PlaneWave incident(c.incident->amplitude, omega, c.incident->k, wave_speed(before));
    row.result = scatter_interface(incident, TemporalProfile::step(before, after, t0), c.convention);
    row.residual = boundary_residual(*row.result, xs);
  } catch (const Error& e) {
    row.status = std::string(tempscat::to_string(e.code()));
    row.message = e.what();
  }
  return row;
}

Artifact run_sweep(const RunConfig& c, bool timestamp) {
  std::size_t total = 1;
  for (const SweepAxis& a : c.sweep) total *= a.values.size();
  const std::vector<Vec3> xs = boundary_samples(c.boundary);

  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      // Row-major: the first axis varies slowest.
      std::vector<double> values(c.sweep.size());
      std::size_t rest = idx;
      for (std::size_t j = c.sweep.size(); j-- > 0;) {
        values[j] = c.sweep[j].values[rest % c.sweep[j].values.size()];
        rest /= c.sweep[j].values.size();
      }
      rows[idx] = sweep_point(c, values, xs);
    }
  };
  std::size_t threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, total);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  if (c.format == OutputFormat::csv) {
    CsvWriter csv;
    if (timestamp) csv.comment("generated_at " + timestamp_now());
    std::vector<std::string> header{"index"};
    for (const SweepAxis& a : c.sweep) header.push_back(a.parameter);
    for (const char* h : {"omega2", "omega3", "R", "T", "energy_sum", "res_E", "res_H", "status"}) header.push_back(h);
    csv.row(header);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<std::string> fields{std::to_string(i)};
      for (double v : rows[i].values) fields.push_back(f(v));
      if (rows[i].result) {
        const ScatteringResult& r = *rows[i].result;
        for (double v : {r.omega2, r.omega3, r.R, r.T, r.energy_sum, rows[i].residual.E, rows[i].residual.H}) {
          fields.push_back(f(v));
        }
      } else {
        fields.insert(fields.end(), 7, "");
      }
      fields.push_back(rows[i].status);
      csv.row(fields);
    }
    return {csv.str(), "csv"};
  }

  ojson doc = document_header(c, timestamp);
  ojson axes = ojson::array();
  for (const SweepAxis& a : c.sweep) axes.push_back(ojson{{"parameter", a.parameter}, {"values", a.values}});
  doc["axes"] = axes;
  ojson out = ojson::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ojson row{{"index", i}};
    ojson params;
    for (std::size_t j = 0; j < c.sweep.size(); ++j) params[c.sweep[j].parameter] = rows[i].values[j];
    row["parameters"] = params;
    row["status"] = rows[i].status;
    if (rows[i].result) {
      const ScatteringResult& r = *rows[i].result;
      row["omega2"] = r.omega2;
      row["omega3"] = r.omega3;
      row["R"] = r.R;
      row["T"] = r.T;
      row["energy_sum"] = r.energy_sum;
      row["boundary_residual"] = ojson{{"E", rows[i].residual.E}, {"H", rows[i].residual.H}};
    } else {
      row["message"] = rows[i].message;
    }
    out.push_back(row);
  }
  doc["rows"] = out;
  return {doc.dump(2) + "\n", "json"};
}

// --- oracle --------------------------------------------------------------

Artifact run_oracle(const RunConfig& c, bool timestamp) {
  const PlaneWave incident = incident_wave(*c.incident, *c.before);
  const double period = 2.0 * std::numbers::pi / incident.omega();
  const NumericRT rt = numeric_RT(TemporalProfile::ramp(*c.before, *c.after, c.t0, c.oracle.tau_periods * period),
                                  incident, c.oracle.tol);
  const Coefficients exact = coefficients(*c.before, *c.after);
  std::optional<ConvergenceStudy> study;
  if (!c.oracle.convergence_taus.empty()) {
    study = convergence_study(*c.before, *c.after, c.t0, c.oracle.convergence_taus, incident, c.oracle.tol);
  }

  if (c.format == OutputFormat::csv) {
    CsvWriter csv;
    if (timestamp) csv.comment("generated_at " + timestamp_now());
    csv.row({"tau_periods", "R_num", "T_num", "R", "T", "err_R", "err_T"});
    if (study) {
      for (const ConvergenceRow& r : study->rows) {
        csv.row({f(r.tau_periods), f(r.R_num), f(r.T_num), f(exact.R), f(exact.T), f(r.err_R), f(r.err_T)});
      }
    } else {
      csv.row({f(c.oracle.tau_periods), f(rt.R), f(rt.T), f(exact.R), f(exact.T), f(std::abs(rt.R - exact.R)),
               f(std::abs(rt.T - exact.T))});
    }
    return {csv.str(), "csv"};
  }
  ojson doc = document_header(c, timestamp);
  doc["tau_periods"] = c.oracle.tau_periods;
  doc["tol"] = c.oracle.tol;
  doc["R_num"] = rt.R;
  doc["T_num"] = rt.T;
  doc["R"] = exact.R;
  doc["T"] = exact.T;
  doc["err_R"] = std::abs(rt.R - exact.R);
  doc["err_T"] = std::abs(rt.T - exact.T);
  if (study) {
    ojson rows = ojson::array();
    for (const ConvergenceRow& r : study->rows) {
      rows.push_back(ojson{{"tau_periods", r.tau_periods}, {"R_num", r.R_num}, {"T_num", r.T_num},
                           {"err_R", r.err_R}, {"err_T", r.err_T}});
    }
    auto order = [](double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); };
    doc["convergence"] = ojson{{"rows", rows}, {"order_R", order(study->order_R)}, {"order_T", order(study->order_T)}};
  }
  return {doc.dump(2) + "\n", "json"};
}

// --- cascade -------------------------------------------------------------

Artifact run_cascade(const RunConfig& c, bool timestamp) {
  const PlaneWave incident = incident_wave(*c.incident, c.cascade.timeline.front().medium);
  const CascadeResult result = cascade_scatter(c.cascade.timeline, incident, c.cascade.t_start);
  std::optional<FloquetResult> floquet;
  if (c.cascade.floquet) floquet = floquet_exponent(c.cascade.timeline, incident.omega());

  if (c.format == OutputFormat::csv) {
    CsvWriter csv;
    if (timestamp) csv.comment("generated_at " + timestamp_now());
    csv.row({"index", "time", "omega_before", "omega_after", "forward_before_re", "forward_before_im",
             "backward_before_re", "backward_before_im", "forward_after_re", "forward_after_im",
             "backward_after_re", "backward_after_im"});
    for (const InterfaceTrace& t : result.trace) {
      csv.row({std::to_string(t.index), f(t.time), f(t.omega_before), f(t.omega_after), f(t.forward_before.real()),
               f(t.forward_before.imag()), f(t.backward_before.real()), f(t.backward_before.imag()),
               f(t.forward_after.real()), f(t.forward_after.imag()), f(t.backward_after.real()),
               f(t.backward_after.imag())});
    }
    return {csv.str(), "csv"};
  }
  auto matrix = [](const Matrix2c& m) {
    return ojson::array({ojson::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                         ojson::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
  };
  ojson doc = document_header(c, timestamp);
  ojson trace = ojson::array();
  for (const InterfaceTrace& t : result.trace) {
    trace.push_back(ojson{{"index", t.index}, {"time", t.time}, {"omega_before", t.omega_before},
                          {"omega_after", t.omega_after}, {"forward_before", complex_json(t.forward_before)},
                          {"backward_before", complex_json(t.backward_before)},
                          {"forward_after", complex_json(t.forward_after)},
                          {"backward_after", complex_json(t.backward_after)}});
  }
  doc["trace"] = trace;
  doc["final"] = ojson{{"forward", complex_json(result.final_amplitudes.forward)},
                       {"backward", complex_json(result.final_amplitudes.backward)},
                       {"polarization", cvec_json(result.final_amplitudes.polarization)},
                       {"omega", result.final_omega},
                       {"time", result.final_time}};
  doc["net_matrix"] = matrix(result.net);
  if (floquet) {
    doc["floquet"] = ojson{{"period_matrix", matrix(floquet->period_matrix)},
                           {"eigenvalues", ojson::array({complex_json(floquet->eigenvalues[0]),
                                                         complex_json(floquet->eigenvalues[1])})},
                           {"exponents", ojson::array({complex_json(floquet->exponents[0]),
                                                       complex_json(floquet->exponents[1])})},
                           {"half_trace", complex_json(floquet->half_trace)},
                           {"determinant", complex_json(floquet->determinant)},
                           {"momentum_gap", floquet->momentum_gap},
                           {"degenerate_warning", floquet->degenerate_warning}};
  }
  return {doc.dump(2) + "\n", "json"};
}

// --- verify --------------------------------------------------------------

Artifact run_verify(const RunConfig& c, bool timestamp) {
  const ExponentialSum sum(c.verify.terms);
  const std::vector<double> grid = c.verify.grid.empty() ? canonical_grid(sum) : c.verify.grid;
  const double residual = sum_residual(sum, grid);
  const double mass = sum.amplitude_mass();
  std::vector<double> omegas;
  for (const ExponentialTerm& t : sum.terms()) omegas.push_back(t.omega);
  const Complex vandermonde = vandermonde_product(omegas);

  std::string verdict = "non-cancelling";
  std::optional<bool> forced;
  if (residual <= c.verify.tol * mass) {
    forced = assert_forced_equality(sum, c.verify.tol);
    verdict = *forced ? "cancelling-equal-frequencies" : "cancelling-distinct-frequencies";
  }

  if (c.format == OutputFormat::csv) {
    CsvWriter csv;
    if (timestamp) csv.comment("generated_at " + timestamp_now());
    csv.row({"terms", "grid_points", "residual", "amplitude_mass", "vandermonde_re", "vandermonde_im", "verdict"});
    csv.row({std::to_string(sum.size()), std::to_string(grid.size()), f(residual), f(mass), f(vandermonde.real()),
             f(vandermonde.imag()), verdict});
    return {csv.str(), "csv"};
  }
  ojson doc = document_header(c, timestamp);
  doc["terms"] = sum.size();
  doc["frequencies"] = omegas;
  doc["grid_points"] = grid.size();
  doc["residual"] = residual;
  doc["amplitude_mass"] = mass;
  doc["tol"] = c.verify.tol;
  doc["vandermonde"] = complex_json(vandermonde);
  doc["forced_equality"] = forced ? ojson(*forced) : ojson(nullptr);
  doc["verdict"] = verdict;
  return {doc.dump(2) + "\n", "json"};
}

}  // namespace

ojson to_json(const ScatteringResult& r) {
  return ojson{{"incident", wave_json(r.incident)},
               {"reflected", wave_json(r.reflected)},
               {"transmitted", wave_json(r.transmitted)},
               {"before", medium_json(r.before)},
               {"after", medium_json(r.after)},
               {"t0", r.t0},
               {"omega1", r.incident.omega()},
               {"omega2", r.omega2},
               {"omega3", r.omega3},
               {"R", r.R},
               {"T", r.T},
               {"energy_sum", r.energy_sum},
               {"degenerate", r.degenerate},
               {"B_incident", cvec_json(r.B_incident())},
               {"B_reflected", cvec_json(r.B_reflected())},
               {"B_transmitted", cvec_json(r.B_transmitted())}};
}

ScatteringResult scattering_result_from_json(const json& j) {
  try {
    return ScatteringResult{
        .incident = wave_from(j.at("incident")),
        .reflected = wave_from(j.at("reflected")),
        .transmitted = wave_from(j.at("transmitted")),
        .before = medium_from(j.at("before")),
        .after = medium_from(j.at("after")),
        .t0 = j.at("t0").get<double>(),
        .R = j.at("R").get<double>(),
        .T = j.at("T").get<double>(),
        .energy_sum = j.at("energy_sum").get<double>(),
        .omega2 = j.at("omega2").get<double>(),
        .omega3 = j.at("omega3").get<double>(),
        .degenerate = j.at("degenerate").get<bool>(),
    };
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, std::string("malformed scattering result: ") + e.what());
  }
}

std::string csv_field(std::string_view raw) {
  if (raw.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(raw);
  std::string out = "\"";
  for (char ch : raw) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value + 0.0);
  return std::string(buffer, end);
}

Artifact run(const RunConfig& config, bool timestamp) {
  switch (config.command) {
    case Command::solve: return run_solve(config, timestamp);
    case Command::sweep: return run_sweep(config, timestamp);
    case Command::oracle: return run_oracle(config, timestamp);
    case Command::cascade: return run_cascade(config, timestamp);
    case Command::verify: return run_verify(config, timestamp);
  }
  throw Error(ErrorCode::config, "unknown command");
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::config: return 2;
    case ErrorCode::degenerate:
    case ErrorCode::no_solution: return 4;
    case ErrorCode::io: return 1;
    default: return 3;
  }
}

std::string resolve_output_path(const RunConfig& config) {
  const char* dir = std::getenv(kOutputDirVariable);
  const std::string ext = config.format == OutputFormat::csv ? "csv" : "json";
  if (!dir || !*dir) return config.output_path;
  const std::filesystem::path base(dir);
  if (config.output_path.empty()) return (base / (std::string(to_string(config.command)) + "." + ext)).string();
  const std::filesystem::path p(config.output_path);
  return p.is_absolute() ? p.string() : (base / p).string();
}

std::string error_document(std::string_view code, const std::string& message, int exit_code) {
  return ojson{{"error", ojson{{"code", code}, {"message", message}, {"exit_code", exit_code}}}}.dump();
}

Outcome run_document(std::string_view text, const Overrides& overrides, bool timestamp) {
  Outcome outcome;
  auto failure = [&](std::string_view code, const std::string& message, int exit_code) {
    outcome.exit_code = exit_code;
    outcome.output.clear();
    outcome.error = error_document(code, message, exit_code);
  };
  try {
    const RunConfig config = parse_config(text, overrides);
    outcome.output_path = resolve_output_path(config);
    outcome.output = run(config, timestamp).text;
  } catch (const Error& e) {
    failure(tempscat::to_string(e.code()), e.what(), exit_code_for(e.code()));
    outcome.code = e.code();
  } catch (const std::exception& e) {
    failure("internal_error", e.what(), 1);
  }
  return outcome;
}

}  // namespace tempscat::app
