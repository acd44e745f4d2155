#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

#include "tempscat/app.hpp"

namespace tempscat::app {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::config, path + ": " + message);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string indexed(const std::string& path, std::size_t j) {
  return path + "[" + std::to_string(j) + "]";
}

// A JSON value plus its dotted location in the document.
struct Field {
  const json& value;
  std::string path;

  Field at(const std::string& key) const { return {value.at(key), join(path, key)}; }
  Field at(std::size_t j) const { return {value.at(j), indexed(path, j)}; }
  bool has(const std::string& key) const { return value.contains(key); }

  const Field& object(std::initializer_list<const char*> allowed) const {
    if (!value.is_object()) fail(path.empty() ? "<root>" : path, "must be an object");
    std::vector<std::string> unknown;
    for (const auto& item : value.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* a) { return item.key() == a; });
      if (!known) unknown.push_back(join(path, item.key()));
    }
    if (!unknown.empty()) {
      std::string list;
      for (const std::string& u : unknown) list += (list.empty() ? "" : ", ") + u;
      throw Error(ErrorCode::config, "unknown configuration keys: " + list);
    }
    return *this;
  }

  const json& array(std::size_t min_size = 0) const {
    if (!value.is_array()) fail(path, "must be an array");
    if (value.size() < min_size) fail(path, "needs at least " + std::to_string(min_size) + " entries");
    return value;
  }

  double number() const {
    if (!value.is_number()) fail(path, "must be a number");
    const double d = value.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
  }

  std::string string() const {
    if (!value.is_string()) fail(path, "must be a string");
    return value.get<std::string>();
  }

  bool boolean() const {
    if (!value.is_boolean()) fail(path, "must be true or false");
    return value.get<bool>();
  }

  std::uint64_t unsigned_integer() const {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
      fail(path, "must be a non-negative integer");
    }
    return value.get<std::uint64_t>();
  }

  Complex complex() const {
    if (value.is_number()) return {number(), 0.0};
    object({"re", "im"});
    return {has("re") ? at("re").number() : 0.0, has("im") ? at("im").number() : 0.0};
  }
};

MediumState parse_medium(const Field& f, const char* extra = nullptr) {
  if (extra) f.object({"epsilon", "mu", "branch", extra});
  else f.object({"epsilon", "mu", "branch"});
  if (!f.has("epsilon")) fail(f.path, "missing epsilon");
  if (!f.has("mu")) fail(f.path, "missing mu");
  Branch branch = Branch::positive;
  if (f.has("branch")) {
    const double b = f.at("branch").number();
    if (b == 1.0) branch = Branch::positive;
    else if (b == -1.0) branch = Branch::negative;
    else fail(join(f.path, "branch"), "must be 1 or -1");
  }
  try {
    return MediumState(f.at("epsilon").number(), f.at("mu").number(), branch);
  } catch (const Error& e) {
    fail(f.path, e.what());
  }
}

IncidentSpec parse_incident(const Field& f) {
  f.object({"amplitude", "omega", "k"});
  for (const char* key : {"amplitude", "omega", "k"}) {
    if (!f.has(key)) fail(f.path, std::string("missing ") + key);
  }
  IncidentSpec spec;
  const Field amp = f.at("amplitude");
  if (amp.array().size() != 3) fail(amp.path, "must have three complex components");
  for (std::size_t j = 0; j < 3; ++j) spec.amplitude(static_cast<Eigen::Index>(j)) = amp.at(j).complex();
  if (spec.amplitude.norm() == 0.0) fail(amp.path, "must be non-zero");

  spec.omega = f.at("omega").number();
  if (!(spec.omega > 0.0)) fail(join(f.path, "omega"), "must be > 0 (incident frequency omega1 > 0)");

  const Field k = f.at("k");
  if (k.array().size() != 3) fail(k.path, "must have three components");
  for (std::size_t j = 0; j < 3; ++j) spec.k(static_cast<Eigen::Index>(j)) = k.at(j).number();
  const double norm = spec.k.norm();
  if (std::abs(norm - 1.0) > 1e-9) fail(k.path, "must be a unit vector");
  spec.k /= norm;
  if (std::abs(dot(spec.amplitude, spec.k)) > 1e-9 * spec.amplitude.norm()) {
    fail(amp.path, "must be transversal to k (amplitude . k = 0)");
  }
  return spec;
}

std::vector<double> parse_numbers(const Field& f, std::size_t min_size = 0) {
  std::vector<double> out;
  const json& arr = f.array(min_size);
  for (std::size_t j = 0; j < arr.size(); ++j) out.push_back(f.at(j).number());
  return out;
}

// Grid expansion: linear spacing start + (stop-start) j/(count-1), log
// spacing start (stop/start)^(j/(count-1)); count == 1 yields {start}.
SweepAxis parse_axis(const Field& f) {
  f.object({"parameter", "values", "start", "stop", "count", "spacing"});
  if (!f.has("parameter")) fail(f.path, "missing parameter");
  SweepAxis axis;
  axis.parameter = f.at("parameter").string();
  static const char* kParameters[] = {"before.epsilon", "before.mu", "after.epsilon",
                                      "after.mu", "incident.omega", "t0"};
  if (std::none_of(std::begin(kParameters), std::end(kParameters),
                   [&](const char* p) { return axis.parameter == p; })) {
    fail(join(f.path, "parameter"), "unsupported sweep parameter '" + axis.parameter + "'");
  }
  if (f.has("values")) {
    if (f.has("start") || f.has("stop") || f.has("count")) {
      fail(f.path, "give either values or start/stop/count, not both");
    }
    axis.values = parse_numbers(f.at("values"), 1);
    return axis;
  }
  for (const char* key : {"start", "stop", "count"}) {
    if (!f.has(key)) fail(f.path, std::string("missing ") + key);
  }
  const double start = f.at("start").number();
  const double stop = f.at("stop").number();
  const std::uint64_t count = f.at("count").unsigned_integer();
  if (count < 1) fail(join(f.path, "count"), "must be >= 1");
  const std::string spacing = f.has("spacing") ? f.at("spacing").string() : "linear";
  if (spacing != "linear" && spacing != "log") fail(join(f.path, "spacing"), "must be 'linear' or 'log'");
  if (spacing == "log" && !(start > 0.0 && stop > 0.0)) fail(f.path, "log spacing needs start, stop > 0");
  for (std::uint64_t j = 0; j < count; ++j) {
    const double u = count == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(count - 1);
    axis.values.push_back(spacing == "log" ? start * std::pow(stop / start, u) : start + (stop - start) * u);
  }
  return axis;
}

void require_media(const RunConfig& c) {
  if (!c.before) fail("media.before", "required for command " + std::string(to_string(c.command)));
  if (!c.after) fail("media.after", "required for command " + std::string(to_string(c.command)));
}

void require_incident(const RunConfig& c) {
  if (!c.incident) fail("incident", "required for command " + std::string(to_string(c.command)));
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::solve: return "solve";
    case Command::sweep: return "sweep";
    case Command::oracle: return "oracle";
    case Command::cascade: return "cascade";
    case Command::verify: return "verify";
  }
  return "solve";
}

std::optional<Command> command_from_string(std::string_view s) noexcept {
  for (Command c : {Command::solve, Command::sweep, Command::oracle, Command::cascade, Command::verify}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

std::optional<OutputFormat> format_from_string(std::string_view s) noexcept {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  return std::nullopt;
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config, std::string("configuration is not valid JSON: ") + e.what());
  }
  const Field root{doc, ""};
  root.object({"schema_version", "command", "media", "incident", "convention", "oracle", "sweep",
               "cascade", "verify", "boundary_samples", "output"});

  RunConfig c;
  if (root.has("schema_version")) {
    const std::uint64_t v = root.at("schema_version").unsigned_integer();
    if (v != static_cast<std::uint64_t>(kSchemaVersion)) {
      fail("schema_version", "unsupported version " + std::to_string(v));
    }
  }
  if (overrides.command) {
    c.command = *overrides.command;
  } else {
    if (!root.has("command")) fail("command", "missing (one of solve, sweep, oracle, cascade, verify)");
    const std::string name = root.at("command").string();
    const auto parsed = command_from_string(name);
    if (!parsed) fail("command", "unknown command '" + name + "'");
    c.command = *parsed;
  }

  if (root.has("media")) {
    const Field media = root.at("media");
    media.object({"before", "after", "t0"});
    if (media.has("before")) c.before = parse_medium(media.at("before"));
    if (media.has("after")) c.after = parse_medium(media.at("after"));
    if (media.has("t0")) c.t0 = media.at("t0").number();
  }
  if (root.has("incident")) c.incident = parse_incident(root.at("incident"));

  if (root.has("convention")) {
    const Field conv = root.at("convention");
    conv.object({"transmitted", "reflected"});
    if (conv.has("transmitted")) {
      const std::string t = conv.at("transmitted").string();
      if (t == "forward") c.convention.transmitted = TransmittedBranch::forward;
      else if (t == "backward") c.convention.transmitted = TransmittedBranch::backward;
      else fail("convention.transmitted", "must be 'forward' or 'backward'");
    }
    if (conv.has("reflected")) {
      const std::string r = conv.at("reflected").string();
      if (r == "negative") c.convention.reflected = ReflectedBranch::negative;
      else if (r == "positive") c.convention.reflected = ReflectedBranch::positive;
      else fail("convention.reflected", "must be 'negative' or 'positive'");
    }
  }

  if (root.has("oracle")) {
    const Field o = root.at("oracle");
    o.object({"tau", "tol", "convergence_taus"});
    if (o.has("tau")) c.oracle.tau_periods = o.at("tau").number();
    if (o.has("tol")) c.oracle.tol = o.at("tol").number();
    if (o.has("convergence_taus")) c.oracle.convergence_taus = parse_numbers(o.at("convergence_taus"));
  }
  if (overrides.tau_periods) c.oracle.tau_periods = *overrides.tau_periods;
  if (overrides.tol) c.oracle.tol = *overrides.tol;
  if (!(c.oracle.tau_periods >= 0.0)) fail("oracle.tau", "must be >= 0");
  if (!(c.oracle.tol > 0.0)) fail("oracle.tol", "must be > 0");
  if (!c.oracle.convergence_taus.empty()) {
    const auto& taus = c.oracle.convergence_taus;
    if (taus.size() < 3) fail("oracle.convergence_taus", "needs at least three ramp widths");
    for (std::size_t j = 0; j < taus.size(); ++j) {
      if (!(taus[j] >= 0.0)) fail(indexed("oracle.convergence_taus", j), "must be >= 0");
      if (j > 0 && !(taus[j] < taus[j - 1])) fail("oracle.convergence_taus", "must be strictly decreasing");
    }
  }

  if (root.has("sweep")) {
    const Field s = root.at("sweep");
    s.object({"axes", "threads"});
    if (s.has("axes")) {
      const Field axes = s.at("axes");
      const json& arr = axes.array(1);
      for (std::size_t j = 0; j < arr.size(); ++j) c.sweep.push_back(parse_axis(axes.at(j)));
    }
    if (s.has("threads")) c.threads = static_cast<std::size_t>(s.at("threads").unsigned_integer());
  }

  if (root.has("cascade")) {
    const Field s = root.at("cascade");
    s.object({"timeline", "t_start", "floquet"});
    if (s.has("timeline")) {
      const Field tl = s.at("timeline");
      const json& arr = tl.array(1);
      for (std::size_t j = 0; j < arr.size(); ++j) {
        const Field seg = tl.at(j);
        const MediumState medium = parse_medium(seg, "duration");
        if (!seg.has("duration")) fail(seg.path, "missing duration");
        const double duration = seg.at("duration").number();
        if (!(duration >= 0.0)) fail(join(seg.path, "duration"), "must be >= 0");
        c.cascade.timeline.push_back({medium, duration});
      }
    }
    if (s.has("t_start")) c.cascade.t_start = s.at("t_start").number();
    if (s.has("floquet")) c.cascade.floquet = s.at("floquet").boolean();
  }

  if (root.has("verify")) {
    const Field v = root.at("verify");
    v.object({"terms", "tol", "grid"});
    if (v.has("terms")) {
      const Field terms = v.at("terms");
      const json& arr = terms.array(1);
      for (std::size_t j = 0; j < arr.size(); ++j) {
        const Field term = terms.at(j);
        term.object({"amplitude", "omega"});
        if (!term.has("amplitude") || !term.has("omega")) fail(term.path, "needs amplitude and omega");
        const Field amp = term.at("amplitude");
        ExponentialTerm t;
        t.amplitude.resize(static_cast<Eigen::Index>(amp.array(1).size()));
        for (std::size_t k = 0; k < amp.value.size(); ++k) {
          t.amplitude(static_cast<Eigen::Index>(k)) = amp.at(k).complex();
        }
        if (t.amplitude.norm() == 0.0) fail(amp.path, "must be non-zero");
        if (j > 0 && t.amplitude.size() != c.verify.terms.front().amplitude.size()) {
          fail(amp.path, "all amplitudes must share one dimension");
        }
        t.omega = term.at("omega").number();
        c.verify.terms.push_back(std::move(t));
      }
    }
    if (v.has("tol")) c.verify.tol = v.at("tol").number();
    if (v.has("grid")) c.verify.grid = parse_numbers(v.at("grid"));
  }
  if (overrides.tol) c.verify.tol = *overrides.tol;
  if (!(c.verify.tol > 0.0)) fail("verify.tol", "must be > 0");

  if (root.has("boundary_samples")) {
    const Field b = root.at("boundary_samples");
    b.object({"count", "seed", "extent"});
    if (b.has("count")) c.boundary.count = static_cast<std::size_t>(b.at("count").unsigned_integer());
    if (b.has("seed")) c.boundary.seed = b.at("seed").unsigned_integer();
    if (b.has("extent")) c.boundary.extent = b.at("extent").number();
    if (c.boundary.count < 1) fail("boundary_samples.count", "must be >= 1");
    if (!(c.boundary.extent > 0.0)) fail("boundary_samples.extent", "must be > 0");
  }

  if (root.has("output")) {
    const Field o = root.at("output");
    o.object({"format", "path"});
    if (o.has("format")) {
      const std::string name = o.at("format").string();
      const auto parsed = format_from_string(name);
      if (!parsed) fail("output.format", "must be 'json' or 'csv'");
      c.format = *parsed;
    }
    if (o.has("path")) c.output_path = o.at("path").string();
  }
  if (overrides.format) c.format = *overrides.format;
  if (overrides.output_path) c.output_path = *overrides.output_path;

  switch (c.command) {
    case Command::solve:
    case Command::oracle:
      require_media(c);
      require_incident(c);
      break;
    case Command::sweep:
      require_media(c);
      require_incident(c);
      if (c.sweep.empty()) fail("sweep.axes", "required for command sweep");
      break;
    case Command::cascade:
      require_incident(c);
      if (c.cascade.timeline.empty()) fail("cascade.timeline", "required for command cascade");
      break;
    case Command::verify:
      if (c.verify.terms.empty()) fail("verify.terms", "required for command verify");
      break;
  }
  return c;
}

}  // namespace tempscat::app
