// Command-line front end. Everything goes through the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tempscat/tempscat.h"

namespace {

struct Options {
  std::string config_path;
  std::string format;
  std::string output;
  bool no_timestamp = false;
  std::optional<double> tau;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("config", opts.config_path, "JSON run configuration")->required();
  cmd->add_option("--format", opts.format, "override output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("-o,--output", opts.output, "override output path");
  cmd->add_flag("--no-timestamp", opts.no_timestamp, "omit the generated_at header");
  cmd->add_option("--tau", opts.tau, "ramp width in incident periods (oracle)");
  cmd->add_option("--tol", opts.tol, "tolerance override (oracle, verify)");
}

int execute(const std::string& command, const Options& opts) {
  std::ifstream in(opts.config_path, std::ios::binary);
  if (!in) {
    std::cerr << "{\"error\":{\"code\":\"io_error\",\"message\":\"cannot read " << opts.config_path
              << "\",\"exit_code\":1}}\n";
    return 1;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  tsc_run_options ro;
  tsc_run_options_init(&ro);
  if (command != "run") ro.command = command.c_str();
  if (!opts.format.empty()) ro.format = opts.format.c_str();
  if (!opts.output.empty()) ro.output_path = opts.output.c_str();
  ro.timestamp = opts.no_timestamp ? 0 : 1;
  if (opts.tau) {
    ro.has_tau = 1;
    ro.tau = *opts.tau;
  }
  if (opts.tol) {
    ro.has_tol = 1;
    ro.tol = *opts.tol;
  }

  tsc_run_output out;
  const tsc_status status = tsc_run_config(text.c_str(), &ro, &out);
  if (status != TSC_OK && out.error_json == nullptr) {
    std::cerr << "internal failure: " << tsc_last_error() << "\n";
    tsc_run_output_free(&out);
    return 1;
  }
  int code = out.exit_code;
  if (code != 0) {
    std::cerr << out.error_json << "\n";
  } else if (out.output_path == nullptr || out.output_path[0] == '\0') {
    std::cout << out.text;
  } else {
    std::ofstream file(out.output_path, std::ios::binary);
    if (!(file << out.text)) {
      std::cerr << "{\"error\":{\"code\":\"io_error\",\"message\":\"cannot write " << out.output_path
                << "\",\"exit_code\":1}}\n";
      code = 1;
    }
  }
  tsc_run_output_free(&out);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plane-wave scattering at temporal interfaces"};
  app.set_version_flag("--version", std::string(tsc_version()));
  app.require_subcommand(1);

  Options opts;
  std::string chosen;
  const char* commands[][2] = {
      {"solve", "closed-form scattering at one temporal interface"},
      {"sweep", "parameter sweep of the closed-form solution"},
      {"oracle", "ODE cross-check on a smoothed switch"},
      {"cascade", "multiple switches and Floquet analysis"},
      {"verify", "exponential-independence check"},
      {"run", "use the command named in the configuration"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c[0], c[1]);
    add_common(sub, opts);
    sub->callback([&chosen, name = std::string(c[0])] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return execute(chosen, opts);
}
