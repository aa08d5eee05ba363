#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"
#include "run_config.hpp"

using namespace bcnd;
using namespace bcnd::cli;

int main(int argc, char** argv) {
  CLI::App app{"Deformed trigonometric BC_n Sutherland system: certification "
               "suites, reduced flows, limit studies, parameter scans"};
  app.require_subcommand(1);

  std::string config_path;
  RunConfig flags;  // flag values; only explicitly set ones override
  bool has_seed = false, has_n = false, has_x = false, has_u = false,
       has_v = false, has_k = false, has_tmax = false, has_samples = false,
       has_method = false, has_out = false, has_format = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config document");
    cmd->add_option("--seed", flags.seed, "random seed")
        ->each([&](const std::string&) { has_seed = true; });
    cmd->add_option("--out", flags.out, "output path (default stdout)")
        ->each([&](const std::string&) { has_out = true; });
    cmd->add_option("--format", flags.format, "csv or json")
        ->each([&](const std::string&) { has_format = true; });
    cmd->add_option("--method", flags.method,
                    "projection, local, global or both")
        ->each([&](const std::string&) { has_method = true; });
    cmd->add_option("--n", flags.params.n, "particle number")
        ->each([&](const std::string&) { has_n = true; });
    cmd->add_option("--x", flags.params.x, "deformation parameter")
        ->each([&](const std::string&) { has_x = true; });
    cmd->add_option("--u", flags.params.u, "coupling u")
        ->each([&](const std::string&) { has_u = true; });
    cmd->add_option("--v", flags.params.v, "coupling v")
        ->each([&](const std::string&) { has_v = true; });
    cmd->add_option("--k", flags.k, "flow Hamiltonian index")
        ->each([&](const std::string&) { has_k = true; });
    cmd->add_option("--t-max", flags.t_max, "end of the time span")
        ->each([&](const std::string&) { has_tmax = true; });
    cmd->add_option("--samples", flags.samples, "sample count")
        ->each([&](const std::string&) { has_samples = true; });
  };

  CLI::App* verify = app.add_subcommand("verify", "run certification suites");
  CLI::App* simulate = app.add_subcommand("simulate", "integrate a reduced flow");
  CLI::App* limits = app.add_subcommand("limits", "limit-relation residual tables");
  CLI::App* scan = app.add_subcommand("scan", "grid scans");
  for (CLI::App* cmd : {verify, simulate, limits, scan}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (has_seed) cfg.seed = flags.seed;
    if (has_out) cfg.out = flags.out;
    if (has_format) cfg.format = flags.format;
    if (has_method) cfg.method = flags.method;
    if (has_n) cfg.params.n = flags.params.n;
    if (has_x) cfg.params.x = flags.params.x;
    if (has_u) cfg.params.u = flags.params.u;
    if (has_v) cfg.params.v = flags.params.v;
    if (has_k) cfg.k = flags.k;
    if (has_tmax) cfg.t_max = flags.t_max;
    if (has_samples) cfg.samples = flags.samples;
    cfg.params.validate();
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (limits->parsed()) return cmd_limits(cfg);
    if (scan->parsed()) return cmd_scan(cfg);
  } catch (const StepFailure& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return 3;
  } catch (const EscapeDisk& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
