#include <array>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmconc/experiments.hpp"

namespace {

using mmconc::experiments::ExperimentConfig;

void report_error(const std::string& command, const std::string& message) {
  nlohmann::json err = {{"error", {{"command", command}, {"message", message}}}};
  std::cerr << err.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concentration functionals on finite metric measure spaces: exact partial "
               "diameters, separation distances, observable-diameter brackets, the lp-ball "
               "reduction map, and seeded cone-measure sphere experiments."};
  app.require_subcommand(1);

  // Each subcommand owns its config so per-command defaults stay independent.
  std::array<ExperimentConfig, 6> cfgs;
  std::array<CLI::App*, 6> cmds{};

  auto add_common = [&](CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "RNG master seed")->capture_default_str();
    cmd->add_option("--output", cfg.output, "output path ('-' for stdout)")
        ->capture_default_str();
    cmd->add_option("--format", cfg.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  cmds[0] = app.add_subcommand("demo-two-point",
                               "exact functionals of the two-atom space (d=1, weights 1/2)");
  add_common(cmds[0], cfgs[0]);

  cmds[1] = app.add_subcommand("suite", "seeded random-instance inequality suite");
  cfgs[1].samples = 500;
  cmds[1]->add_option("--samples", cfgs[1].samples, "number of trials")->capture_default_str();
  cmds[1]->add_flag("--inject-fault", cfgs[1].inject_fault,
                    "test hook: shrink the Lipschitz constant so failures are reported");
  add_common(cmds[1], cfgs[1]);

  cmds[2] = app.add_subcommand(
      "sphere-concentration", "median concentration profile of the first coordinate on lp spheres");
  cfgs[2].p = 2.0;
  cfgs[2].samples = 5000;
  cmds[2]->add_option("--p", cfgs[2].p, "sphere exponent p >= 1")->capture_default_str();
  cmds[2]->add_option("--n-list", cfgs[2].n_list, "dimensions (default 4,16,64,256)")
      ->delimiter(',');
  cmds[2]->add_option("--samples", cfgs[2].samples, "samples per dimension")->capture_default_str();
  add_common(cmds[2], cfgs[2]);

  cmds[3] = app.add_subcommand(
      "prop41", "antipodal lower bound on symmetrized sphere samples (requires q <= p)");
  cfgs[3].p = 2.0;
  cfgs[3].q = 2.0;
  cfgs[3].kappa = 0.25;
  cfgs[3].samples = 200;
  cmds[3]->add_option("--p", cfgs[3].p, "sphere exponent p >= 1")->capture_default_str();
  cmds[3]->add_option("--q", cfgs[3].q, "target distance exponent q (q <= p)")
      ->capture_default_str();
  cmds[3]->add_option("--kappa", cfgs[3].kappa, "mass deficit kappa < 1/2")->capture_default_str();
  cmds[3]->add_option("--n-list", cfgs[3].n_list, "dimensions (default 30)")->delimiter(',');
  cmds[3]->add_option("--samples", cfgs[3].samples, "antipodal pairs per dimension")
      ->capture_default_str();
  add_common(cmds[3], cfgs[3]);

  cmds[4] = app.add_subcommand(
      "theorem1",
      "reduction-chain experiment: sphere sample scaled into the lp ball, partial diameters "
      "before and after the reduction map (requires p < q)");
  cfgs[4].p = 1.0;
  cfgs[4].q = 2.0;
  cfgs[4].eps = 0.5;
  cfgs[4].kappa = 0.1;
  cfgs[4].samples = 1000;
  cmds[4]->add_option("--p", cfgs[4].p, "ball exponent p in [1, q)")->capture_default_str();
  cmds[4]->add_option("--q", cfgs[4].q, "distance exponent q > p ('inf' accepted)")
      ->capture_default_str();
  cmds[4]->add_option("--eps", cfgs[4].eps, "reduction accuracy eps > 0")->capture_default_str();
  cmds[4]->add_option("--kappa", cfgs[4].kappa, "partial-diameter deficit")->capture_default_str();
  cmds[4]->add_option("--n-list", cfgs[4].n_list, "dimensions (default 16,256)")->delimiter(',');
  cmds[4]->add_option("--samples", cfgs[4].samples, "samples per dimension")
      ->capture_default_str();
  add_common(cmds[4], cfgs[4]);

  cmds[5] = app.add_subcommand("obsdiam-bracket",
                               "two-sided observable-diameter bracket for a finite mm-space");
  cfgs[5].kappa = 0.4;
  cmds[5]->add_option("--kappa", cfgs[5].kappa, "deficit kappa' > 0")->capture_default_str();
  cmds[5]->add_option("--kappa-grid", cfgs[5].kappa_grid,
                      "separation thresholds for the lower bound (comma separated)")
      ->delimiter(',');
  cmds[5]->add_option("--input", cfgs[5].input_json, "mm-space JSON file {dist, weights}");
  cmds[5]->add_option("--input-dist", cfgs[5].input_dist_csv, "square distance matrix CSV");
  cmds[5]->add_option("--input-weights", cfgs[5].input_weights_csv, "weights CSV");
  add_common(cmds[5], cfgs[5]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("(parse)", e.what());
    return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
  }

  ExperimentConfig config;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (cmds[i]->parsed()) {
      config = cfgs[i];
      config.command = cmds[i]->get_name();
      break;
    }
  }

  try {
    mmconc::experiments::run_and_emit(config);
  } catch (const std::exception& e) {
    report_error(config.command, e.what());
    return 1;
  }
  return 0;
}
