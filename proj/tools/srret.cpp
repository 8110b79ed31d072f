#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "srret/cli/commands.hpp"
#include "srret/error.hpp"

using namespace srret::cli;

namespace {

void add_common(CLI::App& sub, RunConfig& cfg, std::string& regime, std::string& format) {
  sub.add_option("--out", cfg.out, "Output path, '-' for stdout");
  sub.add_option("--resolution", cfg.resolution, "Grid points per axis");
  sub.add_option("--threads", cfg.threads, "Worker threads (0 = auto)");
  sub.add_option("--seed", cfg.seed, "Random seed");
  sub.add_option("--regime", regime, "full | nonretarded");
  sub.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--x-dimensionless", cfg.x_dimensionless, "Dimensionless distance X = k r");
  sub.add_option("--wavelength", cfg.wavelength, "Wavelength, same unit as --distance");
  sub.add_option("--distance", cfg.distance, "Distance, converted to X = 2 pi d / lambda");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superradiant resonance energy transfer: rates, fidelities and figure data"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values");

  RunConfig cfg;
  std::string regime, format;

  auto* fig1 = app.add_subcommand("fig1", "Two-donor fidelity map over the second donor's position");
  add_common(*fig1, cfg, regime, format);
  fig1->add_option("--extent", cfg.extent, "Grid half-width in units of X");

  auto* fig2 = app.add_subcommand("fig2", "Acceptor swept inside a ring of N donors");
  add_common(*fig2, cfg, regime, format);
  fig2->add_option("--n-donors", cfg.n_donors, "Ring sizes")->delimiter(',');
  fig2->add_option("--extent", cfg.extent, "Grid half-width in units of X");

  auto* fig3 = app.add_subcommand("fig3", "Two spheres versus one sphere of equal volume");
  add_common(*fig3, cfg, regime, format);
  fig3->add_option("--z0", cfg.z0, "Upper end of the z0 sweep");
  fig3->add_option("--z0-min", cfg.z0_min, "Lower end of the z0 sweep");
  fig3->add_option("--radius", cfg.radius, "Radius R0 of each of the two spheres");
  fig3->add_option("--points", cfg.points, "Sweep length");

  auto* fig4 = app.add_subcommand("fig4", "Shell fidelity over (alpha, beta)");
  add_common(*fig4, cfg, regime, format);
  fig4->add_option("--alpha", cfg.alpha, "Largest inner radius");
  fig4->add_option("--beta", cfg.beta, "Largest outer radius");

  auto* greedy = app.add_subcommand("greedy", "Greedy donor placement on a ring");
  add_common(*greedy, cfg, regime, format);
  greedy->add_option("--k", cfg.k, "Donors to place");
  greedy->add_option("--grid-points", cfg.grid_points, "Sites on the ring");
  greedy->add_option("--cluster-tol", cfg.cluster_tol, "Cluster half-width in radians");

  auto* validate = app.add_subcommand("validate", "Run the oracle suite and print a JSON report");
  add_common(*validate, cfg, regime, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (!regime.empty()) cfg.regime = parse_regime(regime);
    if (!format.empty()) cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    return run_command(app.get_subcommands().front()->get_name(), cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const srret::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}
