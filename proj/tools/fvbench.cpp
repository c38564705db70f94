// fvbench command-line driver.
#include <CLI11.hpp>

#include <iostream>

#include "fvbench/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume reconstruction/quadrature benchmark driver"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value configuration file");
    sub->add_option("--set", overrides, "override a configuration key (key=value)")->take_all();
  };
  auto* run = app.add_subcommand("run", "single simulation");
  auto* conv = app.add_subcommand("convergence", "resolution sweep with fitted order");
  auto* camp = app.add_subcommand("hit-campaign", "turbulence runs over resolutions and schemes");
  auto* spec = app.add_subcommand("spectrum", "vorticity spectrum of a snapshot (input=...)");
  auto* cmp = app.add_subcommand("compare", "L1 difference of two snapshots (input=..., compare.with=...)");
  for (auto* s : {run, conv, camp, spec, cmp}) add_common(s);

  CLI11_PARSE(app, argc, argv);

  try {
    fvbench::Config cfg = config_path.empty() ? fvbench::Config{} : fvbench::Config::load(config_path);
    for (const auto& o : overrides) cfg.set(o);
    const fvbench::RunConfig rc = fvbench::resolve_config(std::move(cfg));
    if (run->parsed()) return fvbench::cmd_run(rc, std::cout);
    if (conv->parsed()) return fvbench::cmd_convergence(rc, std::cout);
    if (camp->parsed()) return fvbench::cmd_hit_campaign(rc, std::cout);
    if (spec->parsed()) return fvbench::cmd_spectrum(rc, std::cout);
    if (cmp->parsed()) return fvbench::cmd_compare(rc, std::cout);
  } catch (const fvbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fvbench::StateError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
