#include <CLI11.hpp>

#include <iostream>

#include "qcl/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qcl: decoherence and which-path functionals of two superposed charges"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "evaluate one scenario; writes report.json and report.csv");
  run->add_option("config", config, "scenario JSON")->required();
  run->add_option("-o,--out-dir", out_dir, "output directory");

  std::string vary;
  std::string sweep_out = "sweep.csv";
  auto* sweep = app.add_subcommand("sweep", "vary one numeric key; one CSV row per value");
  sweep->add_option("config", config, "scenario JSON")->required();
  sweep->add_option("--vary", vary, "key=start:stop:steps, e.g. geometry.D=0.5:4:8")->required();
  sweep->add_option("-o,--out", sweep_out, "output CSV");

  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  int grid = 1000;
  auto* audit = app.add_subcommand("audit", "implication audit and f(X, Y) grid scan");
  audit->add_option("--samples", samples, "random Robertson-satisfying triples");
  audit->add_option("--seed", seed, "sampler seed");
  audit->add_option("--grid", grid, "f grid size per axis");
  audit->add_option("-o,--out-dir", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qcl::kExitInput;
  }

  if (*run) return qcl::run_command(config, out_dir, std::cerr);
  if (*sweep) return qcl::sweep_command(config, vary, sweep_out, std::cerr);
  return qcl::audit_command(samples, seed, grid, out_dir, std::cout, std::cerr);
}
