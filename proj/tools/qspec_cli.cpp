#include <iostream>

#include <CLI11.hpp>

#include "qspec/cli.hpp"

int main(int argc, char** argv) {
  qspec::RunConfig cfg;
  CLI::App app{"Quaternionic S-spectra, commutator checks and sequence-space certificates"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string input_flag;
  std::size_t eig_cap = 0;
  std::optional<double> grid;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", input_flag, "Matrix JSON file");
    sub->add_option("--tol", cfg.tol, "Membership tolerance")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--format", cfg.format, "json or csv")->capture_default_str();
    sub->add_option("--eig-cap", eig_cap, "QR sweeps per dimension");
  };

  auto* spectrum = app.add_subcommand("spectrum", "S-spectrum of a matrix as eigenspheres");
  common(spectrum);
  spectrum->add_option("files", inputs, "Matrix JSON file");
  spectrum->add_option("--grid", grid, "Cross-check against a margin grid scan with this step (default 0.05)")
      ->expected(0, 1)
      ->default_str("0.05");

  auto* resolvent = app.add_subcommand("resolvent", "Membership of q and the kernel of R_q(A)");
  common(resolvent);
  resolvent->add_option("files", inputs, "Matrix JSON file");
  resolvent->add_option("--q", cfg.q, "Quaternion w,x,y,z");

  auto* commutator = app.add_subcommand("commutator", "Spectrum of C(S,T) against sigma(S) - sigma(T)");
  common(commutator);
  commutator->add_option("files", inputs, "S and T matrix files");
  commutator->add_option("--left", cfg.left, "S matrix file");
  commutator->add_option("--right", cfg.right, "T matrix file");

  auto* berberian = app.add_subcommand("berberian", "Point-spectrum certificate on the sequence-space extension");
  common(berberian);
  berberian->add_option("files", inputs, "Matrix JSON file instead of a named operator");
  berberian->add_option("--operator", cfg.op, "unilateral-shift or weighted-shift")->capture_default_str();
  berberian->add_option("--q", cfg.q, "Quaternion w,x,y,z");
  berberian->add_option("--terms", cfg.terms, "Extent of the decay table")->capture_default_str();
  berberian->add_option("--horizon", cfg.horizon, "Generalized-limit horizon")->capture_default_str();
  berberian->add_option("--cert-tol", cfg.cert_tol, "Largest glim accepted as an eigenvector")->capture_default_str();

  auto* check = app.add_subcommand("check", "Run a property suite");
  common(check);
  check->add_option("--suite", cfg.suite, "adjoint, spheres, leftmult, glim, berberian, commutator or all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qspec::exit_usage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.inputs = inputs;
  if (!input_flag.empty()) cfg.inputs.push_back(input_flag);
  if (eig_cap != 0) cfg.eig_cap = eig_cap;
  if (spectrum->count("--grid") > 0) cfg.grid = grid.value_or(0.05);

  const qspec::Report rep = qspec::run(cfg);
  (rep.error ? std::cerr : std::cout) << rep.output;
  return rep.exit_code;
}
