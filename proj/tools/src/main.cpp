#include <iostream>

#include <CLI11.hpp>

#include "app.hpp"

int main(int argc, char** argv) {
  using phasekit::cli::RunConfig;
  CLI::App app{"phasekit: phase factors, period continuation and integrality checks"};
  app.require_subcommand(1, 1);
  RunConfig config;

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"validate", "lattice, monodromy, normalized log and Frobenius invariants"},
      {"omega", "closed-form phase versus oracle partial sums"},
      {"locality", "swap-path locality; reports k"},
      {"integrality", "randomized loop suite; reports integers and residuals"},
      {"vv", "loop integral around each critical value divided by -4 pi i"},
      {"periods", "ODE-continued periods versus the root oracle, loop monodromy"},
      {"residue", "higher residue pairing identities"},
      {"fock", "vertex operator composition scalar and OPE M-stability"},
      {"derivative", "lambda-derivative identity and pole orders"},
      {"polylog", "Jonquiere inversion sweep"},
  };
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&config, name = std::string(s.name)] { config.command = name; });
    if (std::string(s.name) != "polylog") {
      auto* b = sub->add_option("--builtin", config.builtin, "built-in dataset")->check(CLI::IsMember({"A1", "A2", "A3"}));
      auto* d = sub->add_option("--dataset", config.dataset, "lattice.v1 JSON file")->check(CLI::ExistingFile);
      b->excludes(d);
    }
    sub->add_option("--seed", config.seed, "seed for randomized sweeps");
    sub->add_option("--tol", config.tolerance, "tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--count", config.count, "sample count override")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", config.out, "report file (default stdout)");
    sub->add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    if (std::string(s.name) == "integrality") {
      sub->add_option("--loops", config.count, "number of loops")->check(CLI::NonNegativeNumber);
      sub->add_option("--path", config.path, "path.v1 loop file")->check(CLI::ExistingFile);
    }
    if (std::string(s.name) == "fock") sub->add_option("--orders", config.orders, "truncation orders")->delimiter(',');
    if (std::string(s.name) == "omega") {
      sub->add_option("--lambda", config.lambda, "complex lambda, e.g. 3,1");
      sub->add_option("--mu", config.mu, "complex mu");
      sub->add_option("--alpha", config.alpha, "cycle, comma separated integers");
      sub->add_option("--beta", config.beta, "cycle, comma separated integers");
      sub->add_option("--nmax", config.n_max, "oracle partial sum order")->check(CLI::Range(0, 400));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : phasekit::cli::kExitParse;
  }
  return phasekit::cli::run(config, std::cout, std::cerr);
}
