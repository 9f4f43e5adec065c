// symtrans: verify symplectic cubic forms, their affine groups and the flat
// special Kahler structures built from polynomial potentials.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "symtrans/cli.hpp"

int main(int argc, char** argv) {
  using namespace symtrans;

  CLI::App app{"Abelian simply transitive symplectic groups and flat special Kahler structures"};
  app.require_subcommand(1, 1);

  std::optional<std::string> seed;
  std::size_t trials = 100;
  std::string format = "text";
  std::optional<std::size_t> n, k;
  std::optional<std::string> signature;
  unsigned degree = 3;
  double dt = 1e-3, t_end = 1.0, tolerance = 1e-8;
  std::string connection = "nabla";
  std::optional<std::string> point, velocity, output;
  std::vector<std::string> inputs;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Random seed (falls back to SYMTRANS_SEED, then 0)");
    sub->add_option("--trials", trials, "Number of sampled trials or points")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--tolerance", tolerance, "Floating-point tolerance for geodesic comparisons");
  };

  struct Entry {
    const char* name;
    const char* help;
    bool takes_file;
  };
  const Entry entries[] = {
      {"check", "Membership of a cubic form in C(sp(V))", true},
      {"stratum", "Support, stratum index and translation subgroup", true},
      {"group", "Group law, commutativity and nilpotency of the affine group", true},
      {"orbit", "Orbit map round trips", true},
      {"transitivity", "Simple transitivity at sampled points", true},
      {"sk-verify", "Flat special Kahler conditions for a potential", true},
      {"geodesic", "Geodesics of D or nabla: RK4 against closed forms", true},
      {"sample", "Write a random regular cubic form or isotropic potential", false},
  };
  for (const auto& s : entries) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (s.takes_file) sub->add_option("input", inputs, "Input file")->required();
    if (std::string_view(s.name) == "geodesic") {
      sub->add_option("--dt", dt, "RK4 step")->check(CLI::PositiveNumber);
      sub->add_option("--t-end", t_end, "Final time (may be negative)");
      sub->add_option("--connection", connection, "D or nabla")->check(CLI::IsMember({"D", "nabla"}));
      sub->add_option("--point", point, "Start point, comma-separated rationals");
      sub->add_option("--velocity", velocity, "Start velocity, comma-separated rationals");
      sub->add_option("--csv", output, "Write the RK4 trajectory as CSV");
    }
    if (std::string_view(s.name) == "sample") {
      sub->add_option("--n", n, "Half the real dimension (complex dimension for potentials)");
      sub->add_option("--k", k, "Support dimension");
      sub->add_option("--signature", signature, "Sample a potential of signature p,q instead");
      sub->add_option("--degree", degree, "Maximal potential degree");
      sub->add_option("--output", output, "Output file (stdout when absent)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cli::RunConfig config;
  try {
    CLI::App* used = app.get_subcommands().front();
    config.command = *cli::parse_command(used->get_name());
    config.seed = cli::resolve_seed(seed, std::getenv("SYMTRANS_SEED"));
    if (signature) config.signature = cli::parse_signature(*signature);
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  config.inputs = inputs;
  config.trials = trials;
  config.format = format == "structured" ? cli::Format::Structured : cli::Format::Text;
  config.n = n;
  config.k = k;
  config.degree = degree;
  config.dt = dt;
  config.t_end = t_end;
  config.tolerance = tolerance;
  config.connection = connection == "D" ? Connection::Flat : Connection::Special;
  config.point = point;
  config.velocity = velocity;
  config.output = output;
  return cli::run(config, std::cout, std::cerr);
}
