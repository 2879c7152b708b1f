#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "frobreal/cli.hpp"

int main(int argc, char** argv) {
  using frobreal::Mode;
  CLI::App app{"Frobenius structures on cohomology rings and their automorphism coset counts"};
  app.require_subcommand(1);

  frobreal::RunConfig config;
  std::string out_path;
  std::uint64_t budget = 0;

  struct Sub {
    const char* name;
    Mode mode;
    const char* help;
  };
  const Sub subs[] = {
      {"build", Mode::build, "Build the Poincaré-duality structure and print it as JSON"},
      {"check", Mode::check, "Evaluate every axiom relation"},
      {"aut", Mode::aut, "Algebra and Frobenius automorphism groups over a prime field"},
      {"orbit", Mode::orbit, "Conjugation orbits of the structure tensors"},
      {"report", Mode::report, "Full coset-count report"},
  };
  for (const auto& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->add_option("--spec", config.spec, "sphere:n, cp:n, surface:g or connsum(<spec>,<spec>)");
    cmd->add_option("--field", config.field, "rationals or q=<prime>")->capture_default_str();
    cmd->add_option("--budget", budget, "Candidate evaluation budget (default: FROBREAL_BUDGET or 1e8)");
    cmd->add_option("--out", out_path, "Write the output to this file");
    cmd->add_flag("--json", config.json, "JSON instead of a table");
    if (sub.mode == Mode::check) cmd->add_option("--input", config.input_path, "Structure JSON produced by build");
    if (sub.mode == Mode::orbit)
      cmd->add_option("--target", config.target, "algebra, full or both")->capture_default_str();
    if (sub.mode == Mode::aut)
      cmd->add_option("--list-limit", config.list_limit, "Largest group whose elements are printed")
          ->capture_default_str();
    cmd->callback([&config, mode = sub.mode] { config.mode = mode; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (CLI::App* cmd : app.get_subcommands())
    if (cmd->count("--budget")) config.budget = budget;

  frobreal::RunResult result = frobreal::run(config);
  if (!result.error.empty()) std::cerr << "error: " << result.error << '\n';
  if (out_path.empty()) {
    std::cout << result.output;
  } else if (!result.output.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << result.output;
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return 2;
    }
  }
  return result.status;
}
