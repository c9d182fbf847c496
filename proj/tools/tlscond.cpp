#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tlscond/run.hpp"

namespace {

using tlscond::io::RunConfig;

std::uint64_t env_seed() {
  const char* s = std::getenv("TLSCOND_SEED");
  if (s == nullptr || *s == '\0') return 0;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    std::cerr << "warning: ignoring TLSCOND_SEED='" << s << "'\n";
    return 0;
  }
}

void add_input_options(CLI::App* cmd, RunConfig& cfg, tlscond::io::ExampleSpec& ex,
                       std::string& example_name) {
  cmd->add_option("--matrix", cfg.matrix_path, "Matrix Market file holding A");
  cmd->add_option("--vector", cfg.vector_path, "right-hand side b (Matrix Market or one value per line)");
  cmd->add_option("--example", example_name, "built-in problem: example1 | example2 | example3");
  cmd->add_option("--delta", ex.delta, "example1: delta");
  cmd->add_option("--ep", ex.e_p, "example2: smallest singular value e_p");
  cmd->add_option("--m", ex.m, "example2/3: number of rows");
  cmd->add_option("--n", ex.n, "example2: number of columns");
  cmd->add_option("--alpha", ex.alpha, "example3: decay rate alpha");
  cmd->add_option("--omega", ex.omega, "example3: kernel half-width omega");
  cmd->add_option("--gamma", ex.gamma, "example3: noise level gamma");
  cmd->add_option("--tol", cfg.tol, "genericity tolerance");
}

void add_selection_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--L", cfg.selections,
                  "selection: identity | rows=i,j | index=i | max | min | standard (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condition numbers of total least squares problems"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.seed = env_seed();
  tlscond::io::ExampleSpec ex;
  ex.seed = cfg.seed;
  std::string example_name;
  std::string format = "table";

  auto* solve = app.add_subcommand("solve", "solve the TLS problem and report x");
  auto* cond = app.add_subcommand("cond", "normwise, mixed and componentwise condition numbers");
  auto* scond = app.add_subcommand("scond", "structured condition numbers");
  auto* experiment = app.add_subcommand("experiment", "compare condition numbers with perturbation errors");
  auto* example = app.add_subcommand("example", "write a built-in problem to disk");

  for (CLI::App* cmd : {solve, cond, scond, experiment, example}) {
    add_input_options(cmd, cfg, ex, example_name);
    cmd->add_option("--seed", cfg.seed, "random seed (default: $TLSCOND_SEED or 0)");
  }
  for (CLI::App* cmd : {solve, cond, scond, experiment}) {
    cmd->add_option("--format", format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("--out", cfg.out, "write the report to this file");
  }
  example->add_option("--out", cfg.out, "output prefix; writes <prefix>.A.mtx and <prefix>.b.txt")
      ->required();
  for (CLI::App* cmd : {cond, scond, experiment}) add_selection_options(cmd, cfg);
  for (CLI::App* cmd : {scond, experiment}) {
    cmd->add_option("--structure", cfg.structure, "toeplitz, or a manifest of basis .mtx files");
  }
  experiment->add_option("--eps", cfg.epsilon, "perturbation magnitude epsilon");
  experiment->add_option("--trials", cfg.trials, "number of perturbation trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tlscond::io::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = tlscond::io::parse_format(format);
  if (!example_name.empty()) {
    ex.name = example_name;
    ex.seed = cfg.seed;
    cfg.example = ex;
  }
  return tlscond::io::run(cfg, std::cout, std::cerr);
}
