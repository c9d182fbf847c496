#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tlscond/report.hpp"

namespace tlscond::io {

// Process exit codes of the CLI, one per failure class.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitDimension = 4,
  kExitNotGeneric = 5,
  kExitNullSelection = 6,
  kExitNotInSubspace = 7,
  kExitInvalidArgument = 8,
};

enum class OutputFormat { table, json, csv };

OutputFormat parse_format(const std::string& name);

struct ExampleSpec {
  std::string name;  // example1 | example2 | example3
  double delta = 1e-3;
  double e_p = 1e-4;
  Index m = 0;  // 0 picks the example's default size
  Index n = 0;
  double alpha = 1.25;
  Index omega = 8;
  double gamma = 1e-3;
  std::uint64_t seed = 0;
};

struct RunConfig {
  std::string command;  // solve | cond | scond | experiment | example
  std::optional<std::string> matrix_path;
  std::optional<std::string> vector_path;
  std::optional<ExampleSpec> example;
  // "toeplitz" or a manifest file listing one Matrix Market basis file per line.
  std::optional<std::string> structure;
  std::vector<std::string> selections;  // empty means identity
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  Index trials = 100;
  double tol = kDefaultGenericityTol;
  OutputFormat format = OutputFormat::table;
  std::optional<std::string> out;  // report path, or file prefix for `example`
};

// Throws InvalidArgument when the config is inconsistent.
void validate(const RunConfig& config);

// identity | rows=i,j,... | index=i | max | min | standard (1-based indices).
// "standard" expands to the four selections I, L1, L2, L3.
std::vector<Selection> parse_selection(const std::string& spec, const Vector& x);

// "toeplitz" or a manifest path; manifest entries are resolved relative to
// the manifest's directory.
LinearStructure load_structure(const std::string& spec, Index m, Index n);

// Executes one command. The report is assembled completely before anything
// is written, so failures never leave a partial report behind. Returns the
// exit code; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Maps a library exception to its exit code.
int exit_code_for(const std::exception& e);

}  // namespace tlscond::io
