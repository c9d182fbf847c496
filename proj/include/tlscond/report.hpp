#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tlscond/harness.hpp"

namespace tlscond::io {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct StructureInfo {
  std::string kind;  // "toeplitz" or the manifest path
  Index q = 0;
  bool abs_additive = false;
};

struct SelectionResult {
  Selection selection;
  ConditionReport condition;
  std::optional<StructuredConditionReport> structured;
};

// Everything one CLI invocation computed. Serialized as JSON, a text table
// or CSV.
struct RunReport {
  std::string command;
  std::string source;  // example name or input paths
  Index m = 0;
  Index n = 0;
  GenericityReport genericity;
  Vector x;
  double sigma_np1 = 0.0;
  double residual_norm = 0.0;
  std::optional<StructureInfo> structure;
  std::vector<SelectionResult> selections;
  std::optional<ExperimentTable> experiment;
};

// Finite doubles stay numbers; +inf becomes the string "inf".
nlohmann::json json_number(double v);

nlohmann::json to_json(const GenericityReport& g);
nlohmann::json to_json(const ConditionReport& c);
nlohmann::json to_json(const StructuredConditionReport& c);
nlohmann::json to_json(const TrialResult& t);
nlohmann::json to_json(const RunReport& report);

// Three significant digits in scientific notation, e.g. "8.43e+00".
std::string sci3(double v);

void write_table(std::ostream& out, const RunReport& report);
void write_csv(std::ostream& out, const RunReport& report);

}  // namespace tlscond::io
