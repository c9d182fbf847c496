#include "tlscond/run.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "tlscond/matrix_market.hpp"

namespace tlscond::io {

namespace {

std::vector<Index> parse_indices(const std::string& list, Index n) {
  std::vector<Index> out;
  std::stringstream ss(list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) {
      throw InvalidArgument("bad selection index '" + tok + "'");
    }
    if (v < 1 || v > n) {
      throw InvalidArgument("selection index " + tok + " out of range 1.." + std::to_string(n));
    }
    out.push_back(static_cast<Index>(v - 1));
  }
  if (out.empty()) throw InvalidArgument("empty selection index list");
  return out;
}

struct LoadedInput {
  std::optional<TlsProblem> problem;
  std::string source;
  std::shared_ptr<const LinearStructure> structure;
  std::string structure_kind;
};

Index or_default(Index v, Index fallback) { return v > 0 ? v : fallback; }

LoadedInput load_input(const RunConfig& cfg) {
  LoadedInput in;
  if (cfg.example) {
    const ExampleSpec& ex = *cfg.example;
    in.source = ex.name;
    if (ex.name == "example1") {
      in.problem.emplace(make_example1(ex.delta));
    } else if (ex.name == "example2") {
      in.problem.emplace(make_example2(ex.e_p, or_default(ex.m, 100), or_default(ex.n, 20), ex.seed));
    } else if (ex.name == "example3") {
      Example3 e3 = make_example3(ex.alpha, ex.omega, or_default(ex.m, 200), ex.gamma, ex.seed);
      in.problem.emplace(std::move(e3.problem));
      in.structure = std::make_shared<const LinearStructure>(std::move(e3.structure));
      in.structure_kind = "toeplitz";
    } else {
      throw InvalidArgument("unknown example '" + ex.name + "' (example1|example2|example3)");
    }
  } else {
    in.problem.emplace(load_problem(*cfg.matrix_path, *cfg.vector_path));
    in.source = *cfg.matrix_path + " " + *cfg.vector_path;
  }
  if (cfg.structure) {
    const TlsProblem& p = *in.problem;
    in.structure = std::make_shared<const LinearStructure>(load_structure(*cfg.structure, p.m(), p.n()));
    in.structure_kind = *cfg.structure;
  }
  return in;
}

std::string render(const RunReport& report, OutputFormat format) {
  std::ostringstream ss;
  switch (format) {
    case OutputFormat::json:
      ss << to_json(report).dump(2) << '\n';
      break;
    case OutputFormat::csv:
      write_csv(ss, report);
      break;
    case OutputFormat::table:
      write_table(ss, report);
      break;
  }
  return ss.str();
}

int run_example(const RunConfig& cfg, const TlsProblem& problem, std::ostream& out) {
  const std::string prefix = *cfg.out;
  const std::string a_path = prefix + ".A.mtx";
  const std::string b_path = prefix + ".b.txt";
  const double density = static_cast<double>((problem.A().array() != 0.0).count()) /
                         static_cast<double>(problem.A().size());
  write_matrix_market(a_path, problem.A(),
                      density < 0.5 ? MarketLayout::coordinate : MarketLayout::array);
  write_vector(b_path, problem.b());
  out << "wrote " << a_path << " and " << b_path << " (" << problem.m() << "x" << problem.n()
      << ")\n";
  if (cfg.example->name == "example3") out << "structure: toeplitz\n";
  return kExitOk;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw InvalidArgument("unknown output format '" + name + "' (table|json|csv)");
}

void validate(const RunConfig& cfg) {
  static const char* commands[] = {"solve", "cond", "scond", "experiment", "example"};
  if (std::find(std::begin(commands), std::end(commands), cfg.command) == std::end(commands)) {
    throw InvalidArgument("unknown command '" + cfg.command + "'");
  }
  const bool files = cfg.matrix_path.has_value() || cfg.vector_path.has_value();
  if (files && cfg.example) throw InvalidArgument("give either --matrix/--vector or --example, not both");
  if (!files && !cfg.example) throw InvalidArgument("no input: give --matrix and --vector, or --example");
  if (files && !(cfg.matrix_path && cfg.vector_path)) {
    throw InvalidArgument("--matrix and --vector must be given together");
  }
  if (cfg.command == "example" && !cfg.example) throw InvalidArgument("example needs --example");
  if (cfg.command == "example" && !cfg.out) throw InvalidArgument("example needs --out <prefix>");
  if (!(cfg.epsilon > 0.0)) throw InvalidArgument("--eps must be positive");
  if (!(cfg.tol > 0.0)) throw InvalidArgument("--tol must be positive");
  if (cfg.trials < 1) throw InvalidArgument("--trials must be at least 1");
}

std::vector<Selection> parse_selection(const std::string& spec, const Vector& x) {
  const Index n = x.size();
  if (spec == "identity" || spec == "I") return {Selection::identity(n)};
  if (spec == "max") return {Selection::largest_component(x)};
  if (spec == "min") return {Selection::smallest_component(x)};
  if (spec == "standard") return standard_selections(x);
  if (spec.rfind("rows=", 0) == 0) return {Selection::rows(n, parse_indices(spec.substr(5), n))};
  if (spec.rfind("index=", 0) == 0) {
    const auto idx = parse_indices(spec.substr(6), n);
    if (idx.size() != 1) throw InvalidArgument("index= takes exactly one index");
    return {Selection::index(n, idx[0])};
  }
  throw InvalidArgument("unknown selection '" + spec +
                        "' (identity|rows=i,j|index=i|max|min|standard)");
}

LinearStructure load_structure(const std::string& spec, Index m, Index n) {
  if (spec == "toeplitz") return LinearStructure::toeplitz(m, n);
  std::ifstream in(spec);
  if (!in) throw Error("cannot open structure manifest '" + spec + "'");
  const std::filesystem::path dir = std::filesystem::path(spec).parent_path();
  std::vector<SparseMatrix> basis;
  long lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::filesystem::path p = line.substr(first, last - first + 1);
    if (p.is_relative()) p = dir / p;
    const Matrix S = read_matrix_market(p.string());
    if (S.rows() != m || S.cols() != n) {
      throw DimensionMismatch(spec + ":" + std::to_string(lineno) + ": basis matrix is " +
                              std::to_string(S.rows()) + "x" + std::to_string(S.cols()) +
                              ", problem is " + std::to_string(m) + "x" + std::to_string(n));
    }
    basis.push_back(S.sparseView());
  }
  return LinearStructure(m, n, std::move(basis));
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const DimensionMismatch*>(&e)) return kExitDimension;
  if (dynamic_cast<const NotGeneric*>(&e)) return kExitNotGeneric;
  if (dynamic_cast<const SelectionNullSolution*>(&e)) return kExitNullSelection;
  if (dynamic_cast<const NotInSubspace*>(&e)) return kExitNotInSubspace;
  if (dynamic_cast<const InvalidArgument*>(&e)) return kExitInvalidArgument;
  return kExitFailure;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    LoadedInput in = load_input(cfg);
    const TlsProblem& problem = *in.problem;
    if (cfg.command == "example") return run_example(cfg, problem, out);

    if (cfg.command == "scond" && !in.structure) {
      throw InvalidArgument("scond needs --structure (toeplitz or a manifest path)");
    }
    const bool structured = in.structure && (cfg.command == "scond" || cfg.command == "experiment");

    RunReport report;
    report.command = cfg.command;
    report.source = in.source;
    report.m = problem.m();
    report.n = problem.n();
    report.genericity = check_genericity(problem, cfg.tol);
    const TlsSolution sol = solve_tls(problem, cfg.tol);
    report.x = sol.x;
    report.sigma_np1 = sol.sigma_np1;
    report.residual_norm = sol.r.norm();

    std::optional<StructuredModel> model;
    if (structured) {
      model = StructuredModel{in.structure, decompose(*in.structure, problem.A())};
      report.structure = StructureInfo{in.structure_kind, in.structure->q(), in.structure->abs_additive()};
    }

    if (cfg.command != "solve") {
      std::vector<Selection> selections;
      const std::vector<std::string> specs =
          cfg.selections.empty() ? std::vector<std::string>{"identity"} : cfg.selections;
      for (const std::string& s : specs) {
        for (Selection& L : parse_selection(s, sol.x)) selections.push_back(std::move(L));
      }
      for (const Selection& L : selections) {
        SelectionResult res{L, condition_report(sol, L), std::nullopt};
        if (model) res.structured = structured_report(sol, L, *model->structure, model->coordinates);
        report.selections.push_back(std::move(res));
      }
      if (cfg.command == "experiment") {
        PerturbationSpec spec;
        spec.epsilon = cfg.epsilon;
        spec.seed = cfg.seed;
        spec.structured = model;
        report.experiment = run_experiment(problem, selections, spec, cfg.trials, cfg.tol);
      }
    }

    const std::string text = render(report, cfg.format);
    if (cfg.out) {
      std::ofstream file(*cfg.out);
      if (!file) throw Error("cannot open '" + *cfg.out + "' for writing");
      file << text;
    } else {
      out << text;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace tlscond::io
