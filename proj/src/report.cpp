#include "tlscond/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace tlscond::io {

using nlohmann::json;

json json_number(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  if (!std::isfinite(v)) throw Error("report value is not finite");
  return v;
}

json to_json(const GenericityReport& g) {
  return json{{"sigma_tilde_n", json_number(g.sigma_tilde_n)},
              {"sigma_np1", json_number(g.sigma_np1)},
              {"relative_gap", json_number(g.relative_gap)},
              {"v_last_last", json_number(g.v_last_last)},
              {"is_generic", g.is_generic}};
}

json to_json(const ConditionReport& c) {
  return json{{"cond_abs", json_number(c.cond_abs)},
              {"cond_rel", json_number(c.cond_rel)},
              {"kappa_inf", json_number(c.kappa_inf)},
              {"kappa_inf_rel", json_number(c.kappa_inf_rel)},
              {"kappa_c", json_number(c.kappa_c)},
              {"kappa2_bound", json_number(c.kappa2_bound)},
              {"kappa_inf_upper", json_number(c.kappa_inf_upper)},
              {"kappa_c_upper", json_number(c.kappa_c_upper)}};
}

json to_json(const StructuredConditionReport& c) {
  return json{{"kappa_s_inf", json_number(c.kappa_s_inf)},
              {"kappa_s_inf_rel", json_number(c.kappa_s_inf_rel)},
              {"kappa_s_c", json_number(c.kappa_s_c)},
              {"kappa_s2_bound", json_number(c.kappa_s2_bound)}};
}

json to_json(const TrialResult& t) {
  json j{{"trial", t.trial}, {"solved", t.solved}};
  if (!t.solved) {
    j["failure"] = t.failure;
    return j;
  }
  j["r2_rel"] = json_number(t.r2_rel);
  j["rinf_rel"] = json_number(t.rinf_rel);
  j["rc_rel"] = json_number(t.rc_rel);
  j["bound_2"] = json_number(t.bound_2);
  j["bound_inf"] = json_number(t.bound_inf);
  j["bound_c"] = json_number(t.bound_c);
  j["satisfied"] = json{{"two", t.satisfied_2}, {"inf", t.satisfied_inf}, {"c", t.satisfied_c}};
  return j;
}

namespace {

json vector_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(json_number(v(i)));
  return arr;
}

json selection_json(const Selection& L) {
  json rows = json::array();
  for (Index i = 0; i < L.k(); ++i) rows.push_back(vector_json(L.matrix().row(i).transpose()));
  return json{{"label", L.label()}, {"k", L.k()}, {"matrix", rows}};
}

}  // namespace

json to_json(const RunReport& report) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = report.command;
  j["source"] = report.source;
  j["problem"] = json{{"m", report.m}, {"n", report.n}};
  j["genericity"] = to_json(report.genericity);
  j["solution"] = json{{"x", vector_json(report.x)},
                       {"sigma_np1", json_number(report.sigma_np1)},
                       {"residual_norm", json_number(report.residual_norm)}};
  if (report.structure) {
    j["structure"] = json{{"kind", report.structure->kind},
                          {"q", report.structure->q},
                          {"abs_additive", report.structure->abs_additive}};
  }
  json sels = json::array();
  for (const SelectionResult& s : report.selections) {
    json e{{"selection", selection_json(s.selection)}, {"condition", to_json(s.condition)}};
    if (s.structured) e["structured"] = to_json(*s.structured);
    sels.push_back(std::move(e));
  }
  j["selections"] = std::move(sels);
  if (report.experiment) {
    const ExperimentTable& t = *report.experiment;
    json rows = json::array();
    for (const ExperimentRow& row : t.rows) {
      json trials = json::array();
      for (const TrialResult& tr : row.trials) trials.push_back(to_json(tr));
      rows.push_back(json{{"label", row.selection.label()},
                          {"worst", json{{"r2_rel", json_number(row.worst_r2)},
                                         {"rinf_rel", json_number(row.worst_rinf)},
                                         {"rc_rel", json_number(row.worst_rc)}}},
                          {"failed_trials", row.failed_trials},
                          {"all_satisfied", row.all_satisfied},
                          {"trials", std::move(trials)}});
    }
    j["experiment"] = json{{"epsilon", json_number(t.epsilon)},
                           {"seed", t.seed},
                           {"trials", t.trials},
                           {"bound_slack", kBoundSlack},
                           {"rows", std::move(rows)}};
  }
  return j;
}

std::string sci3(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

namespace {

void pad_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, i == 0 ? "%-10s" : "%11s", cells[i].c_str());
    out << buf;
  }
  out << '\n';
}

const ExperimentRow* experiment_row(const RunReport& r, std::size_t i) {
  if (!r.experiment || i >= r.experiment->rows.size()) return nullptr;
  return &r.experiment->rows[i];
}

}  // namespace

void write_table(std::ostream& out, const RunReport& report) {
  out << report.command << ": " << report.source << "  (m = " << report.m
      << ", n = " << report.n << ")\n";
  out << "sigma_{n+1} = " << sci3(report.sigma_np1)
      << "  relative gap = " << sci3(report.genericity.relative_gap)
      << "  ||r||_2 = " << sci3(report.residual_norm) << '\n';

  if (report.command == "solve") {
    out << "x =";
    for (Index i = 0; i < report.x.size(); ++i) out << ' ' << sci3(report.x(i));
    out << '\n';
    return;
  }
  if (report.structure) {
    out << "structure: " << report.structure->kind << " (q = " << report.structure->q << ")\n";
  }

  const bool errors = report.experiment.has_value();
  if (errors) {
    out << "Comparison of condition numbers with the corresponding relative errors"
        << " (eps = " << sci3(report.experiment->epsilon)
        << ", trials = " << report.experiment->trials << ", worst case)\n";
  } else {
    out << "Condition numbers\n";
  }

  std::vector<std::string> head{"L"};
  if (errors) head.push_back("r2_rel");
  head.push_back("cond_rel");
  if (errors) head.push_back("rinf_rel");
  head.insert(head.end(), {"kinf_rel", "kinf_U"});
  if (errors) head.push_back("rc_rel");
  head.insert(head.end(), {"kappa_c", "kappa_c_U"});
  const bool structured = !report.selections.empty() && report.selections[0].structured;
  if (structured) head.insert(head.end(), {"ks_inf_rel", "ks_c"});
  pad_row(out, head);

  for (std::size_t i = 0; i < report.selections.size(); ++i) {
    const SelectionResult& s = report.selections[i];
    const ExperimentRow* row = experiment_row(report, i);
    std::vector<std::string> cells{s.selection.label()};
    if (errors) cells.push_back(row ? sci3(row->worst_r2) : "-");
    cells.push_back(sci3(s.condition.cond_rel));
    if (errors) cells.push_back(row ? sci3(row->worst_rinf) : "-");
    cells.push_back(sci3(s.condition.kappa_inf_rel));
    cells.push_back(sci3(s.condition.kappa_inf_upper));
    if (errors) cells.push_back(row ? sci3(row->worst_rc) : "-");
    cells.push_back(sci3(s.condition.kappa_c));
    cells.push_back(sci3(s.condition.kappa_c_upper));
    if (structured && s.structured) {
      cells.push_back(sci3(s.structured->kappa_s_inf_rel));
      cells.push_back(sci3(s.structured->kappa_s_c));
    }
    pad_row(out, cells);
  }

  if (errors) {
    for (const ExperimentRow& row : report.experiment->rows) {
      if (row.failed_trials > 0 || !row.all_satisfied) {
        out << "note: " << row.selection.label() << ": " << row.failed_trials
            << " failed trials, first-order bounds "
            << (row.all_satisfied ? "held" : "violated in some trial") << '\n';
      }
    }
  }
}

void write_csv(std::ostream& out, const RunReport& report) {
  if (report.command == "solve") {
    out << "index,x\n";
    char buf[64];
    for (Index i = 0; i < report.x.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", report.x(i));
      out << i + 1 << ',' << buf << '\n';
    }
    return;
  }
  out << "L,k,cond_abs,cond_rel,kappa_inf,kappa_inf_rel,kappa_c,kappa2_bound,kappa_inf_upper,"
         "kappa_c_upper,kappa_s_inf,kappa_s_inf_rel,kappa_s_c,kappa_s2_bound,"
         "worst_r2_rel,worst_rinf_rel,worst_rc_rel,failed_trials,all_satisfied\n";
  auto num = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < report.selections.size(); ++i) {
    const SelectionResult& s = report.selections[i];
    const ConditionReport& c = s.condition;
    out << s.selection.label() << ',' << s.selection.k() << ',' << num(c.cond_abs) << ','
        << num(c.cond_rel) << ',' << num(c.kappa_inf) << ',' << num(c.kappa_inf_rel) << ','
        << num(c.kappa_c) << ',' << num(c.kappa2_bound) << ',' << num(c.kappa_inf_upper) << ','
        << num(c.kappa_c_upper);
    if (s.structured) {
      const StructuredConditionReport& st = *s.structured;
      out << ',' << num(st.kappa_s_inf) << ',' << num(st.kappa_s_inf_rel) << ','
          << num(st.kappa_s_c) << ',' << num(st.kappa_s2_bound);
    } else {
      out << ",,,,";
    }
    if (const ExperimentRow* row = experiment_row(report, i)) {
      out << ',' << num(row->worst_r2) << ',' << num(row->worst_rinf) << ','
          << num(row->worst_rc) << ',' << row->failed_trials << ','
          << (row->all_satisfied ? "true" : "false");
    } else {
      out << ",,,,,";
    }
    out << '\n';
  }
}

}  // namespace tlscond::io
