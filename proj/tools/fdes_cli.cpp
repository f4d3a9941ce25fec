// Command-line front end: check, reach, synthesize, simulate, oracle.

#include "fdes/io.hpp"
#include "fdes/oracle.hpp"
#include "fdes/render.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace fdes;

namespace {

constexpr int kExists = 0;
constexpr int kConditionFails = 1;
constexpr int kHypothesis = 2;
constexpr int kInputError = 3;

struct CheckOptions {
  std::string plant, spec;
  std::string report = "table";
  std::string rows = "all";
  std::string condition = "all";
  bool use_float = false;
};

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  return ReportFormat::table;
}

std::pair<Model, Model> load_pair(const std::string& plant, const std::string& spec) {
  auto g = load_model(plant);
  auto h = load_model(spec);
  try {
    return {g, align_to(g, h)};
  } catch (const std::exception& e) {
    throw InputError(std::string("plant/specification mismatch: ") + e.what());
  }
}

template <class Scalar>
int run_check(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h, const CheckOptions& opt) {
  const auto attrs = g.attributes();
  const auto fmt = parse_format(opt.report);
  const auto sel = opt.rows == "failures" ? RowSelection::failures : RowSelection::all;
  const auto decision = theorem1_decision(g, h, attrs);
  const int code = decision.status == Decision::exists            ? kExists
                   : decision.status == Decision::condition_fails ? kConditionFails
                                                                  : kHypothesis;
  const char* verdict = decision.status == Decision::exists            ? "exists"
                        : decision.status == Decision::condition_fails ? "does not exist"
                                                                       : "hypothesis violated";
  std::vector<const VerificationReport<Scalar>*> reports;
  if (decision.status == Decision::hypothesis_violation) reports.push_back(&decision.hypotheses);
  for (const auto* r : {&decision.controllability, &decision.observability, &decision.lm_closed})
    if (*r) {
      const char* name = condition_name((*r)->condition);
      if (opt.condition == "all" || opt.condition == name) reports.push_back(&**r);
    }

  if (fmt == ReportFormat::json) {
    nlohmann::json doc;
    doc["supervisor"] = verdict;
    doc["stats"] = report_json(g, decision.hypotheses, sel)["stats"];
    nlohmann::json arr = nlohmann::json::array();
    for (const auto* r : reports) arr.push_back(report_json(g, *r, sel));
    doc["reports"] = arr;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& n : explore_pairs(g, h).nodes)
      pairs.push_back({{"s", format_event_string(g, n.rep)}, {"q", to_string(n.q)}, {"p", to_string(n.p)}});
    doc["pairs"] = pairs;
    if (opt.condition == "all" || opt.condition == "table") {
      nlohmann::json table = nlohmann::json::array();
      for (const auto& r : observability_table(g, h, attrs)) {
        if (sel == RowSelection::failures && r.pass) continue;
        const auto c = row_cells(g, r);
        nlohmann::json row;
        for (std::size_t i = 0; i < c.size(); ++i) row[row_header()[i]] = c[i];
        row["pass"] = r.pass;
        table.push_back(row);
      }
      doc["observability_table"] = table;
    }
    std::cout << doc.dump(2) << "\n";
    return code;
  }

  if (fmt == ReportFormat::csv) {
    if (opt.condition == "table") {
      std::cout << render_rows(g, observability_table(g, h, attrs), fmt, sel);
      return code;
    }
    bool header = true;
    for (const auto* r : reports) {
      auto text = render_rows(g, r->rows, fmt, sel);
      if (!header) text = text.substr(text.find('\n') + 1);
      std::cout << text;
      header = false;
    }
    return code;
  }

  std::cout << "supervisor: " << verdict << "\n";
  std::cout << "stats: " << stats_line(decision.stats, g.alphabet_size()) << "\n";
  if (!ScalarTraits<Scalar>::exact) std::cout << "arithmetic: floating point, tolerance 1e-9\n";
  std::cout << "note: L(ε) is taken as the height of the initial state\n\n";
  std::cout << "reachable pairs:\n" << render_pair_graph(g, explore_pairs(g, h), false) << "\n";
  for (const auto* r : reports) std::cout << render_report(g, *r, fmt, sel) << "\n";
  if (opt.condition == "all" || opt.condition == "table") {
    std::cout << "observability by projection class:\n";
    std::cout << render_rows(g, observability_table(g, h, attrs), fmt, sel);
  }
  for (const auto& w : validate_prefix_closure(h)) std::cerr << "warning: " << w << "\n";
  return code;
}

int cmd_check(const CheckOptions& opt) {
  auto [g, h] = load_pair(opt.plant, opt.spec);
  if (opt.use_float) return run_check(g.cast<double>(), h.cast<double>(), opt);
  return run_check(g, h, opt);
}

int cmd_reach(const std::string& plant, const std::string& spec, const std::string& tree, bool dot, bool states) {
  auto [g, h] = load_pair(plant, spec);
  if (states) {
    const auto graph = explore_states(h);
    for (std::size_t i = 0; i < graph.nodes.size(); ++i)
      std::cout << i << "  " << format_event_string(h, graph.nodes[i].rep) << "  " << to_string(graph.nodes[i].state) << "\n";
    return 0;
  }
  std::cout << dump_tree(g, h, tree == "paper" ? TreeMode::paper : TreeMode::graph, dot);
  return 0;
}

int cmd_synthesize(const std::string& plant, const std::string& spec, const std::string& out) {
  auto [g, h] = load_pair(plant, spec);
  const auto attrs = g.attributes();
  const auto decision = theorem1_decision(g, h, attrs);
  auto sup = synthesize(g, h, attrs);
  if (!decision.exists()) sup.notes.push_back("conditions unmet: the existence conditions do not all hold");
  for (const auto& n : sup.notes) std::cerr << "note: " << n << "\n";
  const auto doc = supervisor_to_json(sup).dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << doc;
  } else {
    std::ofstream f(out);
    if (!f) throw InputError(out + ": cannot write");
    f << doc;
  }
  return 0;
}

int cmd_simulate(const std::string& plant, const std::string& sup_path, const std::string& events) {
  const auto g = load_model(plant);
  const auto sup = load_supervisor(sup_path);
  if (sup.events.size() != g.alphabet_size()) throw InputError("supervisor and plant alphabets differ");
  for (std::size_t e = 0; e < g.alphabet_size(); ++e)
    if (sup.events[e] != g.event(e).name || !(sup.attrs[e] == g.event(e).attr))
      throw InputError("supervisor event '" + sup.events[e] + "' does not match the plant");
  EventString s;
  try {
    s = parse_event_string(g, events);
  } catch (const AlphabetError& e) {
    throw InputError(e.what());
  }
  const auto attrs = g.attributes();
  const auto trace = closed_loop_trace(g, sup, attrs, s);
  std::cout << "prefix  closed_loop  marked\n";
  for (std::size_t k = 0; k <= s.size(); ++k) {
    const EventString prefix(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
    std::cout << format_event_string(g, prefix) << "  " << trace[k].str() << "  "
              << min(trace[k], marked_degree(g, prefix)).str() << "\n";
  }
  return 0;
}

int cmd_oracle(const std::string& plant, const std::string& spec, std::size_t max_len, std::size_t max_t_len) {
  auto [g, h] = load_pair(plant, spec);
  OracleConfig cfg;
  cfg.max_len = max_len;
  cfg.max_t_len = max_t_len;
  const auto res = brute_force_check(g, h, g.attributes(), cfg);
  bool ok = true;
  std::cout << "strings enumerated: " << res.strings << "\n";
  for (const auto* r : {&res.controllability, &res.observability, &res.lm_closed}) {
    std::cout << render_report(g, *r, ReportFormat::table, RowSelection::failures);
    ok = ok && r->verdict;
  }
  return ok ? kExists : kConditionFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controllability and observability checks for fuzzy discrete-event systems"};
  app.require_subcommand(1);

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "decide whether a nonblocking supervisor exists");
  check->add_option("plant", check_opt.plant)->required();
  check->add_option("spec", check_opt.spec)->required();
  check->add_option("--report", check_opt.report)->check(CLI::IsMember({"table", "csv", "json"}));
  check->add_option("--rows", check_opt.rows)->check(CLI::IsMember({"all", "failures"}));
  check->add_option("--condition", check_opt.condition)
      ->check(CLI::IsMember({"all", "controllability", "observability", "lm_closed", "table"}));
  check->add_flag("--float", check_opt.use_float, "double arithmetic with tolerance 1e-9");

  std::string plant, spec, tree = "graph", out, sup, events;
  bool dot = false, states = false;
  std::size_t max_len = 3, max_t_len = 3;

  auto* reach_cmd = app.add_subcommand("reach", "print reachable state pairs");
  reach_cmd->add_option("plant", plant)->required();
  reach_cmd->add_option("spec", spec)->required();
  reach_cmd->add_option("--tree", tree)->check(CLI::IsMember({"paper", "graph"}));
  reach_cmd->add_flag("--dot", dot, "graph mode as DOT");
  reach_cmd->add_flag("--states", states, "specification states only");

  auto* synth = app.add_subcommand("synthesize", "build the supervisor");
  synth->add_option("plant", plant)->required();
  synth->add_option("spec", spec)->required();
  synth->add_option("--out", out);

  auto* sim = app.add_subcommand("simulate", "closed-loop degrees along an event string");
  sim->add_option("plant", plant)->required();
  sim->add_option("supervisor", sup)->required();
  sim->add_option("events", events)->required();

  auto* orc = app.add_subcommand("oracle", "brute-force check over bounded strings");
  orc->add_option("plant", plant)->required();
  orc->add_option("spec", spec)->required();
  orc->add_option("--max-len", max_len);
  orc->add_option("--max-t-len", max_t_len);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return cmd_check(check_opt);
    if (*reach_cmd) return cmd_reach(plant, spec, tree, dot, states);
    if (*synth) return cmd_synthesize(plant, spec, out);
    if (*sim) return cmd_simulate(plant, sup, events);
    if (*orc) return cmd_oracle(plant, spec, max_len, max_t_len);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
