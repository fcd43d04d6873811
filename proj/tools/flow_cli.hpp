#pragma once

// fflow command dispatch. Kept out of main() so tests can drive it with
// in-memory streams.
//
// Exit codes: 0 success, 1 negative verdict, 2 input error, 3 bad invocation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fregean/fregean.hpp"

namespace fregean::cli {

enum ExitCode : int { ok = 0, negative = 1, input_error = 2, bad_invocation = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  CoreScript script;
  std::vector<std::string> axioms;  // as reported in headers
};

inline Loaded load(const std::string& path, const std::vector<std::string>& axiom_override) {
  std::string text = read_file(path);
  Loaded out;
  try {
    out.script = desugar(parse_script(text));
  } catch (const ScriptError& e) {
    throw InputError(path + ":" + e.what());
  }
  if (!axiom_override.empty()) {
    out.script.axioms.clear();
    for (const auto& name : axiom_override) {
      StatementId id(name);
      bool known = false;
      for (const auto& s : out.script.statements) known = known || s.id == id;
      if (!known) throw InputError(path + ": --axioms names unknown statement '" + name + "'");
      if (!out.script.is_axiom(id)) out.script.axioms.push_back(id);
    }
    out.axioms = axiom_override;
  } else {
    for (const auto& a : out.script.axioms) out.axioms.push_back(a.name);
  }
  return out;
}

inline std::optional<OrderingPolicy> parse_ordering(const std::string& s) {
  if (s == "canonical") return OrderingPolicy::canonical;
  if (s == "reversed") return OrderingPolicy::reversed;
  return std::nullopt;
}

/// "det", "seeded" (seed from FF_SEED, else 0) or "seeded:<n>".
inline std::optional<StepPolicy> parse_policy(const std::string& s) {
  if (s == "det") return StepPolicy::deterministic();
  auto parse_seed = [](const std::string& digits) -> std::optional<std::uint64_t> {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      return std::nullopt;
    try {
      return std::stoull(digits);
    } catch (const std::out_of_range&) {
      return std::nullopt;
    }
  };
  if (s == "seeded") {
    const char* env = std::getenv("FF_SEED");
    if (!env) return StepPolicy::seeded(0);
    auto seed = parse_seed(env);
    if (!seed) return std::nullopt;
    return StepPolicy::seeded(*seed);
  }
  if (s.rfind("seeded:", 0) == 0) {
    auto seed = parse_seed(s.substr(7));
    if (!seed) return std::nullopt;
    return StepPolicy::seeded(*seed);
  }
  return std::nullopt;
}

inline ordered_json header_json(const std::string& command, const std::string& input,
                                const Loaded& loaded, OrderingPolicy ordering) {
  ordered_json h{{"command", command}, {"input", input}};
  h["axioms"] = loaded.axioms;
  h["ordering"] = ordering == OrderingPolicy::canonical ? "canonical" : "reversed";
  return h;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fregean flow graphs: build, analyse and contract Flow Script files", "fflow"};
  app.require_subcommand(1);

  std::string input;
  std::vector<std::string> inputs;
  std::string format = "dot";
  std::string ordering_name = "canonical";
  std::string policy_name = "det";
  std::vector<std::string> axioms;
  bool trace = false;
  bool summary = false;
  bool nonempty_axioms = false;
  std::size_t confluence_bound = 0;
  EnumerationBounds bounds{3, 2, 2};

  auto add_axioms = [&](CLI::App* sub) {
    sub->add_option("--axioms", axioms, "Replace the script's axioms (comma separated)")
        ->delimiter(',');
  };
  auto add_ordering = [&](CLI::App* sub) {
    sub->add_option("--ordering", ordering_name, "Premise ordering: canonical|reversed");
  };

  auto* parse_cmd = app.add_subcommand("parse", "Validate a script and print it canonically");
  parse_cmd->add_option("input", input, "Flow Script file")->required();

  auto* graph_cmd = app.add_subcommand("graph", "Export the flow graph");
  graph_cmd->add_option("input", input, "Flow Script file")->required();
  graph_cmd->add_option("--format", format, "dot|json");
  add_axioms(graph_cmd);
  add_ordering(graph_cmd);

  auto* geometry_cmd = app.add_subcommand("geometry", "Report planarity and cycle structure");
  geometry_cmd->add_option("input", input, "Flow Script file")->required();
  add_axioms(geometry_cmd);
  add_ordering(geometry_cmd);

  auto* contract_cmd = app.add_subcommand("contract", "Run the contraction calculus");
  contract_cmd->add_option("input", input, "Flow Script file")->required();
  contract_cmd->add_flag("--trace", trace, "Emit one record per step");
  contract_cmd->add_option("--policy", policy_name, "det|seeded|seeded:<n>");
  add_axioms(contract_cmd);
  add_ordering(contract_cmd);

  auto* check_cmd = app.add_subcommand("check", "Compare contraction with Horn closure");
  check_cmd->add_option("inputs", inputs, "Flow Script files")->required();
  add_axioms(check_cmd);
  add_ordering(check_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Check every small script exhaustively");
  enumerate_cmd->add_option("--max-statements", bounds.max_statements)->check(CLI::Range(1, 8));
  enumerate_cmd->add_option("--max-entailments", bounds.max_entailments)->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--max-premises", bounds.max_premises)->check(CLI::PositiveNumber);
  enumerate_cmd->add_flag("--nonempty-axioms", nonempty_axioms, "Skip axiom-free scripts");
  enumerate_cmd->add_flag("--summary", summary, "Print only the summary line");
  enumerate_cmd->add_option("--confluence", confluence_bound,
                            "Also explore all step orders with this state bound");
  add_ordering(enumerate_cmd);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "fflow: " << e.what() << "\n";
    return bad_invocation;
  }

  auto ordering = parse_ordering(ordering_name);
  if (!ordering) {
    err << "fflow: --ordering must be canonical or reversed\n";
    return bad_invocation;
  }

  try {
    if (parse_cmd->parsed()) {
      std::string text = read_file(input);
      try {
        out << print_script(parse_script(text));
      } catch (const ScriptError& e) {
        throw InputError(input + ":" + e.what());
      }
      return ok;
    }

    if (graph_cmd->parsed()) {
      if (format != "dot" && format != "json") {
        err << "fflow: --format must be dot or json\n";
        return bad_invocation;
      }
      auto loaded = load(input, axioms);
      auto graph = build_flow_graph(loaded.script, *ordering);
      out << (format == "dot" ? export_dot(graph) : export_json(graph));
      return ok;
    }

    if (geometry_cmd->parsed()) {
      auto loaded = load(input, axioms);
      auto report = geometry_report(build_flow_graph(loaded.script, *ordering));
      auto j = header_json("geometry", input, loaded, *ordering);
      j["geometry"] = geometry_json(report);
      out << j.dump() << "\n";
      return ok;
    }

    if (contract_cmd->parsed()) {
      auto policy = parse_policy(policy_name);
      if (!policy) {
        err << "fflow: --policy must be det, seeded or seeded:<n>\n";
        return bad_invocation;
      }
      auto loaded = load(input, axioms);
      auto graph = build_flow_graph(loaded.script, *ordering);
      auto header = header_json("contract", input, loaded, *ordering);
      header["policy"] = policy->kind == StepPolicy::Kind::deterministic
                             ? std::string("det")
                             : "seeded:" + std::to_string(policy->seed);
      out << header.dump() << "\n";
      ContractionResult result;
      try {
        result = run_to_fixpoint(initial_state(graph), *policy);
      } catch (const ContractionError& e) {
        if (e.kind() != ContractionError::Kind::no_axioms) throw;
        err << "fflow: " << input << ": " << e.what() << "\n";
        result = run_to_fixpoint(ContractionState(std::make_shared<const FlowGraph>(graph)));
      }
      if (trace)
        for (std::size_t i = 0; i < result.trace.size(); ++i)
          out << step_json(i + 1, result.trace[i]).dump() << "\n";
      out << result_json(result).dump() << "\n";
      return result.contracted ? ok : negative;
    }

    if (check_cmd->parsed()) {
      bool all_agree = true;
      for (const auto& path : inputs) {
        auto loaded = load(path, axioms);
        auto report = check_equivalence(loaded.script, *ordering);
        auto j = header_json("check", path, loaded, *ordering);
        j["report"] = conjecture_json(report);
        out << j.dump() << "\n";
        all_agree = all_agree && report.agree && report.witness_match;
      }
      return all_agree ? ok : negative;
    }

    if (enumerate_cmd->parsed()) {
      std::size_t scripts = 0, disagreements = 0, non_confluent = 0;
      for_each_script(bounds, [&](const CoreScript& s) {
        if (nonempty_axioms && s.axioms.empty()) return;
        ++scripts;
        auto report = check_equivalence(s, *ordering);
        bool good = report.agree && report.witness_match;
        ordered_json j = conjecture_json(report);
        if (confluence_bound > 0) {
          auto c = explore_all_orders(build_flow_graph(s, *ordering), confluence_bound);
          j["confluent"] = c.confluent;
          if (!c.confluent) ++non_confluent;
          good = good && c.confluent;
        }
        if (!good) ++disagreements;
        if (!summary) {
          j["script"] = print_script(s);
          out << j.dump() << "\n";
        }
      });
      ordered_json total{{"max_statements", bounds.max_statements},
                         {"max_entailments", bounds.max_entailments},
                         {"max_premises", bounds.max_premises},
                         {"scripts", scripts},
                         {"failures", disagreements}};
      if (confluence_bound > 0) total["non_confluent"] = non_confluent;
      out << total.dump() << "\n";
      return disagreements == 0 ? ok : negative;
    }
  } catch (const InputError& e) {
    err << "fflow: " << e.what() << "\n";
    return input_error;
  } catch (const ContractionError& e) {
    err << "fflow: " << e.what() << "\n";
    return negative;
  } catch (const std::invalid_argument& e) {
    err << "fflow: " << e.what() << "\n";
    return bad_invocation;
  }
  return bad_invocation;
}

}  // namespace fregean::cli
