#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "aoo/cli/report.hpp"
#include "aoo/frontend/parser.hpp"
#include "aoo/frontend/printer.hpp"
#include "aoo/interp/tier1.hpp"
#include "aoo/support/error.hpp"

namespace {

enum Exit { kOk = 0, kRejected = 1, kUsage = 2, kBudget = 3 };

struct Loaded {
  aoo::Program parsed;
  aoo::Compiled compiled;
};

Loaded load(const std::string& path) {
  std::string src = aoo::read_file(path);
  aoo::Program p = aoo::parse(src, path);
  return {p, aoo::compile(p)};
}

void emit(const nlohmann::json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw aoo::Error("cannot write " + out);
  f << j.dump(2) << "\n";
}

std::vector<unsigned long> parse_sizes(const std::string& s) {
  std::vector<unsigned long> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(std::stoul(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tier-based complexity analysis for a small object-oriented language"};
  app.require_subcommand(1);
  std::string file;
  std::string json_out;
  bool json = false;
  std::uint64_t budget = aoo::default_budget();

  auto* parse_cmd = app.add_subcommand("parse", "Parse and check well-formedness, print the program");
  parse_cmd->add_option("file", file)->required();

  auto* flatten_cmd = app.add_subcommand("flatten", "Print the flattened program");
  flatten_cmd->add_option("file", file)->required();

  std::string tiers_path;
  auto* check_cmd = app.add_subcommand("check", "Check a tier assignment, the inferred one by default");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--tiers", tiers_path, "JSON assignment as printed by infer --json");

  auto* infer_cmd = app.add_subcommand("infer", "Infer tiers by 2-SAT");
  infer_cmd->add_option("file", file)->required();
  infer_cmd->add_flag("--json", json);

  bool branchwise = false;
  auto* safety_cmd = app.add_subcommand("safety", "Check safety of recursive methods");
  safety_cmd->add_option("file", file)->required();
  safety_cmd->add_flag("--branchwise", branchwise, "Also report one recursive call per path");
  safety_cmd->add_flag("--json", json);

  std::string sizes;
  bool per_loop = false;
  auto* bound_cmd = app.add_subcommand("bound", "Report time, heap and stack bounds");
  bound_cmd->add_option("file", file)->required();
  bound_cmd->add_option("--validate", sizes, "Comma-separated sizes substituted for `int n`");
  bound_cmd->add_option("--json", json_out, "Write the JSON report to a file, - for stdout");
  bound_cmd->add_flag("--per-loop", per_loop, "Experimental per-loop exponents");
  bound_cmd->add_option("--budget", budget);

  bool trace = false;
  std::string metrics_out;
  auto* run_cmd = app.add_subcommand("run", "Run Init then Comp");
  run_cmd->add_option("file", file)->required();
  run_cmd->add_option("--budget", budget);
  run_cmd->add_flag("--trace", trace, "Print the tier-1 trace of Comp");
  run_cmd->add_option("--metrics", metrics_out, "Write run metrics as JSON");

  auto* corpus_cmd = app.add_subcommand("corpus", "Reproduce the catalogued verdicts");
  corpus_cmd->add_option("catalog", file)->required();
  corpus_cmd->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*corpus_cmd) {
      nlohmann::json r = aoo::corpus_report(file);
      if (json)
        emit(r, "-");
      else
        std::cout << aoo::corpus_text(r);
      return r["ok"].get<bool>() ? kOk : kRejected;
    }

    Loaded l = load(file);
    const aoo::ResolvedProgram& flat = *l.compiled.flat;

    if (*parse_cmd) {
      std::cout << aoo::print(l.parsed);
      return kOk;
    }
    if (*flatten_cmd) {
      std::cout << aoo::print(flat.program());
      return kOk;
    }
    if (*check_cmd) {
      aoo::Typing t = aoo::infer(flat);
      if (tiers_path.empty()) {
        if (!t.tiers) {
          std::cout << "UNTYPABLE\n";
          return kRejected;
        }
        aoo::Verdict v = aoo::check_program(*t.tree, *t.tiers, t.pins);
        std::cout << v.str() << "\n";
        return v.ok ? kOk : kRejected;
      }
      nlohmann::json j = nlohmann::json::parse(aoo::read_file(tiers_path));
      if (j.contains("assignment")) j = j["assignment"];
      aoo::TierAssignment a = aoo::TierAssignment::from_json(j, t.tree->shape());
      aoo::Verdict v = aoo::check_program(*t.tree, a);
      std::cout << v.str() << "\n";
      return v.ok ? kOk : kRejected;
    }
    if (*infer_cmd) {
      nlohmann::json r = aoo::infer_report(flat);
      if (json)
        emit(r, "-");
      else
        std::cout << aoo::infer_text(r);
      return r["typable"].get<bool>() ? kOk : kRejected;
    }
    if (*safety_cmd) {
      nlohmann::json r = aoo::safety_report(flat);
      if (json)
        emit(r, "-");
      else
        std::cout << aoo::safety_text(r, branchwise);
      return r["safe"].get<bool>() ? kOk : kRejected;
    }
    if (*bound_cmd) {
      aoo::BoundRequest req;
      req.validate = parse_sizes(sizes);
      req.per_loop = per_loop;
      req.budget = budget;
      nlohmann::json r = aoo::bound_report(l.parsed, flat, req);
      if (json_out == "-") {
        emit(r, "-");
      } else {
        std::cout << aoo::bound_text(r);
        if (!json_out.empty()) emit(r, json_out);
      }
      bool ok = r["safety"]["safe"].get<bool>() && (!r.contains("fit") || r["fit"]["pass"].get<bool>());
      return ok ? kOk : kRejected;
    }
    if (*run_cmd) {
      if (trace) {
        aoo::Typing t = aoo::infer(flat);
        auto oracle = t.oracle();
        aoo::Tier1Trace tr = aoo::trace_comp(flat, oracle.get(), budget);
        for (const aoo::Configuration& c : tr.configs) std::cout << aoo::tier1_form(c, oracle.get(), false) << "\n";
      }
      nlohmann::json r = aoo::run_report(flat, budget);
      std::cout << aoo::run_text(r);
      if (!metrics_out.empty()) emit(r, metrics_out);
      return r["outcome"] == aoo::to_string(aoo::Outcome::Terminated) ? kOk : kBudget;
    }
  } catch (const aoo::IllFormed& e) {
    for (const aoo::Diagnostic& d : e.diagnostics()) std::cerr << d.str() << "\n";
    return kUsage;
  } catch (const aoo::EvalError& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kRejected;
  } catch (const aoo::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
