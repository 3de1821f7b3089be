#include "aoo/cli/report.hpp"

#include <filesystem>
#include <sstream>

#include "aoo/frontend/parser.hpp"
#include "aoo/support/error.hpp"

namespace aoo {

namespace {

std::string tier_list(const nlohmann::json& ctx) {
  std::string out;
  for (const auto& [x, v] : ctx["vars"].items()) {
    if (!out.empty()) out += ", ";
    out += x + ":" + v["type"].get<std::string>() + "(" + std::to_string(v["tier"].get<int>()) + ")";
  }
  return out;
}

std::string diagnostics_text(const nlohmann::json& ds) {
  std::string out;
  for (const auto& d : ds) {
    out += "  " + d["rule"].get<std::string>();
    if (d.contains("line")) out += " at " + std::to_string(d["line"].get<int>()) + ":" + std::to_string(d["col"].get<int>());
    if (d.contains("context") && !d["context"].get<std::string>().empty()) out += " in " + d["context"].get<std::string>();
    if (d.contains("detail") && !d["detail"].get<std::string>().empty()) out += ": " + d["detail"].get<std::string>();
    out += "\n";
  }
  return out;
}

std::string typing_text(const nlohmann::json& t) {
  std::string out;
  if (t["assignment"].is_object()) {
    for (const auto& [label, ctx] : t["assignment"].items())
      out += "  " + label + " [gamma " + std::to_string(ctx["gamma"].get<int>()) + "] " + tier_list(ctx) + "\n";
  }
  if (!t["diagnostics"].empty()) out += "core:\n" + diagnostics_text(t["diagnostics"]);
  return out;
}

}  // namespace

nlohmann::json infer_report(const ResolvedProgram& flat) {
  nlohmann::json r;
  std::size_t n = flat.program().comp_segment_count();
  if (n <= 1) {
    r = infer(flat).to_json();
  } else {
    DeclassVerdict v = check_declassified(flat);
    nlohmann::json segs = nlohmann::json::array();
    bool pinned = true;
    for (const Typing& t : v.segments) {
      segs.push_back(t.to_json());
      pinned = pinned && t.pinned;
    }
    r = {{"typable", v.ok},
         {"satisfiable", pinned},
         {"failing_segment", v.failing_segment},
         {"segments", segs},
         {"diagnostics", v.ok ? nlohmann::json::array() : segs[v.failing_segment - 1]["diagnostics"]}};
  }
  r["schema"] = kSchema;
  return r;
}

std::string infer_text(const nlohmann::json& r) {
  std::string out = r["typable"].get<bool>() ? "TYPABLE" : "UNTYPABLE";
  if (r["typable"].get<bool>() && !r["satisfiable"].get<bool>()) out += " (recursive methods not typable at tier 1)";
  out += "\n";
  if (r.contains("segments")) {
    int k = 1;
    for (const auto& s : r["segments"]) {
      out += "segment " + std::to_string(k++) + ": " + (s["typable"].get<bool>() ? "typable" : "untypable") + "\n";
      out += typing_text(s);
    }
    return out;
  }
  return out + typing_text(r);
}

nlohmann::json safety_report(const ResolvedProgram& flat) {
  nlohmann::json r = check_safety(flat, type_segments(flat)).to_json();
  r["schema"] = kSchema;
  return r;
}

std::string safety_text(const nlohmann::json& r, bool branchwise) {
  std::string out = r["safe"].get<bool>() ? "SAFE" : r["typable"].get<bool>() ? "UNSAFE" : "UNTYPABLE";
  out += "; lambda " + std::to_string(r["lambda"].get<int>()) + "; nu " +
         (r["nu"].is_null() ? std::string("undefined") : std::to_string(r["nu"].get<int>())) + "\n";
  for (const auto& m : r["recursive_methods"]) {
    auto mark = [&](const char* k) { return m[k].get<bool>() ? "ok" : "FAIL"; };
    out += "  " + m["method"].get<std::string>() + " (level " + std::to_string(m["level"].get<int>()) +
           "): item 1 " + mark("item1") + " (" + std::to_string(m["recursive_calls"].get<int>()) +
           " recursive call sites), item 2 " + mark("item2") + ", item 3 " + mark("item3");
    if (branchwise) out += ", branchwise " + std::string(m["branchwise"].get<bool>() ? "ok" : "FAIL");
    out += "\n";
  }
  for (const auto& s : r["reasons"]) out += "  " + s.get<std::string>() + "\n";
  return out;
}

nlohmann::json bound_report(const Program& parsed, const ResolvedProgram& flat, const BoundRequest& req) {
  std::vector<Typing> typings = type_segments(flat);
  BoundReport b = compute_bounds(flat, typings, req.per_loop);
  nlohmann::json r = b.to_json();
  r["schema"] = kSchema;
  r["summary"] = b.summary();
  r["validation"] = nlohmann::json::array();
  if (!req.validate.empty()) {
    ValidationOptions opts;
    opts.budget = req.budget;
    Validation v = validate(parsed, b, req.validate, opts);
    nlohmann::json vj = v.to_json();
    r["validation"] = vj["rows"];
    r["fit"] = {{"constants", vj["constants"]}, {"slack", vj["slack"]}, {"pass", vj["pass"]}};
  }
  return r;
}

std::string bound_text(const nlohmann::json& r) {
  std::string out = r["summary"].get<std::string>() + "\n";
  out += "n1 " + std::to_string(r["n1"].get<int>()) + "; nu " +
         (r["nu"].is_null() ? std::string("undefined") : std::to_string(r["nu"].get<int>())) + "; lambda " +
         std::to_string(r["lambda"].get<int>()) + "\n";
  if (r.contains("time") && r["safety"]["safe"].get<bool>())
    out += "time " + r["time"].get<std::string>() + "; heap " + r["heap"].get<std::string>() + "; stack " +
           r["stack"].get<std::string>() + " (conditional on termination)\n";
  if (r.contains("perLoop")) {
    out += "per loop (experimental):\n";
    for (const auto& l : r["perLoop"]["loops"])
      out += "  line " + std::to_string(l["line"].get<int>()) + ": n1 " + std::to_string(l["n1"].get<int>()) +
             ", nu " + std::to_string(l["nu"].get<int>()) + ", lambda " + std::to_string(l["lambda"].get<int>()) +
             ", time " + l["time"].get<std::string>() + "\n";
  }
  if (!r["validation"].empty()) {
    std::ostringstream s;
    s << "validation (slack " << r["fit"]["slack"].get<double>() << "):\n";
    s << "  n\t|I|\tsteps\theap\tstack\toutcome\tpass\n";
    for (const auto& v : r["validation"])
      s << "  " << v["n"] << "\t" << v["inputSize"] << "\t" << v["steps"] << "\t" << v["maxHeap"] << "\t"
        << v["maxStack"] << "\t" << v["outcome"].get<std::string>() << "\t" << (v["pass"].get<bool>() ? "yes" : "no")
        << "\n";
    s << "  fit " << (r["fit"]["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    out += s.str();
  }
  return out;
}

nlohmann::json run_report(const ResolvedProgram& flat, std::uint64_t budget) {
  RunOptions opts;
  opts.budget = budget;
  RunResult res = run(flat, opts);
  nlohmann::json vars = nlohmann::json::object();
  if (!res.final_config.stack.empty()) {
    const Frame& main = res.final_config.stack.front();
    for (const auto& [x, v] : main.mapping())
      if (!x.empty() && x[0] != '$' && !is_ref(v)) vars[x] = show(v);
  }
  return {{"schema", kSchema},
          {"steps", res.metrics.steps},
          {"init_steps", res.metrics.init_steps},
          {"max_heap_nodes", res.metrics.max_heap_nodes},
          {"max_stack_size", res.metrics.max_stack_size},
          {"outcome", to_string(res.metrics.outcome)},
          {"variables", vars}};
}

std::string run_text(const nlohmann::json& r) {
  std::string out;
  for (const auto& [x, v] : r["variables"].items()) out += x + " = " + v.get<std::string>() + "\n";
  out += r["outcome"].get<std::string>() + "; steps " + std::to_string(r["steps"].get<std::uint64_t>()) +
         "; max heap " + std::to_string(r["max_heap_nodes"].get<std::uint64_t>()) + "; max stack " +
         std::to_string(r["max_stack_size"].get<std::uint64_t>()) + "\n";
  return out;
}

nlohmann::json verdicts(const ResolvedProgram& flat) {
  BoundReport b = compute_bounds(flat, type_segments(flat));
  return {{"typable", b.safety.typable},
          {"safe", b.safety.safe},
          {"n1", b.n1},
          {"nu", b.nu ? nlohmann::json(*b.nu) : nlohmann::json(nullptr)},
          {"lambda", b.lambda}};
}

nlohmann::json corpus_report(const std::string& catalog_path) {
  nlohmann::json cat = nlohmann::json::parse(read_file(catalog_path));
  std::filesystem::path dir = std::filesystem::path(catalog_path).parent_path();
  nlohmann::json rows = nlohmann::json::array();
  bool ok = true;
  for (const auto& e : cat.at("entries")) {
    std::string file = e.at("file").get<std::string>();
    nlohmann::json row = {{"file", file}, {"expected", e.at("expected")}};
    try {
      Compiled c = compile(read_file((dir / file).string()), file);
      row["actual"] = verdicts(*c.flat);
    } catch (const Error& err) {
      row["actual"] = {{"error", err.what()}};
    }
    bool match = true;
    for (const auto& [k, v] : e.at("expected").items()) match = match && row["actual"].value(k, nlohmann::json()) == v;
    row["match"] = match;
    ok = ok && match;
    rows.push_back(row);
  }
  return {{"schema", kSchema}, {"entries", rows}, {"ok", ok}};
}

std::string corpus_text(const nlohmann::json& r) {
  std::string out;
  for (const auto& row : r["entries"]) {
    out += (row["match"].get<bool>() ? "ok   " : "FAIL ") + row["file"].get<std::string>();
    if (!row["match"].get<bool>()) out += "  expected " + row["expected"].dump() + " got " + row["actual"].dump();
    out += "\n";
  }
  out += r["ok"].get<bool>() ? "corpus: all verdicts reproduced\n" : "corpus: mismatches\n";
  return out;
}

}  // namespace aoo
