#include "aoo/bounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>

#include "aoo/support/error.hpp"

namespace aoo {

namespace {

bool is_temp(const std::string& x) { return !x.empty() && x[0] == '$'; }

void reads(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Var) out.insert(e.name);
  if (e.kind == Expr::Kind::Call) reads(*e.receiver, out);
  for (const Expr& a : e.args) reads(a, out);
}

void temp_defs(const Block& b, std::map<std::string, std::set<std::string>>& defs) {
  for (const Instr& i : b) {
    if (i.kind == Instr::Kind::Assign && is_temp(i.target)) reads(i.expr, defs[i.target]);
    temp_defs(i.body, defs);
    temp_defs(i.alt, defs);
  }
}

void assigned(const Block& b, std::set<std::string>& out) {
  for (const Instr& i : b) {
    if (i.kind == Instr::Kind::Assign) out.insert(i.target);
    assigned(i.body, out);
    assigned(i.alt, out);
  }
}

// Counted tier-1 variables of one instance.
std::set<std::string> counted(const Instance& in, const ContextTiers& ctx) {
  std::set<std::string> tier1;
  for (const auto& [x, ty] : ctx.vars)
    if (ty.tier == Tier::One) tier1.insert(x);

  std::map<std::string, std::set<std::string>> defs;
  for (const Block* b : in.blocks) temp_defs(*b, defs);
  std::map<std::string, std::set<std::string>> memo;
  std::function<const std::set<std::string>&(const std::string&)> sources =
      [&](const std::string& t) -> const std::set<std::string>& {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    std::set<std::string>& out = memo[t];
    for (const std::string& d : defs[t]) {
      if (!is_temp(d)) {
        out.insert(d);
      } else if (d != t) {
        const std::set<std::string>& sub = sources(d);
        out.insert(sub.begin(), sub.end());
      }
    }
    return out;
  };

  std::set<std::string> out;
  for (const std::string& x : tier1) {
    if (x == "this" || (in.scope && in.scope->is_field(x))) continue;
    if (is_temp(x)) {
      int n = 0;
      for (const std::string& s : sources(x)) n += tier1.count(s) != 0 && s != "this";
      if (n < 2) continue;
    }
    out.insert(x);
  }
  return out;
}

void walk_loops(const Block& b, std::vector<const Instr*>& out) {
  for (const Instr& i : b) {
    if (i.kind == Instr::Kind::While) {
      out.push_back(&i);
      continue;
    }
    walk_loops(i.body, out);
    walk_loops(i.alt, out);
  }
}

std::string power(int e) {
  if (e == 0) return "O(1)";
  if (e == 1) return "O(n)";
  return "O(n^" + std::to_string(e) + ")";
}

}  // namespace

std::set<std::pair<std::string, std::string>> tier1_variables(const Typing& t) {
  std::set<std::pair<std::string, std::string>> out;
  if (!t.tiers) return out;
  for (const Instance& in : t.tree->instances()) {
    const ContextTiers& ctx = t.tiers->contexts.at(in.id);
    std::string sig = in.is_main ? "main" : ctx.signature;
    for (const std::string& x : counted(in, ctx)) out.insert({sig, x});
  }
  return out;
}

int count_tier1(const Typing& t) { return static_cast<int>(tier1_variables(t).size()); }

BoundReport compute_bounds(const ResolvedProgram& flat, const std::vector<Typing>& typings, bool per_loop) {
  BoundReport r;
  r.safety = check_safety(flat, typings);
  r.lambda = r.safety.lambda;
  r.nu = r.safety.nu;
  for (const Typing& t : typings) r.n1 = std::max(r.n1, count_tier1(t));
  if (r.nu) {
    r.time_exponent = r.n1 * (*r.nu + r.lambda);
    r.heap_exponent = std::max(1, r.time_exponent);
    r.stack_exponent = r.n1 * (*r.nu + 2 * r.lambda);
  }
  if (!per_loop) return r;

  CallGraph g(flat);
  std::vector<int> lv = levels(g);
  Intricacy nu(g);
  const auto& segs = flat.program().segments;
  for (std::size_t s = 1; s < segs.size(); ++s) {
    const Typing& t = typings.size() == 1 ? typings.front() : typings.at(s - 1);
    std::vector<const Instr*> loops;
    walk_loops(segs[s], loops);
    for (const Instr* l : loops) {
      LoopBound lb;
      lb.loc = l->loc;
      lb.segment = static_cast<int>(s);
      Block nest{*l};
      std::vector<int> below = g.reachable_from({&nest});
      for (int v : below) lb.lambda = std::max(lb.lambda, lv[v]);
      auto n = nu.of_block(nest);
      lb.nu = n ? *n : 0;
      if (t.tiers) {
        std::set<std::string> written;
        assigned(nest, written);
        const Instance& main = t.tree->at(0);
        for (const std::string& x : counted(main, t.tiers->contexts.at(0))) lb.n1 += written.count(x) != 0;
        std::set<std::pair<std::string, std::string>> callee_vars;
        for (const Instance& in : t.tree->instances())
          if (!in.is_main && std::find(below.begin(), below.end(), in.node) != below.end())
            for (const std::string& x : counted(in, t.tiers->contexts.at(in.id)))
              callee_vars.insert({t.tiers->contexts.at(in.id).signature, x});
        lb.n1 += static_cast<int>(callee_vars.size());
      }
      lb.time_exponent = lb.n1 * (lb.nu + lb.lambda);
      r.loops.push_back(lb);
    }
  }
  return r;
}

std::string BoundReport::time_formula() const { return "O(n^" + std::to_string(time_exponent) + ")"; }

std::string BoundReport::heap_formula() const { return "O(max(n,n^" + std::to_string(time_exponent) + "))"; }

std::string BoundReport::stack_formula() const { return "O(n^" + std::to_string(stack_exponent) + ")"; }

std::string BoundReport::summary() const {
  if (!safety.typable) return "UNTYPABLE";
  if (!safety.safe) {
    std::string out = "UNSAFE";
    for (std::size_t i = 0; i < safety.reasons.size(); ++i) out += (i ? "; " : ": ") + safety.reasons[i];
    return out;
  }
  std::string time = time_exponent == 0 ? "O(1)" : "O(n^" + std::to_string(time_exponent) + ")";
  return "SAFE; time " + time + "; heap " + power(heap_exponent) + "; stack " + power(stack_exponent);
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j = {{"n1", n1},
                      {"nu", nu ? nlohmann::json(*nu) : nlohmann::json(nullptr)},
                      {"lambda", lambda},
                      {"safety", safety.to_json()},
                      {"conditional_on_termination", true}};
  if (defined()) {
    j["timeExponent"] = time_exponent;
    j["heapExponent"] = heap_exponent;
    j["stackExponent"] = stack_exponent;
    j["time"] = time_formula();
    j["heap"] = heap_formula();
    j["stack"] = stack_formula();
  }
  if (!loops.empty()) {
    nlohmann::json ls = nlohmann::json::array();
    for (const LoopBound& l : loops)
      ls.push_back({{"line", l.loc.line},
                    {"segment", l.segment},
                    {"n1", l.n1},
                    {"nu", l.nu},
                    {"lambda", l.lambda},
                    {"time", "O(n^" + std::to_string(l.time_exponent) + ")"}});
    j["perLoop"] = {{"experimental", true}, {"loops", ls}};
  }
  return j;
}

nlohmann::json ValidationRow::to_json() const {
  return {{"n", n},
          {"inputSize", input_size},
          {"steps", steps},
          {"maxHeap", max_heap},
          {"maxStack", max_stack},
          {"outcome", to_string(outcome)},
          {"timeBound", time_bound},
          {"heapBound", heap_bound},
          {"stackBound", stack_bound},
          {"pass", pass}};
}

nlohmann::json Validation::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const ValidationRow& r : rows) rs.push_back(r.to_json());
  return {{"rows", rs},
          {"constants", {{"time", c_time}, {"heap", c_heap}, {"stack", c_stack}}},
          {"slack", slack},
          {"pass", pass}};
}

namespace {

bool set_size(Block& b, unsigned long n) {
  for (Instr& i : b) {
    if (i.kind == Instr::Kind::Assign && i.decl && *i.decl == TypeName::integer() && i.target == "n" &&
        i.expr.kind == Expr::Kind::Const) {
      i.expr.value = Constant::of_int(Nat(n));
      return true;
    }
    if (set_size(i.body, n) || set_size(i.alt, n)) return true;
  }
  return false;
}

ValidationRow measure(const Program& parsed, unsigned long n, std::uint64_t budget) {
  Compiled c = compile(with_size(parsed, n));
  RunOptions opts;
  opts.budget = budget;
  RunResult res = run(*c.flat, opts);
  ValidationRow row;
  row.n = n;
  row.input_size = sizes(res.input).total;
  row.steps = res.metrics.steps;
  row.max_heap = res.metrics.max_heap_nodes;
  row.max_stack = res.metrics.max_stack_size;
  row.outcome = res.metrics.outcome;
  return row;
}

}  // namespace

Program with_size(const Program& parsed, unsigned long n) {
  Program p = parsed;
  if (p.segments.empty() || !set_size(p.segments[0], n)) throw Error("Init declares no `int n := k`");
  return p;
}

Validation validate(const Program& parsed, const BoundReport& bounds, std::vector<unsigned long> sizes,
                    const ValidationOptions& options) {
  Validation v;
  v.slack = options.slack;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (options.parallel) {
    std::vector<std::future<ValidationRow>> jobs;
    for (unsigned long n : sizes) jobs.push_back(std::async(std::launch::async, measure, std::cref(parsed), n, options.budget));
    for (auto& j : jobs) v.rows.push_back(j.get());
  } else {
    for (unsigned long n : sizes) v.rows.push_back(measure(parsed, n, options.budget));
  }
  if (!bounds.defined()) return v;

  auto pw = [](unsigned long n, int e) { return std::pow(static_cast<double>(n), e); };
  const ValidationRow* base = nullptr;
  for (const ValidationRow& r : v.rows)
    if (r.outcome == Outcome::Terminated && r.n > 0) {
      base = &r;
      break;
    }
  if (!base) return v;
  v.c_time = static_cast<double>(base->steps) / pw(base->n, bounds.time_exponent);
  v.c_heap = static_cast<double>(base->max_heap) / pw(base->n, bounds.heap_exponent);
  v.c_stack = static_cast<double>(base->max_stack) / pw(base->n, bounds.stack_exponent);
  v.pass = true;
  for (ValidationRow& r : v.rows) {
    r.time_bound = v.slack * v.c_time * pw(r.n, bounds.time_exponent);
    r.heap_bound = v.slack * v.c_heap * pw(r.n, bounds.heap_exponent);
    r.stack_bound = v.slack * v.c_stack * pw(r.n, bounds.stack_exponent);
    if (r.outcome != Outcome::Terminated) continue;
    r.pass = static_cast<double>(r.steps) <= r.time_bound && static_cast<double>(r.max_heap) <= r.heap_bound &&
             static_cast<double>(r.max_stack) <= r.stack_bound;
    v.pass = v.pass && r.pass;
  }
  return v;
}

}  // namespace aoo
