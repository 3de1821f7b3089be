#include "aoo/safety/safety.hpp"

#include <algorithm>

namespace aoo {

std::vector<int> levels(const CallGraph& g) {
  std::vector<int> comp_level(g.components(), 0);
  for (int c = 0; c < g.components(); ++c) {  // callees first
    int below = 0;
    for (int v : g.members(c))
      for (int w : g.callees(v))
        if (g.component(w) != c) below = std::max(below, comp_level[g.component(w)]);
    comp_level[c] = below + (g.component_recursive(c) ? 1 : 0);
  }
  std::vector<int> out(g.size());
  for (int v = 0; v < g.size(); ++v) out[v] = comp_level[g.component(v)];
  return out;
}

namespace {

bool contains_while(const Block& b) {
  for (const Instr& i : b) {
    if (i.kind == Instr::Kind::While) return true;
    if (contains_while(i.body) || contains_while(i.alt)) return true;
  }
  return false;
}

std::optional<int> join(std::optional<int> a, std::optional<int> b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

}  // namespace

Intricacy::Intricacy(const CallGraph& g)
    : g_(g), loops_(g.components(), false), state_(g.size(), 0), memo_(g.size()) {
  for (int v = 0; v < g.size(); ++v)
    if (contains_while(g.program().program().body(g.body(v)))) loops_[g.component(v)] = true;
}

std::optional<int> Intricacy::of_body(int node) {
  if (state_[node] == 2) return memo_[node];
  int c = g_.component(node);
  std::optional<int> r;
  if (!(g_.component_recursive(c) && loops_[c])) {
    state_[node] = 1;
    r = of_block(g_.program().program().body(g_.body(node)), c);
  }
  state_[node] = 2;
  memo_[node] = r;
  return r;
}

std::optional<int> Intricacy::of_block(const Block& b, int own) {
  std::optional<int> out = 0;
  for (const Instr& i : b) out = join(out, instr(i, own));
  return out;
}

std::optional<int> Intricacy::instr(const Instr& i, int own) {
  switch (i.kind) {
    case Instr::Kind::Skip: return 0;
    case Instr::Kind::Seq: return of_block(i.body, own);
    case Instr::Kind::Assign:
    case Instr::Kind::Call: return expr(i.expr, own);
    case Instr::Kind::If: return join(expr(i.expr, own), join(of_block(i.body, own), of_block(i.alt, own)));
    case Instr::Kind::While: {
      auto inner = join(expr(i.expr, own), of_block(i.body, own));
      if (!inner) return std::nullopt;
      return 1 + *inner;
    }
  }
  return 0;
}

std::optional<int> Intricacy::expr(const Expr& e, int own) {
  std::optional<int> out = 0;
  if (e.kind == Expr::Kind::Call) out = expr(*e.receiver, own);
  for (const Expr& a : e.args) out = join(out, expr(a, own));
  if (e.kind == Expr::Kind::Call) {
    const ClassTable& ct = g_.program().classes();
    int c = ct.index(e.static_class);
    out = join(out, site(ct.dispatch_targets(c < 0 ? e.target.cls : c, e.target), own));
  } else if (e.kind == Expr::Kind::New && e.target.index >= 0) {
    out = join(out, site({e.target}, own));
  }
  return out;
}

std::optional<int> Intricacy::site(const std::vector<MethodRef>& targets, int own) {
  std::optional<int> out = 0;
  std::vector<MethodRef> all = targets;
  // every override below the defining class
  if (!targets.empty() && !targets.front().ctor)
    for (const MethodRef& o : g_.program().classes().overrides(targets.front()))
      if (std::find(all.begin(), all.end(), o) == all.end()) all.push_back(o);
  for (const MethodRef& t : all) {
    int n = g_.node(t);
    if (n < 0) continue;
    if (g_.component(n) == own) {
      if (g_.component_recursive(own) && loops_[own]) return std::nullopt;
      continue;
    }
    out = join(out, of_body(n));
  }
  return out;
}

namespace {

// Maximum number of sites reaching `members` along one syntactic path; a
// loop containing such a site counts as unbounded (2).
int path_calls(const Block& b, const ClassTable& ct, const std::vector<MethodRef>& members);

int expr_calls(const Expr& e, const ClassTable& ct, const std::vector<MethodRef>& members) {
  int n = 0;
  for (const SiteInfo& s : collect_sites(Block{Instr::call(e)}, ct))
    for (const MethodRef& t : s.targets)
      if (std::find(members.begin(), members.end(), t) != members.end()) {
        ++n;
        break;
      }
  return n;
}

int path_calls(const Block& b, const ClassTable& ct, const std::vector<MethodRef>& members) {
  int n = 0;
  for (const Instr& i : b) {
    switch (i.kind) {
      case Instr::Kind::Skip: break;
      case Instr::Kind::Seq: n += path_calls(i.body, ct, members); break;
      case Instr::Kind::Assign:
      case Instr::Kind::Call: n += expr_calls(i.expr, ct, members); break;
      case Instr::Kind::If:
        n += expr_calls(i.expr, ct, members) +
             std::max(path_calls(i.body, ct, members), path_calls(i.alt, ct, members));
        break;
      case Instr::Kind::While: {
        int inner = expr_calls(i.expr, ct, members) + path_calls(i.body, ct, members);
        n += inner > 0 ? 2 : 0;
        break;
      }
    }
  }
  return n;
}

}  // namespace

std::vector<const Block*> comp_blocks(const ResolvedProgram& flat) {
  std::vector<const Block*> out;
  const auto& segs = flat.program().segments;
  for (std::size_t s = 1; s < segs.size(); ++s) out.push_back(&segs[s]);
  return out;
}

std::vector<Typing> type_segments(const ResolvedProgram& flat) {
  std::vector<Typing> out;
  std::size_t n = flat.program().comp_segment_count();
  if (n <= 1) {
    out.push_back(infer(flat));
    return out;
  }
  for (std::size_t s = 1; s <= n; ++s) out.push_back(infer(flat, static_cast<int>(s)));
  return out;
}

SafetyReport check_safety(const ResolvedProgram& flat, const std::vector<Typing>& typings) {
  SafetyReport r;
  CallGraph g(flat);
  const ClassTable& ct = flat.classes();
  std::vector<int> lv = levels(g);
  Intricacy nu(g);

  r.typable = !typings.empty();
  bool pinned = true;
  for (const Typing& t : typings) {
    r.typable = r.typable && t.typable;
    pinned = pinned && t.pinned;
  }
  if (!r.typable) r.reasons.push_back("not typable");

  std::vector<const Block*> comp = comp_blocks(flat);
  r.nu = 0;
  for (const Block* b : comp) r.nu = join(r.nu, nu.of_block(*b));
  for (int v : g.reachable_from(comp)) {
    r.lambda = std::max(r.lambda, lv[v]);
    r.nu = join(r.nu, nu.of_body(v));
    if (!g.recursive(v) || g.body(v).ctor) continue;

    MethodSafety m;
    m.signature = g.signature(v);
    m.node = v;
    m.level = lv[v];
    std::vector<MethodRef> members;
    for (int w : g.members(g.component(v))) members.push_back(g.body(w));
    const Block& body = flat.program().body(g.body(v));
    for (const SiteInfo& s : collect_sites(body, ct)) {
      std::vector<MethodRef> reach = s.targets;
      if (!s.expr->target.ctor)
        for (const MethodRef& o : ct.overrides(s.expr->target)) reach.push_back(o);
      bool hits = false;
      for (const MethodRef& t : reach) hits = hits || std::find(members.begin(), members.end(), t) != members.end();
      if (hits) ++m.recursive_calls;
    }
    m.item1 = m.recursive_calls == 1;
    m.nu = nu.of_body(v);
    m.item2 = m.nu && *m.nu == 0;
    m.branchwise = path_calls(body, ct, members) <= 1;

    m.item3 = true;
    for (const Typing& t : typings) {
      if (t.pinned) continue;
      bool present = false;
      for (const Instance& in : t.tree->instances()) present = present || in.node == v;
      if (!present) continue;
      std::vector<bool> pins(g.components(), false);
      pins[g.component(v)] = true;
      m.item3 = m.item3 && infer_tiers(*t.tree, pins, false).sat;
    }
    if (!m.item1)
      r.reasons.push_back(m.signature + ": Item 1, " + std::to_string(m.recursive_calls) + " recursive calls");
    if (!m.item2) r.reasons.push_back(m.signature + ": Item 2, while loop in a recursive body");
    if (!m.item3) r.reasons.push_back(m.signature + ": Item 3, no typing with tier-1 this and parameters");
    r.methods.push_back(std::move(m));
  }
  std::sort(r.methods.begin(), r.methods.end(),
            [](const MethodSafety& a, const MethodSafety& b) { return a.signature < b.signature; });

  bool items = std::all_of(r.methods.begin(), r.methods.end(), [](const MethodSafety& m) { return m.ok(); });
  if (r.typable && items && !pinned)
    r.reasons.push_back("Item 3: recursive methods cannot be pinned to tier 1 together");
  r.safe = r.typable && items && pinned;
  return r;
}

nlohmann::json SafetyReport::to_json() const {
  nlohmann::json ms = nlohmann::json::array();
  for (const MethodSafety& m : methods) {
    ms.push_back({{"method", m.signature},
                  {"level", m.level},
                  {"recursive_calls", m.recursive_calls},
                  {"item1", m.item1},
                  {"nu", m.nu ? nlohmann::json(*m.nu) : nlohmann::json(nullptr)},
                  {"item2", m.item2},
                  {"item3", m.item3},
                  {"branchwise", m.branchwise}});
  }
  return {{"typable", typable},
          {"safe", safe},
          {"lambda", lambda},
          {"nu", nu ? nlohmann::json(*nu) : nlohmann::json(nullptr)},
          {"recursive_methods", ms},
          {"reasons", reasons}};
}

std::string SafetyReport::str() const {
  std::string out = safe ? "SAFE" : typable ? "UNSAFE" : "UNTYPABLE";
  out += "; lambda " + std::to_string(lambda) + "; nu " + (nu ? std::to_string(*nu) : std::string("undefined")) + "\n";
  for (const MethodSafety& m : methods) {
    out += "  " + m.signature + ": item1 " + (m.item1 ? "ok" : "fail") + " (" + std::to_string(m.recursive_calls) +
           " calls), item2 " + (m.item2 ? "ok" : "fail") + ", item3 " + (m.item3 ? "ok" : "fail") +
           ", branchwise " + (m.branchwise ? "ok" : "fail") + "\n";
  }
  for (const std::string& s : reasons) out += "  reason: " + s + "\n";
  return out;
}

}  // namespace aoo
