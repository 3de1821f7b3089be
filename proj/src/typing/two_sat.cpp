#include "aoo/typing/two_sat.hpp"

#include <algorithm>
#include <deque>

#include "aoo/support/error.hpp"

namespace aoo {

std::string Origin::str() const {
  std::string out = rule + " at " + std::to_string(loc.line) + ":" + std::to_string(loc.col);
  if (!context.empty()) out += " in " + context;
  if (!detail.empty()) out += ": " + detail;
  return out;
}

nlohmann::json Origin::to_json() const {
  return {{"rule", rule}, {"line", loc.line}, {"col", loc.col}, {"context", context}, {"detail", detail}};
}

int ClauseSet::new_var(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<int>(names_.size()) - 1;
}

int ClauseSet::origin(Origin o) {
  origins_.push_back(std::move(o));
  return static_cast<int>(origins_.size()) - 1;
}

std::string ClauseSet::str() const {
  auto lit = [&](Lit l) { return (l.positive ? "" : "!") + names_.at(l.var); };
  std::string out;
  for (const Clause& c : clauses_) out += "(" + lit(c.a) + " | " + lit(c.b) + ")\n";
  for (int o : empties_) out += "() " + origins_.at(o).str() + "\n";
  return out;
}

namespace {

struct Edge {
  int to;
  int clause;  // -1 for assumptions
};

struct Graph {
  std::vector<std::vector<Edge>> out;

  explicit Graph(int vars) : out(2 * vars) {}

  void clause(Lit a, Lit b, int id) {
    out[(!a).code()].push_back({b.code(), id});
    if (!(a == b)) out[(!b).code()].push_back({a.code(), id});
  }
};

// Iterative Tarjan; components are numbered sinks first.
std::vector<int> components(const Graph& g) {
  int n = static_cast<int>(g.out.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on(n, false);
  std::vector<std::pair<int, std::size_t>> call;
  int counter = 0, next = 0;
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    call.push_back({s, 0});
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = true;
    while (!call.empty()) {
      auto& [v, k] = call.back();
      if (k < g.out[v].size()) {
        int w = g.out[v][k++].to;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = true;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = false;
          comp[w] = next;
        } while (w != done);
        ++next;
      }
    }
  }
  return comp;
}

// Clause ids along a shortest implication path from `from` to `to`.
void path_clauses(const Graph& g, int from, int to, std::vector<int>& out) {
  std::vector<std::pair<int, int>> parent(g.out.size(), {-2, -1});
  std::deque<int> queue{from};
  parent[from] = {-1, -1};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (const Edge& e : g.out[v]) {
      if (parent[e.to].first != -2) continue;
      parent[e.to] = {v, e.clause};
      queue.push_back(e.to);
    }
  }
  for (int v = to; v != from && parent[v].first >= 0; v = parent[v].first)
    if (parent[v].second >= 0) out.push_back(parent[v].second);
}

}  // namespace

SatResult solve_2sat(const ClauseSet& c) { return solve_2sat(c, {}); }

SatResult solve_2sat(const ClauseSet& c, const std::vector<Lit>& assumptions) {
  SatResult r;
  if (!c.empties().empty()) {
    r.core_empties = c.empties();
    return r;
  }
  Graph g(c.var_count());
  for (std::size_t i = 0; i < c.clauses().size(); ++i)
    g.clause(c.clauses()[i].a, c.clauses()[i].b, static_cast<int>(i));
  for (Lit a : assumptions) g.clause(a, a, -1);
  std::vector<int> comp = components(g);
  for (int v = 0; v < c.var_count(); ++v) {
    Lit x{v, true};
    if (comp[x.code()] != comp[(!x).code()]) continue;
    path_clauses(g, x.code(), (!x).code(), r.core);
    path_clauses(g, (!x).code(), x.code(), r.core);
    std::sort(r.core.begin(), r.core.end());
    r.core.erase(std::unique(r.core.begin(), r.core.end()), r.core.end());
    return r;
  }
  r.sat = true;
  r.model.resize(c.var_count());
  for (int v = 0; v < c.var_count(); ++v) {
    Lit x{v, true};
    r.model[v] = comp[x.code()] < comp[(!x).code()];
  }
  return r;
}

std::optional<std::vector<bool>> minimal_model(const ClauseSet& c, const std::vector<int>& order) {
  SatResult r = solve_2sat(c);
  if (!r.sat) return std::nullopt;
  std::vector<bool> model = std::move(r.model);
  std::vector<Lit> fixed;
  for (int v : order) {
    if (!model[v]) {
      fixed.push_back({v, false});
      continue;
    }
    fixed.push_back({v, false});
    SatResult t = solve_2sat(c, fixed);
    if (t.sat) {
      model = std::move(t.model);
    } else {
      fixed.back() = {v, true};
    }
  }
  return model;
}

bool brute_force_sat(const ClauseSet& c) {
  if (!c.empties().empty()) return false;
  int n = c.var_count();
  if (n > 24) throw Error("brute force limited to 24 variables");
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    auto holds = [&](Lit l) { return (((m >> l.var) & 1u) != 0) == l.positive; };
    bool ok = true;
    for (const Clause& cl : c.clauses())
      if (!holds(cl.a) && !holds(cl.b)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace aoo
