#include "aoo/safety/call_graph.hpp"

#include <algorithm>
#include <functional>

namespace aoo {

namespace {

class SiteCollector {
 public:
  SiteCollector(const ClassTable& ct, std::vector<SiteInfo>& out) : ct_(ct), out_(out) {}

  void block(const Block& b, int depth) {
    for (const Instr& i : b) instr(i, depth);
  }

 private:
  const ClassTable& ct_;
  std::vector<SiteInfo>& out_;

  void instr(const Instr& i, int depth) {
    switch (i.kind) {
      case Instr::Kind::Skip: return;
      case Instr::Kind::Seq: block(i.body, depth); return;
      case Instr::Kind::Assign:
      case Instr::Kind::Call: expr(i.expr, depth); return;
      case Instr::Kind::If:
        expr(i.expr, depth);
        block(i.body, depth);
        block(i.alt, depth);
        return;
      case Instr::Kind::While:
        expr(i.expr, depth + 1);
        block(i.body, depth + 1);
        return;
    }
  }

  void expr(const Expr& e, int depth) {
    if (e.kind == Expr::Kind::Call) expr(*e.receiver, depth);
    for (const Expr& a : e.args) expr(a, depth);
    if (e.kind == Expr::Kind::Call) {
      int c = ct_.index(e.static_class);
      out_.push_back({&e, depth, ct_.dispatch_targets(c < 0 ? e.target.cls : c, e.target)});
    } else if (e.kind == Expr::Kind::New) {
      SiteInfo s{&e, depth, {}};
      if (e.target.index >= 0) s.targets.push_back(e.target);
      out_.push_back(std::move(s));
    }
  }
};

}  // namespace

std::vector<SiteInfo> collect_sites(const Block& b, const ClassTable& ct) {
  std::vector<SiteInfo> out;
  SiteCollector(ct, out).block(b, 0);
  return out;
}

CallGraph::CallGraph(const ResolvedProgram& p) : prog_(&p), bodies_(p.all_bodies()) {
  const ClassTable& ct = p.classes();
  int n = size();
  succ_.resize(n);
  for (int s = 0; s < n; ++s) {
    for (const SiteInfo& site : collect_sites(p.program().body(bodies_[s]), ct)) {
      int t = node(site.expr->target);
      if (t >= 0) succ_[s].push_back(t);
    }
    if (!bodies_[s].ctor)
      for (const MethodRef& o : ct.overrides(bodies_[s])) succ_[s].push_back(node(o));
    std::sort(succ_[s].begin(), succ_[s].end());
    succ_[s].erase(std::unique(succ_[s].begin(), succ_[s].end()), succ_[s].end());
  }

  // Tarjan; components come out callees first.
  comp_.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on(n, false);
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (int w : succ_[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> group;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        comp_[w] = static_cast<int>(members_.size());
        group.push_back(w);
      } while (w != v);
      std::sort(group.begin(), group.end());
      members_.push_back(std::move(group));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);

  recursive_comp_.assign(members_.size(), false);
  for (std::size_t c = 0; c < members_.size(); ++c) {
    if (members_[c].size() > 1) recursive_comp_[c] = true;
    for (int v : members_[c])
      if (std::binary_search(succ_[v].begin(), succ_[v].end(), v)) recursive_comp_[c] = true;
  }

  closure_.assign(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::vector<int> todo(succ_[s]);
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      if (closure_[s][v]) continue;
      closure_[s][v] = true;
      for (int w : succ_[v]) todo.push_back(w);
    }
  }
}

int CallGraph::node(const MethodRef& r) const {
  auto it = std::find(bodies_.begin(), bodies_.end(), r);
  return it == bodies_.end() ? -1 : static_cast<int>(it - bodies_.begin());
}

std::string CallGraph::signature(int n) const { return prog_->program().signature(body(n)); }

std::vector<int> CallGraph::reachable_from(const std::vector<const Block*>& roots) const {
  std::vector<bool> seen(size(), false);
  std::vector<int> todo;
  for (const Block* b : roots)
    for (const SiteInfo& s : collect_sites(*b, prog_->classes()))
      for (const MethodRef& t : s.targets) todo.push_back(node(t));
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    if (v < 0 || seen[v]) continue;
    seen[v] = true;
    for (int w : succ_[v]) todo.push_back(w);
  }
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

}  // namespace aoo
