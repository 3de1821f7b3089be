#include "aoo/typing/instances.hpp"

#include "aoo/support/error.hpp"

namespace aoo {

InstanceTree::InstanceTree(const ResolvedProgram& p, const CallGraph& g, std::vector<const Block*> comp,
                           std::size_t limit)
    : prog_(&p), graph_(&g), limit_(limit) {
  Instance root;
  root.label = "main";
  root.is_main = true;
  root.scope = &p.main();
  root.blocks = std::move(comp);
  instances_.push_back(std::move(root));

  std::vector<int> todo{0};
  while (!todo.empty()) {
    int id = todo.back();
    todo.pop_back();
    std::vector<SiteInfo> sites;
    for (const Block* b : instances_[id].blocks)
      for (SiteInfo& s : collect_sites(*b, p.classes())) sites.push_back(std::move(s));
    for (const SiteInfo& s : sites) {
      for (const MethodRef& t : s.targets) {
        int node = g.node(t);
        bool shared = t.ctor || (node >= 0 && g.recursive(node));
        std::string label = shared ? std::string(t.ctor ? "ctor:" : "rec:") + p.program().signature(t)
                                   : instances_[id].label + "/" + std::to_string(s.expr->site) + ":" +
                                         p.program().signature(t);
        int child = make(t, std::move(label), shared, todo);
        instances_[id].callees[{s.expr->site, t}] = child;
      }
    }
  }
}

int InstanceTree::make(const MethodRef& body, std::string label, bool shared, std::vector<int>& todo) {
  if (shared) {
    auto it = shared_.find(body);
    if (it != shared_.end()) return it->second;
  }
  if (instances_.size() >= limit_) throw Error("typing instance limit exceeded");
  Instance in;
  in.id = static_cast<int>(instances_.size());
  in.label = std::move(label);
  in.body = body;
  in.is_ctor = body.ctor;
  in.node = graph_->node(body);
  in.recursive = in.node >= 0 && graph_->recursive(in.node);
  in.scope = &prog_->scope(body);
  in.blocks.push_back(&prog_->program().body(body));
  if (shared) shared_[body] = in.id;
  instances_.push_back(std::move(in));
  todo.push_back(static_cast<int>(instances_.size()) - 1);
  return static_cast<int>(instances_.size()) - 1;
}

int InstanceTree::callee(int inst, int site, const MethodRef& target) const {
  if (inst < 0 || inst >= size()) return -1;
  const auto& cs = instances_[inst].callees;
  auto it = cs.find({site, target});
  return it == cs.end() ? -1 : it->second;
}

std::string InstanceTree::slot(int inst, const std::string& x) const {
  if (instances_.at(inst).scope->is_field(x)) return "this";
  return x;
}

std::vector<std::string> InstanceTree::slots(int inst) const {
  const Scope& s = *instances_.at(inst).scope;
  std::vector<std::string> out{"this"};
  for (const std::string& x : s.params) out.push_back(x);
  for (const std::string& x : s.locals)
    if (!s.is_param(x)) out.push_back(x);
  return out;
}

std::vector<ContextTiers> InstanceTree::shape() const {
  std::vector<ContextTiers> out;
  for (const Instance& in : instances_) {
    ContextTiers c;
    c.label = in.label;
    c.signature = in.is_main ? "main" : prog_->program().signature(in.body);
    const Scope& s = *in.scope;
    c.vars["this"] = {s.this_type(prog_->classes()), Tier::Zero};
    for (const auto& [x, t] : s.vars) c.vars[x] = {t, Tier::Zero};
    out.push_back(std::move(c));
  }
  return out;
}

int TierOracle::callee_context(int caller, int site, const MethodRef& target) const {
  return tree_.callee(caller, site, target);
}

bool TierOracle::is_tier1(int ctx, const std::string& var) const {
  if (ctx < 0) return true;
  if (!tiers_.has(ctx, var)) return false;
  return tiers_.tier(ctx, var) == Tier::One;
}

}  // namespace aoo
