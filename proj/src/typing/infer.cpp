#include "aoo/typing/infer.hpp"

#include <algorithm>

namespace aoo {

Inference infer_tiers(const InstanceTree& tree, const std::vector<bool>& pinned, bool minimize) {
  Encoding enc = encode_2sat(tree, pinned);
  Inference out;
  out.variables = static_cast<std::size_t>(enc.clauses.var_count());
  out.clauses = enc.clauses.clauses().size() + enc.clauses.empties().size();
  SatResult r = solve_2sat(enc.clauses);
  if (!r.sat) {
    for (int o : r.core_empties) out.core.push_back(enc.clauses.origin_at(o));
    for (int c : r.core) out.core.push_back(enc.clauses.origin_at(enc.clauses.clauses()[c].origin));
    std::vector<Origin> unique;
    for (const Origin& o : out.core)
      if (std::none_of(unique.begin(), unique.end(), [&](const Origin& u) { return u.str() == o.str(); }))
        unique.push_back(o);
    out.core = std::move(unique);
    return out;
  }
  out.sat = true;
  std::vector<bool> model = std::move(r.model);
  if (minimize) {
    std::vector<int> order = enc.program_vars();
    order.insert(order.end(), enc.gamma.begin(), enc.gamma.end());
    model = *minimal_model(enc.clauses, order);
  }
  out.tiers = enc.decode(tree, model);
  return out;
}

namespace {

class Oracle : public ContextOracle {
 public:
  Oracle(std::shared_ptr<const InstanceTree> tree, TierAssignment tiers)
      : tree_(std::move(tree)), tiers_(std::move(tiers)), view_(*tree_, tiers_) {}
  int main_context() const override { return view_.main_context(); }
  int callee_context(int caller, int site, const MethodRef& target) const override {
    return view_.callee_context(caller, site, target);
  }
  bool is_tier1(int ctx, const std::string& var) const override { return view_.is_tier1(ctx, var); }

 private:
  std::shared_ptr<const InstanceTree> tree_;
  TierAssignment tiers_;
  TierOracle view_;
};

}  // namespace

std::unique_ptr<ContextOracle> Typing::oracle() const {
  if (!tiers) return nullptr;
  return std::make_unique<Oracle>(tree, *tiers);
}

nlohmann::json Typing::to_json() const {
  nlohmann::json j = {{"typable", typable}, {"satisfiable", pinned}};
  j["assignment"] = tiers ? tiers->to_json() : nlohmann::json(nullptr);
  nlohmann::json diags = nlohmann::json::array();
  for (const Origin& o : core) diags.push_back(o.to_json());
  j["diagnostics"] = diags;
  return j;
}

Typing infer(const ResolvedProgram& flat, int segment) {
  Typing t;
  auto graph = std::make_shared<CallGraph>(flat);
  t.graph = graph;
  std::vector<const Block*> comp;
  const auto& segs = flat.program().segments;
  for (std::size_t s = 1; s < segs.size(); ++s)
    if (segment == 0 || static_cast<int>(s) == segment) comp.push_back(&segs[s]);
  auto tree = std::make_shared<InstanceTree>(flat, *graph, comp);
  t.tree = tree;

  std::vector<bool> all = all_recursive(*graph);
  Inference pinned = infer_tiers(*tree, all);
  if (pinned.sat) {
    t.typable = t.pinned = true;
    t.pins = all;
    t.tiers = std::move(pinned.tiers);
    return t;
  }
  Inference plain = infer_tiers(*tree, {});
  t.typable = plain.sat;
  t.core = plain.sat ? std::move(pinned.core) : std::move(plain.core);
  t.tiers = std::move(plain.tiers);
  return t;
}

DeclassVerdict check_declassified(const ResolvedProgram& flat) {
  DeclassVerdict v;
  std::size_t n = flat.program().comp_segment_count();
  for (std::size_t s = 1; s <= n; ++s) {
    v.segments.push_back(infer(flat, static_cast<int>(s)));
    if (!v.segments.back().typable && v.ok) {
      v.ok = false;
      v.failing_segment = static_cast<int>(s);
    }
  }
  return v;
}

}  // namespace aoo
