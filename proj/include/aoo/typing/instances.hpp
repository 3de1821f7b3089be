#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aoo/frontend/resolved.hpp"
#include "aoo/interp/machine.hpp"
#include "aoo/safety/call_graph.hpp"
#include "aoo/typing/tiers.hpp"

namespace aoo {

// One typing context. Non-recursive methods get a fresh instance per call
// site and target, which is what lets a body be typed differently depending
// on where it is called. Recursive methods and constructors get one shared
// instance per signature.
struct Instance {
  int id = 0;
  std::string label;
  MethodRef body;  // invalid for main
  bool is_main = false;
  bool is_ctor = false;
  bool recursive = false;
  int node = -1;  // call graph node, -1 for main
  const Scope* scope = nullptr;
  std::vector<const Block*> blocks;
  std::map<std::pair<int, MethodRef>, int> callees;  // (site, target) -> instance
};

class InstanceTree {
 public:
  // Instances reachable from `comp`, the blocks typed in the main context.
  InstanceTree(const ResolvedProgram& p, const CallGraph& g, std::vector<const Block*> comp,
               std::size_t limit = 200000);

  const ResolvedProgram& program() const { return *prog_; }
  const CallGraph& graph() const { return *graph_; }
  int size() const { return static_cast<int>(instances_.size()); }
  const Instance& at(int id) const { return instances_.at(id); }
  const std::vector<Instance>& instances() const { return instances_; }

  int callee(int inst, int site, const MethodRef& target) const;  // -1 when unknown
  // Variable holding the tier of x in an instance: fields share the tier of `this`.
  std::string slot(int inst, const std::string& x) const;
  // Independent tier variables of an instance: `this`, then parameters and locals.
  std::vector<std::string> slots(int inst) const;
  // Every variable of every context at tier 0.
  std::vector<ContextTiers> shape() const;

 private:
  const ResolvedProgram* prog_;
  const CallGraph* graph_;
  std::vector<Instance> instances_;
  std::map<MethodRef, int> shared_;
  std::size_t limit_;

  int make(const MethodRef& body, std::string label, bool shared, std::vector<int>& todo);
};

// Oracle view of a typed instance tree for the interpreter. Unknown contexts
// count every variable as tier 1; variables outside a known context count as
// tier 0.
class TierOracle : public ContextOracle {
 public:
  TierOracle(const InstanceTree& tree, const TierAssignment& tiers) : tree_(tree), tiers_(tiers) {}
  int main_context() const override { return 0; }
  int callee_context(int caller, int site, const MethodRef& target) const override;
  bool is_tier1(int ctx, const std::string& var) const override;

 private:
  const InstanceTree& tree_;
  const TierAssignment& tiers_;
};

}  // namespace aoo
