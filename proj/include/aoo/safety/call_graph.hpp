#pragma once

#include <string>
#include <vector>

#include "aoo/frontend/resolved.hpp"

namespace aoo {

// A call or constructor occurrence inside a block.
struct SiteInfo {
  const Expr* expr = nullptr;        // Call or New
  int loop_depth = 0;                // enclosing while loops within the block
  std::vector<MethodRef> targets;    // possible runtime bodies; empty for implicit constructors
};

// Sites of a block in evaluation order (receiver, arguments, then the site).
std::vector<SiteInfo> collect_sites(const Block& b, const ClassTable& ct);

// Recursion relation over method and declared constructor bodies: an edge for
// every call or constructor site in a body and from every method to each of
// its overrides.
class CallGraph {
 public:
  explicit CallGraph(const ResolvedProgram& p);

  int size() const { return static_cast<int>(bodies_.size()); }
  const MethodRef& body(int n) const { return bodies_.at(n); }
  int node(const MethodRef& r) const;  // -1 for main or implicit constructors
  std::string signature(int n) const;
  const std::vector<int>& callees(int n) const { return succ_.at(n); }

  // Strongly connected components, numbered in reverse topological order
  // (callees before callers).
  int components() const { return static_cast<int>(members_.size()); }
  int component(int n) const { return comp_.at(n); }
  const std::vector<int>& members(int c) const { return members_.at(c); }
  bool recursive(int n) const { return recursive_comp_.at(comp_.at(n)); }
  bool component_recursive(int c) const { return recursive_comp_.at(c); }

  bool reaches(int a, int b) const { return closure_[a][b]; }  // transitive
  bool strictly_below(int a, int b) const { return reaches(a, b) && !reaches(b, a); }

  // Nodes reachable (reflexively and transitively) from the sites of the blocks.
  std::vector<int> reachable_from(const std::vector<const Block*>& roots) const;

  const ResolvedProgram& program() const { return *prog_; }

 private:
  const ResolvedProgram* prog_;
  std::vector<MethodRef> bodies_;
  std::vector<std::vector<int>> succ_;
  std::vector<int> comp_;
  std::vector<std::vector<int>> members_;
  std::vector<bool> recursive_comp_;
  std::vector<std::vector<bool>> closure_;
};

}  // namespace aoo
