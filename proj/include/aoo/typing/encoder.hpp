#pragma once

#include <map>
#include <string>
#include <vector>

#include "aoo/typing/instances.hpp"
#include "aoo/typing/two_sat.hpp"

namespace aoo {

// Clauses whose models are exactly the least-tier typings of the instance
// tree. Instruction tiers are kept as sets of literals whose join is the
// least derivable tier; (Seq) joins become unions and upper bounds become
// implications.
struct Encoding {
  ClauseSet clauses;
  std::vector<std::map<std::string, int>> slots;  // per instance: slot -> variable
  std::vector<int> gamma;                         // per instance: annotation variable

  // Variables standing for program variables, in instance order.
  std::vector<int> program_vars() const;
  // Reads a model back into per-context tiers.
  TierAssignment decode(const InstanceTree& tree, const std::vector<bool>& model) const;
};

// `pinned[c]` pins the recursive call graph component c: its instances get
// tier-1 `this` and parameters and annotation 1. Empty means none pinned.
Encoding encode_2sat(const InstanceTree& tree, const std::vector<bool>& pinned = {});

// Components of every recursive method reachable in the tree.
std::vector<bool> all_recursive(const CallGraph& g);

}  // namespace aoo
