#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "aoo/typing/checker.hpp"
#include "aoo/typing/encoder.hpp"

namespace aoo {

struct Inference {
  bool sat = false;
  std::optional<TierAssignment> tiers;  // least tiers when sat
  std::vector<Origin> core;             // clause origins of an unsatisfiable subset
  std::size_t variables = 0;
  std::size_t clauses = 0;
};

// Solves the encoding of the tree with the given pinned components. With
// `minimize` program variables are lowered to tier 0 greedily in instance
// order.
Inference infer_tiers(const InstanceTree& tree, const std::vector<bool>& pinned, bool minimize = true);

// Typing of a program: well-typedness (no pinning) and the stronger typing
// with every recursive method pinned to a tier-1 interface and annotation.
struct Typing {
  std::shared_ptr<const CallGraph> graph;
  std::shared_ptr<const InstanceTree> tree;
  bool typable = false;  // some typing exists
  bool pinned = false;   // some typing exists with recursive methods pinned
  std::vector<bool> pins;               // components pinned in `tiers`
  std::optional<TierAssignment> tiers;  // the pinned typing when it exists, else the plain one
  std::vector<Origin> core;             // why the strongest failing mode is unsatisfiable

  // Oracle for the interpreter; requires `tiers`.
  std::unique_ptr<ContextOracle> oracle() const;
  nlohmann::json to_json() const;
};

// Comp is every computational segment, or only `segment` (1-based) when given.
Typing infer(const ResolvedProgram& flat, int segment = 0);

struct DeclassVerdict {
  bool ok = true;
  int failing_segment = 0;  // 1-based, 0 when accepted
  std::vector<Typing> segments;
};

// Each computational segment must be typable with the earlier segments
// treated as initialization.
DeclassVerdict check_declassified(const ResolvedProgram& flat);

}  // namespace aoo
