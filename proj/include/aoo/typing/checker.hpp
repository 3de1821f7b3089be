#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aoo/interp/machine.hpp"
#include "aoo/typing/instances.hpp"

namespace aoo {

// One typed instruction of a derivation.
struct DerivationStep {
  std::string context;
  Location loc;
  std::string rule;
  Tier tier = Tier::Zero;  // least derivable tier
};

struct Verdict {
  bool ok = true;
  std::string rule;  // first violated rule
  Location loc;
  std::string context;
  std::string message;
  std::vector<DerivationStep> derivation;

  std::string str() const;
  nlohmann::json to_json() const;
};

// Declarative check of Figs. 4-6 over every instance of the tree under the
// given tiers, including the body annotations and, for pinned components, the
// tier-1 interface of recursive methods. Init is tier-erased and already
// checked by well-formedness.
Verdict check_program(const InstanceTree& tree, const TierAssignment& tiers,
                      const std::vector<bool>& pinned = {});

// Raises each body annotation to the least annotation the bodies need, starting from 0
// (1 for pinned recursive instances), until stable.
void complete_gammas(const InstanceTree& tree, TierAssignment& tiers, const std::vector<bool>& pinned = {});

// Typing of a meta-instruction reached during evaluation: every pending
// instruction is checked in the context of the frame that will run it, push
// is tier 0, pop any tier, and returns are checked as assignments from the
// callee's return variable to the caller's target.
Verdict check_continuation(const InstanceTree& tree, const TierAssignment& tiers, const Configuration& c,
                           const Continuation& k);

}  // namespace aoo
