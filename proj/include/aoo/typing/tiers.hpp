#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "aoo/frontend/ast.hpp"

namespace aoo {

enum class Tier : std::uint8_t { Zero = 0, One = 1 };

inline Tier join(Tier a, Tier b) { return a == Tier::One || b == Tier::One ? Tier::One : Tier::Zero; }
inline Tier meet(Tier a, Tier b) { return a == Tier::One && b == Tier::One ? Tier::One : Tier::Zero; }
inline bool leq(Tier a, Tier b) { return a == Tier::Zero || b == Tier::One; }
inline Tier tier_of(bool one) { return one ? Tier::One : Tier::Zero; }
inline int to_int(Tier t) { return t == Tier::One ? 1 : 0; }

struct TieredType {
  TypeName base;
  Tier tier = Tier::Zero;
  std::string str() const { return base.str() + "(" + std::to_string(to_int(tier)) + ")"; }
  friend bool operator==(const TieredType&, const TieredType&) = default;
};

// δ for one typing context: a tiered type for every variable of the body,
// including `this`, fields, parameters and the return variable, plus the
// annotation of the body.
struct ContextTiers {
  std::string label;
  std::string signature;  // "main" for the executable
  std::map<std::string, TieredType> vars;
  Tier gamma = Tier::Zero;

  friend bool operator==(const ContextTiers&, const ContextTiers&) = default;
};

// Δ: one context per typing instance, indexed by instance id.
struct TierAssignment {
  std::vector<ContextTiers> contexts;

  // Tier of a variable; throws when the context or variable is unknown.
  Tier tier(int ctx, const std::string& var) const;
  bool has(int ctx, const std::string& var) const;
  void set(int ctx, const std::string& var, Tier t);

  nlohmann::json to_json() const;
  // Reads the object form {label: {vars: {x: {type, tier}}, gamma}} keyed by
  // context label onto `shape`; unknown labels or variables are rejected.
  static TierAssignment from_json(const nlohmann::json& j, const std::vector<ContextTiers>& shape);

  friend bool operator==(const TierAssignment&, const TierAssignment&) = default;
};

}  // namespace aoo
