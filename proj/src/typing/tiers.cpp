#include "aoo/typing/tiers.hpp"

#include "aoo/support/error.hpp"

namespace aoo {

Tier TierAssignment::tier(int ctx, const std::string& var) const {
  const auto& vars = contexts.at(ctx).vars;
  auto it = vars.find(var);
  if (it == vars.end()) throw Error("no tier for " + var + " in " + contexts.at(ctx).label);
  return it->second.tier;
}

bool TierAssignment::has(int ctx, const std::string& var) const {
  return ctx >= 0 && ctx < static_cast<int>(contexts.size()) && contexts[ctx].vars.count(var) != 0;
}

void TierAssignment::set(int ctx, const std::string& var, Tier t) { contexts.at(ctx).vars.at(var).tier = t; }

nlohmann::json TierAssignment::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const ContextTiers& c : contexts) {
    nlohmann::json vars = nlohmann::json::object();
    for (const auto& [x, t] : c.vars) vars[x] = {{"type", t.base.str()}, {"tier", to_int(t.tier)}};
    out[c.label] = {{"signature", c.signature}, {"gamma", to_int(c.gamma)}, {"vars", vars}};
  }
  return out;
}

TierAssignment TierAssignment::from_json(const nlohmann::json& j, const std::vector<ContextTiers>& shape) {
  TierAssignment out;
  out.contexts = shape;
  for (auto it = j.begin(); it != j.end(); ++it) {
    ContextTiers* c = nullptr;
    for (ContextTiers& s : out.contexts)
      if (s.label == it.key()) c = &s;
    if (!c) throw Error("unknown typing context " + it.key());
    const nlohmann::json& body = it.value();
    if (body.contains("gamma")) c->gamma = tier_of(body.at("gamma").get<int>() != 0);
    if (!body.contains("vars")) continue;
    for (auto v = body.at("vars").begin(); v != body.at("vars").end(); ++v) {
      auto slot = c->vars.find(v.key());
      if (slot == c->vars.end()) throw Error("unknown variable " + v.key() + " in " + c->label);
      const nlohmann::json& t = v.value();
      int tier = t.is_object() ? t.at("tier").get<int>() : t.get<int>();
      if (tier != 0 && tier != 1) throw Error("tier must be 0 or 1 for " + v.key());
      slot->second.tier = tier_of(tier == 1);
    }
  }
  return out;
}

}  // namespace aoo
