#include "aoo/typing/checker.hpp"

#include <algorithm>

#include "aoo/support/error.hpp"
#include "aoo/typing/operators.hpp"

namespace aoo {

std::string Verdict::str() const {
  if (ok) return "accepted";
  return "rejected by " + rule + " at " + std::to_string(loc.line) + ":" + std::to_string(loc.col) + " in " +
         context + ": " + message;
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json j = {{"accepted", ok}};
  if (!ok)
    j["violation"] = {{"rule", rule}, {"line", loc.line}, {"col", loc.col}, {"context", context},
                      {"message", message}};
  return j;
}

namespace {

constexpr int kAny = -1;  // tier left free by (Cst) / (Null)

struct Fail {
  std::string rule;
  Location loc;
  std::string message;
};

struct ETier {
  int alpha = kAny;
  int beta = 0;
};

class Checker {
 public:
  Checker(const InstanceTree& tree, const TierAssignment& tiers) : tree_(tree), tiers_(tiers) {}

  bool lenient = false;
  std::vector<DerivationStep>* record = nullptr;

  int block(int inst, const Block& b) {
    int t = 0;
    for (const Instr& i : b) t = std::max(t, instr(inst, i));
    return t;
  }

  int instr(int inst, const Instr& i) {
    int t = 0;
    const char* rule = "(Skip)";
    switch (i.kind) {
      case Instr::Kind::Skip: break;
      case Instr::Kind::Seq:
        rule = "(Seq)";
        t = block(inst, i.body);
        break;
      case Instr::Kind::Call: {
        rule = "(Ass)";
        ETier e = expr(inst, i.expr);
        t = std::max(e.alpha == kAny ? 0 : e.alpha, e.beta);
        break;
      }
      case Instr::Kind::Assign: {
        rule = "(Ass)";
        ETier e = expr(inst, i.expr);
        const Scope& s = scope(inst);
        TypeName type = i.decl ? *i.decl : s.type_of(i.target).value();
        t = std::max(assign(inst, i.target, type, e.alpha, i.loc), e.beta);
        break;
      }
      case Instr::Kind::If: {
        rule = "(If)";
        ETier g = expr(inst, i.expr);
        int inner = std::max({block(inst, i.body), block(inst, i.alt), g.beta});
        if (g.alpha == kAny) {
          t = inner;
        } else {
          if (inner > g.alpha) fail("(If)", i.loc, "branch of tier 1 under a tier-0 guard");
          t = g.alpha;
        }
        break;
      }
      case Instr::Kind::While: {
        rule = "(Wh)";
        ETier g = expr(inst, i.expr);
        if (g.alpha == 0) fail("(Wh)", i.loc, "loop guard of tier 0");
        block(inst, i.body);
        t = 1;
        break;
      }
    }
    if (record) record->push_back({tree_.at(inst).label, i.loc, rule, tier_of(t == 1)});
    return t;
  }

  // Least tier of the assigned expression, after the (Ass) side conditions.
  int assign(int inst, const std::string& target, const TypeName& type, int alpha, Location loc) {
    int x = tier(inst, target);
    if (scope(inst).is_field(target)) {
      if (alpha == 1) fail("(Ass)", loc, "tier-1 value stored in field " + target);
      if (x == 1) fail("(Ass)", loc, "field " + target + " of tier 1 assigned");
      return 0;
    }
    if (alpha == kAny) return x;
    if (type.is_reference() && x != alpha)
      fail("(Ass)", loc, "reference " + target + " of tier " + std::to_string(x) + " assigned a tier-" +
                             std::to_string(alpha) + " value");
    if (!type.is_reference() && x > alpha) fail("(Ass)", loc, target + " of tier 1 assigned a tier-0 value");
    return alpha;
  }

  ETier expr(int inst, const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Var: return {tier(inst, e.name), 0};
      case Expr::Kind::This: return {tier(inst, "this"), 0};
      case Expr::Kind::Const:
      case Expr::Kind::Null: return {kAny, 0};
      case Expr::Kind::Op: return op(inst, e);
      case Expr::Kind::New: {
        ETier out{0, 0};
        for (const Expr& a : e.args) {
          ETier t = expr(inst, a);
          if (t.alpha == 1) fail("(New)", e.loc, "constructor argument of tier 1");
          out.beta = std::max(out.beta, t.beta);
        }
        return out;
      }
      case Expr::Kind::Call: return call(inst, e);
    }
    return {};
  }

  const Scope& scope(int inst) const { return *tree_.at(inst).scope; }

  int tier(int inst, const std::string& x) const { return to_int(tiers_.tier(inst, x)); }

  void fail(const char* rule, Location loc, std::string message) {
    if (!lenient) throw Fail{rule, loc, std::move(message)};
  }

 private:
  const InstanceTree& tree_;
  const TierAssignment& tiers_;

  ETier op(int inst, const Expr& e) {
    ETier out{kAny, 0};
    std::vector<ETier> args;
    for (const Expr& a : e.args) {
      args.push_back(expr(inst, a));
      out.beta = std::max(out.beta, args.back().beta);
    }
    auto spec = find_operator(e.name);
    OpClass c = spec ? spec->declared : OpClass::Other;
    if (c == OpClass::Other) {
      fail("(Op)", e.loc, "operator " + e.name + " has no tiered type");
      out.alpha = 0;
      return out;
    }
    if (c == OpClass::Positive) {
      for (const ETier& a : args)
        if (a.alpha == 1) fail("(Op)", e.loc, "tier-1 operand of positive operator " + e.name);
      out.alpha = 0;
      return out;
    }
    for (const ETier& a : args) {
      if (a.alpha == kAny) continue;
      if (out.alpha != kAny && out.alpha != a.alpha)
        fail("(Op)", e.loc, "operands of " + e.name + " have different tiers");
      out.alpha = std::max(out.alpha, a.alpha);
    }
    return out;
  }

  // The tier every target agrees on for one interface position.
  int agreed(const std::vector<int>& ks, const std::string& what, const std::vector<std::string>& names,
             Location loc) {
    int t = kAny;
    for (std::size_t j = 0; j < ks.size(); ++j) {
      int v = tier(ks[j], names[j]);
      if (t != kAny && t != v) fail("(OR)", loc, "overriding bodies disagree on the tier of " + what);
      t = std::max(t, v);
    }
    return t;
  }

  ETier call(int inst, const Expr& e) {
    const ResolvedProgram& p = tree_.program();
    ETier recv = expr(inst, *e.receiver);
    std::vector<ETier> args;
    for (const Expr& a : e.args) args.push_back(expr(inst, a));
    ETier out{kAny, recv.beta};
    for (const ETier& a : args) out.beta = std::max(out.beta, a.beta);

    int c = p.classes().index(e.static_class);
    std::vector<MethodRef> targets = p.classes().dispatch_targets(c < 0 ? e.target.cls : c, e.target);
    std::vector<int> ks;
    for (const MethodRef& t : targets) {
      int k = tree_.callee(inst, e.site, t);
      if (k < 0) throw Error("missing typing instance for " + p.program().signature(t));
      ks.push_back(k);
      out.beta = std::max(out.beta, to_int(tiers_.contexts.at(k).gamma));
    }

    auto match = [&](int actual, int expected, const std::string& what) {
      if (actual != kAny && expected != kAny && actual != expected)
        fail("(C)", e.loc, what + " of tier " + std::to_string(actual) + " where tier " +
                               std::to_string(expected) + " is expected");
    };
    match(recv.alpha, agreed(ks, "this", std::vector<std::string>(ks.size(), "this"), e.loc), "receiver");
    for (std::size_t j = 0; j < args.size(); ++j) {
      std::vector<std::string> names;
      for (const MethodRef& t : targets) names.push_back(p.program().params(t).at(j).name);
      match(args[j].alpha, agreed(ks, "parameter " + std::to_string(j + 1), names, e.loc),
            "argument " + std::to_string(j + 1));
    }
    const MethodDecl& m = p.program().method(e.target);
    if (!m.ret.is_void()) {
      std::vector<std::string> names;
      for (const MethodRef& t : targets) names.push_back(p.program().method(t).return_var.value_or("this"));
      out.alpha = agreed(ks, "the result", names, e.loc);
    }
    return out;
  }
};

bool pinned_instance(const InstanceTree& tree, int i, const std::vector<bool>& pinned) {
  const Instance& in = tree.at(i);
  return !pinned.empty() && in.recursive && !in.is_ctor && in.node >= 0 &&
         pinned.at(tree.graph().component(in.node));
}

}  // namespace

void complete_gammas(const InstanceTree& tree, TierAssignment& tiers, const std::vector<bool>& pinned) {
  for (int i = 0; i < tree.size(); ++i) tiers.contexts.at(i).gamma = tier_of(pinned_instance(tree, i, pinned));
  Checker ck(tree, tiers);
  ck.lenient = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < tree.size(); ++i) {
      const Instance& in = tree.at(i);
      if (in.is_main || in.is_ctor) continue;
      int t = 0;
      for (const Block* b : in.blocks) t = std::max(t, ck.block(i, *b));
      if (t == 1 && tiers.contexts[i].gamma == Tier::Zero) {
        tiers.contexts[i].gamma = Tier::One;
        changed = true;
      }
    }
  }
}

Verdict check_program(const InstanceTree& tree, const TierAssignment& tiers, const std::vector<bool>& pinned) {
  Verdict v;
  Checker ck(tree, tiers);
  ck.record = &v.derivation;
  const Program& p = tree.program().program();
  int current = 0;
  try {
    if (static_cast<int>(tiers.contexts.size()) != tree.size()) throw Error("tier assignment shape mismatch");
    for (int i = 0; i < tree.size(); ++i) {
      current = i;
      const Instance& in = tree.at(i);
      Location at = in.is_main ? p.main_loc : in.is_ctor ? p.ctor(in.body).loc : p.method(in.body).loc;
      int self = ck.tier(i, "this");
      for (const std::string& f : in.scope->fields)
        if (ck.tier(i, f) != self) ck.fail("(Self)", at, "field " + f + " and this have different tiers");
      int t = 0;
      for (const Block* b : in.blocks) t = std::max(t, ck.block(i, *b));
      if (in.is_main) continue;
      int gamma = to_int(tiers.contexts[i].gamma);
      if (in.is_ctor) {
        for (const std::string& x : in.scope->params)
          if (ck.tier(i, x) != 0) ck.fail("(Cons)", at, "constructor parameter " + x + " of tier 1");
        if (t != 0) ck.fail("(Cons)", at, "constructor body of tier 1");
        continue;
      }
      if (t > gamma) ck.fail("(Body)", at, "body of tier 1 under annotation 0");
      if (pinned_instance(tree, i, pinned)) {
        if (self != 1) ck.fail("(Rec)", at, "recursive method on a tier-0 receiver");
        for (const std::string& x : in.scope->params)
          if (ck.tier(i, x) != 1) ck.fail("(Rec)", at, "recursive method parameter " + x + " of tier 0");
        if (gamma != 1) ck.fail("(Rec)", at, "recursive method annotation 0");
      }
    }
  } catch (const Fail& f) {
    v.ok = false;
    v.rule = f.rule;
    v.loc = f.loc;
    v.context = tree.at(current).label;
    v.message = f.message;
  }
  return v;
}

Verdict check_continuation(const InstanceTree& tree, const TierAssignment& tiers, const Configuration& c,
                           const Continuation& k) {
  Verdict v;
  Checker ck(tree, tiers);
  std::vector<int> ctx;
  for (const Frame& f : c.stack) ctx.push_back(f.context());
  try {
    for (auto it = k.rbegin(); it != k.rend(); ++it) {
      switch (it->kind) {
        case WorkItem::Kind::Run:
          if (ctx.back() >= 0) ck.instr(ctx.back(), *it->instr);
          break;
        case WorkItem::Kind::Push: ctx.push_back(it->frame.context()); break;
        case WorkItem::Kind::Pop: ctx.pop_back(); break;
        case WorkItem::Kind::Return: {
          int callee = ctx.back(), caller = ctx[ctx.size() - 2];
          if (callee < 0 || caller < 0) break;
          const Scope& s = ck.scope(caller);
          ck.assign(caller, it->target, s.type_of(it->target).value(), ck.tier(callee, it->source), {});
          break;
        }
      }
      if (ctx.empty()) throw Error("continuation pops the main frame");
    }
  } catch (const Fail& f) {
    v.ok = false;
    v.rule = f.rule;
    v.loc = f.loc;
    v.context = ctx.empty() || ctx.back() < 0 ? "?" : tree.at(ctx.back()).label;
    v.message = f.message;
  }
  return v;
}

}  // namespace aoo
