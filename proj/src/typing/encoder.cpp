#include "aoo/typing/encoder.hpp"

#include <algorithm>

#include "aoo/support/error.hpp"
#include "aoo/typing/operators.hpp"

namespace aoo {

std::vector<int> Encoding::program_vars() const {
  std::vector<int> out;
  for (const auto& s : slots)
    for (const auto& [x, v] : s) out.push_back(v);
  return out;
}

TierAssignment Encoding::decode(const InstanceTree& tree, const std::vector<bool>& model) const {
  TierAssignment t;
  t.contexts = tree.shape();
  for (int i = 0; i < tree.size(); ++i) {
    for (auto& [x, ty] : t.contexts[i].vars) ty.tier = tier_of(model.at(slots[i].at(tree.slot(i, x))));
    t.contexts[i].gamma = tier_of(model.at(gamma[i]));
  }
  return t;
}

std::vector<bool> all_recursive(const CallGraph& g) {
  std::vector<bool> out(g.components());
  for (int c = 0; c < g.components(); ++c) out[c] = g.component_recursive(c);
  return out;
}

namespace {

// A tier: constant 0, constant 1 or a literal.
struct TL {
  enum class K { Zero, One, Var };
  K k = K::Zero;
  Lit lit;

  static TL zero() { return {K::Zero, {}}; }
  static TL one() { return {K::One, {}}; }
  static TL of(Lit l) { return {K::Var, l}; }
  friend bool operator==(const TL&, const TL&) = default;
  friend auto operator<=>(const TL&, const TL&) = default;
};

using TierSet = std::vector<TL>;

void merge(TierSet& into, const TierSet& from) {
  for (const TL& t : from)
    if (t.k != TL::K::Zero && std::find(into.begin(), into.end(), t) == into.end()) into.push_back(t);
}

class Encoder {
 public:
  Encoder(const InstanceTree& tree, const std::vector<bool>& pinned, Encoding& out)
      : tree_(tree), prog_(tree.program()), pinned_(pinned), out_(out) {}

  void run() {
    ClauseSet& cs = out_.clauses;
    for (int i = 0; i < tree_.size(); ++i) {
      std::map<std::string, int> vars;
      for (const std::string& x : tree_.slots(i)) vars[x] = cs.new_var(tree_.at(i).label + "." + x);
      out_.slots.push_back(std::move(vars));
      out_.gamma.push_back(cs.new_var("gamma:" + tree_.at(i).label));
    }
    for (int i = 0; i < tree_.size(); ++i) body(i);
  }

 private:
  const InstanceTree& tree_;
  const ResolvedProgram& prog_;
  const std::vector<bool>& pinned_;
  Encoding& out_;
  int inst_ = 0;

  struct Term {
    TL alpha;
    TierSet beta;
  };

  int origin(const char* rule, Location loc, std::string detail = {}) {
    return out_.clauses.origin({rule, loc, tree_.at(inst_).label, std::move(detail)});
  }

  void implies(TL a, TL b, int o) {
    if (a.k == TL::K::Zero || b.k == TL::K::One || a == b) return;
    if (a.k == TL::K::One && b.k == TL::K::Zero) return out_.clauses.empty(o);
    if (a.k == TL::K::One) return out_.clauses.unit(b.lit, o);
    if (b.k == TL::K::Zero) return out_.clauses.unit(!a.lit, o);
    out_.clauses.add(!a.lit, b.lit, o);
  }

  void equiv(TL a, TL b, int o) {
    implies(a, b, o);
    implies(b, a, o);
  }

  TL slot(int inst, const std::string& x) {
    const auto& vars = out_.slots.at(inst);
    auto it = vars.find(tree_.slot(inst, x));
    if (it == vars.end()) throw Error("no tier variable for " + x + " in " + tree_.at(inst).label);
    return TL::of({it->second, true});
  }

  TL gamma(int inst) { return TL::of({out_.gamma.at(inst), true}); }

  TL fresh(const char* what, Location loc) {
    int v = out_.clauses.new_var(tree_.at(inst_).label + "." + what + "@" + std::to_string(loc.line) + ":" +
                                 std::to_string(loc.col));
    return TL::of({v, true});
  }

  void body(int i) {
    inst_ = i;
    const Instance& in = tree_.at(i);
    TierSet tiers;
    for (const Block* b : in.blocks) merge(tiers, block(*b));
    if (in.is_main) return;  // Comp is typed at void(1), which (ISub) always reaches
    if (in.is_ctor) {
      int o = origin("(Cons)", prog_.program().ctor(in.body).loc, "constructor parameters and body are tier 0");
      for (const std::string& x : in.scope->params) implies(slot(i, x), TL::zero(), o);
      for (const TL& t : tiers) implies(t, TL::zero(), o);
      implies(gamma(i), TL::zero(), o);
      return;
    }
    int o = origin("(Body)", prog_.program().method(in.body).loc, "body tier within the annotation");
    for (const TL& t : tiers) implies(t, gamma(i), o);
    if (in.recursive && in.node >= 0 && !pinned_.empty() && pinned_.at(tree_.graph().component(in.node))) {
      int p = origin("(Rec)", prog_.program().method(in.body).loc,
                     "recursive method typed at this(1), parameters(1), annotation 1");
      implies(TL::one(), slot(i, "this"), p);
      for (const std::string& x : in.scope->params) implies(TL::one(), slot(i, x), p);
      implies(TL::one(), gamma(i), p);
    }
  }

  TierSet block(const Block& b) {
    TierSet out;
    for (const Instr& i : b) merge(out, instr(i));
    return out;
  }

  TierSet instr(const Instr& i) {
    switch (i.kind) {
      case Instr::Kind::Skip: return {};
      case Instr::Kind::Seq: return block(i.body);
      case Instr::Kind::Call: {
        Term t = expr(i.expr);
        TierSet out{t.alpha};
        merge(out, t.beta);
        return out;
      }
      case Instr::Kind::Assign: {
        Term t = expr(i.expr);
        const Scope& s = *tree_.at(inst_).scope;
        TypeName type = i.decl ? *i.decl : s.type_of(i.target).value();
        TL x = slot(inst_, i.target);
        int o = origin("(Ass)", i.loc, i.target);
        if (s.is_field(i.target)) implies(t.alpha, TL::zero(), origin("(Ass)", i.loc, "field " + i.target + " is tier 0"));
        if (type.is_reference())
          equiv(x, t.alpha, o);
        else
          implies(x, t.alpha, o);
        TierSet out{t.alpha};
        merge(out, t.beta);
        return out;
      }
      case Instr::Kind::If: {
        Term g = expr(i.expr);
        TierSet inner = block(i.body);
        merge(inner, block(i.alt));
        merge(inner, g.beta);
        int o = origin("(If)", i.loc, "branches within the guard tier");
        for (const TL& t : inner) implies(t, g.alpha, o);
        return {g.alpha};
      }
      case Instr::Kind::While: {
        Term g = expr(i.expr);
        implies(TL::one(), g.alpha, origin("(Wh)", i.loc, "guard is tier 1"));
        block(i.body);
        return {TL::one()};
      }
    }
    return {};
  }

  Term expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Var: return {slot(inst_, e.name), {}};
      case Expr::Kind::This: return {slot(inst_, "this"), {}};
      case Expr::Kind::Const: return {fresh("const", e.loc), {}};
      case Expr::Kind::Null: return {fresh("null", e.loc), {}};
      case Expr::Kind::Op: return op(e);
      case Expr::Kind::New: return make_new(e);
      case Expr::Kind::Call: return call(e);
    }
    return {};
  }

  Term op(const Expr& e) {
    std::vector<Term> args;
    for (const Expr& a : e.args) args.push_back(expr(a));
    Term out;
    for (const Term& a : args) merge(out.beta, a.beta);
    auto spec = find_operator(e.name);
    OpClass c = spec ? spec->declared : OpClass::Other;
    if (c == OpClass::Other) {
      out_.clauses.empty(origin("(Op)", e.loc, "operator " + e.name + " has no tiered type"));
      out.alpha = TL::zero();
    } else if (c == OpClass::Positive) {
      int o = origin("(Op)", e.loc, "positive operator " + e.name + " is tier 0");
      for (const Term& a : args) implies(a.alpha, TL::zero(), o);
      out.alpha = TL::zero();
    } else {
      int o = origin("(Op)", e.loc, "neutral operator " + e.name + " keeps one tier");
      out.alpha = args.size() == 1 ? args[0].alpha : fresh("op", e.loc);
      for (const Term& a : args) equiv(a.alpha, out.alpha, o);
    }
    return out;
  }

  Term make_new(const Expr& e) {
    Term out{TL::zero(), {}};
    int o = origin("(New)", e.loc, "constructor arguments are tier 0");
    for (const Expr& a : e.args) {
      Term t = expr(a);
      implies(t.alpha, TL::zero(), o);
      merge(out.beta, t.beta);
    }
    return out;
  }

  Term call(const Expr& e) {
    Term recv = expr(*e.receiver);
    std::vector<Term> args;
    for (const Expr& a : e.args) args.push_back(expr(a));
    Term out;
    merge(out.beta, recv.beta);
    for (const Term& a : args) merge(out.beta, a.beta);
    const MethodDecl& m = prog_.program().method(e.target);
    out.alpha = TL::zero();
    bool first = true;
    int c = prog_.classes().index(e.static_class);
    int o = origin("(C)", e.loc, "call of " + e.name);
    for (const MethodRef& t : prog_.classes().dispatch_targets(c < 0 ? e.target.cls : c, e.target)) {
      int k = tree_.callee(inst_, e.site, t);
      if (k < 0) throw Error("missing typing instance for " + prog_.program().signature(t));
      equiv(recv.alpha, slot(k, "this"), o);
      const auto& params = prog_.program().params(t);
      for (std::size_t j = 0; j < params.size(); ++j) equiv(args[j].alpha, slot(k, params[j].name), o);
      const MethodDecl& d = prog_.program().method(t);
      if (!m.ret.is_void() && d.return_var) {
        TL r = slot(k, *d.return_var);
        if (first)
          out.alpha = r;
        else
          equiv(out.alpha, r, o);
        first = false;
      }
      merge(out.beta, {gamma(k)});
    }
    return out;
  }
};

}  // namespace

Encoding encode_2sat(const InstanceTree& tree, const std::vector<bool>& pinned) {
  Encoding out;
  Encoder(tree, pinned, out).run();
  return out;
}

}  // namespace aoo
