#include "aoo/transform/flatten.hpp"

#include "aoo/frontend/well_formed.hpp"
#include "aoo/support/error.hpp"
#include "aoo/typing/operators.hpp"

namespace aoo {

std::string FreshNames::next() {
  std::string n;
  do n = "$f" + std::to_string(++counter_);
  while (taken_ && taken_(n));
  return n;
}

namespace {

class Flattener {
 public:
  Flattener(const Scope& s, const ClassTable& ct, FreshNames& fresh, int& next_site)
      : scope_(s), ct_(ct), fresh_(fresh), next_site_(next_site) {}

  Block block(const Block& b) {
    Block out;
    for (const Instr& i : b) instr(i, out);
    return out;
  }

 private:
  const Scope& scope_;
  const ClassTable& ct_;
  FreshNames& fresh_;
  int& next_site_;
  std::map<std::string, TypeName> temps_;

  std::optional<TypeName> type_of(const Expr& e) const {
    if (e.kind == Expr::Kind::Var) {
      if (auto it = temps_.find(e.name); it != temps_.end()) return it->second;
    }
    return synth_type(e, scope_, ct_);
  }

  // Type expected for argument k of a compound expression, used when the
  // argument is the untyped null literal.
  std::optional<TypeName> slot_type(const Expr& parent, std::size_t k) const {
    switch (parent.kind) {
      case Expr::Kind::Op:
        for (std::size_t j = 0; j < parent.args.size(); ++j) {
          if (j == k || (parent.name == "?:" && j == 0)) continue;
          auto t = type_of(parent.args[j]);
          if (t && !is_null_type(*t)) return t;
        }
        return std::nullopt;
      case Expr::Kind::New:
      case Expr::Kind::Call: {
        if (parent.target.valid() && !(parent.target.ctor && parent.target.index < 0)) {
          auto ps = ct_.param_types(parent.target);
          if (k < ps.size()) return ps[k];
        }
        if (parent.kind == Expr::Kind::New) {
          int c = ct_.index(parent.name);
          if (c >= 0 && k < ct_.fields(c).size()) return ct_.fields(c)[k].type;
        }
        return std::nullopt;
      }
      default: return std::nullopt;
    }
  }

  // Binds a non-variable expression to a fresh temporary and returns the
  // variable standing for it.
  Expr atomize(const Expr& e, std::optional<TypeName> hint, Block& out) {
    if (e.kind == Expr::Kind::Var) return e;
    auto t = type_of(e);
    if (!t || is_null_type(*t)) t = hint;
    if (!t || is_null_type(*t)) throw Error("cannot type flattening temporary at line " +
                                            std::to_string(e.loc.line));
    Expr rhs = meta(e, out);
    std::string x = fresh_.next();
    temps_[x] = *t;
    out.push_back(Instr::assign(*t, x, std::move(rhs), e.loc));
    return Expr::var(x, e.loc);
  }

  // Rewrites e into a meta-expression whose arguments are variables.
  Expr meta(const Expr& e, Block& out) {
    if (e.is_atomic()) return e;
    Expr r = e;
    if (e.kind == Expr::Kind::Call) {
      auto recv_hint = e.static_class.empty() ? std::nullopt
                                              : std::optional(TypeName::of_class(e.static_class));
      r.receiver = Box<Expr>(atomize(*e.receiver, recv_hint, out));
    }
    for (std::size_t k = 0; k < e.args.size(); ++k) r.args[k] = atomize(e.args[k], slot_type(e, k), out);
    return r;
  }

  Expr guard(const Expr& g, Block& out) { return atomize(g, TypeName::boolean(), out); }

  void renumber(Expr& e) {
    if (e.kind == Expr::Kind::New || e.kind == Expr::Kind::Call) e.site = next_site_++;
    if (e.kind == Expr::Kind::Call) renumber(*e.receiver);
    for (Expr& a : e.args) renumber(a);
  }

  void instr(const Instr& i, Block& out) {
    switch (i.kind) {
      case Instr::Kind::Skip: out.push_back(i); return;
      case Instr::Kind::Assign: {
        Instr a = i;
        a.expr = meta(i.expr, out);
        out.push_back(std::move(a));
        return;
      }
      case Instr::Kind::Call: {
        Instr c = i;
        c.expr = meta(i.expr, out);
        out.push_back(std::move(c));
        return;
      }
      case Instr::Kind::Seq:
        for (const Instr& j : i.body) instr(j, out);
        return;
      case Instr::Kind::If: {
        Expr g = guard(i.expr, out);
        out.push_back(Instr::branch(std::move(g), block(i.body), block(i.alt), i.loc));
        return;
      }
      case Instr::Kind::While: {
        Block head;
        Expr g = guard(i.expr, head);
        Block body = block(i.body);
        for (const Instr& h : head) {
          Instr again = h;
          again.decl.reset();
          renumber(again.expr);
          body.push_back(std::move(again));
        }
        out.insert(out.end(), head.begin(), head.end());
        out.push_back(Instr::loop(std::move(g), std::move(body), i.loc));
        return;
      }
    }
  }
};

bool flat_expr(const Expr& e) {
  for (const Expr& a : e.args)
    if (a.kind != Expr::Kind::Var) return false;
  if (e.kind == Expr::Kind::Call && e.receiver->kind != Expr::Kind::Var) return false;
  return true;
}

}  // namespace

Block flatten_block(const Block& b, const Scope& scope, const ClassTable& ct, FreshNames& fresh,
                    int& next_site) {
  return Flattener(scope, ct, fresh, next_site).block(b);
}

Program flatten_program(const ResolvedProgram& rp) {
  const Program& src = rp.program();
  Program out = src;
  int next_site = src.next_site;
  auto body_fresh = [](const Scope& s) {
    return FreshNames([&s](const std::string& n) { return s.has(n); });
  };
  for (const MethodRef& r : rp.all_bodies()) {
    const Scope& s = rp.scope(r);
    FreshNames fresh = body_fresh(s);
    Block flat = flatten_block(src.body(r), s, rp.classes(), fresh, next_site);
    if (r.ctor)
      out.classes[r.cls].ctors[r.index].body = std::move(flat);
    else
      out.classes[r.cls].methods[r.index].body = std::move(flat);
  }
  FreshNames fresh = body_fresh(rp.main());
  for (std::size_t k = 0; k < src.segments.size(); ++k)
    out.segments[k] = flatten_block(src.segments[k], rp.main(), rp.classes(), fresh, next_site);
  out.next_site = next_site;
  return out;
}

bool is_flat(const Block& b) {
  for (const Instr& i : b) {
    switch (i.kind) {
      case Instr::Kind::Skip: break;
      case Instr::Kind::Assign:
      case Instr::Kind::Call:
        if (!flat_expr(i.expr)) return false;
        break;
      case Instr::Kind::Seq: return false;
      case Instr::Kind::While:
      case Instr::Kind::If:
        if (i.expr.kind != Expr::Kind::Var || !is_flat(i.body) || !is_flat(i.alt)) return false;
        break;
    }
  }
  return true;
}

bool is_flat(const Program& p) {
  for (const ClassDecl& c : p.classes) {
    for (const CtorDecl& k : c.ctors)
      if (!is_flat(k.body)) return false;
    for (const MethodDecl& m : c.methods)
      if (!is_flat(m.body)) return false;
  }
  for (const Block& s : p.segments)
    if (!is_flat(s)) return false;
  return true;
}

std::uint64_t expr_size(const Expr& e) {
  std::uint64_t n = 1;
  if (e.kind == Expr::Kind::New) n += 1;
  if (e.kind == Expr::Kind::Call) n += 1 + expr_size(*e.receiver);
  for (const Expr& a : e.args) n += expr_size(a);
  return n;
}

std::uint64_t instr_size(const Instr& i) {
  switch (i.kind) {
    case Instr::Kind::Skip: return 1;
    case Instr::Kind::Assign: return 2 + (i.decl ? 1 : 0) + expr_size(i.expr);
    case Instr::Kind::Seq: return 1 + instr_size(i.body);
    case Instr::Kind::Call: return 1 + expr_size(i.expr);
    case Instr::Kind::While: return 1 + expr_size(i.expr) + instr_size(i.body);
    case Instr::Kind::If: return 1 + expr_size(i.expr) + instr_size(i.body) + instr_size(i.alt);
  }
  return 0;
}

std::uint64_t instr_size(const Block& b) {
  std::uint64_t n = 0;
  for (const Instr& i : b) n += instr_size(i);
  return n;
}

}  // namespace aoo
