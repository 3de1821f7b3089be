#include "aoo/frontend/well_formed.hpp"

#include <map>
#include <set>

#include "aoo/frontend/scope.hpp"
#include "aoo/typing/operators.hpp"

namespace aoo {

namespace {

class Declarations {
 public:
  Declarations(const Program& p, Diagnostics& out) : p_(p), out_(out) {}

  void body(const std::set<std::string>& fields, const std::vector<Param>& params,
            const std::vector<const Block*>& blocks, const std::optional<std::string>& ret,
            Location ret_loc) {
    fields_ = fields;
    declared_.clear();
    params_.clear();
    for (const Param& prm : params) {
      if (fields_.count(prm.name))
        report(prm.loc, "E-SHADOW", "parameter '" + prm.name + "' shadows a field");
      if (!params_.insert(prm.name).second)
        report(prm.loc, "E-REDECL", "parameter '" + prm.name + "' declared twice");
    }
    for (const Block* b : blocks) block(*b);
    if (ret && !known(*ret))
      report(ret_loc, "E-UNDECL", "return variable '" + *ret + "' is not declared");
  }

 private:
  bool known(const std::string& x) const {
    return fields_.count(x) || params_.count(x) || declared_.count(x);
  }

  void report(Location l, std::string code, std::string msg) {
    out_.push_back({p_.file, l.line, l.col, std::move(code), std::move(msg)});
  }

  void use(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Var:
        if (!known(e.name))
          report(e.loc, "E-UNDECL", "variable '" + e.name + "' used before its declaration");
        break;
      case Expr::Kind::Call:
        use(*e.receiver);
        [[fallthrough]];
      case Expr::Kind::Op:
      case Expr::Kind::New:
        for (const Expr& a : e.args) use(a);
        break;
      default: break;
    }
  }

  void block(const Block& b) {
    for (const Instr& i : b) instr(i);
  }

  void instr(const Instr& i) {
    switch (i.kind) {
      case Instr::Kind::Skip: break;
      case Instr::Kind::Assign:
        use(i.expr);
        if (i.decl) {
          if (fields_.count(i.target) || params_.count(i.target) || declared_.count(i.target))
            report(i.loc, "E-REDECL", "variable '" + i.target + "' declared more than once");
          declared_.insert(i.target);
        } else if (!known(i.target)) {
          report(i.loc, "E-UNDECL", "variable '" + i.target + "' assigned before its declaration");
        }
        break;
      case Instr::Kind::Call: use(i.expr); break;
      case Instr::Kind::Seq: block(i.body); break;
      case Instr::Kind::While:
        use(i.expr);
        block(i.body);
        break;
      case Instr::Kind::If:
        use(i.expr);
        block(i.body);
        block(i.alt);
        break;
    }
  }

  const Program& p_;
  Diagnostics& out_;
  std::set<std::string> fields_, params_, declared_;
};

// Field names per class including inherited ones, tolerant of unknown or
// cyclic superclasses (those are reported by the class table).
std::set<std::string> all_fields(const Program& p, int c) {
  std::set<std::string> out;
  std::set<int> seen;
  while (c >= 0 && seen.insert(c).second) {
    for (const FieldDecl& f : p.classes[c].fields) out.insert(f.name);
    const auto& sup = p.classes[c].super;
    c = sup ? p.class_index(*sup) : -1;
  }
  return out;
}

}  // namespace

Diagnostics check_well_formed(const Program& p) {
  Diagnostics out;
  auto report = [&](Location l, std::string code, std::string msg) {
    out.push_back({p.file, l.line, l.col, std::move(code), std::move(msg)});
  };

  std::set<std::string> names;
  for (const ClassDecl& c : p.classes)
    if (!names.insert(c.name).second)
      report(c.loc, "E-DUPCLASS", "class '" + c.name + "' declared more than once");
  if (p.exe_class < 0) report({}, "E-NOMAIN", "no executable class");

  Declarations decls(p, out);
  for (std::size_t ci = 0; ci < p.classes.size(); ++ci) {
    const ClassDecl& c = p.classes[ci];
    auto fields = all_fields(p, static_cast<int>(ci));

    std::map<std::string, const MethodDecl*> sigs;
    for (const MethodDecl& m : c.methods) {
      std::string key = m.name + "(";
      for (const Param& prm : m.params) key += prm.type.str() + ",";
      key += ")";
      auto [it, fresh] = sigs.emplace(key, &m);
      if (!fresh) {
        if (it->second->ret == m.ret)
          report(m.loc, "E-DUPSIG", "method '" + m.name + "' declared twice with the same signature");
        else
          report(m.loc, "E-DUPSIG",
                 "method '" + m.name + "' has two signatures differing only in return type");
      }
      if (m.ret.is_void() && m.return_var)
        report(m.return_loc, "E-RETURN", "void method '" + m.name + "' has a return statement");
      if (!m.ret.is_void() && !m.return_var)
        report(m.loc, "E-RETURN", "method '" + m.name + "' returns " + m.ret.str() +
                                      " but has no return statement");
      decls.body(fields, m.params, {&m.body}, m.return_var, m.return_loc);
    }

    std::set<std::string> ctor_sigs;
    for (const CtorDecl& k : c.ctors) {
      std::string key;
      for (const Param& prm : k.params) key += prm.type.str() + ",";
      if (!ctor_sigs.insert(key).second)
        report(k.loc, "E-DUPSIG", "constructor of '" + c.name + "' declared twice");
      decls.body(fields, k.params, {&k.body}, std::nullopt, {});
    }

    if (static_cast<int>(ci) == p.exe_class) {
      std::vector<const Block*> segs;
      for (const Block& s : p.segments) segs.push_back(&s);
      decls.body(fields, {}, segs, std::nullopt, {});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tier-free type synthesis

namespace {

class Resolver {
 public:
  Resolver(Program& p, const ClassTable& ct) : p_(p), ct_(ct) {}

  Diagnostics run() {
    for (std::size_t ci = 0; ci < p_.classes.size(); ++ci) {
      ClassDecl& c = p_.classes[ci];
      for (const FieldDecl& f : c.fields) check_type(f.type, f.loc);
      for (std::size_t k = 0; k < c.ctors.size(); ++k) {
        MethodRef r{static_cast<int>(ci), static_cast<int>(k), true};
        for (const Param& prm : c.ctors[k].params) check_type(prm.type, prm.loc);
        scope_ = method_scope(p_, ct_, r);
        block(c.ctors[k].body);
      }
      for (std::size_t m = 0; m < c.methods.size(); ++m) {
        MethodRef r{static_cast<int>(ci), static_cast<int>(m), false};
        MethodDecl& md = c.methods[m];
        check_type(md.ret, md.loc);
        for (const Param& prm : md.params) check_type(prm.type, prm.loc);
        scope_ = method_scope(p_, ct_, r);
        block(md.body);
        if (md.return_var) {
          auto t = scope_.type_of(*md.return_var);
          if (t && !ct_.assignable(*t, md.ret))
            report(md.return_loc, "returned variable '" + *md.return_var + "' has type " +
                                      t->str() + ", expected " + md.ret.str());
        }
      }
    }
    scope_ = main_scope(p_, ct_);
    for (Block& seg : p_.segments) block(seg);
    return std::move(diags_);
  }

 private:
  void report(Location l, std::string msg) {
    diags_.push_back({p_.file, l.line, l.col, "E-TYPE", std::move(msg)});
  }

  void check_type(const TypeName& t, Location l) {
    if (t.is_reference() && ct_.index(t.cls) < 0) report(l, "unknown class '" + t.cls + "'");
  }

  void block(Block& b) {
    for (Instr& i : b) instr(i);
  }

  void guard(Expr& e) {
    auto t = expr(e);
    if (t && !(*t == TypeName::boolean())) report(e.loc, "guard has type " + t->str() + ", expected boolean");
  }

  void instr(Instr& i) {
    switch (i.kind) {
      case Instr::Kind::Skip: break;
      case Instr::Kind::Assign: {
        if (i.decl) check_type(*i.decl, i.loc);
        auto target = scope_.type_of(i.target);
        auto t = expr(i.expr);
        if (!target || !t) break;
        if (t->is_void()) {
          report(i.loc, "cannot assign the result of a void method");
        } else if (!ct_.assignable(*t, *target)) {
          report(i.loc, "cannot assign " + (is_null_type(*t) ? std::string("null") : t->str()) +
                            " to '" + i.target + "' of type " + target->str());
        }
        break;
      }
      case Instr::Kind::Call: expr(i.expr); break;
      case Instr::Kind::Seq: block(i.body); break;
      case Instr::Kind::While:
        guard(i.expr);
        block(i.body);
        break;
      case Instr::Kind::If:
        guard(i.expr);
        block(i.body);
        block(i.alt);
        break;
    }
  }

  std::optional<TypeName> expr(Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Var: {
        auto t = scope_.type_of(e.name);
        if (!t) report(e.loc, "unknown variable '" + e.name + "'");
        return t;
      }
      case Expr::Kind::Const: return e.value.type;
      case Expr::Kind::Null: return null_type();
      case Expr::Kind::This: return scope_.this_type(ct_);
      case Expr::Kind::Op: {
        std::vector<TypeName> ts;
        bool ok = true;
        for (Expr& a : e.args) {
          auto t = expr(a);
          if (!t) ok = false;
          else ts.push_back(*t);
        }
        if (!ok) return std::nullopt;
        auto spec = find_operator(e.name);
        if (!spec) {
          report(e.loc, "unknown operator '" + e.name + "'");
          return std::nullopt;
        }
        auto r = spec->result_type(ts);
        if (r && spec->shape == OpShape::Same && ts[0].is_reference() &&
            !ct_.assignable(ts[0], ts[1]) && !ct_.assignable(ts[1], ts[0]))
          r.reset();
        if (!r) report(e.loc, "operator '" + e.name + "' does not apply to these arguments");
        return r;
      }
      case Expr::Kind::New: {
        int c = ct_.index(e.name);
        std::vector<TypeName> ts;
        bool ok = true;
        for (Expr& a : e.args) {
          auto t = expr(a);
          if (!t) ok = false;
          else ts.push_back(*t);
        }
        if (c < 0) {
          report(e.loc, "unknown class '" + e.name + "'");
          return std::nullopt;
        }
        if (!ok) return std::nullopt;
        auto k = ct_.resolve_ctor(c, ts);
        if (!k) {
          report(e.loc, "no constructor of '" + e.name + "' matches these arguments");
          return std::nullopt;
        }
        e.target = *k;
        return TypeName::of_class(e.name);
      }
      case Expr::Kind::Call: {
        auto rt = expr(*e.receiver);
        std::vector<TypeName> ts;
        bool ok = static_cast<bool>(rt);
        for (Expr& a : e.args) {
          auto t = expr(a);
          if (!t) ok = false;
          else ts.push_back(*t);
        }
        if (!ok) return std::nullopt;
        if (!rt->is_reference() || is_null_type(*rt)) {
          report(e.loc, "method '" + e.name + "' called on a non-object");
          return std::nullopt;
        }
        int c = ct_.index(rt->cls);
        auto m = ct_.resolve_method(c, e.name, ts);
        if (!m) {
          report(e.loc, "class '" + rt->cls + "' has no method '" + e.name + "' for these arguments");
          return std::nullopt;
        }
        e.target = *m;
        e.static_class = rt->cls;
        return p_.method(*m).ret;
      }
    }
    return std::nullopt;
  }

  Program& p_;
  const ClassTable& ct_;
  Scope scope_;
  Diagnostics diags_;
};

}  // namespace

Diagnostics resolve(Program& p, const ClassTable& ct) { return Resolver(p, ct).run(); }

std::optional<TypeName> synth_type(const Expr& e, const Scope& s, const ClassTable& ct) {
  switch (e.kind) {
    case Expr::Kind::Var: return s.type_of(e.name);
    case Expr::Kind::Const: return e.value.type;
    case Expr::Kind::Null: return null_type();
    case Expr::Kind::This: return s.this_type(ct);
    case Expr::Kind::New: return TypeName::of_class(e.name);
    case Expr::Kind::Call:
      if (!e.target.valid()) return std::nullopt;
      return ct.program().method(e.target).ret;
    case Expr::Kind::Op: {
      std::vector<TypeName> ts;
      for (const Expr& a : e.args) {
        auto t = synth_type(a, s, ct);
        if (!t) return std::nullopt;
        ts.push_back(*t);
      }
      auto spec = find_operator(e.name);
      return spec ? spec->result_type(ts) : std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace aoo
