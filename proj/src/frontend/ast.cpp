#include "aoo/frontend/ast.hpp"

#include "aoo/support/error.hpp"

namespace aoo {

std::string TypeName::str() const {
  switch (kind) {
    case Kind::Void: return "void";
    case Kind::Boolean: return "boolean";
    case Kind::Int: return "int";
    case Kind::Char: return "char";
    case Kind::Class: return cls;
  }
  return "?";
}

Expr Expr::var(std::string n, Location l) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(n);
  e.loc = l;
  return e;
}

Expr Expr::constant(Constant c, Location l) {
  Expr e;
  e.kind = Kind::Const;
  e.value = std::move(c);
  e.loc = l;
  return e;
}

Expr Expr::null(Location l) {
  Expr e;
  e.kind = Kind::Null;
  e.loc = l;
  return e;
}

Expr Expr::this_ref(Location l) {
  Expr e;
  e.kind = Kind::This;
  e.loc = l;
  return e;
}

Expr Expr::op(std::string n, std::vector<Expr> a, Location l) {
  Expr e;
  e.kind = Kind::Op;
  e.name = std::move(n);
  e.args = std::move(a);
  e.loc = l;
  return e;
}

Expr Expr::make_new(std::string cls, std::vector<Expr> a, Location l) {
  Expr e;
  e.kind = Kind::New;
  e.name = std::move(cls);
  e.args = std::move(a);
  e.loc = l;
  return e;
}

Expr Expr::call(Expr recv, std::string method, std::vector<Expr> a, Location l) {
  Expr e;
  e.kind = Kind::Call;
  e.receiver = Box<Expr>(std::move(recv));
  e.name = std::move(method);
  e.args = std::move(a);
  e.loc = l;
  return e;
}

Instr Instr::skip(Location l) {
  Instr i;
  i.kind = Kind::Skip;
  i.loc = l;
  return i;
}

Instr Instr::assign(std::optional<TypeName> decl, std::string target, Expr e, Location l) {
  Instr i;
  i.kind = Kind::Assign;
  i.decl = std::move(decl);
  i.target = std::move(target);
  i.expr = std::move(e);
  i.loc = l;
  return i;
}

Instr Instr::seq(std::vector<Instr> items, Location l) {
  Instr i;
  i.kind = Kind::Seq;
  i.body = std::move(items);
  i.loc = l;
  return i;
}

Instr Instr::loop(Expr guard, std::vector<Instr> body, Location l) {
  Instr i;
  i.kind = Kind::While;
  i.expr = std::move(guard);
  i.body = std::move(body);
  i.loc = l;
  return i;
}

Instr Instr::branch(Expr guard, std::vector<Instr> then_b, std::vector<Instr> else_b, Location l) {
  Instr i;
  i.kind = Kind::If;
  i.expr = std::move(guard);
  i.body = std::move(then_b);
  i.alt = std::move(else_b);
  i.loc = l;
  return i;
}

Instr Instr::call(Expr e, Location l) {
  Instr i;
  i.kind = Kind::Call;
  i.expr = std::move(e);
  i.loc = l;
  return i;
}

const ClassDecl* Program::find_class(const std::string& name) const {
  int i = class_index(name);
  return i < 0 ? nullptr : &classes[i];
}

int Program::class_index(const std::string& name) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].name == name) return static_cast<int>(i);
  return -1;
}

Block Program::comp() const {
  Block out;
  for (std::size_t s = 1; s < segments.size(); ++s)
    out.insert(out.end(), segments[s].begin(), segments[s].end());
  return out;
}

std::string Program::signature(const MethodRef& r) const {
  if (!r.valid()) return "main";
  const ClassDecl& c = classes.at(r.cls);
  std::string s = c.name + ".";
  s += r.ctor ? c.name : c.methods.at(r.index).name;
  if (r.ctor && r.index < 0) return s + "(implicit)";
  s += "(";
  const auto& ps = params(r);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) s += ",";
    s += ps[i].type.str();
  }
  return s + ")";
}

bool same_shape(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  if (a.kind == Expr::Kind::Const && !(a.value == b.value)) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_shape(a.args[i], b.args[i])) return false;
  if (a.kind == Expr::Kind::Call) return same_shape(*a.receiver, *b.receiver);
  return true;
}

bool same_shape(const Block& a, const Block& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_shape(a[i], b[i])) return false;
  return true;
}

bool same_shape(const Instr& a, const Instr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Instr::Kind::Skip: return true;
    case Instr::Kind::Assign:
      return a.decl == b.decl && a.target == b.target && same_shape(a.expr, b.expr);
    case Instr::Kind::Seq: return same_shape(a.body, b.body);
    case Instr::Kind::While: return same_shape(a.expr, b.expr) && same_shape(a.body, b.body);
    case Instr::Kind::If:
      return same_shape(a.expr, b.expr) && same_shape(a.body, b.body) && same_shape(a.alt, b.alt);
    case Instr::Kind::Call: return same_shape(a.expr, b.expr);
  }
  return false;
}

bool same_shape(const Program& a, const Program& b) {
  if (a.classes.size() != b.classes.size() || a.exe_class != b.exe_class ||
      a.segments.size() != b.segments.size())
    return false;
  for (std::size_t s = 0; s < a.segments.size(); ++s)
    if (!same_shape(a.segments[s], b.segments[s])) return false;
  for (std::size_t c = 0; c < a.classes.size(); ++c) {
    const ClassDecl& x = a.classes[c];
    const ClassDecl& y = b.classes[c];
    if (x.name != y.name || x.super != y.super || x.fields.size() != y.fields.size() ||
        x.ctors.size() != y.ctors.size() || x.methods.size() != y.methods.size())
      return false;
    for (std::size_t i = 0; i < x.fields.size(); ++i)
      if (x.fields[i].name != y.fields[i].name || !(x.fields[i].type == y.fields[i].type))
        return false;
    auto same_params = [](const std::vector<Param>& p, const std::vector<Param>& q) {
      if (p.size() != q.size()) return false;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i].name != q[i].name || !(p[i].type == q[i].type)) return false;
      return true;
    };
    for (std::size_t i = 0; i < x.ctors.size(); ++i)
      if (!same_params(x.ctors[i].params, y.ctors[i].params) ||
          !same_shape(x.ctors[i].body, y.ctors[i].body))
        return false;
    for (std::size_t i = 0; i < x.methods.size(); ++i) {
      const MethodDecl& m = x.methods[i];
      const MethodDecl& n = y.methods[i];
      if (m.name != n.name || !(m.ret == n.ret) || m.return_var != n.return_var ||
          !same_params(m.params, n.params) || !same_shape(m.body, n.body))
        return false;
    }
  }
  return true;
}

std::string Diagnostic::str() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + code + ": " +
         message;
}

nlohmann::json to_json(const Diagnostics& ds) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : ds) arr.push_back(d.to_json());
  return arr;
}

IllFormed::IllFormed(Diagnostics ds)
    : Error(ds.empty() ? std::string("ill-formed program") : ds.front().str()),
      diags_(std::move(ds)) {}

}  // namespace aoo
