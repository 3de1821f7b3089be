#include "aoo/frontend/scope.hpp"

#include <algorithm>

namespace aoo {

bool Scope::is_param(const std::string& x) const {
  return std::find(params.begin(), params.end(), x) != params.end();
}

std::optional<TypeName> Scope::type_of(const std::string& x) const {
  auto it = vars.find(x);
  if (it == vars.end()) return std::nullopt;
  return it->second;
}

void collect_locals(const Block& b, std::vector<std::pair<std::string, TypeName>>& out) {
  for (const Instr& i : b) {
    switch (i.kind) {
      case Instr::Kind::Assign:
        if (i.decl) out.emplace_back(i.target, *i.decl);
        break;
      case Instr::Kind::Seq:
      case Instr::Kind::While: collect_locals(i.body, out); break;
      case Instr::Kind::If:
        collect_locals(i.body, out);
        collect_locals(i.alt, out);
        break;
      default: break;
    }
  }
}

namespace {

void add_fields(Scope& s, const ClassTable& ct) {
  if (s.cls < 0) return;
  for (const FieldInfo& f : ct.fields(s.cls)) {
    s.fields.insert(f.name);
    s.vars.emplace(f.name, f.type);
  }
}

void add_locals(Scope& s, const Block& b) {
  std::vector<std::pair<std::string, TypeName>> ls;
  collect_locals(b, ls);
  for (auto& [name, type] : ls) {
    if (s.vars.emplace(name, type).second) s.locals.push_back(name);
  }
}

}  // namespace

Scope method_scope(const Program& p, const ClassTable& ct, const MethodRef& r) {
  Scope s;
  s.cls = r.cls;
  add_fields(s, ct);
  if (r.ctor && r.index < 0) return s;
  for (const Param& prm : p.params(r)) {
    s.params.push_back(prm.name);
    s.vars[prm.name] = prm.type;
  }
  add_locals(s, p.body(r));
  if (!r.ctor) s.return_var = p.method(r).return_var;
  return s;
}

Scope main_scope(const Program& p, const ClassTable& ct) {
  Scope s;
  s.cls = p.exe_class;
  s.is_main = true;
  add_fields(s, ct);
  for (const Block& seg : p.segments) add_locals(s, seg);
  return s;
}

}  // namespace aoo
