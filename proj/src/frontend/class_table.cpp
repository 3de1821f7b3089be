#include "aoo/frontend/class_table.hpp"

#include <algorithm>

#include "aoo/support/error.hpp"
#include "aoo/typing/operators.hpp"

namespace aoo {

ClassTable::ClassTable(const Program& p) : prog_(&p) {
  const int n = static_cast<int>(p.classes.size());
  Diagnostics diags;
  for (int i = 0; i < n; ++i) by_name_.emplace(p.classes[i].name, i);
  super_.assign(n, std::nullopt);
  for (int i = 0; i < n; ++i) {
    const ClassDecl& c = p.classes[i];
    if (!c.super) continue;
    auto it = by_name_.find(*c.super);
    if (it == by_name_.end()) {
      diags.push_back({p.file, c.loc.line, c.loc.col, "E-UNKNOWN-CLASS",
                       "class '" + c.name + "' extends unknown class '" + *c.super + "'"});
      continue;
    }
    super_[i] = it->second;
  }
  below_.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    int steps = 0;
    for (std::optional<int> c = i; c; c = super_[*c]) {
      if (steps++ > n) {
        diags.push_back({p.file, p.classes[i].loc.line, p.classes[i].loc.col, "E-CYCLIC",
                         "cyclic inheritance through class '" + p.classes[i].name + "'"});
        break;
      }
      below_[i][*c] = true;
    }
  }
  if (!diags.empty()) throw IllFormed(diags);
  fields_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    std::vector<int> chain;
    for (std::optional<int> c = i; c; c = super_[*c]) chain.push_back(*c);
    std::reverse(chain.begin(), chain.end());
    for (int c : chain)
      for (const FieldDecl& f : p.classes[c].fields) fields_[i].push_back({f.name, f.type, c});
  }
}

int ClassTable::index(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

bool ClassTable::is_subclass(const std::string& c, const std::string& d) const {
  int i = index(c), j = index(d);
  return i >= 0 && j >= 0 && below_[i][j];
}

bool ClassTable::assignable(const TypeName& from, const TypeName& to) const {
  if (from.is_reference() && to.is_reference()) {
    if (is_null_type(from)) return true;
    if (is_null_type(to)) return false;
    return is_subclass(from.cls, to.cls);
  }
  return from == to;
}

std::vector<int> ClassTable::subclasses(int c) const {
  std::vector<int> out;
  for (int d = 0; d < size(); ++d)
    if (below_[d][c]) out.push_back(d);
  return out;
}

std::optional<TypeName> ClassTable::field_type(int c, const std::string& f) const {
  if (c < 0) return std::nullopt;
  for (const FieldInfo& fi : fields_[c])
    if (fi.name == f) return fi.type;
  return std::nullopt;
}

namespace {

bool same_params(const std::vector<Param>& ps, const std::vector<TypeName>& ts) {
  if (ps.size() != ts.size()) return false;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!(ps[i].type == ts[i])) return false;
  return true;
}

}  // namespace

std::optional<MethodRef> ClassTable::dispatch(int c, const std::string& method,
                                              const std::vector<TypeName>& param_types) const {
  for (std::optional<int> k = c; k; k = super_[*k]) {
    const auto& ms = prog_->classes[*k].methods;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (ms[i].name == method && same_params(ms[i].params, param_types))
        return MethodRef{*k, static_cast<int>(i), false};
  }
  return std::nullopt;
}

MethodRef ClassTable::dispatch(int runtime_cls, const MethodRef& static_target) const {
  if (static_target.ctor || runtime_cls < 0) return static_target;
  const MethodDecl& m = prog_->method(static_target);
  auto r = dispatch(runtime_cls, m.name, param_types(static_target));
  return r ? *r : static_target;
}

std::optional<MethodRef> ClassTable::resolve_method(int c, const std::string& method,
                                                    const std::vector<TypeName>& args) const {
  for (std::optional<int> k = c; k; k = super_[*k]) {
    const auto& ms = prog_->classes[*k].methods;
    std::optional<MethodRef> loose;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (ms[i].name != method || ms[i].params.size() != args.size()) continue;
      bool exact = true, fits = true;
      for (std::size_t a = 0; a < args.size(); ++a) {
        if (!(args[a] == ms[i].params[a].type)) exact = false;
        if (!assignable(args[a], ms[i].params[a].type)) fits = false;
      }
      if (exact) return MethodRef{*k, static_cast<int>(i), false};
      if (fits && !loose) loose = MethodRef{*k, static_cast<int>(i), false};
    }
    if (loose) return loose;
  }
  return std::nullopt;
}

std::optional<MethodRef> ClassTable::resolve_ctor(int c, const std::vector<TypeName>& args) const {
  const auto& ks = prog_->classes[c].ctors;
  if (ks.empty()) {
    if (args.empty()) return MethodRef{c, -1, true};
    const auto& fs = fields_[c];
    if (fs.size() != args.size()) return std::nullopt;
    for (std::size_t a = 0; a < args.size(); ++a)
      if (!assignable(args[a], fs[a].type)) return std::nullopt;
    return MethodRef{c, -1, true};
  }
  std::optional<MethodRef> loose;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i].params.size() != args.size()) continue;
    bool exact = true, fits = true;
    for (std::size_t a = 0; a < args.size(); ++a) {
      if (!(args[a] == ks[i].params[a].type)) exact = false;
      if (!assignable(args[a], ks[i].params[a].type)) fits = false;
    }
    if (exact) return MethodRef{c, static_cast<int>(i), true};
    if (fits && !loose) loose = MethodRef{c, static_cast<int>(i), true};
  }
  return loose;
}

std::vector<TypeName> ClassTable::param_types(const MethodRef& r) const {
  std::vector<TypeName> out;
  if (r.ctor && r.index < 0) {
    // Implicit constructor: callers pass either nothing or every field.
    return out;
  }
  for (const Param& p : prog_->params(r)) out.push_back(p.type);
  return out;
}

std::vector<MethodRef> ClassTable::overrides(const MethodRef& m) const {
  std::vector<MethodRef> out;
  if (m.ctor) return out;
  const MethodDecl& decl = prog_->method(m);
  auto types = param_types(m);
  for (int d = 0; d < size(); ++d) {
    if (d == m.cls || !below_[d][m.cls]) continue;
    const auto& ms = prog_->classes[d].methods;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (ms[i].name == decl.name && same_params(ms[i].params, types))
        out.push_back({d, static_cast<int>(i), false});
  }
  return out;
}

std::vector<MethodRef> ClassTable::dispatch_targets(int c, const MethodRef& m) const {
  std::vector<MethodRef> out{m};
  if (m.ctor) return out;
  for (const MethodRef& o : overrides(m))
    if (below_[o.cls][c]) out.push_back(o);
  return out;
}

}  // namespace aoo
