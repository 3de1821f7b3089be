#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aoo/frontend/ast.hpp"
#include "aoo/frontend/class_table.hpp"

namespace aoo {

// Variables visible in one body (method, constructor or main) with their
// declared types. Locals are collected from every declaration in the body.
struct Scope {
  int cls = -1;  // class supplying `this` and fields; the executable class for main
  bool is_main = false;
  std::map<std::string, TypeName> vars;
  std::vector<std::string> params;
  std::vector<std::string> locals;  // declaration order
  std::set<std::string> fields;
  std::optional<std::string> return_var;

  bool has(const std::string& x) const { return vars.count(x) != 0; }
  bool is_field(const std::string& x) const { return fields.count(x) != 0; }
  bool is_param(const std::string& x) const;
  std::optional<TypeName> type_of(const std::string& x) const;
  TypeName this_type(const ClassTable& ct) const { return TypeName::of_class(ct.name(cls)); }
};

Scope method_scope(const Program& p, const ClassTable& ct, const MethodRef& r);
Scope main_scope(const Program& p, const ClassTable& ct);

// Collects `τ x := e` declarations of a block in textual order.
void collect_locals(const Block& b, std::vector<std::pair<std::string, TypeName>>& out);

}  // namespace aoo
