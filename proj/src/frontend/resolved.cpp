#include "aoo/frontend/resolved.hpp"

#include "aoo/frontend/parser.hpp"
#include "aoo/frontend/well_formed.hpp"
#include "aoo/support/error.hpp"
#include "aoo/transform/flatten.hpp"
#include "aoo/transform/rename.hpp"

namespace aoo {

ResolvedProgram::ResolvedProgram(Program p, bool flat) : prog_(std::move(p)), flat_(flat) {
  ct_ = std::make_unique<ClassTable>(prog_);
  Diagnostics ds = resolve(prog_, *ct_);
  if (!ds.empty()) throw IllFormed(ds);
  for (const MethodRef& r : all_bodies()) scopes_.emplace(r, method_scope(prog_, *ct_, r));
  for (std::size_t c = 0; c < prog_.classes.size(); ++c) {
    MethodRef implicit{static_cast<int>(c), -1, true};
    if (prog_.classes[c].ctors.empty()) scopes_.emplace(implicit, method_scope(prog_, *ct_, implicit));
  }
  main_ = main_scope(prog_, *ct_);
}

const Scope& ResolvedProgram::scope(const MethodRef& r) const {
  if (!r.valid()) return main_;
  auto it = scopes_.find(r);
  if (it == scopes_.end()) throw Error("no scope for " + prog_.signature(r));
  return it->second;
}

std::vector<MethodRef> ResolvedProgram::all_bodies() const {
  std::vector<MethodRef> out;
  for (std::size_t c = 0; c < prog_.classes.size(); ++c) {
    for (std::size_t k = 0; k < prog_.classes[c].ctors.size(); ++k)
      out.push_back({static_cast<int>(c), static_cast<int>(k), true});
    for (std::size_t m = 0; m < prog_.classes[c].methods.size(); ++m)
      out.push_back({static_cast<int>(c), static_cast<int>(m), false});
  }
  return out;
}

Compiled compile(Program parsed) {
  Diagnostics ds = check_well_formed(parsed);
  if (!ds.empty()) throw IllFormed(ds);
  Compiled out;
  out.source = std::make_shared<const ResolvedProgram>(alpha_rename(parsed), false);
  out.flat = std::make_shared<const ResolvedProgram>(flatten_program(*out.source), true);
  return out;
}

Compiled compile(std::string_view source, const std::string& file) {
  return compile(parse(source, file));
}

}  // namespace aoo
