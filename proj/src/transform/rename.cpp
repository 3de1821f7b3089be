#include "aoo/transform/rename.hpp"

#include <map>
#include <set>

#include "aoo/frontend/scope.hpp"

namespace aoo {

namespace {

using Renaming = std::map<std::string, std::string>;

void rename_expr(Expr& e, const Renaming& r) {
  if (e.kind == Expr::Kind::Var) {
    if (auto it = r.find(e.name); it != r.end()) e.name = it->second;
  }
  for (Expr& a : e.args) rename_expr(a, r);
  if (e.kind == Expr::Kind::Call) rename_expr(*e.receiver, r);
}

void rename_block(Block& b, const Renaming& r) {
  for (Instr& i : b) {
    if (i.kind == Instr::Kind::Assign) {
      if (auto it = r.find(i.target); it != r.end()) i.target = it->second;
    }
    rename_expr(i.expr, r);
    rename_block(i.body, r);
    rename_block(i.alt, r);
  }
}

std::set<std::string> body_names(const std::vector<Param>& params, const Block& body) {
  std::set<std::string> out;
  for (const Param& p : params) out.insert(p.name);
  std::vector<std::pair<std::string, TypeName>> ls;
  collect_locals(body, ls);
  for (auto& [n, t] : ls) out.insert(n);
  return out;
}

struct BodyRef {
  std::vector<Param>* params;
  Block* body;
  std::optional<std::string>* ret;
};

}  // namespace

Program alpha_rename(const Program& input) {
  Program p = input;
  std::vector<BodyRef> bodies;
  for (ClassDecl& c : p.classes) {
    for (CtorDecl& k : c.ctors) bodies.push_back({&k.params, &k.body, nullptr});
    for (MethodDecl& m : c.methods) bodies.push_back({&m.params, &m.body, &m.return_var});
  }

  std::vector<std::set<std::string>> names;
  std::map<std::string, int> uses;
  std::set<std::string> taken;
  for (const BodyRef& b : bodies) {
    names.push_back(body_names(*b.params, *b.body));
    for (const auto& n : names.back()) {
      ++uses[n];
      taken.insert(n);
    }
  }
  std::set<std::string> main_names;
  for (const Block& seg : p.segments) {
    std::vector<std::pair<std::string, TypeName>> ls;
    collect_locals(seg, ls);
    for (auto& [n, t] : ls) {
      main_names.insert(n);
      taken.insert(n);
    }
  }
  for (const ClassDecl& c : p.classes)
    for (const FieldDecl& f : c.fields) taken.insert(f.name);

  std::map<std::string, int> counter;
  for (std::size_t bi = 0; bi < bodies.size(); ++bi) {
    Renaming r;
    for (const std::string& n : names[bi]) {
      if (uses[n] < 2 && !main_names.count(n)) continue;
      std::string fresh;
      do fresh = n + "_" + std::to_string(++counter[n]);
      while (taken.count(fresh));
      taken.insert(fresh);
      r[n] = fresh;
    }
    if (r.empty()) continue;
    for (Param& prm : *bodies[bi].params)
      if (auto it = r.find(prm.name); it != r.end()) prm.name = it->second;
    rename_block(*bodies[bi].body, r);
    if (bodies[bi].ret && bodies[bi].ret->has_value()) {
      std::string& ret = **bodies[bi].ret;
      if (auto it = r.find(ret); it != r.end()) ret = it->second;
    }
  }
  return p;
}

}  // namespace aoo
