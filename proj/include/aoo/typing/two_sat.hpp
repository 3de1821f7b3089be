#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aoo/frontend/ast.hpp"

namespace aoo {

// A boolean variable or its negation; variable v is true when its tier is 1.
struct Lit {
  int var = 0;
  bool positive = true;

  Lit operator!() const { return {var, !positive}; }
  int code() const { return 2 * var + (positive ? 0 : 1); }
  friend bool operator==(const Lit&, const Lit&) = default;
  friend auto operator<=>(const Lit&, const Lit&) = default;
};

// The typing rule and source construct a clause comes from.
struct Origin {
  std::string rule;
  Location loc;
  std::string context;
  std::string detail;

  std::string str() const;
  nlohmann::json to_json() const;
};

struct Clause {
  Lit a;
  Lit b;
  int origin = 0;
};

class ClauseSet {
 public:
  int new_var(std::string name);
  int var_count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_.at(v); }

  int origin(Origin o);
  const Origin& origin_at(int id) const { return origins_.at(id); }

  void add(Lit a, Lit b, int origin) { clauses_.push_back({a, b, origin}); }
  void unit(Lit a, int origin) { clauses_.push_back({a, a, origin}); }
  // A clause with no literal: the set is unsatisfiable because of `origin`.
  void empty(int origin) { empties_.push_back(origin); }

  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<int>& empties() const { return empties_; }

  std::string str() const;

 private:
  std::vector<std::string> names_;
  std::vector<Origin> origins_;
  std::vector<Clause> clauses_;
  std::vector<int> empties_;
};

struct SatResult {
  bool sat = false;
  std::vector<bool> model;  // when sat
  std::vector<int> core;    // clause indices of an unsatisfiable subset, when unsat
  std::vector<int> core_empties;  // empty-clause origins involved
};

// Implication graph + strongly connected components, linear in the clause
// count. The model sets x true iff the component of x comes after the one
// of ¬x in topological order, so it is deterministic.
SatResult solve_2sat(const ClauseSet& c);
SatResult solve_2sat(const ClauseSet& c, const std::vector<Lit>& assumptions);

// Satisfying assignment that is minimal for `order`: each variable of `order`
// is set false whenever the earlier choices allow it.
std::optional<std::vector<bool>> minimal_model(const ClauseSet& c, const std::vector<int>& order);

// Exhaustive check, for validation on small instances.
bool brute_force_sat(const ClauseSet& c);

}  // namespace aoo
