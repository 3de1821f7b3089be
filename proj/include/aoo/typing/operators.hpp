#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "aoo/frontend/ast.hpp"
#include "aoo/interp/value.hpp"

namespace aoo {

enum class OpClass { Neutral, Positive, Other };

std::string to_string(OpClass c);

// Argument shapes an operator accepts. `Same` means any two equal types
// (references compared up to the null type); used by `==` and `!=`.
enum class OpShape { Same, IntsToBool, IntsToInt, BoolsToBool, Int1ToInt, Conditional };

struct OperatorSpec {
  std::string name;
  int arity = 0;
  OpShape shape = OpShape::IntsToInt;
  OpClass declared = OpClass::Other;
  Nat positive_bound = 0;  // the constant c of a positive operator
  std::function<Value(const std::vector<Value>&)> eval;

  // Result type for the given argument types, or nullopt when ill-typed.
  // `null_type` marks the type of the `null` literal.
  std::optional<TypeName> result_type(const std::vector<TypeName>& args) const;
};

// Built-in table plus the `+k` / `-k` families. Returns nullptr when unknown.
std::shared_ptr<const OperatorSpec> find_operator(std::string_view name);

// Verifies a declared classification against the semantics by sampling
// integer inputs. Returns the declared class when no sample refutes it;
// throws Error with the counterexample otherwise.
OpClass classify_operator(const OperatorSpec& spec, std::mt19937_64& rng, int samples = 2000);

// Classification observed from samples alone: neutral if every output stays
// within the max of the inputs, positive if the excess stays bounded across
// growing magnitudes, other otherwise.
OpClass observed_class(const OperatorSpec& spec, std::mt19937_64& rng, int samples = 2000);

// Type of the `null` literal during tier-free synthesis.
inline TypeName null_type() { return TypeName::of_class(""); }
inline bool is_null_type(const TypeName& t) { return t.kind == TypeName::Kind::Class && t.cls.empty(); }

}  // namespace aoo
