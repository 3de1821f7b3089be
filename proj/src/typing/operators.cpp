#include "aoo/typing/operators.hpp"

#include <cctype>
#include <map>
#include <mutex>

#include "aoo/support/error.hpp"

namespace aoo {

std::string to_string(OpClass c) {
  switch (c) {
    case OpClass::Neutral: return "neutral";
    case OpClass::Positive: return "positive";
    case OpClass::Other: return "other";
  }
  return "?";
}

namespace {

bool same_types(const TypeName& a, const TypeName& b) {
  if (a.is_reference() && b.is_reference()) return true;  // class compatibility checked later
  return a == b;
}

const Nat& nat(const Value& v) { return std::get<Nat>(v); }
bool boolean(const Value& v) { return std::get<bool>(v); }

// Integer-like view used by comparisons over int and char.
Nat ordinal(const Value& v) {
  if (const Char* c = std::get_if<Char>(&v)) return Nat(c->cp);
  return nat(v);
}

std::shared_ptr<OperatorSpec> make(std::string name, int arity, OpShape shape, OpClass cls,
                                   std::function<Value(const std::vector<Value>&)> eval) {
  auto s = std::make_shared<OperatorSpec>();
  s->name = std::move(name);
  s->arity = arity;
  s->shape = shape;
  s->declared = cls;
  s->eval = std::move(eval);
  return s;
}

std::map<std::string, std::shared_ptr<const OperatorSpec>, std::less<>> builtins() {
  std::map<std::string, std::shared_ptr<const OperatorSpec>, std::less<>> t;
  auto add = [&](std::shared_ptr<OperatorSpec> s) { t[s->name] = std::move(s); };
  using V = std::vector<Value>;
  add(make("==", 2, OpShape::Same, OpClass::Neutral, [](const V& a) -> Value { return a[0] == a[1]; }));
  add(make("!=", 2, OpShape::Same, OpClass::Neutral, [](const V& a) -> Value { return !(a[0] == a[1]); }));
  add(make("<", 2, OpShape::IntsToBool, OpClass::Neutral,
           [](const V& a) -> Value { return ordinal(a[0]) < ordinal(a[1]); }));
  add(make("<=", 2, OpShape::IntsToBool, OpClass::Neutral,
           [](const V& a) -> Value { return ordinal(a[0]) <= ordinal(a[1]); }));
  add(make(">", 2, OpShape::IntsToBool, OpClass::Neutral,
           [](const V& a) -> Value { return ordinal(a[0]) > ordinal(a[1]); }));
  add(make(">=", 2, OpShape::IntsToBool, OpClass::Neutral,
           [](const V& a) -> Value { return ordinal(a[0]) >= ordinal(a[1]); }));
  add(make("&&", 2, OpShape::BoolsToBool, OpClass::Neutral,
           [](const V& a) -> Value { return boolean(a[0]) && boolean(a[1]); }));
  add(make("||", 2, OpShape::BoolsToBool, OpClass::Neutral,
           [](const V& a) -> Value { return boolean(a[0]) || boolean(a[1]); }));
  add(make("!", 1, OpShape::BoolsToBool, OpClass::Neutral,
           [](const V& a) -> Value { return !boolean(a[0]); }));
  add(make("-", 2, OpShape::IntsToInt, OpClass::Neutral, [](const V& a) -> Value {
    return nat(a[0]) > nat(a[1]) ? Nat(nat(a[0]) - nat(a[1])) : Nat(0);
  }));
  add(make("?:", 3, OpShape::Conditional, OpClass::Neutral,
           [](const V& a) -> Value { return boolean(a[0]) ? a[1] : a[2]; }));
  add(make("+", 2, OpShape::IntsToInt, OpClass::Other,
           [](const V& a) -> Value { return Nat(nat(a[0]) + nat(a[1])); }));
  add(make("*", 2, OpShape::IntsToInt, OpClass::Other,
           [](const V& a) -> Value { return Nat(nat(a[0]) * nat(a[1])); }));
  return t;
}

std::shared_ptr<const OperatorSpec> literal_operator(std::string_view name) {
  if (name.size() < 2 || (name[0] != '+' && name[0] != '-')) return nullptr;
  for (char c : name.substr(1))
    if (!std::isdigit(static_cast<unsigned char>(c))) return nullptr;
  Nat k(std::string(name.substr(1)));
  if (name[0] == '+') {
    auto s = make(std::string(name), 1, OpShape::Int1ToInt, OpClass::Positive,
                  [k](const std::vector<Value>& a) -> Value { return Nat(nat(a[0]) + k); });
    s->positive_bound = k;
    return s;
  }
  return make(std::string(name), 1, OpShape::Int1ToInt, OpClass::Neutral,
              [k](const std::vector<Value>& a) -> Value {
                return nat(a[0]) > k ? Nat(nat(a[0]) - k) : Nat(0);
              });
}

}  // namespace

std::optional<TypeName> OperatorSpec::result_type(const std::vector<TypeName>& a) const {
  if (static_cast<int>(a.size()) != arity) return std::nullopt;
  const TypeName kInt = TypeName::integer();
  const TypeName kBool = TypeName::boolean();
  switch (shape) {
    case OpShape::Same:
      if (a[0].is_void() || !same_types(a[0], a[1])) return std::nullopt;
      return kBool;
    case OpShape::IntsToBool:
      if (a[0] == kInt && a[1] == kInt) return kBool;
      if (a[0] == TypeName::character() && a[1] == TypeName::character()) return kBool;
      return std::nullopt;
    case OpShape::IntsToInt:
      if (a[0] == kInt && a[1] == kInt) return kInt;
      return std::nullopt;
    case OpShape::BoolsToBool:
      for (const auto& t : a)
        if (!(t == kBool)) return std::nullopt;
      return kBool;
    case OpShape::Int1ToInt:
      if (a[0] == kInt) return kInt;
      return std::nullopt;
    case OpShape::Conditional:
      if (!(a[0] == kBool) || !(a[1] == a[2]) || !a[1].is_primitive() || a[1].is_void())
        return std::nullopt;
      return a[1];
  }
  return std::nullopt;
}

std::shared_ptr<const OperatorSpec> find_operator(std::string_view name) {
  static const auto table = builtins();
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const OperatorSpec>, std::less<>> literal_cache;
  if (auto it = table.find(name); it != table.end()) return it->second;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = literal_cache.find(name); it != literal_cache.end()) return it->second;
  auto s = literal_operator(name);
  if (s) literal_cache.emplace(std::string(name), s);
  return s;
}

namespace {

struct Sample {
  std::vector<Value> args;
  Nat max_int = 0;
};

Sample draw(const OperatorSpec& spec, std::mt19937_64& rng, const Nat& magnitude) {
  auto draw_int = [&]() {
    std::uniform_int_distribution<std::uint64_t> d(0, 1000000);
    Nat v = Nat(d(rng)) * magnitude / 1000000;
    return v;
  };
  Sample s;
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < spec.arity; ++i) {
    bool want_bool = spec.shape == OpShape::BoolsToBool ||
                     (spec.shape == OpShape::Conditional && i == 0);
    if (want_bool) {
      s.args.emplace_back(coin(rng));
    } else {
      Nat v = draw_int();
      if (v > s.max_int) s.max_int = v;
      s.args.emplace_back(v);
    }
  }
  return s;
}

// Largest amount by which an integer output exceeded the max integer input
// (negative when it never did) at the given magnitude.
std::optional<Nat> excess_at(const OperatorSpec& spec, std::mt19937_64& rng, const Nat& magnitude,
                             int samples, std::vector<Value>* witness) {
  std::optional<Nat> worst;
  for (int i = 0; i < samples; ++i) {
    Sample s = draw(spec, rng, magnitude);
    Value out = spec.eval(s.args);
    const Nat* n = std::get_if<Nat>(&out);
    if (!n) return std::nullopt;  // boolean or char output
    if (*n > s.max_int) {
      Nat e = *n - s.max_int;
      if (!worst || e > *worst) {
        worst = e;
        if (witness) *witness = s.args;
      }
    } else if (!worst) {
      worst = Nat(0);
    }
  }
  return worst;
}

const std::vector<Nat>& magnitudes() {
  static const std::vector<Nat> m = {Nat(10), Nat(1000), Nat(1000000), Nat("1000000000000")};
  return m;
}

}  // namespace

OpClass observed_class(const OperatorSpec& spec, std::mt19937_64& rng, int samples) {
  std::vector<Nat> excess;
  for (const Nat& m : magnitudes()) {
    auto e = excess_at(spec, rng, m, samples / 4 + 1, nullptr);
    if (!e) return OpClass::Neutral;
    excess.push_back(*e);
  }
  bool neutral = true;
  for (const Nat& e : excess)
    if (e > 0) neutral = false;
  if (neutral) return OpClass::Neutral;
  // Bounded excess: the largest magnitude shows no more excess than the smallest.
  if (excess.back() <= excess.front()) return OpClass::Positive;
  return OpClass::Other;
}

OpClass classify_operator(const OperatorSpec& spec, std::mt19937_64& rng, int samples) {
  if (spec.declared == OpClass::Other) return OpClass::Other;
  Nat bound = spec.declared == OpClass::Neutral ? Nat(0) : spec.positive_bound;
  for (const Nat& m : magnitudes()) {
    std::vector<Value> witness;
    auto e = excess_at(spec, rng, m, samples / 4 + 1, &witness);
    if (!e) continue;
    if (*e > bound) {
      std::string args;
      for (const Value& v : witness) args += (args.empty() ? "" : ", ") + show(v);
      throw Error("operator '" + spec.name + "' declared " + to_string(spec.declared) +
                  " exceeds its bound on (" + args + ")");
    }
  }
  return spec.declared;
}

}  // namespace aoo
