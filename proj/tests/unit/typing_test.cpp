#include <doctest.h>

#include <algorithm>
#include <random>
#include <regex>

#include "aoo/interp/machine.hpp"
#include "aoo/typing/infer.hpp"
#include "corpus.hpp"
#include "properties.hpp"

using namespace aoo;

namespace {

int find_instance(const InstanceTree& t, const std::string& label_suffix) {
  for (const Instance& in : t.instances())
    if (in.label.size() >= label_suffix.size() &&
        in.label.compare(in.label.size() - label_suffix.size(), label_suffix.size(), label_suffix) == 0)
      return in.id;
  return -1;
}

bool has_clause(const ClauseSet& cs, const std::string& a, bool pa, const std::string& b, bool pb) {
  for (const Clause& c : cs.clauses()) {
    auto is = [&](Lit l, const std::string& n, bool p) { return cs.name(l.var) == n && l.positive == p; };
    if ((is(c.a, a, pa) && is(c.b, b, pb)) || (is(c.a, b, pb) && is(c.b, a, pa))) return true;
  }
  return false;
}

struct Built {
  Compiled c;
  std::shared_ptr<CallGraph> g;
  std::shared_ptr<InstanceTree> t;
};

Built build(const std::string& src) {
  Built b{compile(src), nullptr, nullptr};
  b.g = std::make_shared<CallGraph>(*b.c.flat);
  std::vector<const Block*> comp;
  for (std::size_t s = 1; s < b.c.flat->program().segments.size(); ++s)
    comp.push_back(&b.c.flat->program().segments[s]);
  b.t = std::make_shared<InstanceTree>(*b.c.flat, *b.g, comp);
  return b;
}

const char* kCell = R"(
Cell {
  int v;
  Cell next;
  Cell getNext() { return next; }
  int get() { return v; }
  void put(int w) { v := w; }
}
)";

}  // namespace

TEST_CASE("two-sat basics") {
  ClauseSet cs;
  int a = cs.new_var("a"), b = cs.new_var("b");
  int o = cs.origin({"t", {}, "", ""});
  cs.add({a, true}, {b, true}, o);
  cs.add({a, false}, {b, true}, o);
  SatResult r = solve_2sat(cs);
  REQUIRE(r.sat);
  CHECK(r.model[b]);

  ClauseSet u;
  int x = u.new_var("x");
  int o2 = u.origin({"t", {}, "", ""});
  u.unit({x, true}, o2);
  u.unit({x, false}, o2);
  SatResult s = solve_2sat(u);
  CHECK_FALSE(s.sat);
  CHECK(s.core.size() == 2);
}

TEST_CASE("two-sat agrees with exhaustive enumeration") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 400; ++round) {
    ClauseSet cs;
    int n = 1 + static_cast<int>(rng() % 16);
    for (int v = 0; v < n; ++v) cs.new_var("v" + std::to_string(v));
    int o = cs.origin({"random", {}, "", ""});
    int m = static_cast<int>(rng() % (3 * n + 1));
    for (int k = 0; k < m; ++k)
      cs.add({static_cast<int>(rng() % n), rng() % 2 == 0}, {static_cast<int>(rng() % n), rng() % 2 == 0}, o);
    SatResult r = solve_2sat(cs);
    REQUIRE(r.sat == brute_force_sat(cs));
    if (r.sat) {
      for (const Clause& c : cs.clauses())
        CHECK((r.model[c.a.var] == c.a.positive || r.model[c.b.var] == c.b.positive));
      auto least = minimal_model(cs, std::vector<int>{0});
      REQUIRE(least);
    } else {
      // The core alone is unsatisfiable.
      ClauseSet core;
      for (int v = 0; v < n; ++v) core.new_var("v" + std::to_string(v));
      int oc = core.origin({"core", {}, "", ""});
      for (int c : r.core) core.add(cs.clauses()[c].a, cs.clauses()[c].b, oc);
      CHECK_FALSE(brute_force_sat(core));
    }
  }
}

TEST_CASE("while guard yields a unit clause") {
  Built b = build("Exe { void main() { boolean b := true; //Comp\n while (b) { ; } } }");
  Encoding e = encode_2sat(*b.t);
  CHECK(has_clause(e.clauses, "main.b", true, "main.b", true));
}

TEST_CASE("constructor arguments and results are forced to tier 0") {
  Built b = build(std::string(kCell) +
                  "Exe { void main() { Cell y := null; Cell x := null; //Comp\n x := new Cell(3, y); } }");
  Encoding e = encode_2sat(*b.t);
  CHECK(has_clause(e.clauses, "main.y", false, "main.y", false));
  CHECK(has_clause(e.clauses, "main.x", false, "main.x", false));
}

TEST_CASE("reference assignment is an equivalence") {
  Built b = build(std::string(kCell) + "Exe { void main() { Cell x := null; Cell y := null; //Comp\n x := y; } }");
  Encoding e = encode_2sat(*b.t);
  CHECK(has_clause(e.clauses, "main.x", true, "main.y", false));
  CHECK(has_clause(e.clauses, "main.x", false, "main.y", true));
}

TEST_CASE("list walk is typed with the list at tier 1 and the counter at tier 0") {
  Compiled c = testing::compile_corpus("blist_loop");
  Typing t = infer(*c.flat);
  REQUIRE(t.pinned);
  CHECK(t.tiers->tier(0, "b") == Tier::One);
  CHECK(t.tiers->tier(0, "z") == Tier::Zero);
  CHECK(check_program(*t.tree, *t.tiers, t.pins).ok);
  int tail = find_instance(*t.tree, ":BList.getTail()");
  REQUIRE(tail >= 0);
  CHECK(t.tiers->tier(tail, "this") == Tier::One);
  CHECK(t.tiers->tier(tail, "queue") == Tier::One);
}

TEST_CASE("getter typed from tier 0 to tier 1 is rejected") {
  Compiled c = testing::compile_corpus("blist_loop");
  Typing t = infer(*c.flat);
  REQUIRE(t.tiers);
  TierAssignment bad = *t.tiers;
  int tail = find_instance(*t.tree, ":BList.getTail()");
  bad.set(tail, "this", Tier::Zero);
  Verdict v = check_program(*t.tree, bad, t.pins);
  CHECK_FALSE(v.ok);
  CHECK((v.rule == "(Self)" || v.rule == "(C)"));
  bad.set(tail, "queue", Tier::Zero);
  v = check_program(*t.tree, bad, t.pins);
  CHECK_FALSE(v.ok);
  CHECK(v.rule == "(C)");
}

TEST_CASE("empty computation is accepted under any tiers") {
  Built b = build("Exe { void main() { int x := 1; //Comp\n ; } }");
  for (Tier x : {Tier::Zero, Tier::One}) {
    TierAssignment a;
    a.contexts = b.t->shape();
    a.set(0, "x", x);
    CHECK(check_program(*b.t, a).ok);
  }
}

TEST_CASE("loop bound fed by tier 0 data is not typable") {
  Typing e = infer(*testing::compile_corpus("exp").flat);
  CHECK_FALSE(e.typable);
  CHECK_FALSE(e.core.empty());
  Typing x = infer(*testing::compile_corpus("expo").flat);
  CHECK_FALSE(x.typable);
  bool op = false;
  for (const Origin& o : x.core) op = op || o.rule == "(Op)" || o.rule == "(Wh)";
  CHECK(op);
}

TEST_CASE("recursive decrement is typable only at tier 0; length is pinned") {
  Typing d = infer(*testing::compile_corpus("blist_decrement").flat);
  CHECK(d.typable);
  CHECK_FALSE(d.pinned);
  Typing l = infer(*testing::compile_corpus("blist_length").flat);
  CHECK(l.pinned);
  int len = find_instance(*l.tree, "rec:BList.length()");
  REQUIRE(len >= 0);
  CHECK(l.tiers->tier(len, "this") == Tier::One);
  CHECK(l.tiers->contexts[len].gamma == Tier::One);
  for (const auto& [x, ty] : l.tiers->contexts[len].vars)
    if (x.rfind("res", 0) == 0) CHECK(ty.tier == Tier::Zero);
}

TEST_CASE("inference round-trips through the checker on the corpus") {
  for (const std::string& name : testing::corpus_names()) {
    CAPTURE(name);
    Compiled c = testing::compile_corpus(name);
    Typing t = infer(*c.flat);
    Typing s = infer(*c.source);
    CHECK(t.typable == s.typable);
    CHECK(t.pinned == s.pinned);
    if (!t.tiers) continue;
    CHECK(check_program(*t.tree, *t.tiers, t.pins).ok);
    for (int i = 0; i < t.tree->size(); ++i) {
      const Instance& in = t.tree->at(i);
      for (const std::string& f : in.scope->fields) CHECK(t.tiers->tier(i, f) == t.tiers->tier(i, "this"));
      if (in.is_ctor)
        for (const std::string& x : in.scope->params) CHECK(t.tiers->tier(i, x) == Tier::Zero);
    }
  }
}

TEST_CASE("inference verdict matches exhaustive search on small programs") {
  const std::vector<std::string> programs = {
      "Exe { void main() { int x := 1; boolean b := true; //Comp\n while (b) { x := x + 1; b := x < 3; } } }",
      "Exe { void main() { int x := 1; int y := 2; //Comp\n while (x < y) { x := x + 1; } } }",
      "Exe { void main() { int x := 1; int y := 2; //Comp\n while (0 < y) { y := y - 1; x := x + 1; } } }",
      "Exe { void main() { int x := 1; int y := 2; //Comp\n if (x < 2) { while (0 < y) { y := y - 1; } } } }",
      "Exe { void main() { int x := 1; int y := 2; //Comp\n while (0 < y) { y := x; x := x + 1; } } }",
      std::string(kCell) +
          "Exe { void main() { Cell c := null; //Comp\n while (c != null) { c := c.getNext(); } } }",
      std::string(kCell) +
          "Exe { void main() { Cell c := null; int k := 0; //Comp\n while (c != null) { c.put(k); c := c.getNext(); } } }",
  };
  for (const std::string& src : programs) {
    CAPTURE(src);
    Built b = build(src);
    bool expected = testing::brute_force_typable(*b.t, {});
    CHECK(infer_tiers(*b.t, {}).sat == expected);
  }
}

TEST_CASE("declassified segments are typed one at a time") {
  Compiled c = testing::compile_corpus("declass");
  DeclassVerdict v = check_declassified(*c.flat);
  CHECK(v.ok);
  CHECK(v.segments.size() == 3);
  std::string merged = std::regex_replace(testing::corpus_source("declass"), std::regex("//Comp[23]"), "");
  Compiled m = compile(merged);
  CHECK(m.flat->program().comp_segment_count() == 1);
  CHECK_FALSE(infer(*m.flat).typable);
  DeclassVerdict one = check_declassified(*m.flat);
  CHECK_FALSE(one.ok);
  CHECK(one.failing_segment == 1);
}

TEST_CASE("pending instructions stay typable during evaluation") {
  for (const std::string& name : {"blist_loop", "blist_isequal", "blist_length", "add", "override"}) {
    CAPTURE(name);
    Compiled c = testing::compile_corpus(name);
    Typing t = infer(*c.flat);
    REQUIRE(t.tiers);
    auto oracle = t.oracle();
    RunOptions o;
    o.oracle = oracle.get();
    bool all = true;
    o.observer = [&](const Machine& m) {
      Verdict v = check_continuation(*t.tree, *t.tiers, m.config(), m.continuation());
      if (!v.ok) {
        MESSAGE(v.str());
        all = false;
      }
      return all;
    };
    RunResult r = run(*c.flat, o);
    CHECK(r.metrics.outcome == Outcome::Terminated);
    CHECK(all);
  }
}
