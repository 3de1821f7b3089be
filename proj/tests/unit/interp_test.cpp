#include <doctest.h>

#include "aoo/frontend/parser.hpp"
#include "aoo/interp/machine.hpp"
#include "aoo/interp/tier1.hpp"
#include "corpus.hpp"
#include "reference_eval.hpp"

using namespace aoo;

namespace {

std::string var(const Configuration& c, const std::string& x) { return show(c.stack.front().lookup(x)); }

NodeId ref(const Configuration& c, const std::string& x) {
  return std::get<NodeId>(c.stack.front().lookup(x));
}

}  // namespace

TEST_CASE("setter call takes four steps and redirects one arrow") {
  Compiled c = testing::compile_corpus("blist_setqueue");
  RunResult r = run(*c.flat);
  CHECK(r.metrics.outcome == Outcome::Terminated);
  CHECK(r.metrics.steps == 4);
  NodeId d = ref(r.final_config, "d");
  NodeId b = ref(r.final_config, "b");
  CHECK(*r.final_config.graph.get(d, "queue") == Value(b));
  CHECK(*r.input.graph.get(d, "queue") == Value(ref(r.input, "c")));
  CHECK(r.final_config.stack.size() == 1);
}

TEST_CASE("constructor adds one node and one arrow per field") {
  Compiled c = compile(R"(
BList { boolean value; BList queue;
  BList(boolean v, BList q) { value := v; queue := q; } }
Exe { void main() { BList b := null; //Comp
 BList c := new BList(true, b); } })");
  RunResult r = run(*c.flat);
  CHECK(r.final_config.graph.size() == r.input.graph.size() + 1);
  NodeId n = ref(r.final_config, "c");
  CHECK(r.final_config.graph.arrows(n).size() == 2);
  CHECK(*r.final_config.graph.get(n, "value") == Value(true));
}

TEST_CASE("example pointer graph has five nodes") {
  Compiled c = testing::compile_corpus("blist_setqueue");
  RunResult r = run(*c.flat);
  CHECK(sizes(r.input).heap == 5);
}

TEST_CASE("sizes of the initial configuration and of a mapping") {
  Compiled c = compile(R"(
Exe { void main() { int x := 7; boolean b := true; //Comp
 ; } })");
  Machine m(*c.flat);
  Sizes s0 = sizes(m.config());
  CHECK(s0.heap == 1);
  CHECK(s0.stack == 1 + 0 + 1);  // x = 0 counts 0, b = false counts 1
  m.load(c.flat->program().init());
  while (!m.done()) m.step();
  CHECK(m.config().stack.front().size() == 1 + 8);
}

TEST_CASE("empty Comp terminates in one step") {
  Compiled c = testing::compile_corpus("minimal");
  RunResult r = run(*c.flat);
  CHECK(r.metrics.outcome == Outcome::Terminated);
  CHECK(r.metrics.steps == 1);
}

TEST_CASE("list walk counts cells") {
  Compiled c = compile(testing::with_size(testing::corpus_source("blist_loop"), 5));
  RunResult r = run(*c.flat);
  CHECK(r.metrics.outcome == Outcome::Terminated);
  CHECK(var(r.final_config, "z") == "4");
  CHECK(r.metrics.field_copy_mismatches == 0);
}

TEST_CASE("all-true ring never finds a false cell") {
  Compiled c = testing::compile_corpus("ring");
  RunOptions o;
  o.budget = 20000;
  CHECK(run(*c.flat, o).metrics.outcome == Outcome::BudgetExhausted);
  o.detect_divergence = true;
  RunResult r = run(*c.flat, o);
  CHECK(r.metrics.outcome == Outcome::DivergenceDetected);
  CHECK(r.metrics.steps < 100);
}

TEST_CASE("true loop is detected as divergent") {
  Compiled c = compile(R"(
Exe { void main() { boolean b := true; //Comp
 while (b) { ; } } })");
  RunOptions o;
  o.detect_divergence = true;
  RunResult r = run(*c.flat, o);
  CHECK(r.metrics.outcome == Outcome::DivergenceDetected);
  CHECK(r.metrics.steps <= 4);
}

TEST_CASE("terminating loop is never flagged") {
  Compiled c = testing::compile_corpus("blist_loop");
  RunOptions o;
  o.detect_divergence = true;
  CHECK(run(*c.flat, o).metrics.outcome == Outcome::Terminated);
}

TEST_CASE("tier-1 equivalence without tiers") {
  Compiled c = testing::compile_corpus("blist_loop");
  RunResult r = run(*c.flat);
  CHECK(tier1_equivalent(r.input, r.input, nullptr));
  CHECK_FALSE(tier1_equivalent(r.input, r.final_config, nullptr));
}

TEST_CASE("interpreter agrees with the reference evaluator on the corpus") {
  for (const std::string& name : testing::corpus_names()) {
    for (unsigned long n : {3UL, 5UL, 9UL}) {
      CAPTURE(name);
      CAPTURE(n);
      Compiled c = compile(testing::with_size(testing::corpus_source(name), n), name);
      RunOptions o;
      o.budget = 200000;
      RunResult r = run(*c.flat, o);
      testing::Observation mine = testing::observe(*c.flat, r);
      testing::Observation ref = testing::reference_run(*c.source, 50000);
      CHECK(mine.terminated == ref.terminated);
      if (mine.terminated && ref.terminated) CHECK(mine.str() == ref.str());
    }
  }
}
