#include <doctest.h>

#include "aoo/bounds/bounds.hpp"
#include "aoo/frontend/parser.hpp"
#include "aoo/support/error.hpp"
#include "corpus.hpp"

using namespace aoo;
using aoo::testing::compile_corpus;
using aoo::testing::corpus_source;

namespace {

BoundReport bounds_of(const Compiled& c, bool per_loop = false) {
  return compute_bounds(*c.flat, type_segments(*c.flat), per_loop);
}

}  // namespace

TEST_CASE("list loop bound") {
  BoundReport b = bounds_of(compile_corpus("blist_loop"));
  CHECK(b.safety.safe);
  CHECK(b.n1 == 1);
  REQUIRE(b.nu);
  CHECK(*b.nu == 1);
  CHECK(b.lambda == 0);
  CHECK(b.time_exponent == 1);
  CHECK(b.heap_exponent == 1);
  CHECK(b.stack_exponent == 1);
  CHECK(b.summary() == "SAFE; time O(n^1); heap O(n); stack O(n)");
  nlohmann::json j = b.to_json();
  CHECK(j["time"] == "O(n^1)");
  CHECK(j["heap"] == "O(max(n,n^1))");
  CHECK(j["stack"] == "O(n^1)");
}

TEST_CASE("ring bound and its per-loop refinement") {
  BoundReport b = bounds_of(compile_corpus("ring"), true);
  CHECK(b.n1 == 2);
  REQUIRE(b.nu);
  CHECK(*b.nu == 1);
  CHECK(b.time_exponent == 2);
  REQUIRE(b.loops.size() == 1);
  CHECK(b.loops[0].n1 == 1);
  CHECK(b.loops[0].time_exponent == 1);
}

TEST_CASE("recursive length bound") {
  BoundReport b = bounds_of(compile_corpus("blist_length"));
  CHECK(b.safety.safe);
  CHECK(b.n1 == 1);
  CHECK(b.lambda == 1);
  CHECK(b.time_exponent == 1);
  CHECK(b.stack_exponent == 2);
  CHECK(b.summary() == "SAFE; time O(n^1); heap O(n); stack O(n^2)");
}

TEST_CASE("straight-line computation is constant") {
  BoundReport b = bounds_of(compile(R"(
Exe { void main() { int n := 4; //Comp
 int x := n + 1; } }
)"));
  CHECK(b.safety.safe);
  CHECK(b.n1 == 0);
  CHECK(b.time_exponent == 0);
  CHECK(b.heap_exponent == 1);
  CHECK(b.summary() == "SAFE; time O(1); heap O(n); stack O(1)");
}

TEST_CASE("temporaries reading two tier-1 variables count") {
  BoundReport b = bounds_of(compile(R"(
Exe { void main() { int n := 4; int m := 3; //Comp
 while (n > m) { n := n - 1; } } }
)"));
  CHECK(b.n1 == 3);
}

TEST_CASE("unsafe report lists the failing item") {
  BoundReport b = bounds_of(compile_corpus("blist_decrement"));
  CHECK(b.summary().rfind("UNSAFE", 0) == 0);
  CHECK(b.summary().find("Item 3") != std::string::npos);
  CHECK(bounds_of(compile_corpus("exp")).summary() == "UNTYPABLE");
}

TEST_CASE("size substitution") {
  Program p = parse(corpus_source("blist_loop"));
  Program q = with_size(p, 40);
  CHECK(q.segments[0][0].expr.value.number == 40);
  CHECK_THROWS_AS(with_size(parse("Exe { void main() { //Comp\n ; } }"), 3), Error);
}

TEST_CASE("validation of the list loop") {
  Compiled c = compile_corpus("blist_loop");
  BoundReport b = bounds_of(c);
  Validation v = validate(parse(corpus_source("blist_loop")), b, {32, 8, 16});
  REQUIRE(v.rows.size() == 3);
  CHECK(v.rows[0].n == 8);
  CHECK(v.rows[2].n == 32);
  CHECK(v.rows[0].steps < v.rows[2].steps);
  CHECK(v.pass);
  for (const ValidationRow& r : v.rows) CHECK(r.outcome == Outcome::Terminated);
}

TEST_CASE("bounds grow with n") {
  Compiled c = compile_corpus("blist_length");
  BoundReport b = bounds_of(c);
  Validation v = validate(parse(corpus_source("blist_length")), b, {4, 8, 16}, {10'000'000, 1.5, false});
  for (std::size_t i = 1; i < v.rows.size(); ++i) {
    CHECK(v.rows[i].time_bound >= v.rows[i - 1].time_bound);
    CHECK(v.rows[i].stack_bound >= v.rows[i - 1].stack_bound);
  }
}
