#include <doctest.h>

#include "aoo/transform/flatten.hpp"
#include "corpus.hpp"
#include "properties.hpp"

using namespace aoo;

TEST_CASE("random programs compile and stay small") {
  std::mt19937 rng(7);
  int small = 0;
  for (int i = 0; i < 20; ++i) {
    std::string src = testing::random_program(rng, 3);
    CAPTURE(src);
    Compiled c = compile(src);
    CHECK(is_flat(c.flat->program()));
    Typing t = infer(*c.flat);
    small += testing::tier_variable_count(*t.tree) <= 16;
  }
  CHECK(small > 0);
}

TEST_CASE("inference agrees with enumeration on random programs") {
  std::mt19937 rng(11);
  int checked = 0, sat = 0;
  while (checked < 8) {
    Compiled c = compile(testing::random_program(rng, 2));
    Typing t = infer(*c.flat);
    if (testing::tier_variable_count(*t.tree) > 12) continue;
    ++checked;
    sat += t.typable;
    CHECK(testing::brute_force_typable(*t.tree, {}) == t.typable);
  }
  CHECK(sat > 0);
}

TEST_CASE("tier-0 perturbations leave the tier-1 trace unchanged") {
  std::mt19937 rng(3);
  Compiled c = testing::compile_corpus("blist_loop");
  Typing t = infer(*c.flat);
  testing::NonInterference r = testing::check_non_interference(*c.flat, t, 5, rng, 100000);
  CHECK(r.pairs == 5);
  CHECK_MESSAGE(r.counterexamples == 0, r.first_failure);
}

TEST_CASE("subject reduction on the recursive length") {
  Compiled c = testing::compile_corpus("blist_length");
  Typing t = infer(*c.flat);
  testing::SubjectReduction r = testing::check_subject_reduction(*c.flat, t, 7, 100000);
  CHECK(r.samples > 0);
  CHECK_MESSAGE(r.failures == 0, r.first_failure);
}
