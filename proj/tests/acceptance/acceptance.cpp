#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "aoo/bounds/bounds.hpp"
#include "aoo/frontend/parser.hpp"
#include "aoo/transform/flatten.hpp"
#include "corpus.hpp"
#include "properties.hpp"
#include "reference_eval.hpp"

using namespace aoo;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr double kTypingSeconds = 1.0;
constexpr double kValidationSlack = 1.5;
constexpr double kValidationSeconds = 30.0;
constexpr double kInferenceSeconds = 60.0;
constexpr double kSubjectSeconds = 60.0;
constexpr int kRandomPrograms = 50;
constexpr std::size_t kMaxTierVars = 16;
constexpr int kNonInterferencePairs = 100;
constexpr std::uint64_t kSampleEvery = 100;
constexpr std::uint64_t kBudget = 200000;

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string with_comp(const std::string& src, const std::string& comp) {
  auto at = src.find("//Comp");
  auto end = src.rfind("}", src.rfind("}") - 1);
  return src.substr(0, at) + "//Comp\n" + comp + "\n  " + src.substr(end);
}

int node_of(const CallGraph& g, const std::string& sig) {
  for (int v = 0; v < g.size(); ++v)
    if (g.signature(v) == sig) return v;
  return -1;
}

SafetyReport safety_of(const Compiled& c) { return check_safety(*c.flat, type_segments(*c.flat)); }

// getQueue typed with receiver tier `self` and result tier `result`.
bool getqueue_typing(const Typing& t, Tier self, Tier result) {
  TierAssignment a;
  a.contexts = t.tree->shape();
  for (int i = 0; i < t.tree->size(); ++i) {
    const Instance& in = t.tree->at(i);
    for (auto& [x, ty] : a.contexts[i].vars) {
      if (in.is_main)
        ty.tier = x == "q" ? result : x == "b" ? self : Tier::Zero;
      else
        ty.tier = self;
    }
  }
  complete_gammas(*t.tree, a);
  return check_program(*t.tree, a).ok;
}

Result criterion1() {
  Result r;
  std::string src = with_comp(testing::corpus_source("blist_loop"), "BList q := b.getQueue();");
  auto t0 = Clock::now();
  Compiled c = compile(src);
  Typing t = infer(*c.flat);
  r.require(getqueue_typing(t, Tier::One, Tier::One), "getQueue BList(1) -> BList(1)");
  r.require(getqueue_typing(t, Tier::Zero, Tier::Zero), "getQueue BList(0) -> BList(0)");
  r.require(!getqueue_typing(t, Tier::One, Tier::Zero), "getQueue BList(1) -> BList(0) rejected");
  r.require(!getqueue_typing(t, Tier::Zero, Tier::One), "getQueue BList(0) -> BList(1) rejected");
  double s = seconds_since(t0);
  r.require(s < kTypingSeconds, "getQueue under 1 s");
  for (const char* name : {"exp", "expo"}) {
    auto t1 = Clock::now();
    Typing e = infer(*testing::compile_corpus(name).flat);
    double es = seconds_since(t1);
    r.require(!e.typable, std::string(name) + " rejected");
    r.require(es < kTypingSeconds, std::string(name) + " under 1 s");
  }
  r.note("getQueue 1->1 and 0->0 accepted, mixed rejected, exp and expo untypable");
  return r;
}

Result criterion2() {
  Result r;
  SafetyReport len = safety_of(testing::compile_corpus("blist_length"));
  r.require(len.safe, "length safe");
  r.require(len.lambda == 1, "length lambda 1");
  SafetyReport dec = safety_of(testing::compile_corpus("blist_decrement"));
  r.require(!dec.safe, "decrement unsafe");
  const MethodSafety* m = nullptr;
  for (const MethodSafety& x : dec.methods)
    if (x.signature == "BList.decrement()") m = &x;
  r.require(m && m->item1 && m->item2 && !m->item3, "decrement fails Item 3 only");
  r.note("length safe with lambda " + std::to_string(len.lambda) + ", decrement rejected by Item 3");
  return r;
}

Result criterion3() {
  Result r;
  Compiled c = testing::compile_corpus("blist_isequal");
  CallGraph g(*c.flat);
  std::vector<int> lv = levels(g);
  for (const char* s : {"BList.getQueue()", "BList.getValue()", "BList.setQueue(BList)", "BList.isEqual(BList)"}) {
    int v = node_of(g, s);
    r.require(v >= 0 && lv[v] == 0, std::string("level 0 for ") + s);
  }
  for (const char* s : {"BList.decrement()", "BList.length()"}) {
    int v = node_of(g, s);
    r.require(v >= 0 && lv[v] == 1, std::string("level 1 for ") + s);
  }
  std::string src = with_comp(testing::corpus_source("blist_isequal"),
                              "int m := 3; boolean r := true;\n"
                              "while (n > 0) { while (m > 0) { r := b.isEqual(c); m := m - 1; } n := n - 1; }");
  Compiled d = compile(src);
  CallGraph gd(*d.flat);
  Intricacy nu(gd);
  std::optional<int> v = nu.of_block(d.flat->program().segments.at(1));
  r.require(v && *v == 3, "nu of the double loop around isEqual is 3");
  r.note("levels 0/0/0/0/1/1, nu " + (v ? std::to_string(*v) : std::string("undefined")));
  return r;
}

Result criterion4() {
  Result r;
  Compiled c = testing::compile_corpus("blist_loop");
  BoundReport b = compute_bounds(*c.flat, type_segments(*c.flat));
  r.require(b.n1 == 1 && b.nu == 1 && b.lambda == 0, "list loop n1 1, nu 1, lambda 0");
  r.require(b.time_exponent == 1 && b.heap_exponent == 1 && b.stack_exponent == 1, "exponents 1/1/1");
  r.require(b.summary() == "SAFE; time O(n^1); heap O(n); stack O(n)", "summary line");
  Compiled ring = testing::compile_corpus("ring");
  BoundReport rb = compute_bounds(*ring.flat, type_segments(*ring.flat));
  r.require(rb.n1 == 2 && rb.nu == 1 && rb.lambda == 0 && rb.time_exponent == 2, "ring n1 2, time O(n^2)");
  r.note("list loop \"" + b.summary() + "\", ring time " + rb.time_formula());
  return r;
}

Result criterion5() {
  Result r;
  auto t0 = Clock::now();
  Compiled c = testing::compile_corpus("blist_loop");
  BoundReport b = compute_bounds(*c.flat, type_segments(*c.flat));
  ValidationOptions o;
  o.slack = kValidationSlack;
  Validation v = validate(parse(testing::corpus_source("blist_loop")), b, {8, 16, 32, 64, 128, 256}, o);
  double s = seconds_since(t0);
  r.require(v.rows.size() == 6 && v.rows.front().n == 8, "six sizes from 8");
  for (const ValidationRow& row : v.rows) r.require(row.pass, "row n=" + std::to_string(row.n));
  r.require(v.pass, "fit within x1.5 at every size");
  r.require(s < kValidationSeconds, "under 30 s");
  if (!v.rows.empty()) {
    const ValidationRow& last = v.rows.back();
    char buf[200];
    std::snprintf(buf, sizeof buf, "c=%.3f; n=256 steps %llu <= %.0f, heap %llu <= %.0f, stack %llu <= %.0f; %.2fs",
                  v.c_time, static_cast<unsigned long long>(last.steps), last.time_bound,
                  static_cast<unsigned long long>(last.max_heap), last.heap_bound,
                  static_cast<unsigned long long>(last.max_stack), last.stack_bound, s);
    r.note(buf);
  }
  return r;
}

Result criterion6() {
  Result r;
  int runs = 0, mismatches = 0;
  for (const std::string& name : testing::corpus_names()) {
    for (unsigned long n : {3UL, 5UL, 9UL}) {
      Compiled c = compile(testing::with_size(testing::corpus_source(name), n), name);
      RunOptions o;
      o.budget = kBudget;
      RunResult run_result = run(*c.flat, o);
      testing::Observation mine = testing::observe(*c.flat, run_result);
      testing::Observation ref = testing::reference_run(*c.source, kBudget / 4);
      ++runs;
      bool same = mine.terminated == ref.terminated && (!mine.terminated || mine.str() == ref.str());
      if (!same) {
        ++mismatches;
        r.require(false, name + " at n=" + std::to_string(n));
      }
    }
  }
  r.note(std::to_string(runs) + " runs, " + std::to_string(mismatches) + " mismatches");
  return r;
}

Result criterion7() {
  Result r;
  auto t0 = Clock::now();
  std::mt19937 rng(2024);
  int checked = 0, agree = 0, sat = 0;
  while (checked < kRandomPrograms) {
    std::string src = testing::random_program(rng, 2 + static_cast<int>(rng() % 3));
    Compiled c = compile(src);
    Typing t = infer(*c.flat);
    if (testing::tier_variable_count(*t.tree) > kMaxTierVars) continue;
    ++checked;
    bool brute = testing::brute_force_typable(*t.tree, {});
    agree += brute == t.typable;
    sat += t.typable;
  }
  double s = seconds_since(t0);
  r.require(agree == checked, "agreement on every program");
  r.require(s < kInferenceSeconds, "under 60 s");
  r.note(std::to_string(agree) + "/" + std::to_string(checked) + " agree (" + std::to_string(sat) +
         " typable); " + std::to_string(static_cast<int>(s)) + "s");
  return r;
}

Result criterion8() {
  Result r;
  const std::vector<std::string> programs = {"blist_loop", "blist_length", "blist_isequal", "add", "mult"};
  std::mt19937 rng(99);
  int pairs = 0, bad = 0;
  for (std::size_t i = 0; i < programs.size(); ++i) {
    Compiled c = testing::compile_corpus(programs[i]);
    Typing t = infer(*c.flat);
    r.require(t.pinned && safety_of(c).safe, programs[i] + " safe");
    int share = kNonInterferencePairs / static_cast<int>(programs.size()) +
                (static_cast<int>(i) < kNonInterferencePairs % static_cast<int>(programs.size()));
    testing::NonInterference ni = testing::check_non_interference(*c.flat, t, share, rng, kBudget);
    pairs += ni.pairs;
    bad += ni.counterexamples;
    if (ni.counterexamples) r.require(false, programs[i] + ": " + ni.first_failure);
  }
  r.require(pairs == kNonInterferencePairs, "100 pairs");
  r.note(std::to_string(pairs) + " pairs, " + std::to_string(bad) + " counterexamples");
  return r;
}

Result criterion9() {
  Result r;
  auto t0 = Clock::now();
  std::uint64_t samples = 0, failures = 0;
  int programs = 0;
  for (const std::string& name : testing::corpus_names()) {
    Compiled c = testing::compile_corpus(name);
    // Segmented programs have no single typing of the whole run.
    if (c.flat->program().comp_segment_count() > 1) continue;
    Typing t = infer(*c.flat);
    if (!t.tiers) continue;
    ++programs;
    testing::SubjectReduction sr = testing::check_subject_reduction(*c.flat, t, kSampleEvery, kBudget);
    samples += sr.samples;
    failures += sr.failures;
    if (sr.failures) r.require(false, name + ": " + sr.first_failure);
  }
  double s = seconds_since(t0);
  r.require(s < kSubjectSeconds, "under 60 s");
  r.note(std::to_string(programs) + " programs, " + std::to_string(samples) + " samples, " +
         std::to_string(failures) + " failures");
  return r;
}

void bodies(const Program& p, std::vector<const Block*>& out) {
  for (const ClassDecl& c : p.classes) {
    for (const CtorDecl& k : c.ctors) out.push_back(&k.body);
    for (const MethodDecl& m : c.methods) out.push_back(&m.body);
  }
  for (const Block& s : p.segments) out.push_back(&s);
}

// Largest ratio |flatten(I)| / |I|² over the bodies of a program.
double quadratic_ratio(const Compiled& c, double limit, bool& within) {
  std::vector<const Block*> src, flat;
  bodies(c.source->program(), src);
  bodies(c.flat->program(), flat);
  double worst = 0;
  for (std::size_t i = 0; i < src.size() && i < flat.size(); ++i) {
    double n = static_cast<double>(std::max<std::uint64_t>(1, instr_size(*src[i])));
    double ratio = static_cast<double>(instr_size(*flat[i])) / (n * n);
    worst = std::max(worst, ratio);
    if (limit > 0 && ratio > limit) within = false;
  }
  return worst;
}

Result criterion10() {
  Result r;
  double c = 0;
  bool unused = true;
  for (const std::string& name : testing::corpus_names()) {
    Compiled comp = testing::compile_corpus(name);
    r.require(same_shape(flatten_program(*comp.flat), comp.flat->program()), name + " idempotent");
    c = std::max(c, quadratic_ratio(comp, 0, unused));
    Typing a = infer(*comp.flat);
    Typing b = infer(*comp.source);
    r.require(a.typable == b.typable && a.pinned == b.pinned, name + " typability preserved");
  }
  std::mt19937 rng(5);
  bool within = true;
  for (int i = 0; i < 50; ++i) quadratic_ratio(compile(testing::random_program(rng, 6)), c, within);
  r.require(within, "random bodies within the corpus-fitted constant");
  char buf[120];
  std::snprintf(buf, sizeof buf, "idempotent and typability-preserving on the corpus; c=%.3f holds on 50 random programs", c);
  r.note(buf);
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"typability verdicts", criterion1},      {"safety verdicts", criterion2},
      {"levels and intricacy", criterion3},     {"bound report", criterion4},
      {"empirical validation", criterion5},     {"interpreter oracle", criterion6},
      {"inference oracle", criterion7},         {"non-interference", criterion8},
      {"subject reduction", criterion9},        {"flattening laws", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result res;
    try {
      res = criteria[i].second();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    failed += !res.pass;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, criteria[i].first.c_str(), res.pass ? "PASS" : "FAIL",
                res.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
