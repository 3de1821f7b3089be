#include <doctest.h>

#include "aoo/safety/safety.hpp"
#include "corpus.hpp"

using namespace aoo;
using aoo::testing::compile_corpus;
using aoo::testing::corpus_source;

namespace {

int node_of(const CallGraph& g, const std::string& sig) {
  for (int v = 0; v < g.size(); ++v)
    if (g.signature(v) == sig) return v;
  return -1;
}

SafetyReport safety_of(const Compiled& c) { return check_safety(*c.flat, type_segments(*c.flat)); }

const MethodSafety* method(const SafetyReport& r, const std::string& sig) {
  for (const MethodSafety& m : r.methods)
    if (m.signature == sig) return &m;
  return nullptr;
}

std::string with_comp(const std::string& src, const std::string& comp) {
  auto at = src.find("//Comp");
  auto end = src.rfind("}", src.rfind("}") - 1);
  return src.substr(0, at) + "//Comp\n" + comp + "\n  " + src.substr(end);
}

}  // namespace

TEST_CASE("levels of the list methods") {
  Compiled c = compile_corpus("blist_length");
  CallGraph g(*c.flat);
  std::vector<int> lv = levels(g);
  for (const char* s : {"BList.getQueue()", "BList.getValue()", "BList.setQueue(BList)", "BList.isEqual(BList)"}) {
    int v = node_of(g, s);
    REQUIRE(v >= 0);
    CHECK_MESSAGE(lv[v] == 0, s);
  }
  CHECK(lv[node_of(g, "BList.decrement()")] == 1);
  CHECK(lv[node_of(g, "BList.length()")] == 1);
}

TEST_CASE("level of mutual recursion above a recursive callee") {
  Compiled c = compile(R"(
A {
  int f(int x) { if (x > 0) { x := this.g(x - 1); } else {;} return x; }
  int g(int x) { x := this.f(x); x := this.h(x); return x; }
  int h(int x) { if (x > 0) { x := this.h(x - 1); } else {;} return x; }
}
Exe { void main() { A a := new A(); //Comp
 int y := a.f(3); } }
)");
  CallGraph g(*c.flat);
  std::vector<int> lv = levels(g);
  CHECK(lv[node_of(g, "A.h(int)")] == 1);
  CHECK(lv[node_of(g, "A.f(int)")] == 2);
  CHECK(lv[node_of(g, "A.g(int)")] == 2);
}

TEST_CASE("intricacy of nested loops around isEqual") {
  std::string src = with_comp(corpus_source("blist_isequal"),
                              "int m := 3; boolean r := true;\n"
                              "while (n > 0) { while (m > 0) { r := b.isEqual(c); m := m - 1; } n := n - 1; }");
  Compiled c = compile(src);
  SafetyReport r = safety_of(c);
  REQUIRE(r.nu);
  CHECK(*r.nu == 3);
  CHECK(r.lambda == 0);
}

TEST_CASE("intricacy undefined with a loop in a recursive body") {
  Compiled c = compile(R"(
A {
  int f(int x) { while (x > 0) { x := x - 1; } if (x > 0) { x := this.f(x); } else {;} return x; }
}
Exe { void main() { A a := new A(); //Comp
 int y := a.f(3); } }
)");
  SafetyReport r = safety_of(c);
  CHECK_FALSE(r.nu);
  const MethodSafety* m = method(r, "A.f(int)");
  REQUIRE(m);
  CHECK_FALSE(m->item2);
  CHECK_FALSE(r.safe);
}

TEST_CASE("length is safe") {
  SafetyReport r = safety_of(compile_corpus("blist_length"));
  CHECK(r.typable);
  CHECK(r.safe);
  CHECK(r.lambda == 1);
  REQUIRE(r.nu);
  CHECK(*r.nu == 0);
  const MethodSafety* m = method(r, "BList.length()");
  REQUIRE(m);
  CHECK(m->item1);
  CHECK(m->item2);
  CHECK(m->item3);
  CHECK(m->branchwise);
}

TEST_CASE("decrement is unsafe through the tier-1 interface") {
  SafetyReport r = safety_of(compile_corpus("blist_decrement"));
  CHECK(r.typable);
  CHECK_FALSE(r.safe);
  const MethodSafety* m = method(r, "BList.decrement()");
  REQUIRE(m);
  CHECK(m->item1);
  CHECK(m->item2);
  CHECK_FALSE(m->item3);
}

TEST_CASE("two recursive calls break the first item") {
  Compiled c = compile(R"(
T {
  T l; T r;
  int size() {
    int s := 1;
    if (l != null) { int a := l.size(); s := s + a; } else {;}
    if (r != null) { int b := r.size(); s := s + b; } else {;}
    return s;
  }
}
Exe { void main() { T t := new T(); //Comp
 int z := t.size(); } }
)");
  SafetyReport r = safety_of(c);
  const MethodSafety* m = method(r, "T.size()");
  REQUIRE(m);
  CHECK(m->recursive_calls == 2);
  CHECK_FALSE(m->item1);
  CHECK_FALSE(m->branchwise);
  CHECK_FALSE(r.safe);
}

TEST_CASE("calls in exclusive branches are branchwise safe") {
  Compiled c = compile(R"(
T {
  T l; T r; boolean left;
  int depth() {
    int s := 1;
    if (left) { if (l != null) { s := l.depth(); } else {;} } else { if (r != null) { s := r.depth(); } else {;} }
    return s;
  }
}
Exe { void main() { T t := new T(); //Comp
 int z := t.depth(); } }
)");
  SafetyReport r = safety_of(c);
  const MethodSafety* m = method(r, "T.depth()");
  REQUIRE(m);
  CHECK_FALSE(m->item1);
  CHECK(m->branchwise);
}

TEST_CASE("override edges join the call graph") {
  Compiled c = compile_corpus("override");
  CallGraph g(*c.flat);
  bool any = false;
  for (int v = 0; v < g.size(); ++v)
    for (int w : g.callees(v))
      if (g.body(v).index == g.body(w).index && g.body(v).cls != g.body(w).cls && !g.body(v).ctor) any = true;
  CHECK(any);
}

TEST_CASE("corpus safety verdicts") {
  CHECK(safety_of(compile_corpus("blist_loop")).safe);
  CHECK(safety_of(compile_corpus("ring")).safe);
  CHECK_FALSE(safety_of(compile_corpus("exp")).typable);
  CHECK_FALSE(safety_of(compile_corpus("expo")).typable);
  SafetyReport d = safety_of(compile_corpus("declass"));
  CHECK(d.typable);
}
