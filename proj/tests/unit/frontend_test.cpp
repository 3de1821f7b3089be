#include <doctest.h>

#include "aoo/frontend/parser.hpp"
#include "aoo/frontend/printer.hpp"
#include "aoo/frontend/resolved.hpp"
#include "aoo/frontend/well_formed.hpp"
#include "aoo/support/error.hpp"
#include "corpus.hpp"

using namespace aoo;

namespace {

const char* kBList = R"(
BList {
  boolean value;
  BList queue;
  BList() { value := true; queue := null; }
  BList(boolean v, BList q) { value := v; queue := q; }
  BList getQueue() { return queue; }
  void setQueue(BList q) { queue := q; }
  boolean getValue() { return value; }
}
B extends BList { }
Exe { void main() { BList b := new BList(); //Comp
  ; } }
)";

}  // namespace

TEST_CASE("parse BList class") {
  Program p = parse(kBList);
  const ClassDecl* c = p.find_class("BList");
  REQUIRE(c != nullptr);
  CHECK(c->fields.size() == 2);
  CHECK(c->ctors.size() == 2);
  CHECK(c->methods.size() == 3);
  CHECK(p.comp_segment_count() == 1);
  CHECK(check_well_formed(p).empty());
}

TEST_CASE("minimal executable") {
  Program p = parse("Exe { void main() { ; //Comp\n ; } }");
  REQUIRE(p.segments.size() == 2);
  REQUIRE(p.init().size() == 1);
  CHECK(p.init()[0].kind == Instr::Kind::Skip);
  REQUIRE(p.comp().size() == 1);
  CHECK(p.comp()[0].kind == Instr::Kind::Skip);
}

TEST_CASE("syntax errors carry locations") {
  try {
    parse("Exe { void main() { x := ; //Comp\n } }");
    FAIL("expected a syntax error");
  } catch (const SourceError& e) {
    CHECK(e.diagnostic().line == 1);
    CHECK(e.diagnostic().code == "E-SYNTAX");
  }
  CHECK_THROWS_AS(parse("Exe { void main() { ; } }"), SourceError);
  CHECK_THROWS_AS(parse("A { } A { } Exe { void main() { ; //Comp\n } }"), SourceError);
}

TEST_CASE("signatures differing only in return type are rejected") {
  Program p = parse(R"(
C { int m(int a) { int r := a; return r; } boolean m(int a) { boolean r := true; return r; } }
Exe { void main() { ; //Comp
 ; } })");
  CHECK(check_well_formed(p).size() == 1);
}

TEST_CASE("use before declaration is rejected") {
  Program p = parse(R"(
Exe { void main() { int y := x; int x := 0; //Comp
 ; } })");
  CHECK(check_well_formed(p).size() == 1);
}

TEST_CASE("class table") {
  Program p = parse(kBList);
  ClassTable ct(p);
  int b = ct.index("B");
  int bl = ct.index("BList");
  CHECK(ct.is_subclass(b, bl));
  CHECK_FALSE(ct.is_subclass(bl, b));
  CHECK(ct.is_subclass(bl, bl));
  CHECK(ct.has_field(b, "value"));
  CHECK(ct.has_field(b, "queue"));
  auto r = ct.dispatch(b, "getQueue", {});
  REQUIRE(r.has_value());
  CHECK(r->cls == bl);
  CHECK_THROWS_AS(ClassTable(parse("A extends B { } B extends A { } Exe { void main() { ; //Comp\n } }")),
                  IllFormed);
}

TEST_CASE("corpus round-trips through the printer") {
  for (const std::string& name : testing::corpus_names()) {
    CAPTURE(name);
    Program p = parse(testing::corpus_source(name), name);
    Program q = parse(print(p), name);
    CHECK(same_shape(p, q));
    CHECK(check_well_formed(p).empty());
    CHECK_NOTHROW(testing::compile_corpus(name));
  }
}
