#include "doctest.h"

#include "csc/semantics.hpp"
#include "csc/theory.hpp"

using namespace csc;

namespace {

const char* kSample = R"(name Sample
ground A
ground B
type-eq B = A -> T A
const f : B
const a : A
# comment
axiom @fa [x : A] |- f x = ret_T x : T A
axiom [] |- f a = ret_T a : T A
)";

}  // namespace

TEST_CASE("parse a theory") {
  Theory th = parse_theory(kSample);
  CHECK(th.name == "Sample");
  CHECK(th.ground_types == std::set<std::string>{"A", "B"});
  CHECK(th.constants.size() == 2);
  REQUIRE(th.term_axioms.size() == 2);
  CHECK(th.term_axioms[0].label == "fa");
  CHECK(th.term_axioms[1].label == "axiom2");
  CHECK(th.term_axioms[0].ctx.size() == 1);
  CHECK(validate_theory(th).empty());
}

TEST_CASE("serialize round-trips") {
  for (const Theory& th : {parse_theory(kSample), d4_theory()}) {
    Theory back = parse_theory(serialize_theory(th));
    CHECK(back.name == th.name);
    CHECK(back.ground_types == th.ground_types);
    CHECK(back.constants == th.constants);
    CHECK(back.type_axioms == th.type_axioms);
    REQUIRE(back.term_axioms.size() == th.term_axioms.size());
    for (std::size_t i = 0; i < th.term_axioms.size(); ++i) {
      CHECK(back.term_axioms[i].label == th.term_axioms[i].label);
      CHECK(back.term_axioms[i].lhs == th.term_axioms[i].lhs);
      CHECK(back.term_axioms[i].rhs == th.term_axioms[i].rhs);
    }
  }
}

TEST_CASE("loader rejects malformed theories") {
  CHECK_THROWS_AS(parse_theory("const f A"), LoadError);
  CHECK_THROWS_AS(parse_theory("frobnicate x"), LoadError);
  CHECK_THROWS_AS(parse_theory("ground A\nconst a : A\nconst a : A"), LoadError);
  CHECK_THROWS_AS(parse_theory("axiom [] |- * : 1"), LoadError);
  // ill-typed axiom and an undeclared ground type
  CHECK_THROWS_AS(parse_theory("ground A\nconst a : A\naxiom [] |- a = * : 1"), LoadError);
  CHECK_THROWS_AS(parse_theory("const c : G"), LoadError);
  CHECK_THROWS_AS(load_theory("/nonexistent.csct"), LoadError);
}

TEST_CASE("type equality is the congruence closure") {
  Theory th = parse_theory(kSample);
  const Type a = Type::ground("A"), b = Type::ground("B");
  CHECK(type_equal(th, b, parse_type("A -> T A")));
  CHECK(type_equal(th, Type::mon_s(b), parse_type("S (A -> T A)")));
  CHECK(type_equal(th, parse_type("B * 1"), parse_type("(A -> T A) * 1")));
  CHECK(!type_equal(th, a, b));
  CHECK(!type_equal(th, Type::mon_s(b), Type::mon_t(b)));

  Theory chain;
  chain.ground_types = {"X", "Y", "Z"};
  chain.type_axioms = {{Type::ground("X"), Type::ground("Y")}, {Type::ground("Y"), Type::ground("Z")}};
  CHECK(type_equal(chain, Type::ground("X"), Type::ground("Z")));
  CHECK(type_equal(chain, parse_type("T X -> Y"), parse_type("T Z -> X")));

  TypeClosure tc(th);
  auto shape = tc.find_shape(b, TypeKind::Arrow);
  REQUIRE(shape);
  CHECK(*shape == parse_type("A -> T A"));
  CHECK(!tc.find_shape(a, TypeKind::Arrow));
}

TEST_CASE("well-formedness") {
  Theory th = parse_theory(kSample);
  CHECK(well_formed(th, parse_type("A -> T B")));
  CHECK(!well_formed(th, parse_type("C")));
  CHECK_THROWS_AS(require_well_formed(th, parse_type("T C")), Error);
}
