#include "doctest.h"

#include "csc/finite.hpp"

using namespace csc;

TEST_CASE("function tables are big-endian") {
  CHECK(function_table(0, 3, 2) == std::vector<Elem>{0, 0, 0});
  CHECK(function_table(1, 3, 2) == std::vector<Elem>{0, 0, 1});
  CHECK(function_table(4, 3, 2) == std::vector<Elem>{1, 0, 0});
  for (Elem i = 0; i < 27; ++i) CHECK(function_index(function_table(i, 3, 3), 3) == i);
  CHECK(function_table(0, 0, 5).empty());
}

TEST_CASE("size arithmetic refuses to overflow the cap") {
  CHECK(checked_mul(1000, 1000, 1'000'000, "x") == 1'000'000);
  CHECK_THROWS_AS(checked_mul(1001, 1000, 1'000'000, "x"), SizeBlowup);
  CHECK(checked_pow(0, 0, 10, "x") == 1);
  CHECK(checked_pow(2, 20, 1 << 20, "x") == 1 << 20);
  CHECK_THROWS_AS(checked_pow(2, 21, 1 << 20, "x"), SizeBlowup);
  CHECK_THROWS_AS(checked_pow(3, 64, ~0ull, "x"), SizeBlowup);
}

TEST_CASE("finite sets and functions") {
  FinSet s({"a", "b", "c"});
  CHECK(s.size() == 3);
  CHECK(s.find("b") == 1u);
  CHECK(!s.find("z"));
  CHECK(s.label(2) == "c");
  CHECK_THROWS_AS(FinSet({"a", "a"}), Error);
  FinFunction f(FinSet(2), FinSet(3), {2, 0});
  CHECK(f.injective());
  CHECK(!FinFunction::constant(FinSet(2), FinSet(3), 1).injective());
  FinFunction g(FinSet(3), FinSet(2), {1, 1, 0});
  CHECK(g.after(f).table() == std::vector<Elem>{0, 1});
  CHECK(FinFunction::identity(FinSet(3)).after(f) == f);
  CHECK_THROWS_AS(FinFunction(FinSet(2), FinSet(2), {0, 2}), Error);
}

TEST_CASE("monoid validation") {
  CHECK_NOTHROW(FinMonoid(FinSet(2), 0, {0, 1, 1, 0}));
  CHECK_NOTHROW(FinMonoid(FinSet(2), 0, {0, 1, 1, 1}));
  // unit 0, but (1·1)·1 != 1·(1·1)
  CHECK_THROWS_AS(FinMonoid(FinSet(3), 0, {0, 1, 2, 1, 2, 2, 2, 0, 2}), Error);
  CHECK_THROWS_AS(FinMonoid(FinSet(2), 1, {0, 1, 1, 0}), Error);  // wrong unit
  CHECK(FinMonoid::violation(FinSet(2), 1, {0, 1, 1, 0}).has_value());
  CHECK_NOTHROW(FinMonoid::unchecked(FinSet(2), 1, {0, 1, 1, 0}));
}

TEST_CASE("bundled monoids") {
  const FinMonoid d4 = fixtures::dihedral4();
  CHECK(d4.size() == 8);
  CHECK(!d4.commutative());
  const Elem r = *d4.carrier().find("r"), s = *d4.carrier().find("s");
  const Elem r3 = *d4.carrier().find("r3");
  CHECK(d4(s, r) == d4(r3, s));
  CHECK(d4(r, d4(r, d4(r, r))) == d4.unit());
  CHECK(d4(s, s) == d4.unit());
  CHECK(fixtures::cyclic(5).commutative());
  CHECK(!fixtures::symmetric3().commutative());
  CHECK(fixtures::symmetric3().size() == 6);
}

TEST_CASE("submonoids must be closed") {
  const FinMonoid d4 = fixtures::dihedral4();
  Submonoid rot = submonoid(d4, fixtures::d4_rotations());
  CHECK(rot.monoid.size() == 4);
  CHECK(rot.monoid.commutative());
  CHECK(std::is_sorted(rot.inclusion.begin(), rot.inclusion.end()));
  const Elem r = *d4.carrier().find("r");
  CHECK_THROWS_AS(submonoid(d4, {d4.unit(), r}), Error);
  CHECK_THROWS_AS(submonoid(d4, {r}), Error);  // missing the unit
}

TEST_CASE("semirings") {
  const FinSemiring b = fixtures::booleans();
  CHECK(b.commutative());
  CHECK(b.add(1, 1) == 1);
  const FinSemiring z3 = fixtures::integers_mod(3);
  CHECK(z3.add(2, 2) == 1);
  CHECK(z3.mul(2, 2) == 1);
  const FinSemiring m = fixtures::bool_matrices2();
  CHECK(m.size() == 16);
  CHECK(!m.commutative());
  // a failing distributivity table
  std::vector<Elem> add{0, 1, 1, 1}, mul{0, 0, 0, 1};
  CHECK_NOTHROW(FinSemiring(FinSet(2), 0, 1, add, mul));
  std::vector<Elem> bad_mul{1, 0, 0, 1};
  CHECK_THROWS_AS(FinSemiring(FinSet(2), 0, 1, add, bad_mul), Error);
}
