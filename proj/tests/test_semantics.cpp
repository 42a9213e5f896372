#include "doctest.h"

#include "csc/semantics.hpp"

using namespace csc;

namespace {

const char* kZ2Theory = R"(name Z2
ground G
const c : G
const flip : G -> G
const tick : T 1
const ztick : S 1
)";

const char* kZ2Model = R"(name Z2
monad writer
elements 0 1
unit 0
mult 0 1
mult 1 0
submonad centre
ground G = 2
const c = 1
const flip = [1 0]
const tick = 1
const ztick = 1
)";

Model z2_model(const Theory& th) { return build_model(parse_model_file(kZ2Model), th); }

Elem eval0(const Model& m, const Theory& th, const char* ctx, const char* term, std::vector<Elem> env = {}) {
  return evaluate(m, th, parse_context(ctx), parse_term(term), env);
}

}  // namespace

TEST_CASE("type sizes") {
  const Theory th = parse_theory(kZ2Theory);
  const Model m = z2_model(th);
  CHECK(interpret_size(m, parse_type("G")) == 2);
  CHECK(interpret_size(m, parse_type("G * G * 1")) == 4);
  CHECK(interpret_size(m, parse_type("G -> G")) == 4);
  CHECK(interpret_size(m, parse_type("T G")) == 4);
  CHECK(interpret_size(m, parse_type("S G")) == 4);
  CHECK(interpret_size(m, parse_type("(G -> G) -> G")) == 16);
  CHECK_THROWS_AS(interpret_size(m, parse_type("H")), UninterpretedGround);
}

TEST_CASE("pairs, tables and contexts follow the fixed encodings") {
  const Theory th = parse_theory(kZ2Theory);
  const Model m = z2_model(th);
  CHECK(eval0(m, th, "", "<c, flip c>") == 1 * 2 + 0);
  CHECK(eval0(m, th, "", "flip") == 1 * 2 + 0);  // f(0) = 1 is the most significant digit
  CHECK(eval0(m, th, "", "\\x : G. x") == 0 * 2 + 1);
  CHECK(eval0(m, th, "", "\\x : G. c") == 1 * 2 + 1);
  CHECK(eval0(m, th, "x : G, y : G", "<x, y>", {0, 1}) == 1);
  const Context ctx = parse_context("x : G, y : G");
  CHECK(context_size(m, ctx) == 4);
  CHECK(context_env(m, ctx, 1) == std::vector<Elem>{0, 1});
  CHECK(context_env(m, ctx, 2) == std::vector<Elem>{1, 0});
}

TEST_CASE("writer semantics") {
  const Theory th = parse_theory(kZ2Theory);
  const Model m = z2_model(th);
  // (a, c) ↦ a·|M| + c
  CHECK(eval0(m, th, "", "ret_T c") == 1 * 2 + 0);
  CHECK(eval0(m, th, "", "do_T _ <- tick; ret_T c") == 1 * 2 + 1);
  CHECK(eval0(m, th, "", "do_T _ <- tick; do_T _ <- tick; ret_T c") == 1 * 2 + 0);
  CHECK(eval0(m, th, "", "iota ztick") == 1);
  CHECK(eval0(m, th, "", "do_T x <- ret_T c; ret_T (flip x)") == 0);

  const Theory d4t = d4_theory();
  const Model d4 = d4_model();
  const FinMonoid g = fixtures::dihedral4();
  auto idx = [&](const char* l) { return *g.carrier().find(l); };
  CHECK(eval0(d4, d4t, "", "do_T _ <- act_r; act_s") == idx("rs"));
  CHECK(eval0(d4, d4t, "", "do_T _ <- act_s; act_r") == idx("r3s"));
  CHECK(eval0(d4, d4t, "", "iota zact_r2") == idx("r2"));
  CHECK(eval0(d4, d4t, "", "zact_r2") == 1);  // position in the sorted submonoid
  CHECK(eval0(d4, d4t, "k : T 1", "do_T _ <- act_r; k", {idx("s")}) == idx("rs"));
}

TEST_CASE("strength pairs the environment with the effect") {
  const Theory d4t = d4_theory();
  const Model d4 = d4_model();
  // ⟦T (1 × 1)⟧ has 8 elements; the action passes through unchanged.
  CHECK(eval0(d4, d4t, "k : T 1", "do_T x <- k; ret_T <x, *>", {5}) == 5);
}

TEST_CASE("interpret_term tabulates over the context") {
  const Theory th = parse_theory(kZ2Theory);
  const Model m = z2_model(th);
  FinFunction f = interpret_term(m, th, parse_context("x : G"), parse_term("flip x"));
  CHECK(f.table() == std::vector<Elem>{1, 0});
  CHECK(element_label(m, parse_type("T G"), 3) == "(1,1)");
}

TEST_CASE("model validation") {
  CHECK(validate_model(d4_model()).empty());
  CHECK(validate_model_for(d4_model(), d4_theory()).empty());
  // rotations form a commutative submonoid, but r is not central
  const FinMonoid g = fixtures::dihedral4();
  Model bad = writer_model(g, fixtures::d4_rotations(), "rotations");
  auto issues = validate_model(bad, {1});
  REQUIRE(!issues.empty());
  CHECK(issues.front().check == "iota.central");

  Model missing = d4_model();
  missing.constants.erase("act_r");
  CHECK(!validate_model_for(missing, d4_theory()).empty());
}

TEST_CASE("soundness") {
  SoundnessReport ok = check_model_soundness(d4_model(), d4_theory(), 100, 3);
  CHECK(ok.ok());
  CHECK(ok.axioms_checked == 72);
  CHECK(ok.fuzz_checked + ok.fuzz_skipped == 100);

  Model wrong = d4_model();
  wrong.constants["act_r"] = *fixtures::dihedral4().carrier().find("s");
  SoundnessReport bad = check_model_soundness(wrong, d4_theory(), 0, 3);
  CHECK(!bad.ok());
  CHECK(bad.violations.front().source.rfind("comp_", 0) == 0);
}

TEST_CASE("model files") {
  const Theory th = parse_theory(kZ2Theory);
  CHECK_NOTHROW(z2_model(th));
  CHECK_THROWS_AS(parse_model_file("elements a b\nmult a b\nmult b a"), Error);  // no unit
  CHECK_THROWS_AS(parse_model_file("colour blue"), Error);
  CHECK_THROWS_AS(parse_model_file("elements 0 1\nunit 0\nmult 0 1"), Error);
  std::string no_flip = kZ2Model;
  no_flip.erase(no_flip.find("const flip"), std::string("const flip = [1 0]\n").size());
  CHECK_THROWS_AS(build_model(parse_model_file(no_flip), th), Error);
  std::string bad_index = std::string(kZ2Model) + "const c = 7\n";
  CHECK_THROWS_AS(build_model(parse_model_file(bad_index), th), Error);

  ModelFile k = parse_model_file("monad continuation 2");
  CHECK(build_monad(k)->size(1) == 4);
  CHECK(build_monad(k, "identity")->size(3) == 3);
  CHECK_THROWS_AS(build_monad(k, "writer"), Error);
}
