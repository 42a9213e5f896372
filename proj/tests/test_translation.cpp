#include "doctest.h"

#include "csc/semantics.hpp"
#include "csc/translation.hpp"

using namespace csc;

namespace {

const char* kFlip = R"(name Flip
const flip : T 1
const half : S 1
axiom @invol [] |- do_T _ <- flip; flip = ret_T * : T 1
)";

const char* kPoly = R"(name Poly
ground A
const f : A -> T A
const a : A
)";

Translation flip_to(const char* image) {
  TranslationFile f;
  f.constants = {{"flip", image}, {"half", "zact_e"}};
  return build_translation(f, parse_theory(kFlip), d4_theory());
}

}  // namespace

TEST_CASE("a reflection is an involution") {
  CHECK(check_translation(flip_to("act_s"), 2000).status == TranslationVerdict::Status::Verified);
  CHECK(check_translation(flip_to("act_r2"), 2000).status == TranslationVerdict::Status::Verified);
}

TEST_CASE("a quarter turn is not") {
  Model m = d4_model();
  TranslationVerdict v = check_translation(flip_to("act_r"), 200, &m);
  CHECK(v.status == TranslationVerdict::Status::FailedAt);
  CHECK(v.failed == "invol");
  TranslationVerdict u = check_translation(flip_to("act_r"), 200);
  CHECK(u.status == TranslationVerdict::Status::Unknown);
  CHECK(u.unknown == std::vector<std::string>{"invol"});
}

TEST_CASE("ill-typed images") {
  CHECK_THROWS_AS(check_translation(flip_to("zact_r2"), 100), IllTypedTranslation);
  CHECK_THROWS_AS(check_translation(flip_to("iota act_r"), 100), IllTypedTranslation);
}

TEST_CASE("translation files") {
  TranslationFile f = parse_translation_file("source a.csct\ntarget b.csct\n# x\nground A => T B\nconst c => ret_T *\n");
  CHECK(f.source == "a.csct");
  CHECK(f.ground.at("A") == "T B");
  CHECK(f.constants.at("c") == "ret_T *");
  CHECK_THROWS_AS(parse_translation_file("source a\n"), Error);
  CHECK_THROWS_AS(parse_translation_file("source a\ntarget b\nconst c ret_T *\n"), Error);
  CHECK_THROWS_AS(build_translation(parse_translation_file("source a\ntarget b\n"), parse_theory(kFlip), d4_theory()),
                  Error);
}

TEST_CASE("identity and composition") {
  const Theory poly = parse_theory(kPoly);
  Translation id = identity_translation(poly);
  CHECK(check_translation(id, 100).status == TranslationVerdict::Status::Verified);
  CHECK(translate_type(id, parse_type("A -> T A")) == parse_type("A -> T A"));

  Translation sq{poly, poly, {{"A", parse_type("A * A")}}, {}};
  sq.constants.emplace("a", parse_term("<a, a>"));
  sq.constants.emplace("f", parse_term("\\p : A * A. do_T x <- f (fst p); do_T y <- f (snd p); ret_T <x, y>"));
  CHECK(check_translation(sq, 100).status == TranslationVerdict::Status::Verified);
  Translation twice = compose(sq, sq);
  CHECK(translate_type(twice, Type::ground("A")) == parse_type("(A * A) * (A * A)"));
  CHECK(check_translation(twice, 100).status == TranslationVerdict::Status::Verified);
  CHECK(translate_term(id, parse_term("f a")) == parse_term("f a"));
}

TEST_CASE("transformations") {
  const Theory poly = parse_theory(kPoly);
  Translation id = identity_translation(poly);
  TranslationTransformation alpha{id, id, {}};
  std::vector<Probe> probes{{parse_context("x : A"), parse_term("f x"), parse_type("T A")},
                            {parse_context("x : A"), parse_term("<x, x>"), parse_type("A * A")}};
  CHECK(check_transformation(alpha, probes, 200).status == TranslationVerdict::Status::Verified);

  TranslationTransformation wrong{id, id, {{"A", parse_term("a")}}};
  CHECK(check_transformation(wrong, probes, 200).status != TranslationVerdict::Status::Verified);

  TranslationTransformation ill{id, id, {{"A", parse_term("f x")}}};
  CHECK_THROWS_AS(check_transformation(ill, probes, 200), IllTypedComponent);
}
