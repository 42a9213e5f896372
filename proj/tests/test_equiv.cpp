#include "doctest.h"

#include <random>

#include "csc/equiv.hpp"
#include "csc/fuzz.hpp"
#include "csc/semantics.hpp"

using namespace csc;

namespace {

const char* kGround = R"(name Ground
ground A
ground B
const f : A -> T A
const g : A -> S A
const a0 : A
)";

Term nf(const Theory& th, const char* ctx, const char* src) {
  return normalize(th, parse_context(ctx), parse_term(src)).term;
}

bool replays(const Theory& th, const Context& ctx, const Term& from, const Term& to, const RewriteTrace& t) {
  auto r = replay(th, ctx, from, t);
  if (auto* err = std::get_if<std::string>(&r)) {
    MESSAGE(*err);
    return false;
  }
  return std::get<Term>(r) == to;
}

}  // namespace

TEST_CASE("golden rewrites") {
  const Theory th = parse_theory(kGround);
  const char* ctx = "x0 : A, m : S A, n : T B";
  // (X.β)
  CHECK(nf(th, ctx, "do_T x <- ret_T x0; f x") == nf(th, ctx, "f x0"));
  CHECK(nf(th, ctx, "do_S x <- ret_S x0; g x") == parse_term("g x0"));
  // (ιS.ret)
  CHECK(nf(th, ctx, "iota (ret_S x0)") == parse_term("ret_T x0"));
  // (S.central)
  CHECK(nf(th, ctx, "do_T x <- iota m; do_T y <- n; ret_T <x, y>") ==
        nf(th, ctx, "do_T y <- n; do_T x <- iota m; ret_T <x, y>"));
}

TEST_CASE("oriented rules") {
  const Theory th = parse_theory(kGround);
  const char* ctx = "x0 : A, m : S A, k : T A, u : 1";
  CHECK(nf(th, ctx, "(\\x : A. f x) x0") == parse_term("f x0"));
  CHECK(nf(th, ctx, "fst <x0, u>") == parse_term("x0"));
  CHECK(nf(th, ctx, "u") == parse_term("*"));
  CHECK(nf(th, ctx, "do_T x <- k; ret_T x") == parse_term("k"));
  CHECK(nf(th, ctx, "do_T y <- (do_T x <- k; f x); f y") == parse_term("do_T x <- k; do_T y <- f x; f y"));
  // iota distributes over do_S
  CHECK(nf(th, ctx, "iota (do_S x <- m; g x)") == parse_term("do_T x <- iota m; iota (g x)"));
  CHECK(oriented_rules().front() == "lam.beta");
}

TEST_CASE("apply_rule and rule instances") {
  const Theory th = parse_theory(kGround);
  const Context ctx = parse_context("m : S A, k : T A");
  TypeClosure tc(th);
  Locals locals;
  Site site{th, ctx, locals, tc};
  Term swap = parse_term("do_T x <- iota m; do_T y <- k; ret_T <x, y>");
  auto swapped = apply_rule("S.central", swap, site);
  REQUIRE(swapped);
  CHECK(*swapped == parse_term("do_T y <- k; do_T x <- iota m; ret_T <x, y>"));
  CHECK(is_rule_instance("S.central", swap, *swapped, site));
  CHECK(is_rule_instance("S.central", *swapped, swap, site));
  CHECK(!apply_rule("S.central", parse_term("do_T x <- k; do_T y <- k; ret_T <x, y>"), site));
  // dependent bindings never swap
  CHECK(!apply_rule("S.central", parse_term("do_T x <- iota m; do_T y <- iota (g x); ret_T y"), site));
  Term comm = parse_term("do_S x <- m; do_S y <- m; ret_S <x, y>");
  auto c = apply_rule("S.comm", comm, site);
  REQUIRE(c);
  CHECK(*c == parse_term("do_S y <- m; do_S x <- m; ret_S <x, y>"));
  CHECK(!is_rule_instance("lam.beta", swap, *swapped, site));
}

TEST_CASE("normalization traces replay") {
  const Theory th = parse_theory(kGround);
  const Context ctx = parse_context("m : S A, k : T A, x0 : A");
  for (const char* src : {"do_T y <- (do_T x <- iota m; ret_T x); do_T z <- k; ret_T <z, y>",
                          "(\\p : A * A. iota (do_S q <- g (fst p); ret_S <q, snd p>)) <x0, x0>",
                          "do_T u <- k; do_T v <- iota (ret_S x0); do_T w <- iota m; ret_T <u, <v, w>>"}) {
    Term t = parse_term(src);
    Normalized n = normalize(th, ctx, t);
    CHECK_MESSAGE(replays(th, ctx, t, n.term, n.trace), src);
    CHECK(normalize(th, ctx, n.term).term == n.term);
  }
}

TEST_CASE("shuffled normalization reaches the same normal form") {
  const Theory th = parse_theory(kGround);
  const Context ctx = parse_context("m : S A, k : T A, x0 : A");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    Term t = generate_term(th, ctx, parse_type("T (A * A)"), rng);
    Term base = normalize(th, ctx, t).term;
    NormalizeOptions o;
    o.shuffle_seed = i;
    CHECK(normalize(th, ctx, t, o).term == base);
  }
}

TEST_CASE("eta is a comparison, not a rewrite") {
  const Theory th = parse_theory(kGround);
  const Context ctx = parse_context("h : A -> T A, p : A * B");
  CHECK(eta_equal(th, ctx, parse_term("h"), parse_term("\\x : A. h x"), parse_type("A -> T A")));
  CHECK(eta_equal(th, ctx, parse_term("p"), parse_term("<fst p, snd p>"), parse_type("A * B")));
  CHECK(!eta_equal(th, ctx, parse_term("h"), parse_term("\\x : A. f x"), parse_type("A -> T A")));
  Verdict v = decide_equal(th, ctx, parse_term("h"), parse_term("\\x : A. h x"));
  CHECK(std::holds_alternative<Equal>(v));
}

TEST_CASE("decide_equal") {
  const Theory d4 = d4_theory();
  const Model model = d4_model();
  const Context none;
  Verdict comp = decide_equal(d4, none, parse_term("do_T _ <- act_r; act_s"), parse_term("act_rs"));
  REQUIRE(std::holds_alternative<Equal>(comp));
  CHECK(replays(d4, none, parse_term("do_T _ <- act_r; act_s"), parse_term("act_rs"), std::get<Equal>(comp).trace));

  DecideOptions o;
  o.oracle = &model;
  Verdict swap = decide_equal(d4, none, parse_term("do_T _ <- act_r; act_s"), parse_term("do_T _ <- act_s; act_r"), o);
  REQUIRE(std::holds_alternative<Distinct>(swap));
  CHECK(std::get<Distinct>(swap).lhs_value == "(0,rs)");
  CHECK(std::get<Distinct>(swap).rhs_value == "(0,r3s)");

  Verdict unknown = decide_equal(d4, none, parse_term("do_T _ <- act_r; act_s"), parse_term("do_T _ <- act_s; act_r"));
  CHECK(std::holds_alternative<Unknown>(unknown));
  CHECK(std::string(verdict_name(unknown)) == "Unknown");

  CHECK_THROWS_AS(decide_equal(d4, none, parse_term("act_r"), parse_term("zact_e")), TypeMismatch);
  CHECK_THROWS_AS(decide_equal(d4, none, parse_term("iota act_r"), parse_term("act_r")), TypeError);

  const Theory g = parse_theory(kGround);
  CHECK(std::holds_alternative<Equal>(
      decide_equal(g, parse_context("u : 1"), parse_term("(\\x : 1. x) u"), parse_term("*"))));
}

TEST_CASE("axioms bridge under a context") {
  const Theory d4 = d4_theory();
  const Context ctx = parse_context("k : T 1");
  Verdict v = decide_equal(d4, ctx, parse_term("do_T _ <- act_r; do_T _ <- act_r; k"),
                           parse_term("do_T _ <- act_r2; k"));
  REQUIRE(std::holds_alternative<Equal>(v));
  CHECK(replays(d4, ctx, parse_term("do_T _ <- act_r; do_T _ <- act_r; k"), parse_term("do_T _ <- act_r2; k"),
                std::get<Equal>(v).trace));
  // a central action moves past k; a non-central one does not
  CHECK(std::holds_alternative<Equal>(
      decide_equal(d4, ctx, parse_term("do_T _ <- act_r2; k"), parse_term("do_T _ <- k; act_r2"))));
  DecideOptions o;
  Model m = d4_model();
  o.oracle = &m;
  CHECK(std::holds_alternative<Distinct>(
      decide_equal(d4, ctx, parse_term("do_T _ <- act_r; k"), parse_term("do_T _ <- k; act_r"), o)));
}

TEST_CASE("fuzzed pairs are provable and sound") {
  const Theory d4 = d4_theory();
  const Model model = d4_model();
  const Context ctx = parse_context("k : T 1, m : S 1");
  std::mt19937_64 rng(5);
  FuzzOptions fo;
  fo.depth = 3;
  const auto types = fuzz_types(d4);
  for (int i = 0; i < 40; ++i) {
    const Type& ty = types[i % types.size()];
    Term a = generate_term(d4, ctx, ty, rng, fo);
    RewriteTrace t;
    Term b = perturb(d4, ctx, a, 4, rng, &t, fo);
    CHECK(replays(d4, ctx, a, b, t));
    Verdict v = decide_equal(d4, ctx, a, b);
    CHECK_MESSAGE(std::holds_alternative<Equal>(v), to_string(a) << "  vs  " << to_string(b));
    CHECK(interpret_term(model, d4, ctx, a) == interpret_term(model, d4, ctx, b));
  }
}

TEST_CASE("trace JSON") {
  const Theory th = parse_theory(kGround);
  Normalized n = normalize(th, parse_context("x0 : A"), parse_term("(\\x : A. f x) x0"));
  REQUIRE(n.trace.steps.size() == 1);
  auto j = to_json(n.trace.steps[0]);
  CHECK(j["rule"] == "lam.beta");
  CHECK(to_json_lines(n.trace).find("lam.beta") != std::string::npos);
  CHECK(path_string({}) == "root");
}
