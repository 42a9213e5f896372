#include "doctest.h"

#include "csc/syntax.hpp"

using namespace csc;

TEST_CASE("types parse and print") {
  for (const char* src : {"1", "A", "T A", "S T A", "A -> B -> C", "(A -> B) -> C", "A * B * C", "T (A * B)",
                          "A * (B -> T 1)"}) {
    Type t = parse_type(src);
    CHECK(parse_type(to_string(t)) == t);
  }
  CHECK(parse_type("A -> B -> C") == Type::arrow(Type::ground("A"), parse_type("B -> C")));
  CHECK(parse_type("T A * B") == Type::prod(Type::mon_t(Type::ground("A")), Type::ground("B")));
  CHECK(parse_type("A × B") == parse_type("A * B"));
  CHECK_THROWS_AS(parse_type("A ->"), Error);
  CHECK_THROWS_AS(parse_type("T"), Error);
}

TEST_CASE("terms are nameless") {
  CHECK(parse_term("\\x : A. x") == parse_term("\\y : A. y"));
  CHECK(parse_term("λx : A. x") == parse_term("\\x : A. x"));
  CHECK(parse_term("do_T x <- m; ret_T x") == parse_term("do_T y <- m; ret_T y"));
  CHECK(parse_term("do_T x <- m; ret_T x") != parse_term("do_S x <- m; ret_S x"));
  Term t = parse_term("\\x : A. \\y : B. x");
  CHECK(t.child(0).child(0) == Term::var(1));
  CHECK(parse_term("f x").is(TermKind::App));
  CHECK(parse_term("f x").child(1) == Term::free("x"));
}

TEST_CASE("printing round-trips") {
  for (const char* src : {"*", "<a, b>", "fst <a, *>", "snd p", "\\x : T A. do_T y <- x; ret_T <y, y>",
                          "iota (do_S x <- m; ret_S x)", "f (g a) b", "\\f : A -> T B. \\a : A. f a",
                          "do_T _ <- k; do_T x <- iota z; ret_T x", "ret_S ret_S *"}) {
    Term t = parse_term(src);
    CHECK_MESSAGE(parse_term(to_string(t)) == t, src);
  }
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_term("do_T x <- m ret_T x");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("1:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_term("<a, b"), Error);
  CHECK_THROWS_AS(parse_term("\\x. x"), Error);
  CHECK_THROWS_AS(parse_term(""), Error);
}

TEST_CASE("substitution") {
  // (\y. x y)[a/x] with x the bound index 0 of an outer binder
  Term body = parse_term("\\x : A. \\y : A. x y").child(0);  // x is index 1 inside
  Term r = substitute(body, Term::free("a"));
  CHECK(r == parse_term("\\y : A. a y"));

  // capture: replacing by a term with a free index shifts under binders
  Term under = Term::lam(Type::unit(), Term::var(1));
  CHECK(substitute(under, Term::var(0)) == Term::lam(Type::unit(), Term::var(1)));

  CHECK(shift(Term::var(0), 2) == Term::var(2));
  CHECK(shift(Term::lam(Type::unit(), Term::var(0)), 3) == Term::lam(Type::unit(), Term::var(0)));

  Term s = substitute_free(parse_term("do_T x <- k; f x k"), "k", parse_term("act"));
  CHECK(s == parse_term("do_T x <- act; f x act"));
}

TEST_CASE("occurs and free names") {
  Term t = parse_term("\\x : A. \\y : A. y");
  CHECK(!occurs(t.child(0), 1));
  CHECK(occurs(t.child(0).child(0), 0));
  CHECK(free_names(parse_term("f a (\\x : A. g x a)")) == std::vector<std::string>{"f", "a", "g"});
}

TEST_CASE("contexts") {
  Context c = parse_context("x : A, k : T 1");
  CHECK(c.size() == 2);
  CHECK(*c.lookup("k") == Type::mon_t(Type::unit()));
  CHECK(c.position("x") == 0u);
  CHECK(c.lookup("z") == nullptr);
  CHECK_THROWS_AS(c.push("x", Type::unit()), Error);
  CHECK(parse_context("[x : A]").size() == 1);
  CHECK(parse_context("").empty());
  CHECK(parse_context(to_string(c)).entries() == c.entries());
}
