// Acceptance suite: one PASS/FAIL line per criterion, with its time limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "csc/centre.hpp"
#include "csc/equiv.hpp"
#include "csc/fuzz.hpp"
#include "csc/semantics.hpp"
#include "golden_typing.hpp"

using namespace csc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

#define EXPECT(cond, msg)                                   \
  do {                                                      \
    if (!(cond)) return Outcome{false, std::string(msg)};  \
  } while (0)

int failures = 0;

void criterion(int n, const char* what, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = s < limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d  %-44s %9.4f s (limit %g s)  %s%s\n", pass ? "PASS" : "FAIL", n, what, s, limit_s,
              o.detail.c_str(), in_time ? "" : "  [too slow]");
  std::fflush(stdout);
}

// Z(M) by pairwise commutation of the table.
std::vector<Elem> brute_centre(const FinMonoid& m) {
  std::vector<Elem> z;
  for (Elem a = 0; a < m.size(); ++a) {
    bool c = true;
    for (Elem b = 0; b < m.size() && c; ++b) c = m(a, b) == m(b, a);
    if (c) z.push_back(a);
  }
  return z;
}

bool brute_commutative(const FinMonoid& m) { return brute_centre(m).size() == m.size(); }

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

// --- 1..7: centres ---------------------------------------------------------------------

Outcome c1() {
  const FinMonoid d4 = fixtures::dihedral4();
  const auto t0 = std::chrono::steady_clock::now();
  FinMonoid z = monoid_centre(d4);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  EXPECT(z.size() == 2, "|Z(D4)| = " + std::to_string(z.size()));
  EXPECT(ms < 1.0, "monoid_centre took " + std::to_string(ms) + " ms");
  return {true, "|Z(D4)| = 2 in " + std::to_string(ms) + " ms"};
}

Outcome c2() {
  const FinMonoid d4 = fixtures::dihedral4();
  auto t = writer_monad(d4);
  const auto z = brute_centre(d4);
  for (std::uint64_t x = 1; x <= 3; ++x) {
    CentreResult r = centre_at(*t, x, {1, 2});
    std::vector<Elem> want;
    for (Elem a = 0; a < x; ++a)
      for (Elem c : z) want.push_back(a * d4.size() + c);
    EXPECT(r.carrier == want, "carrier differs from X × Z(D4) at |X| = " + std::to_string(x));
    EXPECT(r.stable, "unstable at |X| = " + std::to_string(x));
  }
  return {true, "X × Z(D4) at |X| = 1, 2, 3; stable"};
}

Outcome c3() {
  const FinMonoid d4 = fixtures::dihedral4();
  const std::vector<std::pair<std::string, FinMonoid>> ms = {{"Z2", fixtures::cyclic(2)},
                                                              {"Z3", fixtures::cyclic(3)},
                                                              {"Z(D4)", monoid_centre(d4)},
                                                              {"D4", d4},
                                                              {"S3", fixtures::symmetric3()}};
  std::vector<std::string> seen;
  for (const auto& [name, m] : ms) {
    const bool got = check_commutative(*writer_monad(m), {1, 2, 3});
    EXPECT(got == brute_commutative(m), name + ": check_commutative = " + (got ? "true" : "false"));
    seen.push_back(name + (got ? " comm" : " non-comm"));
  }
  return {true, join(seen)};
}

Outcome c4() {
  auto t = continuation_monad(2);
  CentreResult r = centre_at(*t, 1, {1, 2});
  EXPECT(t->size(1) == 4, "|T 1| = " + std::to_string(t->size(1)));
  EXPECT(r.carrier == std::vector<Elem>{t->eta(1, 0)}, "carrier has " + std::to_string(r.carrier.size()) + " elements");
  return {true, "centre = η(1): 1 of 4"};
}

Outcome c5() {
  IsoReport r = verify_centre_iso(*writer_monad(fixtures::dihedral4()), 1, 1);
  std::ostringstream d;
  d << r.morphisms << " morphisms, " << r.central << " central, " << r.factoring << " factoring, "
    << r.mismatches.size() << " mismatches";
  EXPECT(r.morphisms == 8 && r.central == 2 && r.factoring == 2 && r.mismatches.empty(), d.str());
  return {true, d.str()};
}

Outcome c6() {
  D4Report r = d4_noncentralisable_witness();
  EXPECT(r.central_endomorphisms_of_unit == 2, "central endomorphisms: " + std::to_string(r.central_endomorphisms_of_unit));
  EXPECT(!r.central_count_is_power_of_8, "reported as a power of 8");
  // independent check of the hom-set sizes: functions D4^a -> D4^b number 8^(b·8^a)
  for (const auto& [a, b, k] : r.homset_exponents) {
    std::uint64_t dom = 1;
    for (unsigned i = 0; i < a; ++i) dom *= 8;
    EXPECT(k == b * dom, "hom-set exponent mismatch");
  }
  EXPECT(r.obstruction(), "no obstruction");
  return {true, "|Z(C)[1,1]| = 2, not a power of 8"};
}

Outcome c7() {
  const FinSemiring s = fixtures::bool_matrices2();
  // Z(S) by exhaustive pairwise commutation of the multiplication
  std::vector<Elem> zs;
  for (Elem a = 0; a < s.size(); ++a) {
    bool c = true;
    for (Elem b = 0; b < s.size() && c; ++b) c = s.mul(a, b) == s.mul(b, a);
    if (c) zs.push_back(a);
  }
  auto t = semiring_monad(s);
  CentreResult r = centre_at(*t, 1, {1, 2});
  EXPECT(r.carrier == zs, "|X| = 1: " + std::to_string(r.carrier.size()) + " central vs |Z(S)| = " + std::to_string(zs.size()));
  // |X| = 2: coefficient vectors (c0, c1) with both in Z(S), index c0·|S| + c1
  std::vector<Elem> want2;
  for (Elem c0 : zs)
    for (Elem c1 : zs) want2.push_back(c0 * s.size() + c1);
  CentreResult r2 = centre_at(*t, 2, {1, 2});
  EXPECT(r2.carrier == want2, "|X| = 2 carrier differs");
  std::vector<std::string> labels;
  for (Elem z : zs) labels.push_back(s.carrier().label(z));
  return {true, "Z(S) = {" + join(labels) + "}; matches at |X| = 1, 2"};
}

// --- 8: laws ---------------------------------------------------------------------------

Outcome c8() {
  const FinMonoid d4 = fixtures::dihedral4();
  struct Case {
    std::string name;
    std::shared_ptr<const FiniteMonad> t;
    Sizes sizes;
  };
  std::vector<Case> cases;
  const Sizes upto3{0, 1, 2, 3};
  std::vector<std::pair<FinMonoid, std::vector<Elem>>> writers = {
      {fixtures::cyclic(2), {0, 1}}, {fixtures::cyclic(3), {0, 1, 2}}, {monoid_centre(d4), {0, 1}},
      {d4, monoid_centre_elements(d4)}, {fixtures::symmetric3(), monoid_centre_elements(fixtures::symmetric3())}};
  int i = 0;
  for (const auto& [m, central] : writers) {
    const std::string n = "writer#" + std::to_string(i++);
    Model model = writer_model(m, central, n);
    cases.push_back({n, model.T, upto3});
    cases.push_back({n + "/S", model.S, upto3});
    Model unit = unit_submonad_model(model.T, n);
    cases.push_back({n + "/unit", unit.S, upto3});
  }
  cases.push_back({"identity", identity_monad(), upto3});
  // the remaining fixtures, exhaustively at the sizes their hom-sets can be enumerated
  cases.push_back({"continuation(2)", continuation_monad(2), {0, 1, 2}});
  cases.push_back({"semiring(bool)", semiring_monad(fixtures::booleans()), {0, 1, 2, 3}});
  cases.push_back({"semiring(Z3)", semiring_monad(fixtures::integers_mod(3)), {0, 1, 2}});
  cases.push_back({"semiring(M2(bool))", semiring_monad(fixtures::bool_matrices2()), {0, 1}});

  LawOptions opts;
  opts.budget = 20'000'000;
  std::size_t checks = 0;
  for (const auto& c : cases) {
    LawReport r = check_monad_laws(*c.t, c.sizes, opts);
    EXPECT(r.passed(), c.name + " fails " + r.failures().front().law + ": " + r.failures().front().witness);
    EXPECT(r.exhaustive(), c.name + " was only sampled");
    checks += r.checks.size();
  }
  auto bad = corrupt_bind(writer_monad(d4), 8, 24, 5);
  LawReport neg = check_monad_laws(*bad, {1, 2}, opts);
  EXPECT(!neg.passed(), "corrupted μ passed");
  EXPECT(!neg.failures().front().witness.empty(), "corrupted μ failed without a witness");
  return {true, std::to_string(cases.size()) + " monads, " + std::to_string(checks) +
                    " exhaustive checks; corrupted μ caught at " + neg.failures().front().law};
}

// --- 9..11: equational engine -----------------------------------------------------------

Outcome c9() {
  const Theory g = parse_theory("name G\nground A\nground B\nconst f : A -> T A\n");
  const Context gctx = parse_context("x0 : A, m : S A, n : T B");
  auto nf = [&](const char* s) { return normalize(g, gctx, parse_term(s)).term; };
  EXPECT(nf("do_T x <- ret_T x0; f x") == nf("f x0"), "(X.beta) golden");
  EXPECT(nf("iota (ret_S x0)") == nf("ret_T x0"), "(iotaS.ret) golden");
  EXPECT(nf("do_T x <- iota m; do_T y <- n; ret_T <x, y>") == nf("do_T y <- n; do_T x <- iota m; ret_T <x, y>"),
         "(S.central) golden");

  // every composition act_c ; act_c' = act_{cc'}
  const FinMonoid d4 = fixtures::dihedral4();
  const Theory th = d4_theory();
  const Model model = d4_model();
  const Context none;
  DecideOptions budget;
  budget.budget = 2000;
  for (Elem c = 0; c < d4.size(); ++c)
    for (Elem d = 0; d < d4.size(); ++d) {
      Term lhs = Term::do_(Flavour::T, Term::free(action_constant(d4, c)), Term::free(action_constant(d4, d)), "_");
      Term rhs = Term::free(action_constant(d4, d4(c, d)));
      Verdict v = decide_equal(th, none, lhs, rhs, budget);
      EXPECT(std::holds_alternative<Equal>(v), to_string(lhs) + " = " + to_string(rhs) + ": " + verdict_name(v));
    }

  // fuzzed derivable pairs
  const Context ctx = parse_context("k : T 1, m : S 1");
  std::mt19937_64 rng(42);
  FuzzOptions fo;
  fo.depth = 4;
  const auto types = fuzz_types(th);
  int equal = 0;
  for (int i = 0; i < 500; ++i) {
    const Type& ty = types[i % types.size()];
    Term a = generate_term(th, ctx, ty, rng, fo);
    Term b = perturb(th, ctx, a, 6, rng, nullptr, fo);
    Verdict v = decide_equal(th, ctx, a, b, budget);
    EXPECT(std::holds_alternative<Equal>(v), "fuzz #" + std::to_string(i) + ": " + verdict_name(v));
    EXPECT(interpret_term(model, th, ctx, a) == interpret_term(model, th, ctx, b),
           "fuzz #" + std::to_string(i) + " differs in writer(D4)");
    ++equal;
  }
  return {true, "3 golden, 64 compositions, " + std::to_string(equal) + "/500 fuzzed Equal and sound"};
}

Outcome c10() {
  const Theory th = d4_theory();
  const Model model = d4_model();
  DecideOptions o;
  o.oracle = &model;
  Verdict v = decide_equal(th, Context{}, parse_term("do_T _ <- act_r; act_s"), parse_term("do_T _ <- act_s; act_r"), o);
  auto* d = std::get_if<Distinct>(&v);
  EXPECT(d, std::string("verdict ") + verdict_name(v));
  EXPECT(d->lhs_value != d->rhs_value, "witness values coincide");
  return {true, "Distinct: " + d->lhs_value + " vs " + d->rhs_value};
}

Outcome c11() {
  const Theory th = parse_theory(golden::kTheory);
  const Context ctx = parse_context(golden::kContext);
  for (const auto& p : golden::kPositive) {
    Type t = infer(th, ctx, parse_term(p.term));
    EXPECT(type_equal(th, t, parse_type(p.type)), std::string(p.term) + " : " + to_string(t));
  }
  bool iota_on_t = false;
  for (const auto& n : golden::kNegative) {
    try {
      infer(th, ctx, parse_term(n.term));
      return {false, std::string("accepted ") + n.term};
    } catch (const TypeError& e) {
      EXPECT(e.kind() == n.kind, std::string(n.term) + " rejected as " + to_string(e.kind()));
      if (std::string(n.term) == "iota k") iota_on_t = true;
    }
  }
  EXPECT(iota_on_t, "no iota-on-T fixture");
  return {true, std::to_string(golden::kPositive.size()) + " accepted, " + std::to_string(golden::kNegative.size()) +
                    " rejected with the expected error"};
}

// --- 12: properties -----------------------------------------------------------------------

struct Subject {
  std::string name;
  MonadPtr t;
};

std::vector<Subject> subjects() {
  return {{"writer(D4)", writer_monad(fixtures::dihedral4())},
          {"writer(S3)", writer_monad(fixtures::symmetric3())},
          {"continuation(2)", continuation_monad(2)},
          {"semiring(M2(bool))", semiring_monad(fixtures::bool_matrices2())}};
}

// Random f : X -> T Y, biased towards central ones so both branches occur.
std::vector<Elem> random_morphism(const FiniteMonad& t, const CentreResult& zy, std::uint64_t x, std::uint64_t y,
                                  std::mt19937_64& rng) {
  std::vector<Elem> f(x);
  const bool central = rng() % 4 != 0;
  for (auto& v : f)
    v = central ? zy.carrier[rng() % zy.carrier.size()] : std::uniform_int_distribution<Elem>(0, t.size(y) - 1)(rng);
  return f;
}

Outcome c12() {
  const auto subs = subjects();
  std::map<std::pair<std::size_t, std::uint64_t>, CentreResult> centres;
  auto centre = [&](std::size_t s, std::uint64_t x) -> const CentreResult& {
    auto key = std::make_pair(s, x);
    auto it = centres.find(key);
    if (it == centres.end()) it = centres.emplace(key, centre_at(*subs[s].t, x, {1, 2})).first;
    return it->second;
  };
  std::mt19937_64 rng(2024);
  auto size = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };

  int pre_central = 0, post_central = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t s = rng() % subs.size();
    const FiniteMonad& t = *subs[s].t;
    const std::uint64_t x = size(1, 2), y = size(1, 2), w = size(1, 3);
    auto f = random_morphism(t, centre(s, y), x, y, rng);
    if (!is_central_morphism(t, y, f)) continue;
    ++pre_central;
    std::vector<Elem> g(w), fg(w);
    for (auto& v : g) v = rng() % x;
    for (std::uint64_t j = 0; j < w; ++j) fg[j] = f[g[j]];
    EXPECT(is_central_morphism(t, y, fg), subs[s].name + ": f ∘ pure g lost centrality");
  }
  for (int i = 0; i < 1000; ++i) {
    const std::size_t s = rng() % subs.size();
    const FiniteMonad& t = *subs[s].t;
    const std::uint64_t x = size(1, 2), y = size(1, 2), y2 = size(1, 2);
    auto f = random_morphism(t, centre(s, y), x, y, rng);
    if (!is_central_morphism(t, y, f)) continue;
    ++post_central;
    std::vector<Elem> g(y), tgf(x);
    for (auto& v : g) v = rng() % y2;
    for (std::uint64_t j = 0; j < x; ++j) tgf[j] = t.fmap(y, y2, g, f[j]);
    EXPECT(is_central_morphism(t, y2, tgf), subs[s].name + ": T g ∘ f lost centrality");
  }
  EXPECT(pre_central > 300 && post_central > 300, "too few central samples");

  for (int i = 0; i < 1000; ++i) {
    const std::size_t s = rng() % subs.size();
    const std::uint64_t x = size(1, s == 3 ? 2 : 3);
    const CentreResult& r = centre(s, x);
    const Elem a = rng() % x;
    EXPECT(std::binary_search(r.carrier.begin(), r.carrier.end(), subs[s].t->eta(x, a)),
           subs[s].name + ": η outside the centre");
  }

  const Model d4 = d4_model();
  for (int i = 0; i < 1000; ++i) {
    const std::size_t s = rng() % subs.size();
    const std::uint64_t x = size(1, s == 3 ? 2 : 3);
    EXPECT(centre(s, x).inclusion.injective(), subs[s].name + ": centre inclusion not injective");
    const std::uint64_t y = size(0, 3);
    const auto& c = d4.S->carrier(y);
    const Elem e1 = rng() % std::max<std::uint64_t>(c.size(), 1), e2 = rng() % std::max<std::uint64_t>(c.size(), 1);
    if (!c.empty()) EXPECT((e1 == e2) == (d4.S->include(y, e1) == d4.S->include(y, e2)), "iota not injective");
  }

  const Theory th = d4_theory();
  const Context ctx = parse_context("k : T 1, m : S 1");
  FuzzOptions fo;
  fo.depth = 4;
  const auto types = fuzz_types(th);
  for (int i = 0; i < 1000; ++i) {
    Term a = generate_term(th, ctx, types[i % types.size()], rng, fo);
    const Term base = normalize(th, ctx, a).term;
    NormalizeOptions o;
    o.shuffle_seed = rng();
    EXPECT(normalize(th, ctx, a, o).term == base, "confluence: " + to_string(a));
  }
  return {true, "4 × 1000 trials (" + std::to_string(pre_central) + "/" + std::to_string(post_central) +
                    " central pre/post samples) + 1000 confluence trials"};
}

}  // namespace

int main() {
  criterion(1, "monoid centre of D4", 0.001, c1);
  criterion(2, "centre of writer(D4) is X × Z(D4)", 1, c2);
  criterion(3, "writer(M) commutative iff M is", 5, c3);
  criterion(4, "continuation centre is the η-image", 1, c4);
  criterion(5, "centre iso for writer(D4), X = Y = 1", 1, c5);
  criterion(6, "D4 cardinality obstruction", 1, c6);
  criterion(7, "semiring centre is Z(S)-vectors", 30, c7);
  criterion(8, "monad-law suite", 60, c8);
  criterion(9, "equational engine", 120, c9);
  criterion(10, "refutation with a witness", 1, c10);
  criterion(11, "typechecker golden suite", 1, c11);
  criterion(12, "property suites", 300, c12);
  std::printf("%s: %d of 12 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
