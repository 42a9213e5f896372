#include "doctest.h"

#include <algorithm>

#include "csc/centre.hpp"

using namespace csc;

namespace {

// Z(M) by pairwise commutation.
std::vector<Elem> brute_centre(const FinMonoid& m) {
  std::vector<Elem> out;
  for (Elem a = 0; a < m.size(); ++a) {
    bool ok = true;
    for (Elem b = 0; b < m.size() && ok; ++b) ok = m(a, b) == m(b, a);
    if (ok) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("monoid centres") {
  const FinMonoid d4 = fixtures::dihedral4();
  auto z = monoid_centre_elements(d4);
  CHECK(z == brute_centre(d4));
  REQUIRE(z.size() == 2);
  CHECK(d4.carrier().label(z[0]) == "e");
  CHECK(d4.carrier().label(z[1]) == "r2");
  CHECK(monoid_centre(d4).commutative());
  CHECK(monoid_centre_elements(fixtures::symmetric3()).size() == 1);
  CHECK(monoid_centre_elements(fixtures::cyclic(4)).size() == 4);
}

TEST_CASE("writer centre is X × Z(M)") {
  for (const FinMonoid& m : {fixtures::dihedral4(), fixtures::symmetric3(), fixtures::cyclic(3)}) {
    auto t = writer_monad(m);
    const auto z = brute_centre(m);
    for (std::uint64_t x = 1; x <= 3; ++x) {
      CentreResult r = centre_at(*t, x, {1, 2});
      std::vector<Elem> want;
      for (Elem a = 0; a < x; ++a)
        for (Elem c : z) want.push_back(a * m.size() + c);
      CHECK(r.carrier == want);
      CHECK(r.stable);
      CHECK(r.inclusion.injective());
      CHECK(r.inclusion.table() == r.carrier);
    }
  }
}

TEST_CASE("continuation centre is the η-image") {
  auto t = continuation_monad(2);
  for (std::uint64_t x = 1; x <= 2; ++x) {
    CentreResult r = centre_at(*t, x, {1, 2});
    std::vector<Elem> eta;
    for (Elem a = 0; a < x; ++a) eta.push_back(t->eta(x, a));
    std::sort(eta.begin(), eta.end());
    CHECK(r.carrier == eta);
  }
  CHECK(t->size(1) == 4);
}

TEST_CASE("list centre within the length cap") {
  // The empty list commutes with everything, so the centre is X + 1.
  auto t = list_monad(3);
  for (std::uint64_t x = 1; x <= 2; ++x) {
    CentreResult r = centre_at(*t, x, {1, 2});
    REQUIRE(r.carrier.size() == x + 1);
    CHECK(t->label(x, r.carrier[0]) == "[]");
    for (std::size_t i = 1; i < r.carrier.size(); ++i) CHECK(t->label(x, r.carrier[i]) == "[" + std::to_string(i - 1) + "]");
  }
}

TEST_CASE("commutative monads are their own centre") {
  auto check_whole = [](MonadPtr t, std::uint64_t x) {
    CentreResult r = centre_at(*t, x, {1, 2});
    CHECK(r.carrier.size() == t->size(x));
  };
  check_whole(writer_monad(fixtures::cyclic(3)), 2);
  check_whole(semiring_monad(fixtures::booleans()), 2);
  check_whole(semiring_monad(fixtures::integers_mod(3)), 1);
  check_whole(identity_monad(), 3);
}

TEST_CASE("check_commutative tracks the monoid") {
  CHECK(check_commutative(*writer_monad(fixtures::cyclic(2)), {1, 2}));
  CHECK(!check_commutative(*writer_monad(fixtures::dihedral4()), {1, 2}));
  CHECK(check_commutative(*writer_monad(monoid_centre(fixtures::dihedral4())), {1, 2}));
  CHECK(!check_commutative(*continuation_monad(2), {1, 2}));
  CHECK(check_commutative(*semiring_monad(fixtures::booleans()), {1, 2}));
}

TEST_CASE("centre submonad") {
  auto t = writer_monad(fixtures::dihedral4());
  auto z = centre_submonad(t);
  CHECK(z->size(1) == 2);
  CHECK(z->size(3) == 6);
  CHECK(check_commutative(*z, {1, 2}));
  CHECK(check_monad_laws(*z, {0, 1, 2}).passed());
}

TEST_CASE("central morphisms") {
  auto t = writer_monad(fixtures::dihedral4());
  const Elem r = 1, r2 = 2;
  std::vector<Elem> f_r{r}, f_r2{r2};
  CHECK(!is_central_morphism(*t, 1, f_r));
  CHECK(is_central_morphism(*t, 1, f_r2));
  CHECK(is_central_kleisli(*t, 1, f_r2));
  CHECK(!is_central_kleisli(*t, 1, f_r));
}

TEST_CASE("centre iso") {
  IsoReport d4 = verify_centre_iso(*writer_monad(fixtures::dihedral4()), 1, 1);
  CHECK(d4.morphisms == 8);
  CHECK(d4.central == 2);
  CHECK(d4.factoring == 2);
  CHECK(d4.ok());
  IsoReport z2 = verify_centre_iso(*writer_monad(fixtures::cyclic(2)), 2, 2);
  CHECK(z2.morphisms == 16);
  CHECK(z2.central == 16);
  CHECK(z2.ok());
  IsoReport k = verify_centre_iso(*continuation_monad(2), 1, 1);
  CHECK(k.central == 1);
  CHECK(k.ok());
  CHECK_THROWS_AS(verify_centre_iso(*writer_monad(fixtures::dihedral4()), 7, 3), SizeBlowup);
}

TEST_CASE("D4 obstruction") {
  D4Report r = d4_noncentralisable_witness();
  CHECK(r.kleisli_endomorphisms_of_unit == 8);
  CHECK(r.central_endomorphisms_of_unit == 2);
  CHECK(!r.central_count_is_power_of_8);
  CHECK(r.obstruction());
  for (const auto& [a, b, k] : r.homset_exponents) CHECK(k == std::uint64_t(b) * (std::uint64_t(1) << (3 * a)));
  CHECK(r.rotations_commutative);
  CHECK(r.rotations_not_central == std::vector<std::string>{"r", "r3"});
  CHECK(r.centre_all_central);
  CHECK(is_power_of(64, 8));
  CHECK(is_power_of(1, 8));
  CHECK(!is_power_of(2, 8));
}
