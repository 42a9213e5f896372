#include <algorithm>

#include "csc/centre.hpp"

namespace csc {

std::vector<Elem> monoid_centre_elements(const FinMonoid& m) {
  std::vector<Elem> out;
  for (Elem a = 0; a < m.size(); ++a) {
    bool central = true;
    for (Elem b = 0; b < m.size() && central; ++b) central = m(a, b) == m(b, a);
    if (central) out.push_back(a);
  }
  return out;
}

FinMonoid monoid_centre(const FinMonoid& m) { return submonoid(m, monoid_centre_elements(m)).monoid; }

bool is_central_element(const FiniteMonad& t, std::uint64_t x, Elem elem, const Sizes& test_sizes) {
  for (std::uint64_t y : test_sizes) {
    const std::uint64_t ty = t.size(y);
    for (Elem s = 0; s < ty; ++s)
      if (!t.commutes(x, elem, y, s)) return false;
  }
  return true;
}

namespace {

std::vector<Elem> central_carrier(const FiniteMonad& t, std::uint64_t x, const Sizes& test_sizes) {
  std::vector<Elem> out;
  const std::uint64_t tx = t.size(x);
  for (Elem e = 0; e < tx; ++e)
    if (is_central_element(t, x, e, test_sizes)) out.push_back(e);
  return out;
}

}  // namespace

CentreResult centre_at(const FiniteMonad& t, std::uint64_t x, const Sizes& test_sizes) {
  const std::uint64_t tx = t.size(x);
  for (std::uint64_t y : test_sizes) t.size(y);
  auto carrier = central_carrier(t, x, test_sizes);

  bool stable = true;
  if (!test_sizes.empty()) {
    Sizes fewer = test_sizes;
    fewer.erase(std::max_element(fewer.begin(), fewer.end()));
    stable = central_carrier(t, x, fewer) == carrier;
  }
  std::vector<FinSet> used;
  for (std::uint64_t y : test_sizes) used.emplace_back(y);
  FinFunction inclusion(FinSet(carrier.size()), FinSet(tx), carrier);
  return CentreResult{FinSet(x), std::move(carrier), std::move(inclusion), std::move(used), stable};
}

bool is_central_morphism(const FiniteMonad& t, std::uint64_t y, std::span<const Elem> f, const Sizes& test_sizes) {
  return std::all_of(f.begin(), f.end(), [&](Elem e) { return is_central_element(t, y, e, test_sizes); });
}

bool is_central_kleisli(const FiniteMonad& t, std::uint64_t y, std::span<const Elem> f, const Sizes& test_sizes) {
  for (std::uint64_t x2 : test_sizes)
    for (std::uint64_t y2 : test_sizes) {
      const std::uint64_t ty2 = t.size(y2);
      const std::uint64_t yy = checked_mul(y, y2, t.cap(), "Y × Y'");
      const std::uint64_t count = checked_pow(ty2, x2, kKleisliEnumerationCap, "Kleisli maps X' -> T Y'");
      for (Elem gi = 0; gi < count; ++gi) {
        auto g = function_table(gi, x2, ty2);
        for (Elem a : f)
          for (Elem a2 : g) {
            // f first, then g
            std::vector<Elem> k1(y);
            for (Elem b = 0; b < y; ++b) {
              std::vector<Elem> pairs(y2);
              for (Elem b2 = 0; b2 < y2; ++b2) pairs[b2] = t.eta(yy, pair_index(b, b2, y2));
              k1[b] = t.bind(y2, yy, a2, pairs);
            }
            // g first, then f
            std::vector<Elem> k2(y2);
            for (Elem b2 = 0; b2 < y2; ++b2) {
              std::vector<Elem> pairs(y);
              for (Elem b = 0; b < y; ++b) pairs[b] = t.eta(yy, pair_index(b, b2, y2));
              k2[b2] = t.bind(y, yy, a, pairs);
            }
            if (t.bind(y, yy, a, k1) != t.bind(y2, yy, a2, k2)) return false;
          }
      }
    }
  return true;
}

bool check_commutative(const FiniteMonad& t, const Sizes& sizes) {
  for (std::uint64_t x : sizes)
    for (std::uint64_t y : sizes) {
      const std::uint64_t tx = t.size(x), ty = t.size(y);
      for (Elem a = 0; a < tx; ++a)
        for (Elem b = 0; b < ty; ++b)
          if (!t.commutes(x, a, y, b)) return false;
    }
  return true;
}

std::shared_ptr<const SubsetMonad> centre_submonad(MonadPtr t, Sizes test_sizes) {
  const FiniteMonad* raw = t.get();
  auto carrier = [raw, test_sizes](std::uint64_t x) { return centre_at(*raw, x, test_sizes).carrier; };
  std::string name = "Z(" + t->name() + ")";
  return std::make_shared<SubsetMonad>(std::move(t), carrier, std::move(name));
}

IsoReport verify_centre_iso(const FiniteMonad& t, std::uint64_t x, std::uint64_t y, const Sizes& test_sizes) {
  IsoReport r;
  r.x = x;
  r.y = y;
  const std::uint64_t ty = t.size(y);
  r.morphisms = checked_pow(ty, x, kKleisliEnumerationCap, "Kleisli maps X -> T Y");
  auto centre = centre_at(t, y, test_sizes).carrier;
  for (Elem i = 0; i < r.morphisms; ++i) {
    auto f = function_table(i, x, ty);
    bool central = is_central_morphism(t, y, f, test_sizes);
    bool premonoidal = is_central_kleisli(t, y, f, test_sizes);
    bool factors = std::all_of(f.begin(), f.end(),
                               [&](Elem e) { return std::binary_search(centre.begin(), centre.end(), e); });
    r.central += central;
    r.premonoidal_central += premonoidal;
    r.factoring += factors;
    if (central != factors || central != premonoidal) {
      std::string desc = "f = [";
      for (std::size_t a = 0; a < f.size(); ++a) desc += (a ? ", " : "") + t.label(y, f[a]);
      desc += "]: central=" + std::to_string(central) + " premonoidal=" + std::to_string(premonoidal) +
              " factors=" + std::to_string(factors);
      r.mismatches.push_back(desc);
    }
  }
  return r;
}

bool is_power_of(std::uint64_t n, std::uint64_t base) {
  if (n == 0 || base < 2) return n == 1;
  while (n % base == 0) n /= base;
  return n == 1;
}

D4Report d4_noncentralisable_witness() {
  D4Report r;
  const FinMonoid d4 = fixtures::dihedral4();
  auto m = writer_monad(d4, "writer(D4)");
  // Test objects drawn from the subcategory itself: D4^0 and D4^1.
  const Sizes objects = {1, 8};

  const std::uint64_t t1 = m->size(1);
  r.kleisli_endomorphisms_of_unit = t1;
  for (Elem e = 0; e < t1; ++e) {
    std::vector<Elem> f = {e};
    if (is_central_morphism(*m, 1, f, objects)) {
      ++r.central_endomorphisms_of_unit;
      r.central_labels.push_back(m->label(1, e));
    }
  }
  r.central_count_is_power_of_8 = is_power_of(r.central_endomorphisms_of_unit, 8);
  for (unsigned a = 0; a <= 2; ++a)
    for (unsigned b = 0; b <= 2; ++b) {
      std::uint64_t dom = 1;
      for (unsigned i = 0; i < a; ++i) dom *= 8;
      r.homset_exponents.emplace_back(a, b, b * dom);
    }

  auto rot = submonoid(d4, fixtures::d4_rotations());
  r.rotations_commutative = rot.monoid.commutative();
  for (Elem c : rot.inclusion) {
    std::vector<Elem> f = {c};  // * ↦ (*, c)
    if (!is_central_morphism(*m, 1, f, objects)) r.rotations_not_central.push_back(d4.carrier().label(c));
  }
  r.centre_all_central = true;
  for (Elem z : monoid_centre_elements(d4)) {
    std::vector<Elem> f = {z};
    r.centre_all_central = r.centre_all_central && is_central_morphism(*m, 1, f, objects);
  }
  return r;
}

nlohmann::json to_json(const CentreResult& r, const FiniteMonad& t) {
  nlohmann::json j;
  j["monad"] = t.name();
  j["base_size"] = r.base.size();
  j["size_TX"] = r.inclusion.cod().size();
  j["carrier"] = r.carrier;
  std::vector<std::string> labels;
  for (Elem e : r.carrier) labels.push_back(t.label(r.base.size(), e));
  j["labels"] = labels;
  std::vector<std::uint64_t> tests;
  for (const auto& y : r.test_objects_used) tests.push_back(y.size());
  j["test_sizes"] = tests;
  j["stable"] = r.stable;
  return j;
}

nlohmann::json to_json(const IsoReport& r) {
  return {{"x", r.x},
          {"y", r.y},
          {"morphisms", r.morphisms},
          {"central", r.central},
          {"premonoidal_central", r.premonoidal_central},
          {"factoring", r.factoring},
          {"mismatches", r.mismatches},
          {"ok", r.ok()}};
}

nlohmann::json to_json(const D4Report& r) {
  nlohmann::json homs = nlohmann::json::array();
  for (auto [a, b, k] : r.homset_exponents) homs.push_back({{"dom_power", a}, {"cod_power", b}, {"log8_size", k}});
  return {{"kleisli_endomorphisms_of_unit", r.kleisli_endomorphisms_of_unit},
          {"central_endomorphisms_of_unit", r.central_endomorphisms_of_unit},
          {"central_labels", r.central_labels},
          {"central_count_is_power_of_8", r.central_count_is_power_of_8},
          {"homsets", homs},
          {"rotations_commutative", r.rotations_commutative},
          {"rotations_not_central", r.rotations_not_central},
          {"centre_all_central", r.centre_all_central},
          {"obstruction", r.obstruction()}};
}

}  // namespace csc
