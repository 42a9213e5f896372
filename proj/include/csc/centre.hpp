#pragma once

// Brute-force centres of finite strong monads and the law suites that go with them.
//
// Centrality quantifies over every set Y. Here Y ranges over a finite family of
// test sizes, so a computed carrier is an upper bound on the true centre; the
// `stable` flag records whether dropping the largest test object changes it.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "csc/monad.hpp"

namespace csc {

using Sizes = std::vector<std::uint64_t>;

inline const Sizes kDefaultTestSizes = {1, 2};

/// Elements commuting with every element, in increasing order.
std::vector<Elem> monoid_centre_elements(const FinMonoid& m);
FinMonoid monoid_centre(const FinMonoid& m);

struct CentreResult {
  FinSet base;
  std::vector<Elem> carrier;  // sorted indices into T X
  FinFunction inclusion;      // carrier -> T X
  std::vector<FinSet> test_objects_used;
  bool stable = true;
};

/// Whether t ∈ T X commutes with every s ∈ T Y for Y in `test_sizes`.
bool is_central_element(const FiniteMonad& t, std::uint64_t x, Elem elem, const Sizes& test_sizes);

CentreResult centre_at(const FiniteMonad& t, std::uint64_t x, const Sizes& test_sizes = kDefaultTestSizes);

/// Central-cone check for (X, f) with f : X -> T Y given as a table.
bool is_central_morphism(const FiniteMonad& t, std::uint64_t y, std::span<const Elem> f,
                         const Sizes& test_sizes = kDefaultTestSizes);

/// Premonoidal-centre check: f ⋉ g = f ⋊ g for every g : X' -> T Y' with
/// |X'|, |Y'| in `test_sizes`, compared as maps X × X' -> T(Y × Y').
bool is_central_kleisli(const FiniteMonad& t, std::uint64_t y, std::span<const Elem> f,
                        const Sizes& test_sizes = kDefaultTestSizes);

bool check_commutative(const FiniteMonad& t, const Sizes& sizes);

/// The centre as a submonad of t, carriers computed on demand by centre_at.
std::shared_ptr<const SubsetMonad> centre_submonad(MonadPtr t, Sizes test_sizes = kDefaultTestSizes);

// --- law suites ---------------------------------------------------------------

struct LawCheck {
  std::string law;
  std::string objects;  // e.g. "X=2 Y=3"
  std::uint64_t instances = 0;
  bool exhaustive = true;
  bool passed = true;
  std::string witness;
};

struct LawReport {
  std::string monad;
  std::vector<LawCheck> checks;
  bool passed() const;
  bool exhaustive() const;
  std::vector<LawCheck> failures() const;
};

enum class LawForm {
  Auto,     // multiplication form when T^3 X fits the budget, else Kleisli form
  Mu,       // η, μ, τ diagrams on T^2 X and T^3 X
  Kleisli,  // bind-based triple laws
};

struct LawOptions {
  LawForm form = LawForm::Auto;
  std::uint64_t budget = 2'000'000;  // instances per law before falling back to sampling
  std::uint64_t samples = 20'000;
  std::uint64_t seed = 1;
};

LawReport check_monad_laws(const FiniteMonad& t, const Sizes& sizes, const LawOptions& opts = {});

/// t with one bind result replaced: binding `at_elem` of T X' with |X'| = at_size
/// yields `wrong` instead. With at_size = |T X| this corrupts one entry of μ_X.
MonadPtr corrupt_bind(MonadPtr t, std::uint64_t at_size, Elem at_elem, Elem wrong);

// --- iso and obstruction checks -------------------------------------------------------------

struct IsoReport {
  std::uint64_t x = 0, y = 0;
  std::uint64_t morphisms = 0;
  std::uint64_t central = 0;
  std::uint64_t factoring = 0;
  std::uint64_t premonoidal_central = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty() && central == factoring && central == premonoidal_central; }
};

inline constexpr std::uint64_t kKleisliEnumerationCap = 1'000'000;

/// Enumerates all f : X -> T Y and compares centrality with factoring through
/// the centre at Y. Throws SizeBlowup past kKleisliEnumerationCap morphisms.
IsoReport verify_centre_iso(const FiniteMonad& t, std::uint64_t x, std::uint64_t y,
                            const Sizes& test_sizes = kDefaultTestSizes);

struct D4Report {
  std::uint64_t kleisli_endomorphisms_of_unit = 0;
  std::uint64_t central_endomorphisms_of_unit = 0;
  bool central_count_is_power_of_8 = false;
  std::vector<std::string> central_labels;
  /// (a, b, k) with |C[D4^a, D4^b]| = 8^k.
  std::vector<std::tuple<unsigned, unsigned, std::uint64_t>> homset_exponents;
  bool rotations_commutative = false;
  std::vector<std::string> rotations_not_central;
  bool centre_all_central = false;
  bool obstruction() const { return central_endomorphisms_of_unit == 2 && !central_count_is_power_of_8; }
};

D4Report d4_noncentralisable_witness();

bool is_power_of(std::uint64_t n, std::uint64_t base);

nlohmann::json to_json(const CentreResult& r, const FiniteMonad& t);
nlohmann::json to_json(const LawReport& r);
nlohmann::json to_json(const IsoReport& r);
nlohmann::json to_json(const D4Report& r);

}  // namespace csc
