#pragma once

// Finite sets, functions between them, and finite algebraic structures given
// by operation tables.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csc/error.hpp"

namespace csc {

/// Elements of a finite set are identified by their index 0..size-1.
using Elem = std::uint64_t;

inline constexpr std::uint64_t kDefaultSizeCap = 1'000'000;

/// a * b, throwing SizeBlowup past `cap`.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap, const std::string& what);
/// base ^ exp, throwing SizeBlowup past `cap`. 0^0 = 1.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap, const std::string& what);

class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::uint64_t size) : size_(size) {}
  /// Throws csc::Error on repeated labels.
  explicit FinSet(std::vector<std::string> labels);

  std::uint64_t size() const { return size_; }
  std::string label(Elem i) const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(std::string_view label) const;

  /// Carriers compare by cardinality; labels are display-only.
  friend bool operator==(const FinSet& a, const FinSet& b) { return a.size_ == b.size_; }

 private:
  std::uint64_t size_ = 0;
  std::vector<std::string> labels_;
};

class FinFunction {
 public:
  FinFunction(FinSet dom, FinSet cod, std::vector<Elem> table);

  static FinFunction identity(const FinSet& x);
  static FinFunction constant(const FinSet& dom, const FinSet& cod, Elem value);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  const std::vector<Elem>& table() const { return table_; }
  Elem operator()(Elem x) const { return table_.at(x); }

  bool injective() const;
  /// this ∘ g
  FinFunction after(const FinFunction& g) const;

  friend bool operator==(const FinFunction& a, const FinFunction& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.table_ == b.table_;
  }

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<Elem> table_;
};

/// Cartesian product index: (a, b) ↦ a·|B| + b.
inline Elem pair_index(Elem a, Elem b, std::uint64_t size_b) { return a * size_b + b; }

/// Enumerates all functions [0,dom) -> [0,cod) as tables, in the order of
/// their big-endian index (f(0) most significant).
std::vector<Elem> function_table(Elem index, std::uint64_t dom, std::uint64_t cod);
Elem function_index(std::span<const Elem> table, std::uint64_t cod);

class FinMonoid {
 public:
  /// Validates associativity and unit laws exhaustively; throws csc::Error.
  FinMonoid(FinSet carrier, Elem unit, std::vector<Elem> mult);
  /// No validation: used for negative controls.
  static FinMonoid unchecked(FinSet carrier, Elem unit, std::vector<Elem> mult);

  /// Reason the tables violate the monoid laws, if they do.
  static std::optional<std::string> violation(const FinSet& carrier, Elem unit,
                                              const std::vector<Elem>& mult);

  const FinSet& carrier() const { return carrier_; }
  std::uint64_t size() const { return carrier_.size(); }
  Elem unit() const { return unit_; }
  Elem operator()(Elem a, Elem b) const { return mult_[a * size() + b]; }
  const std::vector<Elem>& table() const { return mult_; }
  bool commutative() const;

 private:
  struct NoCheck {};
  FinMonoid(NoCheck, FinSet carrier, Elem unit, std::vector<Elem> mult);
  FinSet carrier_;
  Elem unit_;
  std::vector<Elem> mult_;
};

/// A submonoid together with its inclusion into the parent.
struct Submonoid {
  FinMonoid monoid;
  std::vector<Elem> inclusion;  // index in submonoid -> index in parent
};

/// Throws csc::Error if `elems` is not closed under the unit and multiplication.
Submonoid submonoid(const FinMonoid& m, std::vector<Elem> elems);

class FinSemiring {
 public:
  /// Validates both monoid structures, commutativity of +, distributivity and
  /// annihilation exhaustively; throws csc::Error.
  FinSemiring(FinSet carrier, Elem zero, Elem one, std::vector<Elem> add, std::vector<Elem> mul);

  const FinSet& carrier() const { return carrier_; }
  std::uint64_t size() const { return carrier_.size(); }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  Elem add(Elem a, Elem b) const { return add_[a * size() + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * size() + b]; }
  bool commutative() const;
  const std::vector<Elem>& add_table() const { return add_; }
  const std::vector<Elem>& mul_table() const { return mul_; }

 private:
  FinSet carrier_;
  Elem zero_;
  Elem one_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
};

namespace fixtures {

FinMonoid cyclic(std::uint64_t n);        // Z_n under addition
/// Dihedral group of order 8: r^k s^f labelled e r r2 r3 s rs r2s r3s, with s r = r^3 s.
FinMonoid dihedral4();
FinMonoid symmetric3();                   // permutations of {0,1,2} under composition
std::vector<Elem> d4_rotations();         // {e, r, r2, r3}
FinSemiring booleans();                   // ({0,1}, or, and)
FinSemiring integers_mod(std::uint64_t n);
FinSemiring bool_matrices2();             // 2x2 Boolean matrices, entrywise or, matrix product

}  // namespace fixtures

}  // namespace csc
