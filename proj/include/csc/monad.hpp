#pragma once

// Strong monads on finite sets as executable data.
//
// A set is identified by its cardinality; an element of T X is an index into
// [0, |T X|). Every monad on Set is canonically strong, so the strength is
// derived from the functor action, and the right strength is always derived
// from the left one through the symmetry.

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "csc/finite.hpp"

namespace csc {

class FiniteMonad {
 public:
  explicit FiniteMonad(std::uint64_t cap = kDefaultSizeCap) : cap_(cap) {}
  virtual ~FiniteMonad() = default;

  virtual std::string name() const = 0;
  /// |T X| for |X| = x; throws SizeBlowup above the cap.
  virtual std::uint64_t size(std::uint64_t x) const = 0;
  virtual Elem eta(std::uint64_t x, Elem a) const = 0;
  /// T f for f : X -> Y given as a table of length x.
  virtual Elem fmap(std::uint64_t x, std::uint64_t y, std::span<const Elem> f, Elem t) const = 0;
  /// Kleisli extension: k : X -> T Y given as a table of length x.
  virtual Elem bind(std::uint64_t x, std::uint64_t y, Elem t, std::span<const Elem> k) const = 0;
  virtual std::string label(std::uint64_t x, Elem t) const { return std::to_string(x) + ":" + std::to_string(t); }

  /// mu_X : T T X -> T X. Requires |T T X| within the cap.
  Elem mu(std::uint64_t x, Elem tt) const;
  /// Left strength tau_{X,Y} : X × T Y -> T(X × Y).
  virtual Elem tau(std::uint64_t x, std::uint64_t y, Elem a, Elem s) const;
  /// Right strength T(γ) ∘ tau_{Y,X} ∘ γ : T X × Y -> T(X × Y).
  Elem tau_prime(std::uint64_t x, std::uint64_t y, Elem t, Elem b) const;

  /// Whether sequencing t ∈ T X then s ∈ T Y agrees with s then t, i.e.
  /// mu ∘ T tau' ∘ tau (t, s) = mu ∘ T tau ∘ tau' (t, s) as elements of T(X × Y).
  virtual bool commutes(std::uint64_t x, Elem t, std::uint64_t y, Elem s) const;

  FinSet object(std::uint64_t x) const;
  std::uint64_t cap() const { return cap_; }

 protected:
  std::uint64_t cap_;
};

using MonadPtr = std::shared_ptr<const FiniteMonad>;

/// T X = X × M with η a = (a, e), bind((a, c), k) = (b, c·c') where k a = (b, c').
MonadPtr writer_monad(FinMonoid m, std::string name = "writer", std::uint64_t cap = kDefaultSizeCap);
/// T X = (X -> S) -> S for |S| = s.
MonadPtr continuation_monad(std::uint64_t s, std::uint64_t cap = kDefaultSizeCap);
/// T X = S^X (finite formal sums), bind(v, k)(y) = Σ_x v(x)·k(x)(y).
MonadPtr semiring_monad(FinSemiring s, std::string name = "semiring", std::uint64_t cap = kDefaultSizeCap);
MonadPtr identity_monad(std::uint64_t cap = kDefaultSizeCap);
/// Lists of length <= max_len. Not a monad at the cap boundary: bind throws when
/// a result would be longer. Only `commutes` is reliable (computed uncapped).
MonadPtr list_monad(std::uint64_t max_len, std::uint64_t cap = kDefaultSizeCap);

/// A submonad S of T presented by its carriers and the inclusion ι : S X -> T X.
///
/// The carrier at each size is a sorted subset of T X; S's operations are those
/// of T (co)restricted, and throw csc::Error if the subset is not closed.
class SubsetMonad : public FiniteMonad {
 public:
  using CarrierFn = std::function<std::vector<Elem>(std::uint64_t x)>;
  SubsetMonad(MonadPtr parent, CarrierFn carrier, std::string name);

  std::string name() const override { return name_; }
  std::uint64_t size(std::uint64_t x) const override;
  Elem eta(std::uint64_t x, Elem a) const override;
  Elem fmap(std::uint64_t x, std::uint64_t y, std::span<const Elem> f, Elem t) const override;
  Elem bind(std::uint64_t x, std::uint64_t y, Elem t, std::span<const Elem> k) const override;
  std::string label(std::uint64_t x, Elem t) const override;

  Elem include(std::uint64_t x, Elem t) const;
  const std::vector<Elem>& carrier(std::uint64_t x) const;
  const MonadPtr& parent() const { return parent_; }

 private:
  Elem corestrict(std::uint64_t x, Elem parent_elem) const;

  MonadPtr parent_;
  CarrierFn carrier_fn_;
  std::string name_;
  mutable std::map<std::uint64_t, std::vector<Elem>> cache_;  // references into it stay valid
};

/// Writer submonad for a submonoid of M, included into writer(M).
std::shared_ptr<const SubsetMonad> writer_submonad(MonadPtr writer_parent, const FinMonoid& parent_monoid,
                                                   const std::vector<Elem>& elems, std::string name);
/// The identity monad as the submonad η_X(X) of T.
std::shared_ptr<const SubsetMonad> unit_submonad(MonadPtr parent);

}  // namespace csc
