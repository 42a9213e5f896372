#pragma once

// Abstract syntax of the two-monad calculus: types, nameless terms, contexts.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csc/error.hpp"

namespace csc {

/// Which of the two monads a `ret`/`do`/monadic type refers to.
enum class Flavour { S, T };

const char* to_string(Flavour f);

enum class TypeKind { Unit, Ground, Arrow, Prod, Monad };

/// Immutable, structurally compared type tree.
class Type {
 public:
  static Type unit();
  static Type ground(std::string name);
  static Type arrow(Type dom, Type cod);
  static Type prod(Type left, Type right);
  static Type monad(Flavour f, Type inner);
  static Type mon_t(Type inner) { return monad(Flavour::T, std::move(inner)); }
  static Type mon_s(Type inner) { return monad(Flavour::S, std::move(inner)); }

  TypeKind kind() const;
  bool is(TypeKind k) const { return kind() == k; }
  bool is_monad(Flavour f) const;

  const std::string& name() const;  // Ground only
  Flavour flavour() const;          // Monad only
  const Type& dom() const;          // Arrow
  const Type& cod() const;          // Arrow
  const Type& left() const;         // Prod
  const Type& right() const;        // Prod
  const Type& inner() const;        // Monad

  std::size_t hash() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  /// Total order used for deterministic containers.
  friend bool operator<(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

struct TermBuilder;

enum class TermKind { Var, Free, Star, Lam, App, Pair, Proj, Ret, Iota, Do };

/// Nameless term. Bound variables are de Bruijn indices; identifiers not bound
/// by an enclosing binder are `Free` and are resolved later against a context
/// or the constants of a theory. Binder name hints are kept for printing only
/// and never take part in equality.
class Term {
 public:
  static Term var(std::size_t index);
  static Term free(std::string name);
  static Term star();
  static Term lam(Type annot, Term body, std::string hint = "x");
  static Term app(Term fun, Term arg);
  static Term pair(Term fst, Term snd);
  static Term proj(int i, Term arg);  // i in {1, 2}
  static Term ret(Flavour f, Term arg);
  static Term iota(Term arg);
  static Term do_(Flavour f, Term bound, Term body, std::string hint = "x");

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }

  std::size_t index() const;        // Var
  const std::string& name() const;  // Free: identifier; Lam/Do: binder hint
  const Type& annot() const;        // Lam
  Flavour flavour() const;          // Ret, Do
  int proj_index() const;           // Proj

  /// Children in a fixed order: Lam{body}, App{fun,arg}, Pair{fst,snd},
  /// Proj/Ret/Iota{arg}, Do{bound,body}.
  std::size_t arity() const;
  const Term& child(std::size_t i) const;
  /// Number of binders introduced above child `i` (1 for Lam body, Do body).
  std::size_t binders_above(std::size_t i) const;
  Term with_child(std::size_t i, Term c) const;

  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  const void* identity() const { return node_.get(); }

  struct Node;

 private:
  friend struct TermBuilder;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Ordered typing context; lookup is by name, never by position.
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<std::pair<std::string, Type>> entries);

  /// Throws csc::Error on a repeated name.
  void push(std::string name, Type type);
  Context extended(std::string name, Type type) const;

  const Type* lookup(std::string_view name) const;
  std::optional<std::size_t> position(std::string_view name) const;
  const std::vector<std::pair<std::string, Type>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<std::pair<std::string, Type>> entries_;
};

// --- parsing / printing ----------------------------------------------------

Type parse_type(std::string_view src);
Term parse_term(std::string_view src);
/// Comma-separated `x : A` list, optionally wrapped in brackets.
Context parse_context(std::string_view src);

std::string to_string(const Type& t);
std::string to_string(const Term& t);
std::string to_string(const Context& c);

// --- substitution ------------------------------------------------------------

/// Adds `by` to every index >= `cutoff`.
Term shift(const Term& t, std::ptrdiff_t by, std::size_t cutoff = 0);

/// `body[replacement / 0]`: replaces index 0, decrements the other free indices.
/// `replacement` lives in the scope outside the binder.
Term substitute(const Term& body, const Term& replacement);

/// Replaces the free identifier `name` (not a bound variable) by `replacement`.
Term substitute_free(const Term& body, std::string_view name, const Term& replacement);

/// Replaces every free index i (relative to the root) by f(i), shifting the
/// result under the binders it ends up below.
Term rename_free(const Term& t, const std::function<Term(std::size_t)>& f);

/// True iff bound index `index` (relative to the root) occurs free in t.
bool occurs(const Term& t, std::size_t index);

/// Names of free identifiers occurring in t, in first-occurrence order.
std::vector<std::string> free_names(const Term& t);

/// Nameless representation makes this plain structural equality.
inline bool alpha_eq(const Term& a, const Term& b) { return a == b; }

}  // namespace csc
