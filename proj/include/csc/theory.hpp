#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "csc/syntax.hpp"

namespace csc {

/// An equation `ctx |- lhs = rhs : type`. Context variables act as schematic
/// variables: by substitution they may be instantiated by any term of their type.
struct TermAxiom {
  std::string label;
  Context ctx;
  Term lhs = Term::star();
  Term rhs = Term::star();
  Type type = Type::unit();
};

/// Signature plus axioms extending the base calculus.
struct Theory {
  std::string name;
  std::set<std::string> ground_types;
  std::map<std::string, Type> constants;
  std::vector<std::pair<Type, Type>> type_axioms;
  std::vector<TermAxiom> term_axioms;

  const Type* constant(std::string_view n) const;
};

/// Congruence closure of the type axioms over a finite universe of subterms.
///
/// The universe holds every subterm of the axiom sides plus whatever types are
/// added. Two types are equal iff they land in the same class once the closure
/// is saturated under the congruence rules for ->, *, S and T.
class TypeClosure {
 public:
  explicit TypeClosure(const Theory& th);

  bool equal(const Type& a, const Type& b);
  /// A member of a's class with the given outermost constructor, if any.
  std::optional<Type> find_shape(const Type& a, TypeKind kind,
                                 std::optional<Flavour> flavour = std::nullopt);
  bool is_unit(const Type& a) { return a.is(TypeKind::Unit) || equal(a, Type::unit()); }

 private:
  std::size_t intern(const Type& t);
  std::size_t find(std::size_t i);
  void saturate();

  bool trivial_;
  std::vector<Type> nodes_;
  std::vector<std::size_t> parent_;
  std::unordered_map<Type, std::size_t, TypeHash> ids_;
  std::vector<std::pair<std::size_t, std::size_t>> kids_;  // child ids (npos if absent)
  bool dirty_ = false;
};

bool type_equal(const Theory& th, const Type& a, const Type& b);

enum class DiagnosticKind { UnknownGroundType, IllTypedAxiom, AxiomSidesDiffer, BadConstant };

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

const char* to_string(DiagnosticKind k);

/// Throws csc::Error (UnknownGroundType) when a type uses an undeclared ground.
void require_well_formed(const Theory& th, const Type& t);
bool well_formed(const Theory& th, const Type& t);

std::vector<Diagnostic> validate_theory(const Theory& th);

/// `.csct` format, see README.
Theory parse_theory(std::string_view text, std::string name = "theory");
Theory load_theory(const std::string& path);
std::string serialize_theory(const Theory& th);

}  // namespace csc
