#pragma once

// Translations between theories and the transformations between them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csc/equiv.hpp"
#include "csc/theory.hpp"

namespace csc {

class IllTypedTranslation : public Error {
 public:
  explicit IllTypedTranslation(const std::string& m) : Error("IllTypedTranslation: " + m) {}
};

class IllTypedComponent : public Error {
 public:
  explicit IllTypedComponent(const std::string& m) : Error("IllTypedComponent: " + m) {}
};

/// Images of ground types and constants. Composite types translate
/// structurally; nothing else is stored.
struct Translation {
  Theory source;
  Theory target;
  std::map<std::string, Type> ground;
  std::map<std::string, Term> constants;  // closed terms of the target theory
};

Translation identity_translation(const Theory& th);

Type translate_type(const Translation& v, const Type& a);
Term translate_term(const Translation& v, const Term& m);
Context translate_context(const Translation& v, const Context& ctx);

struct TranslationVerdict {
  enum class Status { Verified, FailedAt, Unknown } status = Status::Verified;
  std::string failed;  // axiom label, or the probe, for FailedAt
  std::string detail;  // witness or reason
  std::vector<std::string> unknown;  // axioms left undecided
};

const char* to_string(TranslationVerdict::Status s);

/// Every translated axiom must be provable in the target within `budget`;
/// `countermodel` (a model of the target) can refute one. Throws
/// IllTypedTranslation when a constant's image has the wrong type.
TranslationVerdict check_translation(const Translation& v, std::size_t budget, const Model* countermodel = nullptr);

/// Translation `from` followed by `to` (to.source must be from.target).
Translation compose(const Translation& from, const Translation& to);

struct TranslationTransformation {
  Translation from;
  Translation to;
  /// Component at A, a term in `x : V(A)` of type V'(A). Types without a
  /// component use `x` itself, which requires V(A) = V'(A).
  std::map<std::string, Term> components;  // keyed by to_string(A)

  Term component(const Type& a) const;
};

struct Probe {
  Context ctx;  // exactly one variable
  Term term;
  Type type;
};

/// Checks α_B[V(f)/x] = V'(f)[α_A/x] for each probe x : A ⊢ f : B.
TranslationVerdict check_transformation(const TranslationTransformation& alpha, const std::vector<Probe>& probes,
                                        std::size_t budget, const Model* countermodel = nullptr);

/// `.csctr` contents: `source <file>`, `target <file>`, `ground G => <type>`,
/// `const c => <term>`. Theory paths are relative to the translation file.
struct TranslationFile {
  std::string source;
  std::string target;
  std::map<std::string, std::string> ground;
  std::map<std::string, std::string> constants;
};

TranslationFile parse_translation_file(std::string_view text);
/// Loads the file and both theories.
Translation load_translation(const std::string& path);
Translation build_translation(const TranslationFile& f, Theory source, Theory target);

nlohmann::json to_json(const TranslationVerdict& v);

}  // namespace csc
