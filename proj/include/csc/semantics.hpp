#pragma once

// Finite-set models of the calculus and the interpretation of types and terms.
//
// Encodings, fixed so that independent oracles can be written against them:
//   ⟦1⟧ = {0}; ⟦A × B⟧ index (a, b) = a·|B| + b;
//   ⟦A -> B⟧ = tables, index Σ f(a)·|B|^(|A|-1-a) (f(0) most significant);
//   ⟦Γ⟧ = product of the entries in context order, first entry most significant;
//   ⟦T A⟧, ⟦S A⟧ = the monads' own encodings of T |A|, S |A|.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "csc/centre.hpp"
#include "csc/monad.hpp"
#include "csc/theory.hpp"

namespace csc {

class UninterpretedGround : public Error {
 public:
  explicit UninterpretedGround(const std::string& g) : Error("no interpretation for ground type '" + g + "'") {}
};

struct Model {
  std::string name;
  MonadPtr T;
  std::shared_ptr<const SubsetMonad> S;  // S->parent() is T; ι is S->include
  std::map<std::string, std::uint64_t> ground;
  std::map<std::string, Elem> constants;  // global elements of ⟦type⟧
  std::uint64_t cap = kDefaultSizeCap;
  Sizes test_sizes = kDefaultTestSizes;

  const FiniteMonad& monad(Flavour f) const;
  FinFunction iota(std::uint64_t x) const;
};

std::uint64_t interpret_size(const Model& model, const Type& a);
/// Carrier of ⟦a⟧. Labels are attached only below 4096 elements.
FinSet interpret_type(const Model& model, const Theory& th, const Type& a);
std::string element_label(const Model& model, const Type& a, Elem e);
/// Size of ⟦Γ⟧ and the environment (one element per entry) at a given index.
std::uint64_t context_size(const Model& model, const Context& ctx);
std::vector<Elem> context_env(const Model& model, const Context& ctx, Elem index);
std::string env_label(const Model& model, const Context& ctx, const std::vector<Elem>& env);

/// A term compiled against a model for repeated evaluation.
class Evaluator {
 public:
  Evaluator(const Model& model, const Theory& th, const Context& ctx, const Term& m);
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  Elem operator()(const std::vector<Elem>& env) const;
  const Type& type() const { return type_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  Type type_ = Type::unit();
};

Elem evaluate(const Model& model, const Theory& th, const Context& ctx, const Term& m, const std::vector<Elem>& env);
FinFunction interpret_term(const Model& model, const Theory& th, const Context& ctx, const Term& m);

// --- model validation ---------------------------------------------------------

struct ModelIssue {
  std::string check;
  std::string detail;
};

/// ι injective and a strong monad morphism on `sizes`, and every ι component
/// central for T against the model's test sizes.
std::vector<ModelIssue> validate_model(const Model& model, const Sizes& sizes = {0, 1, 2, 3});
/// Constants denote elements of their declared types; ground sizes respect type axioms.
std::vector<ModelIssue> validate_model_for(const Model& model, const Theory& th);

struct SoundnessViolation {
  std::string source;  // axiom label or "fuzz #n"
  std::string lhs, rhs;
  std::string env;
  std::string lhs_value, rhs_value;
};

struct SoundnessReport {
  std::size_t axioms_checked = 0;
  std::size_t fuzz_checked = 0;
  std::size_t fuzz_skipped = 0;  // perturbations that exceeded the size cap
  std::vector<SoundnessViolation> violations;
  bool ok() const { return violations.empty(); }
};

SoundnessReport check_model_soundness(const Model& model, const Theory& th, std::size_t fuzz_count, std::uint64_t seed);

nlohmann::json to_json(const SoundnessReport& r);

// --- bundled models and theories ------------------------------------------------

/// The theory of M-actions: constants act_c : T 1 for c ∈ M and zact_z : S 1 for z
/// in the central submonoid, with axioms for units, inclusion and composition.
Theory writer_theory(const FinMonoid& m, const std::vector<Elem>& central, const std::string& name);
/// writer(M) with S = writer(central), interpreting the constants of writer_theory.
Model writer_model(const FinMonoid& m, const std::vector<Elem>& central, const std::string& name);
/// T with its η-image as central submonad.
Model unit_submonad_model(MonadPtr t, const std::string& name);

Theory d4_theory();
Model d4_model();
std::string action_constant(const FinMonoid& m, Elem c);
std::string central_constant(const FinMonoid& m, Elem z);

// --- model files ----------------------------------------------------------------

/// Contents of a `.cscm` file before a theory is attached.
struct ModelFile {
  std::string name;
  std::string monad = "writer";  // writer | semiring | continuation | identity | list
  std::uint64_t param = 2;       // |S| for continuation, max length for list
  std::optional<FinMonoid> monoid;
  std::optional<FinSemiring> semiring;
  std::optional<std::vector<Elem>> central_submonoid;
  std::string submonad = "auto";  // auto | unit | centre | submonoid
  std::map<std::string, std::string> ground;     // G = size or type
  std::map<std::string, std::string> constants;  // c = label or index
  Sizes test_sizes = kDefaultTestSizes;
};

ModelFile parse_model_file(std::string_view text, std::string name = "model");
ModelFile load_model_file(const std::string& path);
/// Builds the monad a model file describes; `monad_override` replaces its kind.
MonadPtr build_monad(const ModelFile& f, const std::string& monad_override = "", std::uint64_t cap = kDefaultSizeCap);
/// Resolves ground types and constants against `th` and validates the result.
Model build_model(const ModelFile& f, const Theory& th, std::uint64_t cap = kDefaultSizeCap);

}  // namespace csc
