#pragma once

// Equational reasoning: an oriented normalizer, canonical ordering of central
// bindings, and a budgeted three-valued equality decision.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "csc/finite.hpp"
#include "csc/typecheck.hpp"

namespace csc {

struct Model;

/// Child indices from the root to the rewritten subterm.
using Path = std::vector<std::size_t>;

struct RewriteStep {
  std::string rule;  // e.g. "lam.beta", "S.central", "axiom:comp_r_s"
  Path path;
  Term before;  // whole term before the step
  Term after;   // whole term after the step
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

std::string path_string(const Path& p);
nlohmann::json to_json(const RewriteStep& s);
/// One JSON object per line: rule, path, before, after.
std::string to_json_lines(const RewriteTrace& t);

const Term& subterm_at(const Term& t, const Path& p);
Term replace_at(const Term& t, const Path& p, const Term& replacement);
/// Types of the binders crossed on the way down to `p`, outermost first.
Locals locals_at(const Theory& th, const Context& ctx, const Term& t, const Path& p, TypeClosure& tc);

// --- rules ----------------------------------------------------------------------

/// Where a subterm sits, for rules that need its typing.
struct Site {
  const Theory& th;
  const Context& ctx;
  const Locals& locals;
  TypeClosure& tc;
};

/// Rules oriented by the normalizer, in the order they are tried at a node.
const std::vector<std::string>& oriented_rules();

/// Result of applying `rule` left-to-right at the root of `m`, if it applies.
/// Covers the oriented rules plus "lam.eta", "prod.eta", "S.central" and
/// "S.comm" (the last two swap adjacent bindings and are their own inverses).
/// "iotaS.comp" is oriented as a split of iota over do_S. "S.comm" swaps two
/// independent do_S bindings; it is derived from (ι.mono), (ιS.comp) and
/// (S.central).
std::optional<Term> apply_rule(const std::string& rule, const Term& m, const Site& site);

/// All results of rewriting the root of `m` with a theory axiom, in either
/// direction. Context variables of the axiom are pattern variables; a k-less
/// do-chain on one side also matches a prefix of a longer chain.
std::vector<Term> apply_axiom(const TermAxiom& ax, const Term& m, const Site& site);

/// Whether `a` and `b` are related by one instance of `rule` at the root, in
/// either direction. The pseudo-rule "eta" relates normal forms that agree up
/// to η at their type.
bool is_rule_instance(const std::string& rule, const Term& a, const Term& b, const Site& site);

/// Replays a trace from `start`: each step must start where the previous one
/// ended, differ only below its path, and be an instance of its rule there.
/// Returns the final term or an error message.
std::variant<Term, std::string> replay(const Theory& th, const Context& ctx, const Term& start,
                                       const RewriteTrace& trace);

// --- normalization --------------------------------------------------------------

struct NormalizeOptions {
  /// When set, redexes are chosen uniformly at random instead of leftmost-outermost.
  std::optional<std::uint64_t> shuffle_seed;
  std::size_t max_steps = 100'000;
  bool sort_central = true;
};

struct Normalized {
  Term term;
  RewriteTrace trace;
};

/// Throws TypeError when `m` is ill-typed in ctx.
Normalized normalize(const Theory& th, const Context& ctx, const Term& m, const NormalizeOptions& opts = {});

/// Reorders every maximal run of do_T bindings into canonical order by
/// adjacent (S.central) swaps, recording each swap.
Term sort_central_runs(const Theory& th, const Context& ctx, const Term& m, RewriteTrace* trace);

/// Equality of normal forms up to η at function, product and unit types.
bool eta_equal(const Theory& th, const Context& ctx, const Term& a, const Term& b, const Type& type);
bool eta_equal_at(const Site& site, const Term& a, const Term& b, const Type& type);

// --- decision -------------------------------------------------------------------

struct Equal {
  RewriteTrace trace;  // a ~> b, replayable
};
struct Distinct {
  std::vector<Elem> env;
  std::string env_label;
  std::string lhs_value, rhs_value;
};
struct Unknown {
  std::size_t explored = 0;
};

using Verdict = std::variant<Equal, Distinct, Unknown>;

class TypeMismatch : public Error {
 public:
  TypeMismatch(const Type& a, const Type& b)
      : Error("TypeMismatch: sides have types " + to_string(a) + " and " + to_string(b)) {}
};

struct DecideOptions {
  std::size_t budget = 2000;  // states expanded by the axiom search
  const Model* oracle = nullptr;
};

Verdict decide_equal(const Theory& th, const Context& ctx, const Term& a, const Term& b,
                     const DecideOptions& opts = {});

const char* verdict_name(const Verdict& v);
nlohmann::json to_json(const Verdict& v);

}  // namespace csc
