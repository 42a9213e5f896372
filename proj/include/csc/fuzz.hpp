#pragma once

// Random well-typed terms and random derivable rewrites of them.

#include <random>
#include <vector>

#include "csc/equiv.hpp"

namespace csc {

struct FuzzOptions {
  int depth = 3;
  bool use_constants = true;
  bool use_axioms = true;  // perturb may apply theory axioms in either direction
  int max_axiom_steps = 2;
};

/// Small types over the theory's ground types, used as fuzz targets.
std::vector<Type> fuzz_types(const Theory& th);

/// A random term of type `a` in `ctx`. Never fails: falls back to canonical
/// inhabitants (`*`, `ret`, pairs, lambdas) where nothing else fits.
/// Throws csc::Error when `a` has no closed inhabitant built from the context
/// (e.g. an uninhabited ground type).
Term generate_term(const Theory& th, const Context& ctx, const Type& a, std::mt19937_64& rng,
                   const FuzzOptions& opts = {});

/// Applies `steps` random equational steps (expansions as well as
/// contractions) and returns a term provably equal to `m`. Every step is
/// recorded in `trace` when given.
Term perturb(const Theory& th, const Context& ctx, const Term& m, int steps, std::mt19937_64& rng,
             RewriteTrace* trace = nullptr, const FuzzOptions& opts = {});

}  // namespace csc
