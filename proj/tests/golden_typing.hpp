#pragma once

// Typing fixtures shared by the unit tests and the acceptance suite.

#include <vector>

#include "csc/typecheck.hpp"

namespace golden {

inline const char* kTheory = R"(name Golden
ground A
ground B
ground F
type-eq F = A -> T B
const f : A -> T B
const g : A -> S A
const h : F
const a : A
)";

inline const char* kContext = "x : A, k : T A, m : S A";

struct Positive {
  const char* term;
  const char* type;
};

struct Negative {
  const char* term;
  csc::TypeErrorKind kind;
};

inline const std::vector<Positive> kPositive = {
    {"x", "A"},
    {"a", "A"},
    {"*", "1"},
    {"\\y : A. y", "A -> A"},
    {"f a", "T B"},
    {"<x, k>", "A * T A"},
    {"fst <x, *>", "A"},
    {"snd <x, *>", "1"},
    {"ret_T x", "T A"},
    {"ret_S x", "S A"},
    {"iota m", "T A"},
    {"iota (ret_S x)", "T A"},
    {"do_T y <- k; f y", "T B"},
    {"do_S y <- m; g y", "S A"},
    {"do_T y <- iota m; ret_T <y, y>", "T (A * A)"},
    {"\\p : A -> T B. do_T y <- k; p y", "(A -> T B) -> T B"},
    {"do_T y <- k; do_T w <- iota (g y); ret_T w", "T A"},
    {"(\\p : A * A. snd p) <x, a>", "A"},
    {"ret_T (ret_S x)", "T (S A)"},
    {"h a", "T B"},
};

inline const std::vector<Negative> kNegative = {
    {"iota k", csc::TypeErrorKind::IotaExpectsS},
    {"iota (iota m)", csc::TypeErrorKind::IotaExpectsS},
    {"y", csc::TypeErrorKind::UnboundVariable},
    {"x a", csc::TypeErrorKind::NotAFunction},
    {"fst x", csc::TypeErrorKind::NotAProduct},
    {"do_T y <- x; ret_T y", csc::TypeErrorKind::NotMonadic},
    {"do_T y <- m; ret_T y", csc::TypeErrorKind::FlavourMismatch},
    {"do_S y <- m; ret_T y", csc::TypeErrorKind::FlavourMismatch},
    {"f *", csc::TypeErrorKind::ArgumentMismatch},
    {"\\y : C. y", csc::TypeErrorKind::UnknownGroundType},
};

}  // namespace golden
