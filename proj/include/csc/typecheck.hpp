#pragma once

#include <vector>

#include "csc/theory.hpp"

namespace csc {

enum class TypeErrorKind {
  UnboundVariable,
  NotAFunction,
  NotAProduct,
  NotMonadic,
  IotaExpectsS,
  ConstantUnknown,
  FlavourMismatch,
  ArgumentMismatch,
  UnknownGroundType,
};

const char* to_string(TypeErrorKind k);

class TypeError : public Error {
 public:
  TypeError(TypeErrorKind kind, const std::string& msg)
      : Error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  TypeErrorKind kind() const { return kind_; }

 private:
  TypeErrorKind kind_;
};

/// Types of the enclosing binders, innermost last (de Bruijn index 0 = back()).
using Locals = std::vector<Type>;

/// Synthesizes a type for `m`. Conversion is applied at variable lookup and at
/// every elimination position, so e.g. a head of ground type G with G = A -> B
/// is accepted as a function.
Type infer(const Theory& th, const Context& ctx, const Term& m);
Type infer(const Theory& th, const Context& ctx, const Term& m, const Locals& locals,
           TypeClosure& closure);

/// True iff `m` infers some A' with A' = a under the theory. Throws TypeError
/// when `m` itself is ill-typed.
bool check(const Theory& th, const Context& ctx, const Term& m, const Type& a);

}  // namespace csc
